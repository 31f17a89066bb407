"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed user input: bad file, bad flag value, inconsistent data."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


class DegenerateSectionError(ValueError):
    """A reduction was requested at a vector meeting a fiber's singular locus."""
