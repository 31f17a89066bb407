"""quadring: exact point counts for quadric fibrations over prime fields,
formal Grothendieck-ring bookkeeping for the matching class identities, and
the Pell-type discriminant arithmetic separating isomorphic pairs from
merely L-equivalent ones.
"""

from . import gfp, grothring, mpoly, netfib, nslattice, quadform
from .errors import BudgetExceededError, DegenerateSectionError, InputError

__version__ = "0.1.0"

__all__ = [
    "gfp",
    "grothring",
    "mpoly",
    "netfib",
    "nslattice",
    "quadform",
    "BudgetExceededError",
    "DegenerateSectionError",
    "InputError",
    "__version__",
]
