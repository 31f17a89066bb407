"""Nets and pencils of quadrics: the integer family, its fibers over P^m,
corank stratification, the base locus X, and the rational-level regularity
and line checks.

A QuadricNet holds m+1 integer symmetric (n+2) x (n+2) Gram matrices
M_0..M_m; the fiber over a base point w is M(w) = sum w_i M_i.  Keeping the
matrices over Z lets one net be reduced at many primes; primes where the
reduction misbehaves (corank >= 2 fibers, regularity violations) are meant
to be skipped and reported by callers, not patched over.

The geometric conditions "X is smooth" and "no line through P over the
algebraic closure" are only ever tested at the F_p-rational level here, and
the reports say so: they certify the absence of F_p-rational violations,
nothing more.  The relation residuals computed in `relations` fail loudly
if a geometric hypothesis actually fails, which is the compensating check.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import BudgetExceededError, InputError
from ..gfp import (
    PrimeField,
    ProjPoint,
    canonical_point,
    enumerate_projective,
    projective_points_array,
    projective_size,
    split_ranges,
)
from .. import modmat
from ..mpoly import LinearFormMatrix
from ..quadform import GramMatrix, classify, count_projective_points

NET_FORMAT_VERSION = 1


@dataclass(frozen=True)
class QuadricNet:
    """A family of n-dimensional quadrics over P^m given by m+1 integer
    symmetric Gram matrices of size n+2."""

    n: int
    m: int
    matrices: tuple[GramMatrix, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 1:
            raise InputError(f"bad family shape n={self.n}, m={self.m}")
        if len(self.matrices) != self.m + 1:
            raise InputError(
                f"expected {self.m + 1} matrices for m={self.m}, got {len(self.matrices)}"
            )
        for mat in self.matrices:
            if mat.size != self.n + 2:
                raise InputError(
                    f"matrix size {mat.size} does not match n+2={self.n + 2}"
                )

    @property
    def fiber_size(self) -> int:
        return self.n + 2

    def fiber_matrix(self, s: Sequence[int], field: PrimeField) -> GramMatrix:
        """Gram matrix of the fiber over s, at the canonical representative."""
        rep = canonical_point(s, field)
        p = field.p
        size = self.fiber_size
        rows = [
            tuple(
                sum(rep[k] * self.matrices[k].entries[i][j] for k in range(self.m + 1)) % p
                for j in range(size)
            )
            for i in range(size)
        ]
        return GramMatrix(tuple(rows))

    def linear_form_matrix(self) -> LinearFormMatrix:
        """The family as one symmetric matrix of linear forms in w_0..w_m."""
        return LinearFormMatrix.from_gram_matrices([m.entries for m in self.matrices])

    def to_document(self, point: Sequence[int] | None = None) -> dict:
        doc = {
            "format_version": NET_FORMAT_VERSION,
            "n": self.n,
            "m": self.m,
            "matrices": [
                [x for row in mat.entries for x in row] for mat in self.matrices
            ],
        }
        if point is not None:
            doc["point"] = [int(x) for x in point]
        return doc

    @classmethod
    def from_document(cls, doc: dict) -> tuple["QuadricNet", tuple[int, ...] | None]:
        try:
            n = int(doc["n"])
            m = int(doc["m"])
            flat = doc["matrices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed net document: {exc}") from exc
        size = n + 2
        if not isinstance(flat, list) or len(flat) != m + 1:
            raise InputError(f"expected {m + 1} matrices, got {len(flat) if isinstance(flat, list) else 'non-list'}")
        mats = []
        for row_major in flat:
            if not isinstance(row_major, list) or len(row_major) != size * size:
                raise InputError(
                    f"each matrix must be a flat array of {size * size} integers"
                )
            try:
                rows = [
                    tuple(int(row_major[i * size + j]) for j in range(size))
                    for i in range(size)
                ]
            except (TypeError, ValueError) as exc:
                raise InputError(f"non-integer matrix entry: {exc}") from exc
            mats.append(GramMatrix(tuple(rows)))  # symmetry validated here
        point = doc.get("point")
        if point is not None:
            try:
                point = tuple(int(x) for x in point)
            except (TypeError, ValueError) as exc:
                raise InputError(f"malformed point: {exc}") from exc
            if len(point) != size:
                raise InputError(f"point has length {len(point)}, expected {size}")
        return cls(n=n, m=m, matrices=tuple(mats)), point


def load_net(path: str) -> tuple[QuadricNet, tuple[int, ...] | None]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read net file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("net file does not hold a JSON object")
    return QuadricNet.from_document(doc)


def corank_stratification(net: QuadricNet, field: PrimeField) -> dict[int, int]:
    """Histogram {corank c -> number of base points of P^m(F_p) with corank c}.

    The corank >= 1 count is the number of F_p-points of the discriminant
    hypersurface; a nonzero count at corank n+2 means the zero quadric
    occurs and the family is not flat.
    """
    hist: dict[int, int] = {}
    for s in enumerate_projective(net.m, field):
        c = classify(net.fiber_matrix(s, field), field).corank
        hist[c] = hist.get(c, 0) + 1
    return hist


def _form_values(points: np.ndarray, gram: GramMatrix, p: int) -> np.ndarray:
    m = gram.to_array() % p
    return ((points @ m) * points).sum(axis=1) % p


def points_on_X(
    net: QuadricNet,
    field: PrimeField,
    budget: int = 2_000_000,
    jobs: int = 1,
) -> list[ProjPoint]:
    """All canonical points of P^(n+1)(F_p) on which every form of the net
    vanishes, in canonical enumeration order.

    The scan is split into contiguous index ranges processed independently
    (optionally by a thread pool); the ordered concatenation of the parts
    does not depend on the partition.
    """
    p = field.p
    dim = net.n + 1
    if projective_size(dim, p) > budget:
        raise BudgetExceededError(
            f"enumerating P^{dim}(F_{p}) exceeds the budget of {budget}"
        )
    pts = projective_points_array(dim, field, budget=budget)

    def scan(rng: tuple[int, int]) -> np.ndarray:
        lo, hi = rng
        chunk = pts[lo:hi]
        mask = np.ones(hi - lo, dtype=bool)
        for mat in net.matrices:
            mask &= _form_values(chunk, mat, p) == 0
        return chunk[mask]

    ranges = split_ranges(len(pts), max(1, jobs) * 4)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(scan, ranges))
    else:
        parts = [scan(r) for r in ranges]
    out: list[ProjPoint] = []
    for part in parts:
        out.extend(tuple(int(x) for x in row) for row in part)
    return out


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of the F_p-rational regularity scan.

    HEURISTIC: `regular` certifies that no F_p-rational radical vector of a
    degenerate fiber lies on the base locus X; geometric smoothness of X is
    not certified.  `corank2_found` reports fibers of corank >= 2 (these
    make the discriminant curve and the double cover singular).  `flat` is
    the corank < n+2 check (no fiber is the zero quadric).
    """

    p: int
    regular: bool
    corank2_found: bool
    flat: bool
    violations: tuple[tuple[ProjPoint, ProjPoint], ...]
    corank_histogram: dict[int, int]


def regularity_check(net: QuadricNet, field: PrimeField) -> RegularityReport:
    """Scan every fiber; for each radical vector u of a degenerate fiber,
    verify some form of the net is nonzero on u."""
    p = field.p
    size = net.fiber_size
    violations: list[tuple[ProjPoint, ProjPoint]] = []
    corank2 = False
    flat = True
    hist: dict[int, int] = {}
    for s in enumerate_projective(net.m, field):
        fib = net.fiber_matrix(s, field)
        kernel = modmat.kernel_basis(fib.entries, size, field)
        c = len(kernel)
        hist[c] = hist.get(c, 0) + 1
        if c == 0:
            continue
        if c >= 2:
            corank2 = True
        if c == size:
            flat = False
        for coeffs in enumerate_projective(c - 1, field):
            u = tuple(
                sum(coeffs[t] * kernel[t][i] for t in range(c)) % p for i in range(size)
            )
            if all(mat.q(u, field) == 0 for mat in net.matrices):
                violations.append((s, u))
    return RegularityReport(
        p=p,
        regular=not violations,
        corank2_found=corank2,
        flat=flat,
        violations=tuple(violations),
        corank_histogram=hist,
    )


def lines_through_point(
    net: QuadricNet,
    point: Sequence[int],
    field: PrimeField,
    budget: int = 2_000_000,
) -> list[ProjPoint]:
    """Directions [v'] in P(V/<P>)(F_p) spanning with P a line inside X.

    The point's pivot coordinate is deleted to realize V/<P>; a direction
    v' qualifies when b(P, v'') = 0 and q(v'') = 0 for every form, v''
    being the lift with 0 in the pivot slot.  HEURISTIC for the geometric
    no-line condition: a line defined only over an extension field leaves
    no trace here.
    """
    p = field.p
    size = net.fiber_size
    rep = canonical_point(point, field)
    if any(mat.q(rep, field) != 0 for mat in net.matrices):
        raise InputError("point does not lie on the base locus X")
    pivot = next(i for i, x in enumerate(rep) if x != 0)
    dim = size - 2  # P(V/<P>) = P^(n)
    if projective_size(dim, p) > budget:
        raise BudgetExceededError(
            f"enumerating P^{dim}(F_{p}) exceeds the budget of {budget}"
        )
    dirs = projective_points_array(dim, field, budget=budget)
    lifted = np.insert(dirs, pivot, 0, axis=1)
    mask = np.ones(len(dirs), dtype=bool)
    rep_vec = np.array(rep, dtype=np.int64)
    for mat in net.matrices:
        marr = mat.to_array() % p
        polar = (lifted @ marr @ rep_vec) % p
        mask &= polar == 0
        mask &= _form_values(lifted, mat, p) == 0
    return [tuple(int(x) for x in row) for row in dirs[mask]]


def count_total_space(net: QuadricNet, field: PrimeField) -> int:
    """#Q(F_p): sum of fiber quadric counts over the base P^m(F_p)."""
    return sum(
        count_projective_points(net.fiber_matrix(s, field), field)
        for s in enumerate_projective(net.m, field)
    )
