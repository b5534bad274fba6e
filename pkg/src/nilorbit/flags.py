"""Point counts of fixed-vector flag varieties over GF(p).

The central object is the fiber over a pair (x, v): complete flags
0 < V_1 < ... < V_n stabilized by x step by step, with v required to lie
in the m-th step.  Counts are exact; interpolation across primes recovers
the count polynomial, whose degree and leading coefficient are the
quantities the verification suites check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence

from .counting import (
    CountPolynomial,
    CountSeries,
    first_primes,
    interpolate,
)
from .gfmat import (
    BudgetExceededError,
    Matrix,
    PrimeField,
    Subspace,
    Vector,
    identity,
    induced_maps,
    mat_mul,
    mat_sub,
    right_kernel,
    scal_mul,
    transpose,
)
from . import gfmat
from .pairs import (
    EnhancedPair,
    MixedClassifier,
    NonSplitError,
    mixed_invariant,
    orbit_representative,
)
from .partitions import (
    Bipartition,
    as_bipartition,
    bipartition_to_json,
    irr_dim,
    orbit_dim,
    size,
    total,
)


@dataclass(frozen=True)
class FlagCondition:
    """x-stable complete flags with v in the m-th step."""

    x: Matrix
    v: Vector
    m: int
    p: int

    def __post_init__(self):
        n = len(self.x)
        if any(len(row) != n for row in self.x) or len(self.v) != n:
            raise ValueError("dimension mismatch")
        if not 0 <= self.m <= n:
            raise ValueError(f"step index must lie in [0, {n}], got {self.m}")


def _eigenvalues(x: Matrix, p: int, candidates: Optional[Sequence[int]] = None):
    """Eigenvalues of x in GF(p), i.e. values with a nontrivial eigenline."""
    n = len(x)
    out = []
    for a in range(p) if candidates is None else candidates:
        shifted = mat_sub(x, scal_mul(a, identity(n), p), p)
        if gfmat.rank(shifted, p) < n:
            out.append(a)
    return out


def _eigenlines(x: Matrix, a: int, p: int):
    """Monic representatives of lines fixed by x with eigenvalue a."""
    n = len(x)
    shifted = mat_sub(x, scal_mul(a, identity(n), p), p)
    return right_kernel(transpose(shifted), p).lines()


def _quotient_pair(x: Matrix, v: Vector, line: Vector, p: int):
    """Induced operator and vector on the quotient by an x-stable line."""
    n = len(x)
    w = Subspace.from_vectors([line], n, p)
    _, quotient = induced_maps(x, w, p)
    reduced = w.reduce(v)
    complement = [c for c in range(n) if c not in w.pivots]
    return quotient, tuple(reduced[j] for j in complement)


def _count_plain(x: Matrix, v: Vector, m: int, p: int, budget: int) -> int:
    """Depth-first enumeration of stable flags with pruning at step m."""
    n = len(x)
    nodes = 0

    def recurse(space: Subspace, depth: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"flag enumeration exceeded {budget} nodes")
        if depth == m and not space.contains(v):
            return 0
        if depth == n:
            return 1
        _, quotient = induced_maps(x, space, p)
        complement = [c for c in range(n) if c not in space.pivots]
        found = 0
        for a in _eigenvalues(quotient, p):
            for line in _eigenlines(quotient, a, p):
                lift = [0] * n
                for j, c in enumerate(complement):
                    lift[c] = line[j]
                found += recurse(space.sum(Subspace.from_vectors([tuple(lift)], n, p)),
                                 depth + 1)
        return found

    return recurse(Subspace.zero(n, p), 0)


def _count_memo(
    x: Matrix,
    v: Vector,
    m: int,
    p: int,
    eigenvalues: Sequence[int],
    memo: dict,
    work: list,
    budget: int,
) -> int:
    """Stable-flag count keyed on the orbit invariant of the remaining pair.

    The count from a partial flag onward depends only on the GL-orbit of the
    induced pair on the quotient and on the remaining step index, so states
    are merged by that invariant.  Agrees with _count_plain (tested) but
    handles counts far beyond one-by-one enumeration.
    """
    n = len(x)
    if m == 0 and any(v):
        return 0
    if n == 0:
        return 1
    classifier = MixedClassifier(x, p, eigenvalues=eigenvalues)
    key = (classifier.invariant(v).blocks, m)
    if key in memo:
        return memo[key]
    found = 0
    present = [a for a, _, _ in classifier.blocks]
    for a in present:
        for line in _eigenlines(x, a, p):
            work[0] += 1
            if work[0] > budget:
                raise BudgetExceededError(
                    f"flag state exploration exceeded {budget} extensions"
                )
            quotient, reduced = _quotient_pair(x, v, line, p)
            found += _count_memo(
                quotient, reduced, max(m - 1, 0), p, present, memo, work, budget
            )
    memo[key] = found
    return found


def count_fiber(
    condition: FlagCondition,
    method: str = "auto",
    budget: int = 2_000_000,
) -> int:
    """Exact number of x-stable complete flags with v in step m."""
    x, v, m, p = condition.x, condition.v, condition.m, condition.p
    if method not in ("auto", "plain", "memo"):
        raise ValueError(f"unknown method {method!r}")
    if method == "plain":
        return _count_plain(x, v, m, p, budget)
    try:
        classifier_eigs = [a for a, _, _ in MixedClassifier(x, p).blocks]
    except NonSplitError:
        if method == "memo":
            raise
        return _count_plain(x, v, m, p, budget)
    return _count_memo(x, v, m, p, classifier_eigs, {}, [0], budget)


@dataclass(frozen=True)
class SpringerReport:
    mu: Bipartition
    m: int
    n: int
    d_mu: int
    primes: tuple[int, ...]
    counts: tuple[int, ...]
    polynomial: CountPolynomial
    degree_ok: bool
    leading_ok: bool

    def to_json(self) -> dict:
        return {
            "mu": bipartition_to_json(self.mu),
            "m": self.m,
            "n": self.n,
            "d_mu": self.d_mu,
            "primes": list(self.primes),
            "counts": list(self.counts),
            "polynomial": self.polynomial.to_json(),
            "degree_ok": self.degree_ok,
            "leading_ok": self.leading_ok,
        }


def fiber_dimension(bmu: Bipartition) -> int:
    """Predicted fiber dimension (dim of the nilpotent variety + m - dim orbit)/2."""
    bmu = as_bipartition(bmu)
    n = total(bmu)
    m = size(bmu[0])
    num = n * n - n + m - orbit_dim(bmu, n)
    if num % 2:
        raise RuntimeError(f"odd dimension defect for {bmu}")
    return num // 2


def springer_report(
    bmu: Bipartition,
    m: int,
    primes: Optional[Sequence[int]] = None,
    method: str = "auto",
) -> SpringerReport:
    """Fiber count polynomial of the orbit bmu, with degree and leading checks."""
    bmu = as_bipartition(bmu)
    n = total(bmu)
    if size(bmu[0]) != m:
        raise ValueError(
            f"step index {m} must equal the first-component size {size(bmu[0])}"
        )
    d = fiber_dimension(bmu)
    if primes is None:
        primes = first_primes(d + 1, minimum=max(2, n) + 1)
    primes = tuple(primes)
    counts = []
    for p in primes:
        z = orbit_representative(bmu, p)
        counts.append(count_fiber(FlagCondition(z.x, z.v, m, p), method=method))
    poly = interpolate(CountSeries.of(list(zip(primes, counts))), d)
    return SpringerReport(
        mu=bmu,
        m=m,
        n=n,
        d_mu=d,
        primes=primes,
        counts=tuple(counts),
        polynomial=poly,
        degree_ok=(poly.degree == d and poly.leading != 0),
        leading_ok=(poly.leading == irr_dim(bmu)),
    )


def galois_degree_check(n: int, m: int, field: PrimeField) -> tuple[int, int, bool]:
    """Fiber count over a regular semisimple pair against the covering degree.

    Builds x with the distinct eigenvalues 1..n and v supported on the first
    m eigenlines; the count must be m! (n-m)!, the order of S_m x S_{n-m}.
    Returns (count, expected, ok).
    """
    p = field.p
    if p <= n:
        raise ValueError(f"need p > n for distinct eigenvalues, got p={p}, n={n}")
    x = tuple(
        tuple((i + 1) if i == j else 0 for j in range(n)) for i in range(n)
    )
    v = tuple(1 if i < m else 0 for i in range(n))
    count = count_fiber(FlagCondition(x, v, m, p))
    expected = factorial(m) * factorial(n - m)
    return count, expected, count == expected


def flag_unipotent_entries(n: int) -> list[tuple[int, int]]:
    """Free coordinates of the standard flag-stabilizing unipotent group.

    With the row-vector action the stabilizer of <e_1> < <e_1,e_2> < ... is
    lower triangular, so the free entries sit strictly below the diagonal.
    """
    return [(i, j) for i in range(n) for j in range(i)]


def unipotent_elements(n: int, p: int):
    """All lower unitriangular n x n matrices over GF(p)."""
    entries = flag_unipotent_entries(n)
    base = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for values in gfmat.all_vectors(len(entries), p):
        rows = [row[:] for row in base]
        for (i, j), val in zip(entries, values):
            rows[i][j] = val
        yield tuple(tuple(r) for r in rows)


def in_standard_flag_step(v: Vector, m: int) -> bool:
    """Whether v lies in the span of the first m coordinates."""
    return all(c == 0 for c in v[m:])


def slice_count(
    s: Matrix,
    z0: EnhancedPair,
    m: int,
    field: PrimeField,
    budget: int = 2_000_000,
) -> int:
    """Points of the orbit of z0 inside sU x M_m, by exhaustive enumeration.

    s must be diagonal, z0 = (s u, v0) with u flag-unipotent and v0 in M_m.
    Membership in the orbit is decided by equality of mixed invariants.
    """
    p = field.p
    n = z0.n
    if any(s[i][j] for i in range(n) for j in range(n) if i != j):
        raise ValueError("s must be diagonal")
    if any(s[i][i] == 0 for i in range(n)):
        raise ValueError("s must be invertible")
    u = mat_mul(gfmat.mat_inv(s, p), z0.x, p)
    if any(u[i][i] != 1 for i in range(n)) or any(
        u[i][j] for i in range(n) for j in range(i + 1, n)
    ):
        raise ValueError("z0 is not of the form (s u, v0) with flag-unipotent u")
    if not in_standard_flag_step(z0.v, m):
        raise ValueError(f"v0 must lie in the span of the first {m} coordinates")
    work = p ** (n * (n - 1) // 2 + m)
    if work > budget:
        raise BudgetExceededError(f"slice enumeration needs {work} pairs, budget {budget}")
    target = mixed_invariant(z0)
    eigs = sorted({s[i][i] for i in range(n)})
    count = 0
    for u1 in unipotent_elements(n, p):
        x1 = mat_mul(s, u1, p)
        classifier = MixedClassifier(x1, p, eigenvalues=eigs)
        for tail in gfmat.all_vectors(m, p):
            v1 = tail + (0,) * (n - m)
            if classifier.invariant(v1) == target:
                count += 1
    return count
