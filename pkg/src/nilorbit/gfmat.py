"""Exact linear algebra over a prime field GF(p).

Matrices are immutable tuples of row tuples with entries reduced mod p.
Vectors are plain tuples.  Endomorphisms act on row vectors from the
right, ``w = apply(v, A, p)`` meaning w_j = sum_i v_i A[i][j]; with this
convention the Jordan block with ones on the subdiagonal sends e_i to
e_{i-1} and kills e_1, and the stabilizer of the standard coordinate
flag <e_1> < <e_1,e_2> < ... is the lower triangular group.

Subspaces are stored as reduced row echelon bases, which are canonical:
two spanning sets of the same subspace produce identical bases.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .partitions import Partition, as_partition

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its stated budget."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __str__(self):
        return f"GF({self.p})"


def freeze(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple(x % p for x in row) for row in rows)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_add(a: Matrix, b: Matrix, p: int) -> Matrix:
    return tuple(
        tuple((x + y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_sub(a: Matrix, b: Matrix, p: int) -> Matrix:
    return tuple(
        tuple((x - y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def scal_mul(c: int, a: Matrix, p: int) -> Matrix:
    return tuple(tuple((c * x) % p for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def mat_pow(a: Matrix, k: int, p: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        k >>= 1
    return result


def apply(v: Vector, a: Matrix, p: int) -> Vector:
    """Row-vector action v . A."""
    cols = len(a[0]) if a else 0
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) % p for j in range(cols))


def mat_inv(a: Matrix, p: int) -> Matrix:
    n = len(a)
    aug = [list(ra) + list(ri) for ra, ri in zip(a, identity(n))]
    r, _ = _row_reduce(aug, p)
    if r < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in aug)


def _row_reduce(rows: list[list[int]], p: int) -> tuple[int, list[int]]:
    """In-place reduced row echelon form; returns (rank, pivot columns)."""
    if not rows:
        return 0, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return r, pivots


def rref(a: Matrix, p: int) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (zero rows kept)."""
    rows = [list(r) for r in a]
    rank, pivots = _row_reduce(rows, p)
    return tuple(tuple(r) for r in rows), rank, pivots


def rank(a: Matrix, p: int) -> int:
    rows = [list(r) for r in a]
    r, _ = _row_reduce(rows, p)
    return r


def right_kernel(a: Matrix, p: int) -> "Subspace":
    """Canonical basis of {w : A w^T = 0} as a subspace of GF(p)^cols."""
    nrows, ncols = shape(a)
    rows = [list(r) for r in a]
    r, pivots = _row_reduce(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        w = [0] * ncols
        w[c] = 1
        for i, pc in enumerate(pivots):
            w[pc] = (-rows[i][c]) % p
        basis.append(tuple(w))
    return Subspace.from_vectors(basis, ncols, p)


def rref_rank_kernel(a: Matrix, p: int) -> tuple[Matrix, int, "Subspace"]:
    """RREF of A, its rank, and the right kernel {w : A w = 0}."""
    r, rk, _ = rref(a, p)
    return r, rk, right_kernel(a, p)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^ambient with canonical RREF basis rows."""

    ambient: int
    p: int
    basis: Matrix  # nonzero RREF rows, strictly increasing pivots
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(vectors: Sequence[Vector], ambient: int, p: int) -> "Subspace":
        rows = [list(v) for v in vectors]
        r, pivots = _row_reduce(rows, p)
        return Subspace(ambient, p, tuple(tuple(row) for row in rows[:r]), tuple(pivots))

    @staticmethod
    def zero(ambient: int, p: int) -> "Subspace":
        return Subspace(ambient, p, (), ())

    @staticmethod
    def full(ambient: int, p: int) -> "Subspace":
        return Subspace(ambient, p, identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vector) -> Vector:
        """Residue of v after subtracting its projection onto the basis."""
        w = list(x % self.p for x in v)
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f:
                w = [(x - f * y) % self.p for x, y in zip(w, row)]
        return tuple(w)

    def contains(self, v: Vector) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: Vector) -> Vector:
        """Coordinates of v in the canonical basis; raises if v is outside."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        w = tuple(x % self.p for x in v)
        return tuple(w[c] for c in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(
            list(self.basis) + list(other.basis), self.ambient, self.p
        )

    def lines(self) -> Iterator[Vector]:
        """One monic representative per 1-dimensional subspace of self."""
        p, d = self.p, self.dim
        for lead in range(d):
            # coefficient of basis row `lead` is 1, earlier rows 0
            tail = d - lead - 1
            for idx in range(p**tail):
                coeffs = [0] * lead + [1]
                k = idx
                for _ in range(tail):
                    coeffs.append(k % p)
                    k //= p
                yield tuple(
                    sum(c * row[j] for c, row in zip(coeffs, self.basis)) % p
                    for j in range(self.ambient)
                )


def jordan_block(k: int) -> Matrix:
    """Nilpotent k x k block with ones on the subdiagonal (e_i -> e_{i-1})."""
    return tuple(
        tuple(1 if j == i - 1 else 0 for j in range(k)) for i in range(k)
    )


def jordan_matrix(nu: Partition, p: int) -> Matrix:
    """Block diagonal nilpotent matrix with blocks of sizes nu_i."""
    nu = as_partition(nu)
    n = sum(nu)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for k in nu:
        blk = jordan_block(k)
        for i in range(k):
            for j in range(k):
                rows[offset + i][offset + j] = blk[i][j]
        offset += k
    return freeze(rows, p)


def is_nilpotent(x: Matrix, p: int) -> bool:
    n = len(x)
    if any(len(row) != n for row in x):
        raise ValueError("matrix must be square")
    return mat_pow(x, n, p) == zeros(n, n)


def jordan_type(x: Matrix, p: int) -> Partition:
    """Jordan type of a nilpotent matrix from its rank sequence.

    The multiplicity of the part k is rank(x^{k-1}) - 2 rank(x^k) + rank(x^{k+1}).
    """
    n = len(x)
    if n == 0:
        return ()
    if not is_nilpotent(x, p):
        raise ValueError("matrix is not nilpotent")
    ranks = [n]
    power = x
    while True:
        r = rank(power, p)
        ranks.append(r)
        if r == 0:
            break
        power = mat_mul(power, x, p)
    ranks.append(0)
    parts = []
    for k in range(1, len(ranks) - 1):
        mult = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
        parts.extend([k] * mult)
    return as_partition(sorted(parts, reverse=True))


def stable_under(x: Matrix, w: Subspace, p: int) -> bool:
    return all(w.contains(apply(b, x, p)) for b in w.basis)


def induced_maps(x: Matrix, w: Subspace, p: int) -> tuple[Matrix, Matrix]:
    """Matrices of x on the x-stable subspace W and on the quotient V/W.

    The restriction is expressed in W's canonical basis.  The quotient
    uses the non-pivot standard coordinates of W's RREF basis, in
    increasing order, as coordinates on V/W.
    """
    n = len(x)
    if w.ambient != n:
        raise ValueError("ambient dimension mismatch")
    try:
        restriction = tuple(w.coords(apply(b, x, p)) for b in w.basis)
    except ValueError:
        raise ValueError("subspace is not stable under x") from None
    complement = [c for c in range(n) if c not in w.pivots]
    quotient = []
    for c in complement:
        e = tuple(1 if j == c else 0 for j in range(n))
        image = w.reduce(apply(e, x, p))
        quotient.append(tuple(image[j] for j in complement))
    return restriction, tuple(quotient)


def random_matrix(n: int, p: int, rng: random.Random) -> Matrix:
    return tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))


def random_invertible(n: int, p: int, seed: int) -> Matrix:
    """Deterministic pseudorandom invertible matrix (Mersenne Twister seed)."""
    rng = random.Random(seed)
    while True:
        g = random_matrix(n, p, rng)
        if rank(g, p) == n:
            return g


def gl_order(n: int, p: int) -> int:
    q = p**n
    return math.prod(q - p**i for i in range(n))


def all_vectors(n: int, p: int) -> Iterator[Vector]:
    for idx in range(p**n):
        v = []
        k = idx
        for _ in range(n):
            v.append(k % p)
            k //= p
        yield tuple(v)


def all_matrices(n: int, p: int) -> Iterator[Matrix]:
    for flat in all_vectors(n * n, p):
        yield tuple(flat[i * n : (i + 1) * n] for i in range(n))


def matrix_to_json(a: Matrix, p: int) -> dict:
    return {"p": p, "rows": [list(row) for row in a]}


def matrix_from_json(data: dict) -> tuple[Matrix, int]:
    p = int(data["p"])
    PrimeField(p)
    rows = data["rows"]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix rows")
    return freeze(rows, p), p
