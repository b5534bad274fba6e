"""The symplectic side: twisted conjugation, isotropic flags, orbit checks.

V = GF(p)^{2n} carries the standard symplectic form in the basis
e_1..e_n, f_1..f_n.  The involution theta(g) = J (g^T)^{-1} J^{-1} fixes
exactly the symplectic group, and the twisted set {g : theta(g) = g^{-1}}
models the quotient of GL_{2n} by it.  Pairs (x, v) with x in the twisted
set are acted on by Sp_{2n}(F_p); orbits are explored by breadth-first
closure under symplectic transvections, with no invariant shortcuts.

The flag-stabilizing Borel subgroup is taken in the theta-stable flag
order e_1, ..., e_n, f_n, ..., f_1; with the row-vector action its
unipotent radical is lower unitriangular in that order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from . import gfmat
from .gfmat import (
    BudgetExceededError,
    Matrix,
    PrimeField,
    Subspace,
    Vector,
    apply,
    identity,
    mat_inv,
    mat_mul,
    rank,
    transpose,
)


@dataclass(frozen=True)
class SymplecticSpace:
    """GF(p)^{2n} with the split symplectic form <e_i, f_i> = 1."""

    n: int
    p: int

    def __post_init__(self):
        PrimeField(self.p)
        if self.n < 1:
            raise ValueError("half-dimension must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def nu_h(self) -> int:
        """Dimension of a maximal unipotent subgroup of Sp_{2n} (= n^2)."""
        return self.n * self.n

    @cached_property
    def gram(self) -> Matrix:
        n, p = self.n, self.p
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = (-1) % p
        return tuple(tuple(r) for r in rows)

    @cached_property
    def gram_inv(self) -> Matrix:
        return mat_inv(self.gram, self.p)

    @cached_property
    def flag_order(self) -> tuple[int, ...]:
        """Coordinates of the theta-stable flag: e_1..e_n, f_n..f_1."""
        n = self.n
        return tuple(range(n)) + tuple(range(2 * n - 1, n - 1, -1))

    def form(self, u: Vector, w: Vector) -> int:
        p = self.p
        return sum(x * y for x, y in zip(apply(u, self.gram, p), w)) % p

    def theta(self, g: Matrix) -> Matrix:
        p = self.p
        return mat_mul(mat_mul(self.gram, mat_inv(transpose(g), p), p), self.gram_inv, p)

    def theta_inv_of(self, g: Matrix) -> Matrix:
        """theta(g)^{-1} = J g^T J^{-1}, avoiding one inversion."""
        p = self.p
        return mat_mul(mat_mul(self.gram, transpose(g), p), self.gram_inv, p)

    def is_symplectic(self, g: Matrix) -> bool:
        return mat_mul(mat_mul(g, self.gram, self.p), transpose(g), self.p) == self.gram

    def in_twisted_set(self, g: Matrix) -> bool:
        return mat_mul(self.theta(g), g, self.p) == identity(self.dim)

    def flag_step(self, k: int) -> Subspace:
        return Subspace.from_vectors(
            [tuple(1 if j == c else 0 for j in range(self.dim)) for c in self.flag_order[:k]],
            self.dim,
            self.p,
        )

    def torus_twisted(self, values: Sequence[int]) -> Matrix:
        """Element diag(t_1..t_n, t_1..t_n) of the twisted diagonal torus."""
        if len(values) != self.n:
            raise ValueError(f"need {self.n} torus values")
        vals = [v % self.p for v in values] * 2
        if any(v == 0 for v in vals):
            raise ValueError("torus values must be nonzero")
        return tuple(
            tuple(vals[i] if i == j else 0 for j in range(self.dim)) for i in range(self.dim)
        )

    def lagrangian(self) -> Subspace:
        return self.flag_step(self.n)

    def in_lagrangian(self, v: Vector) -> bool:
        return all(c == 0 for c in v[self.n :])


def identity_scaled(space: SymplecticSpace, c: int) -> Matrix:
    """The central element c * id."""
    dim, p = space.dim, space.p
    return tuple(
        tuple(c % p if i == j else 0 for j in range(dim)) for i in range(dim)
    )


def flag_unipotent_elements(space: SymplecticSpace) -> Iterator[Matrix]:
    """All elements of the unipotent radical of the flag-stabilizing Borel."""
    order = space.flag_order
    dim, p = space.dim, space.p
    free = [(order[i], order[j]) for i in range(dim) for j in range(i)]
    base = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    for values in gfmat.all_vectors(len(free), p):
        rows = [row[:] for row in base]
        for (i, j), val in zip(free, values):
            rows[i][j] = val
        yield tuple(tuple(r) for r in rows)


def in_flag_borel_coset(space: SymplecticSpace, y: Matrix, s: Matrix) -> bool:
    """Whether y lies in s U for the flag Borel, i.e. is flag-triangular
    with the diagonal pattern of the diagonal matrix s."""
    order = space.flag_order
    dim = space.dim
    for i in range(dim):
        oi = order[i]
        if y[oi][oi] != s[oi][oi]:
            return False
        for j in range(i + 1, dim):
            if y[oi][order[j]]:
                return False
    return True


def transvection(space: SymplecticSpace, u: Vector, c: int) -> Matrix:
    """The symplectic transvection w -> w + c <w, u> u."""
    p = space.p
    ju = apply(u, transpose(space.gram), p)  # (J u^T)_i = sum_k J[i][k] u[k]
    dim = space.dim
    return tuple(
        tuple((int(i == j) + c * ju[i] * u[j]) % p for j in range(dim)) for i in range(dim)
    )


def sp_generators(space: SymplecticSpace) -> list[Matrix]:
    """Transvection generators of Sp_{2n}(F_p).

    Directions e_i, f_i and the cross terms e_{i+1} + f_i connecting
    consecutive hyperbolic planes; coefficients +-1.  Generation is
    exercised directly in the tests.
    """
    n, p = space.n, space.p
    dirs: list[Vector] = []
    for i in range(n):
        dirs.append(tuple(1 if k == i else 0 for k in range(2 * n)))
        dirs.append(tuple(1 if k == n + i else 0 for k in range(2 * n)))
    for i in range(n - 1):
        dirs.append(tuple(1 if k in (i + 1, n + i) else 0 for k in range(2 * n)))
    gens = []
    for u in dirs:
        for c in (1, p - 1):
            gens.append(transvection(space, u, c))
    return gens


def _encode(x: Matrix, v: Vector) -> bytes:
    return bytes(c for row in x for c in row) + bytes(v)


@dataclass(frozen=True)
class OrbitSet:
    """BFS closure of a pair under the symplectic group action."""

    space: SymplecticSpace
    states: frozenset[bytes]

    @property
    def size(self) -> int:
        return len(self.states)

    def contains(self, x: Matrix, v: Vector) -> bool:
        return _encode(x, v) in self.states


def h_orbit(
    space: SymplecticSpace, x: Matrix, v: Vector, budget: int = 500_000
) -> OrbitSet:
    """Closure of {(x, v)} under (x, v) -> (g^-1 x g, v g) over generators."""
    p = space.p
    if space.p >= 256:
        raise ValueError("state encoding assumes p < 256")
    gens = [(g, mat_inv(g, p)) for g in sp_generators(space)]
    start = (x, v)
    seen = {_encode(x, v)}
    frontier = [start]
    while frontier:
        fresh = []
        for x0, v0 in frontier:
            for g, ginv in gens:
                x1 = mat_mul(mat_mul(ginv, x0, p), g, p)
                v1 = apply(v0, g, p)
                key = _encode(x1, v1)
                if key not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceededError(
                            f"orbit exceeded budget of {budget} states"
                        )
                    seen.add(key)
                    fresh.append((x1, v1))
        frontier = fresh
    return OrbitSet(space, frozenset(seen))


@dataclass(frozen=True)
class TwistedSetReport:
    mode: str
    solution_size: Optional[int]
    image_size: Optional[int]
    coincide: Optional[bool]
    samples_ok: Optional[bool]


def iotheta_set(
    space: SymplecticSpace,
    budget: int = 100_000,
    samples: int = 200,
    seed: int = 0,
) -> tuple[TwistedSetReport, Optional[tuple[set, set]]]:
    """The twisted set two ways: fixed points of g -> theta(g)^{-1} versus
    the image of g -> g theta(g)^{-1}.

    Full enumeration of GL when it fits the budget; otherwise a seeded
    sample of image points, each checked to satisfy the fixed-point equation.
    """
    p, dim = space.p, space.dim
    scan = p ** (dim * dim)
    if scan <= budget:
        solution = set()
        image = set()
        for g in gfmat.all_matrices(dim, p):
            if rank(g, p) < dim:
                continue
            if space.in_twisted_set(g):
                solution.add(g)
            image.add(mat_mul(g, space.theta_inv_of(g), p))
        report = TwistedSetReport(
            mode="full",
            solution_size=len(solution),
            image_size=len(image),
            coincide=(solution == image),
            samples_ok=None,
        )
        return report, (solution, image)
    rng = random.Random(seed)
    ok = True
    seen = set()
    for _ in range(samples):
        while True:
            g = gfmat.random_matrix(dim, p, rng)
            if rank(g, p) == dim:
                break
        point = mat_mul(g, space.theta_inv_of(g), p)
        seen.add(point)
        if not space.in_twisted_set(point):
            ok = False
    report = TwistedSetReport(
        mode="sampled",
        solution_size=None,
        image_size=len(seen),
        coincide=None,
        samples_ok=ok,
    )
    return report, None


def isotropic_flags(
    space: SymplecticSpace, budget: int = 1_000_000
) -> list[tuple[Subspace, ...]]:
    """All complete isotropic flags L_1 < ... < L_n, depth first."""
    n, p, dim = space.n, space.p, space.dim
    gram = space.gram
    out: list[tuple[Subspace, ...]] = []
    nodes = 0

    def perp(sub: Subspace) -> Subspace:
        if sub.dim == 0:
            return Subspace.full(dim, p)
        return gfmat.right_kernel(mat_mul(sub.basis, gram, p), p)

    def extend(chain: list[Subspace]):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"flag enumeration exceeded {budget} nodes")
        if len(chain) == n:
            out.append(tuple(chain))
            return
        current = chain[-1] if chain else Subspace.zero(dim, p)
        ambient = perp(current)
        complement = Subspace.from_vectors(
            [current.reduce(b) for b in ambient.basis], dim, p
        )
        for line in complement.lines():
            bigger = current.sum(Subspace.from_vectors([line], dim, p))
            extend(chain + [bigger])

    extend([])
    return out


def type_c_poincare(n: int, q: int) -> int:
    """Sum of q^length over the hyperoctahedral group, as a product."""
    out = 1
    for i in range(1, n + 1):
        out *= sum(q**k for k in range(2 * i))
    return out


def _solve_affine(rows: list[Vector], rhs: list[int], dim: int, p: int) -> Vector:
    """One solution c of the system rows . c = rhs; raises if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, _, pivots = gfmat.rref(tuple(tuple(r) for r in aug), p)
    if dim in pivots:
        raise ValueError("inconsistent linear system")
    c = [0] * dim
    for row, pc in zip(reduced, pivots):
        c[pc] = row[dim]
    return tuple(c)


def symplectic_transition(space: SymplecticSpace, flag: Sequence[Subspace]) -> Matrix:
    """An element of Sp mapping the standard isotropic flag onto the given one.

    Rows 1..n are a flag-adapted basis b_i of the isotropic steps; rows
    n+1..2n are a dual family c_i with <b_i, c_j> = delta_ij and <c_i, c_j> = 0,
    found by solving the pairing equations step by step.
    """
    n, p, dim = space.n, space.p, space.dim
    gram = space.gram
    bs: list[Vector] = []
    prev = Subspace.zero(dim, p)
    for step in flag:
        pick = next(b for b in step.basis if not prev.contains(b))
        bs.append(pick)
        prev = step
    cs: list[Vector] = []
    for j in range(n):
        rows = [apply(b, gram, p) for b in bs]
        rhs = [1 if i == j else 0 for i in range(n)]
        for built in cs:
            rows.append(apply(built, gram, p))
            rhs.append(0)
        cs.append(_solve_affine(rows, rhs, dim, p))
    h = tuple(bs + cs)
    if not space.is_symplectic(h):
        raise RuntimeError("transition completion failed the symplectic check")
    return h


def twisted_coset_set(space: SymplecticSpace, s: Matrix) -> list[Matrix]:
    """The intersection of the coset s U with the twisted set, by enumeration."""
    p = space.p
    out = []
    for u in flag_unipotent_elements(space):
        y = mat_mul(s, u, p)
        if space.in_twisted_set(y):
            out.append(y)
    return out


def exotic_fiber_count(
    space: SymplecticSpace,
    s: Matrix,
    x: Matrix,
    v: Vector,
    flags: Optional[Sequence[tuple[Subspace, ...]]] = None,
    transitions: Optional[Sequence[Matrix]] = None,
) -> int:
    """Isotropic flags whose transition drags x into s U and v into the
    Lagrangian step.

    Membership of h x h^{-1} in (sU)^{iota theta} reduces to flag
    triangularity with the diagonal pattern of s, since twistedness is
    preserved by symplectic conjugation.
    """
    p = space.p
    if flags is None:
        flags = isotropic_flags(space)
    if transitions is None:
        transitions = [symplectic_transition(space, flag) for flag in flags]
    count = 0
    for flag, h in zip(flags, transitions):
        if not flag[-1].contains(v):
            continue
        y = mat_mul(mat_mul(h, x, p), mat_inv(h, p), p)
        if in_flag_borel_coset(space, y, s):
            count += 1
    return count


def exotic_slice_count(
    space: SymplecticSpace,
    s: Matrix,
    u: Matrix,
    v: Vector,
    orbit_budget: int = 500_000,
) -> tuple[int, int]:
    """Count of the orbit of (s u, v) inside (sU)^{iota-theta} x M_n.

    Returns (slice_count, orbit_size).  Orbit membership is decided purely
    by lookup in the BFS closure.
    """
    p, n = space.p, space.n
    x0 = mat_mul(s, u, p)
    if not space.in_twisted_set(x0):
        raise ValueError("s u does not lie in the twisted set")
    if not space.in_lagrangian(v):
        raise ValueError("v must lie in the Lagrangian coordinate span")
    orbit = h_orbit(space, x0, v, budget=orbit_budget)
    candidates = twisted_coset_set(space, s)
    count = 0
    for y in candidates:
        for tail in gfmat.all_vectors(n, p):
            w = tail + (0,) * n
            if orbit.contains(y, w):
                count += 1
    return count, orbit.size


def z_variety_count(
    space: SymplecticSpace,
    s: Matrix,
    flags: Optional[Sequence[tuple[Subspace, ...]]] = None,
) -> int:
    """Points of the double-flag variety attached to s, by exhaustive pairing.

    For each ordered pair of isotropic flags the admissible x form the
    intersection of two conjugates of (sU)^{iota-theta}, and the admissible
    v fill the intersection of the two Lagrangian steps.
    """
    p = space.p
    if flags is None:
        flags = isotropic_flags(space)
    base = twisted_coset_set(space, s)
    xsets = []
    lagrangians = []
    for flag in flags:
        h = symplectic_transition(space, flag)
        hinv = mat_inv(h, p)
        xsets.append(frozenset(mat_mul(mat_mul(hinv, y, p), h, p) for y in base))
        lagrangians.append(flag[-1])
    total = 0
    for i, (xi, li) in enumerate(zip(xsets, lagrangians)):
        for j, (xj, lj) in enumerate(zip(xsets, lagrangians)):
            if j < i:
                continue
            shared = len(xi & xj)
            if not shared:
                continue
            meet = li.dim + lj.dim - rank(tuple(li.basis + lj.basis), p)
            term = shared * p**meet
            total += term if i == j else 2 * term
    return total


# ---------------------------------------------------------------------------
# Hyperoctahedral combinatorics


@dataclass(frozen=True)
class SignedPermutation:
    """Element of the hyperoctahedral group W_n as signed images of 1..n."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(abs(x) for x in self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a signed permutation: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        """Signed image of i; negative arguments flip the sign."""
        if i < 0:
            return -self.image[-i - 1]
        return self.image[i - 1]

    def inverse(self) -> "SignedPermutation":
        out = [0] * self.n
        for i, w in enumerate(self.image, start=1):
            if w > 0:
                out[w - 1] = i
            else:
                out[-w - 1] = -i
        return SignedPermutation(tuple(out))

    def apply_root(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """Push a root vector (coefficients of eps_1..eps_n) through w."""
        out = [0] * self.n
        for i, coeff in enumerate(root, start=1):
            if coeff:
                w = self(i)
                out[abs(w) - 1] += coeff * (1 if w > 0 else -1)
        return tuple(out)

    def matrix(self, space: SymplecticSpace) -> Matrix:
        """Symplectic signed-permutation matrix: e_i -> e_{w(i)} or f_{|w(i)|},
        f_i -> f_{w(i)} or -e_{|w(i)|}."""
        n, p = space.n, space.p
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i, w in enumerate(self.image):
            if w > 0:
                rows[i][w - 1] = 1
                rows[n + i][n + w - 1] = 1
            else:
                rows[i][n - w - 1] = 1
                rows[n + i][-w - 1] = (-1) % p
        h = tuple(tuple(r) for r in rows)
        assert space.is_symplectic(h)
        return h


def signed_permutations(n: int) -> Iterator[SignedPermutation]:
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(tuple(p * s for p, s in zip(perm, signs)))


def positive_roots_c(n: int) -> list[tuple[int, ...]]:
    """Positive roots of type C_n: eps_i +- eps_j (i < j) and 2 eps_i."""
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for sign in (1, -1):
                r = [0] * n
                r[i] = 1
                r[j] = sign
                roots.append(tuple(r))
    for i in range(n):
        r = [0] * n
        r[i] = 2
        roots.append(tuple(r))
    return roots


def is_positive_root(root: tuple[int, ...]) -> bool:
    for c in root:
        if c:
            return c > 0
    raise ValueError("zero vector is not a root")


def length(w: SignedPermutation) -> int:
    return sum(
        1 for r in positive_roots_c(w.n) if not is_positive_root(w.apply_root(r))
    )


def b_stat(w: SignedPermutation) -> int:
    """Long positive roots sent to positive roots by w^{-1}."""
    winv = w.inverse()
    count = 0
    for i in range(w.n):
        root = tuple(2 if k == i else 0 for k in range(w.n))
        if is_positive_root(winv.apply_root(root)):
            count += 1
    return count


def lagrangian_meet_dim(space: SymplecticSpace, w: SignedPermutation) -> int:
    """dim(M_n meet M_n w) by exact linear algebra."""
    m = space.lagrangian()
    moved = Subspace.from_vectors(
        [apply(b, w.matrix(space), space.p) for b in m.basis], space.dim, space.p
    )
    joint = rank(tuple(m.basis + moved.basis), space.p)
    return m.dim + moved.dim - joint


@dataclass(frozen=True)
class RootIdentityReport:
    image: tuple[int, ...]
    n: int
    b_w: int
    meet_dims: tuple[int, ...]
    combinatorial_ok: bool
    group_checks: tuple[dict, ...]
    ok: bool

    def to_json(self) -> dict:
        return {
            "w": list(self.image),
            "n": self.n,
            "b_w": self.b_w,
            "meet_dims": list(self.meet_dims),
            "combinatorial_ok": self.combinatorial_ok,
            "group_checks": list(self.group_checks),
            "ok": self.ok,
        }


def root_identity_check(
    w: SignedPermutation,
    group_primes: Sequence[int] = (2, 3),
    group_max_n: int = 2,
) -> RootIdentityReport:
    """The long-root count of w against the Lagrangian intersection dimension.

    b_w is computed from the root system; the intersection dimension by
    linear algebra over each prime.  For small n the group-level exponents
    are verified as well: with A = U meet wUw^{-1} inside GL_{2n},
    |A| = p^D, |A^theta| = p^d, |{u theta(u)^{-1}}| = p^{D-d}, and the
    bookkeeping d = (D - d) + b_w must hold.
    """
    n = w.n
    bw = b_stat(w)
    meets = []
    for p in group_primes:
        meets.append(lagrangian_meet_dim(SymplecticSpace(n, p), w))
    combinatorial_ok = all(m == bw for m in meets)
    group_checks = []
    overall = combinatorial_ok
    if n <= group_max_n:
        for p in group_primes:
            space = SymplecticSpace(n, p)
            wmat = w.matrix(space)
            winv = mat_inv(wmat, p)
            members = []
            for u in flag_unipotent_elements(space):
                if in_flag_borel_coset(
                    space, mat_mul(mat_mul(winv, u, p), wmat, p), identity(space.dim)
                ):
                    members.append(u)
            size = len(members)
            big_d = _exact_log(size, p)
            fixed = sum(1 for u in members if space.theta(u) == u)
            small_d = _exact_log(fixed, p)
            image = {mat_mul(u, space.theta_inv_of(u), p) for u in members}
            image_exp = _exact_log(len(image), p)
            ok = (
                big_d is not None
                and small_d is not None
                and image_exp is not None
                and image_exp == big_d - small_d
                and small_d == (big_d - small_d) + bw
            )
            overall = overall and ok
            group_checks.append(
                {
                    "p": p,
                    "dim_total": big_d,
                    "dim_fixed": small_d,
                    "dim_image": image_exp,
                    "ok": ok,
                }
            )
    return RootIdentityReport(
        image=w.image,
        n=n,
        b_w=bw,
        meet_dims=tuple(meets),
        combinatorial_ok=combinatorial_ok,
        group_checks=tuple(group_checks),
        ok=overall,
    )


def _exact_log(value: int, p: int) -> Optional[int]:
    """k with p^k = value, or None."""
    if value <= 0:
        return None
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k if value == 1 else None
