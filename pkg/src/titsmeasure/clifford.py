"""Structure-constant oracle for even Clifford algebra Brauer classes.

Builds the 2^n-dimensional Clifford algebra of a diagonal form on the subset
basis e_S, restricts to the even part, splits off a simple component when the
dimension is even (via the central idempotent cut out by the volume element),
and identifies quaternion classes by probing for anticommuting square roots
of scalars.  Everything runs over exact rationals.

This is deliberately independent of the closed-form invariant in
``quadforms``: no n mod 8 case table appears here.  Practical up to n = 6,
which covers every form dimension the quadric family needs pinned.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Sequence

from .brauer import RationalClass
from .quadforms import QuadraticForm, signed_discriminant
from .rationals import quaternion_class

Vector = tuple[Fraction, ...]


def _tau(s: int, t: int) -> int:
    """Number of index pairs (x in s, y in t) with x > y; the reordering sign."""
    count = 0
    x = s
    while x:
        i = (x & -x).bit_length() - 1
        count += bin(t & ((1 << i) - 1)).count("1")
        x &= x - 1
    return count


class CliffordAlgebra:
    """Clifford algebra of <a_1,...,a_n> with basis e_S for S a bitmask."""

    def __init__(self, entries: Sequence[Fraction]):
        self.entries = tuple(Fraction(a) for a in entries)
        self.n = len(self.entries)
        self.size = 1 << self.n

    def basis_product(self, s: int, t: int) -> tuple[Fraction, int]:
        coef = Fraction(-1) ** _tau(s, t)
        common = s & t
        while common:
            i = (common & -common).bit_length() - 1
            coef *= self.entries[i]
            common &= common - 1
        return coef, s ^ t

    def zero(self) -> Vector:
        return (Fraction(0),) * self.size

    def basis_vector(self, mask: int) -> Vector:
        return tuple(
            Fraction(1) if i == mask else Fraction(0) for i in range(self.size)
        )

    def one(self) -> Vector:
        return self.basis_vector(0)

    def mul(self, x: Vector, y: Vector) -> Vector:
        out = [Fraction(0)] * self.size
        for s, xs in enumerate(x):
            if not xs:
                continue
            for t, yt in enumerate(y):
                if not yt:
                    continue
                coef, mask = self.basis_product(s, t)
                out[mask] += xs * yt * coef
        return tuple(out)

    def even_masks(self) -> list[int]:
        return [m for m in range(self.size) if bin(m).count("1") % 2 == 0]


def _add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))

def _scale(x: Vector, c: Fraction) -> Vector:
    return tuple(c * a for a in x)

def _sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))

def _is_zero(x: Vector) -> bool:
    return all(a == 0 for a in x)


def _echelon(vectors: Sequence[Vector]) -> list[Vector]:
    """Row-reduced independent spanning set (exact Gaussian elimination)."""
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    for v in vectors:
        row = list(v)
        for r, p in zip(rows, pivots):
            if row[p]:
                c = row[p]
                for i in range(len(row)):
                    row[i] -= c * r[i]
        for p, a in enumerate(row):
            if a:
                inv = 1 / a
                rows.append([x * inv for x in row])
                pivots.append(p)
                break
    order = sorted(range(len(rows)), key=lambda i: pivots[i])
    return [tuple(rows[i]) for i in order]


def _solve_exact(basis: Sequence[Vector], target: Vector) -> list[Fraction] | None:
    """Gaussian elimination solving sum c_i basis_i = target, exact."""
    m = len(target)
    k = len(basis)
    # Augmented matrix with columns = basis vectors, last column = target.
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    # Inconsistent if a zero row has nonzero RHS.
    for i in range(r, m):
        if rows[i][k]:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivot_cols):
        sol[c] = rows[i][k]
    # Free columns default to zero; verify (guards underdetermined systems).
    check = [Fraction(0)] * m
    for j in range(k):
        if sol[j]:
            for i in range(m):
                check[i] += sol[j] * basis[j][i]
    if tuple(check) != tuple(target):
        return None
    return sol


def _exact_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError(f"not a square: {x}")
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        raise ValueError(f"not a square: {x}")
    return Fraction(rn, rd)


class _Subalgebra:
    """A unital subalgebra of a Clifford algebra, in ambient coordinates."""

    def __init__(self, alg: CliffordAlgebra, one: Vector, basis: Sequence[Vector]):
        self.alg = alg
        self.one = one
        self.basis = _echelon(basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def scalar_of(self, w: Vector) -> Fraction:
        """lambda with w == lambda * one; raises if w is not scalar."""
        pivot = next(i for i, a in enumerate(self.one) if a)
        lam = w[pivot] / self.one[pivot]
        if w != _scale(self.one, lam):
            raise ValueError("element is not a scalar multiple of the identity")
        return lam

    def random_element(self, rng: random.Random) -> Vector:
        out = self.alg.zero()
        for b in self.basis:
            c = rng.randint(-4, 4)
            if c:
                out = _add(out, _scale(b, Fraction(c)))
        return out

    def pure_scalar_square(
        self, w: Vector
    ) -> tuple[Vector, Fraction] | None:
        """Project w off the identity so its square is scalar.

        Every element of a quaternion algebra satisfies w^2 = t*w + s; the
        trace-free part w - t/2 then squares to the scalar s + t^2/4.  Returns
        None when w is itself scalar (the fit degenerates).
        """
        sq = self.alg.mul(w, w)
        fit = _solve_exact([w, self.one], sq)
        if fit is None:
            raise ValueError("element does not satisfy a quadratic relation")
        t, s = fit
        try:
            self.scalar_of(w)
            return None  # scalar input carries no direction
        except ValueError:
            pass
        w0 = _sub(w, _scale(self.one, t / 2))
        return w0, s + t * t / 4


def _quaternion_symbol(sub: _Subalgebra, rng: random.Random) -> tuple[Fraction, Fraction]:
    """Symbol (alpha, beta) of a 4-dimensional quaternion subalgebra.

    Finds anticommuting trace-free elements with nonzero scalar squares by
    random probing; retries skip nilpotent directions in split algebras.
    """
    if sub.dim != 4:
        raise ValueError(f"expected a 4-dimensional algebra, got dim {sub.dim}")
    for _ in range(5000):
        probe = sub.pure_scalar_square(sub.random_element(rng))
        if probe is None:
            continue
        w0, alpha = probe
        if not alpha:
            continue
        probe2 = sub.pure_scalar_square(sub.random_element(rng))
        if probe2 is None:
            continue
        y0, _ = probe2
        # Orthogonalize: for trace-free x, z the combination xz + zx is
        # scalar; subtracting the projection makes y1 anticommute with w0.
        cross = _add(sub.alg.mul(w0, y0), sub.alg.mul(y0, w0))
        sigma = sub.scalar_of(cross)
        y1 = _sub(y0, _scale(w0, sigma / (2 * alpha)))
        if _is_zero(y1):
            continue
        beta = sub.scalar_of(sub.alg.mul(y1, y1))
        if beta:
            return alpha, beta
    raise RuntimeError("failed to probe a quaternion basis (exhausted retries)")


def _centralizer(
    sub: _Subalgebra, generators: Sequence[Vector]
) -> list[Vector]:
    """Basis of {x in sub : xg = gx for every generator g}."""
    d = sub.dim
    rows: list[list[Fraction]] = []
    for g in generators:
        # Commutator of each basis vector with g, as columns of a system.
        images = [
            _sub(sub.alg.mul(b, g), sub.alg.mul(g, b)) for b in sub.basis
        ]
        for coord in range(sub.alg.size):
            row = [img[coord] for img in images]
            if any(row):
                rows.append(row)
    # Kernel of the stacked matrix.
    kernel = _kernel(rows, d)
    return [
        tuple(
            sum((c * b[i] for c, b in zip(vec, sub.basis)), Fraction(0))
            for i in range(sub.alg.size)
        )
        for vec in kernel
    ]


def _kernel(rows: list[list[Fraction]], width: int) -> list[list[Fraction]]:
    mat = [row[:] for row in rows]
    pivots: dict[int, int] = {}
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
    out = []
    for free in range(width):
        if free in pivots:
            continue
        vec = [Fraction(0)] * width
        vec[free] = Fraction(1)
        for c, row in pivots.items():
            vec[c] = -mat[row][free]
        out.append(vec)
    return out


def even_clifford_class_by_structure(
    q: QuadraticForm, *, seed: int = 2, component_sign: int = 1
) -> RationalClass:
    """Brauer class of the even Clifford algebra, from structure constants.

    For even dimension (trivial signed discriminant required) the class of the
    component carved out by the idempotent (1 + sign * omega/rho)/2; both signs
    give the same answer, which the tests exercise.
    """
    n = q.dim
    if not 3 <= n <= 6:
        raise ValueError(f"structure oracle supports dimensions 3..6, got {n}")
    if component_sign not in (1, -1):
        raise ValueError("component_sign must be +1 or -1")
    rng = random.Random(seed)
    alg = CliffordAlgebra(q.entries)
    even = [alg.basis_vector(m) for m in alg.even_masks()]

    if n % 2 == 1:
        sub = _Subalgebra(alg, alg.one(), even)
        one = alg.one()
    else:
        if signed_discriminant(q) != 1:
            raise ValueError(
                "even-dimensional form with nontrivial signed discriminant is "
                "outside the supported setting"
            )
        omega = alg.basis_vector(alg.size - 1)
        omega_sq = _Subalgebra(alg, alg.one(), [alg.one()]).scalar_of(
            alg.mul(omega, omega)
        )
        rho = _exact_sqrt(omega_sq)
        idem = _scale(
            _add(alg.one(), _scale(omega, Fraction(component_sign) / rho)),
            Fraction(1, 2),
        )
        component = [alg.mul(idem, b) for b in even]
        sub = _Subalgebra(alg, idem, component)
        one = idem

    if sub.dim == 4:
        alpha, beta = _quaternion_symbol(sub, rng)
        return quaternion_class(alpha, beta)

    if sub.dim != 16:
        raise AssertionError(f"unexpected even-part dimension {sub.dim}")

    # Degree-4 case: split off the quaternion subalgebra generated by the
    # projections of e1e2 and e1e3, then pair it with its centralizer.
    u = alg.mul(one, alg.basis_vector(0b011))
    v = alg.mul(one, alg.basis_vector(0b101))
    alpha = sub.scalar_of(alg.mul(u, u))
    beta = sub.scalar_of(alg.mul(v, v))
    first = quaternion_class(alpha, beta)
    cent_basis = _centralizer(sub, [u, v])
    cent = _Subalgebra(alg, one, cent_basis)
    alpha2, beta2 = _quaternion_symbol(cent, rng)
    return first + quaternion_class(alpha2, beta2)
