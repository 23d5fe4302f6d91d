"""Exact arithmetic over Q/Z, integer normal forms and finite abelian groups.

Everything here works with Python integers, so intermediate values never
overflow. Group elements are plain tuples of integers, each coordinate
reduced modulo the order of the matching cyclic factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Iterable, Sequence

Matrix = list[list[int]]


class QZ:
    """An element of Q/Z stored as a reduced fraction num/den with 0 <= num < den."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    @classmethod
    def parse(cls, text: str) -> "QZ":
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)

    @property
    def order(self) -> int:
        return self.den

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "QZ") -> "QZ":
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QZ":
        return QZ(-self.num, self.den)

    def __sub__(self, other: "QZ") -> "QZ":
        return self + (-other)

    def __mul__(self, k: int) -> "QZ":
        if not isinstance(k, int):
            return NotImplemented
        return QZ(self.num * k, self.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, QZ):
            return self.num == other.num and self.den == other.den
        if other == 0:
            return self.num == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"QZ({self.num}, {self.den})"


# ---------------------------------------------------------------------------
# integer matrices


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    """Product of integer matrices; ``inner`` fixes the shared dimension when A or B is empty."""
    if inner is None:
        inner = len(B) if B else (len(A[0]) if A else 0)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    return [[A[i][j] for i in range(len(A))] for j in range(ncols)]


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a square integer matrix with determinant +-1."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return out


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    """Return U, D, V with U*M*V = D, D diagonal, nonnegative and divisibility-ordered.

    The pivot is always the entry of smallest nonzero absolute value, ties going
    to the lowest (row, col), so the output is a deterministic function of M.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    A = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = abs(A[i][j])
                if a and (best is None or a < best[0]):
                    best = (a, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            # a nonzero remainder becomes the new pivot
            best = None
            for i in range(t + 1, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), t, j)
            if best is not None:
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            piv = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                done = False
            if done:
                break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(U, A, V)


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of the integer vectors x with M x = 0."""
    snf = smith_normal_form(M, ncols)
    r = snf.rank
    return [[snf.V[i][k] for i in range(ncols)] for k in range(r, ncols)]


def hermite_rows(vectors: Iterable[Sequence[int]], n: int) -> Matrix:
    """Row-style Hermite normal form of a full-rank lattice in Z^n.

    Upper triangular, positive pivots, entries above each pivot reduced into
    [0, pivot). Unique for the lattice, which makes it a structural key.
    """
    active = [list(v) for v in vectors if any(v)]
    pivots: Matrix = []
    for col in range(n):
        while True:
            nz = [k for k, v in enumerate(active) if v[col]]
            if len(nz) <= 1:
                break
            k0 = min(nz, key=lambda k: (abs(active[k][col]), k))
            piv = active[k0]
            for k in nz:
                if k != k0:
                    q = active[k][col] // piv[col]
                    active[k] = [a - q * b for a, b in zip(active[k], piv)]
            active = [v for v in active if any(v)]
        nz = [k for k, v in enumerate(active) if v[col]]
        if not nz:
            raise ValueError("lattice is not of full rank")
        row = active.pop(nz[0])
        if row[col] < 0:
            row = [-x for x in row]
        for prev in pivots:
            q = prev[col] // row[col]
            if q:
                for j in range(col, n):
                    prev[j] -= q * row[j]
        pivots.append(row)
    return pivots


def _lattice_coefficients(H: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Integer c with c*H = x for upper-triangular H, or None when x is outside the lattice."""
    x = list(x)
    n = len(H)
    c = []
    for i in range(n):
        if x[i] % H[i][i]:
            return None
        q = x[i] // H[i][i]
        c.append(q)
        if q:
            for j in range(i, n):
                x[j] -= q * H[i][j]
    return c


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinAbGroup:
    """Z/d_1 x ... x Z/d_r, each d_i >= 2; the empty tuple is the trivial group."""

    orders: tuple[int, ...]

    def __init__(self, orders: Iterable[int] = ()):
        orders = tuple(int(d) for d in orders)
        if any(d < 2 for d in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def cardinality(self) -> int:
        return prod(self.orders)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def generator(self, i: int) -> tuple[int, ...]:
        return tuple(int(j == i) for j in range(self.rank))

    def element(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Validate coordinates: right length and each 0 <= x_i < d_i."""
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        for x, d in zip(coords, self.orders):
            if not 0 <= x < d:
                raise ValueError(f"coordinate {x} out of range for Z/{d}")
        return tuple(coords)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(v, self.orders))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % d for x, d in zip(a, self.orders))

    def element_order(self, a) -> int:
        return lcm(1, *(d // gcd(x, d) for x, d in zip(a, self.orders)))

    def invariant_factors(self) -> list[int]:
        return [d for d in smith_normal_form([list(r) for r in _diag(self.orders)], self.rank).diagonal if d > 1]

    def elements(self):
        """All elements in lexicographic order (small groups only)."""
        from itertools import product as cartesian

        return cartesian(*(range(d) for d in self.orders))

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup(self.orders + other.orders)


def _diag(values: Sequence[int]) -> Matrix:
    return [[v if i == j else 0 for j in range(len(values))] for i, v in enumerate(values)]


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``ambient`` in canonical form.

    ``hnf`` is the Hermite basis of the preimage lattice in Z^r; it is unique
    for the subgroup and decides equality. ``gens`` are canonical generators of
    orders ``orders`` (divisibility-ordered) with S = <g_1> x ... x <g_k>.
    """

    ambient: FinAbGroup
    hnf: tuple[tuple[int, ...], ...]
    gens: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    _to_canonical: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def generated(cls, ambient: FinAbGroup, gens: Iterable[Sequence[int]]) -> "Subgroup":
        r = ambient.rank
        gens = [ambient.reduce(g) for g in gens]
        for g in gens:
            if len(g) != r:
                raise ValueError("generator has the wrong number of coordinates")
        H = hermite_rows(list(gens) + [list(row) for row in _diag(ambient.orders)], r)
        # coefficients of d_i e_i in the basis H
        C = [_lattice_coefficients(H, row) for row in _diag(ambient.orders)]
        snf = smith_normal_form(C, r)
        s = snf.diagonal
        Vinv = inverse_unimodular(snf.V) if r else []
        rows = matmul(Vinv, H, r)
        keep = [i for i in range(r) if s[i] > 1]
        return cls(
            ambient=ambient,
            hnf=tuple(tuple(row) for row in H),
            gens=tuple(ambient.reduce(rows[i]) for i in keep),
            orders=tuple(s[i] for i in keep),
            _to_canonical=tuple(tuple(snf.V[j][i] for j in range(r)) for i in keep),
        )

    @classmethod
    def whole(cls, ambient: FinAbGroup) -> "Subgroup":
        return cls.generated(ambient, [ambient.generator(i) for i in range(ambient.rank)])

    @classmethod
    def trivial(cls, ambient: FinAbGroup) -> "Subgroup":
        return cls.generated(ambient, [])

    @property
    def cardinality(self) -> int:
        return prod(self.orders)

    def invariant_factors(self) -> list[int]:
        return list(self.orders)

    def is_trivial(self) -> bool:
        return not self.orders

    def __contains__(self, x: Sequence[int]) -> bool:
        x = self.ambient.element(tuple(x))
        return _lattice_coefficients(self.hnf, x) is not None

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of x with respect to the canonical generators."""
        c = _lattice_coefficients(self.hnf, self.ambient.reduce(x))
        if c is None:
            raise ValueError(f"{tuple(x)} is not in the subgroup")
        return tuple(sum(ci * vi for ci, vi in zip(c, row)) % s for row, s in zip(self._to_canonical, self.orders))

    def issubset(self, other: "Subgroup") -> bool:
        return all(g in other for g in self.gens)

    def __le__(self, other: "Subgroup") -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.hnf == other.hnf

    def __hash__(self) -> int:
        return hash((self.ambient, self.hnf))

    def join(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.generated(self.ambient, self.gens + other.gens)


def subgroup_generated(ambient: FinAbGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    return Subgroup.generated(ambient, gens)


def subgroup_membership(S: Subgroup, x: Sequence[int]) -> bool:
    return x in S


def subgroup_invariant_factors(S: Subgroup) -> list[int]:
    return S.invariant_factors()


def solve_congruence_kernel(M: Sequence[Sequence[int]], row_moduli: Sequence[int], col_moduli: Sequence[int]) -> Subgroup:
    """All x in prod Z/col_moduli with sum_i M[j][i] x_i = 0 mod row_moduli[j] for every j.

    Each constraint must be well defined on the quotient, i.e. row_moduli[j]
    divides M[j][i] * col_moduli[i].
    """
    rows, cols = len(row_moduli), len(col_moduli)
    if len(M) != rows or any(len(row) != cols for row in M):
        raise ValueError(f"matrix shape does not match {rows} row moduli and {cols} column moduli")
    for j in range(rows):
        for i in range(cols):
            if (M[j][i] * col_moduli[i]) % row_moduli[j]:
                raise ValueError(f"constraint {j} is not well defined modulo column {i}")
    ambient = FinAbGroup(col_moduli)
    if rows == 0:
        return Subgroup.whole(ambient)
    # x is a solution iff M x - R y = 0 for some integer y
    stacked = [list(M[j]) + [-row_moduli[j] if k == j else 0 for k in range(rows)] for j in range(rows)]
    basis = integer_kernel(stacked, cols + rows)
    return Subgroup.generated(ambient, [v[:cols] for v in basis])


def quotient_group(S: Subgroup) -> tuple[FinAbGroup, "Morphism", list[tuple[int, ...]]]:
    """A/S in invariant-factor form, the projection, and a lift of each quotient generator."""
    A = S.ambient
    r = A.rank
    snf = smith_normal_form([list(row) for row in S.hnf], r)
    s = snf.diagonal
    keep = [k for k in range(r) if s[k] > 1]
    Q = FinAbGroup([s[k] for k in keep])
    # x -> x V (row vectors), coordinate k taken modulo s_k
    images = [[snf.V[j][k] % s[k] for j in range(r)] for k in keep]
    Vinv = inverse_unimodular(snf.V) if r else []
    lifts = [A.reduce(Vinv[k]) for k in keep]
    return Q, Morphism(A, Q, images), lifts


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class Morphism:
    """A homomorphism given by generator images: column i of ``images`` is f(e_i).

    Construction does not check well-definedness (a certificate verifier must
    be able to hold a broken map); see :meth:`is_well_defined`.
    """

    source: FinAbGroup
    target: FinAbGroup
    images: tuple[tuple[int, ...], ...]

    def __init__(self, source: FinAbGroup, target: FinAbGroup, images: Sequence[Sequence[int]]):
        if len(images) != target.rank or any(len(row) != source.rank for row in images):
            raise ValueError(f"image matrix must be {target.rank}x{source.rank}")
        rows = tuple(tuple(int(x) % d for x in row) for row, d in zip(images, target.orders))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", rows)

    @classmethod
    def identity(cls, group: FinAbGroup) -> "Morphism":
        return cls(group, group, identity(group.rank))

    @classmethod
    def from_columns(cls, source: FinAbGroup, target: FinAbGroup, columns: Sequence[Sequence[int]]) -> "Morphism":
        return cls(source, target, transpose(columns, target.rank))

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.images)

    def is_well_defined(self) -> bool:
        return all(self.target.scale(d, self.column(i)) == self.target.zero() for i, d in enumerate(self.source.orders))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce([sum(a * b for a, b in zip(row, x)) for row in self.images])

    def kernel(self) -> Subgroup:
        return morphism_kernel(self)

    def image(self) -> Subgroup:
        return Subgroup.generated(self.target, [self.column(i) for i in range(self.source.rank)])

    def is_injective(self) -> bool:
        return morphism_is_injective(self)

    def is_bijective(self) -> bool:
        return self.source.cardinality == self.target.cardinality and self.is_injective()

    def preimage(self, t: Sequence[int]) -> tuple[int, ...] | None:
        """Some x with f(x) = t, or None if t is not in the image."""
        s, rho = self.source.rank, self.target.rank
        if rho == 0:
            return self.source.zero()
        A = [list(self.images[k]) + [self.target.orders[k] if j == k else 0 for j in range(rho)] for k in range(rho)]
        snf = smith_normal_form(A, s + rho)
        Ut = [sum(u * x for u, x in zip(row, t)) for row in snf.U]
        w = [0] * (s + rho)
        for i in range(rho):
            dii = snf.D[i][i]
            if Ut[i] % dii:
                return None
            w[i] = Ut[i] // dii
        y = [sum(snf.V[i][k] * w[k] for k in range(s + rho)) for i in range(s)]
        return self.source.reduce(y)

    def inverse(self) -> "Morphism":
        if not self.is_bijective():
            raise ValueError("morphism is not bijective")
        cols = [self.preimage(self.target.generator(k)) for k in range(self.target.rank)]
        return Morphism.from_columns(self.target, self.source, cols)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return morphism_compose(self, other)


def morphism_kernel(f: Morphism) -> Subgroup:
    if not f.is_well_defined():
        raise ValueError("morphism is not well defined")
    return solve_congruence_kernel(f.images, f.target.orders, f.source.orders)


def morphism_is_injective(f: Morphism) -> bool:
    return morphism_kernel(f).is_trivial()


def morphism_compose(g: Morphism, f: Morphism) -> Morphism:
    """g o f."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: {f.target.orders} is not {g.source.orders}")
    return Morphism(f.source, g.target, matmul(g.images, f.images, f.target.rank))


def direct_sum(*fs: Morphism) -> Morphism:
    """Block-diagonal morphism between the direct sums of sources and targets."""
    src = FinAbGroup(sum((f.source.orders for f in fs), ()))
    tgt = FinAbGroup(sum((f.target.orders for f in fs), ()))
    rows: Matrix = []
    col0 = 0
    for f in fs:
        for row in f.images:
            rows.append([0] * col0 + list(row) + [0] * (src.rank - col0 - f.source.rank))
        col0 += f.source.rank
    return Morphism(src, tgt, rows)
