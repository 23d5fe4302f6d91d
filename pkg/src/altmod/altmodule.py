"""Alternate modules (A, phi): a finite abelian group with an alternating Q/Z-valued form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt
from typing import Sequence

from sympy import primefactors

from .ablattice import (
    QZ,
    FinAbGroup,
    Morphism,
    Subgroup,
    quotient_group,
    solve_congruence_kernel,
)


class InvalidModuleError(ValueError):
    """A Gram matrix violating one of the alternate-module invariants.

    ``invariant`` is one of "shape", "alternate", "antisymmetry", "compatibility".
    """

    def __init__(self, invariant: str, message: str, location: tuple[int, int] | None = None):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
        self.location = location


@dataclass(frozen=True)
class AlternateModule:
    group: FinAbGroup
    gram: tuple[tuple[QZ, ...], ...]

    def __init__(self, group: FinAbGroup | Sequence[int], gram: Sequence[Sequence[QZ]]):
        if not isinstance(group, FinAbGroup):
            group = FinAbGroup(group)
        gram = tuple(tuple(x if isinstance(x, QZ) else QZ.parse(str(x)) for x in row) for row in gram)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "gram", gram)
        self._validate()

    def _validate(self) -> None:
        r = self.group.rank
        d = self.group.orders
        if len(self.gram) != r or any(len(row) != r for row in self.gram):
            raise InvalidModuleError("shape", f"gram matrix must be {r}x{r}")
        for i in range(r):
            if not self.gram[i][i].is_zero():
                raise InvalidModuleError("alternate", f"gram[{i}][{i}] = {self.gram[i][i]} is not 0", (i, i))
        for i in range(r):
            for j in range(i + 1, r):
                if self.gram[i][j] != -self.gram[j][i]:
                    raise InvalidModuleError(
                        "antisymmetry", f"gram[{i}][{j}] = {self.gram[i][j]} but gram[{j}][{i}] = {self.gram[j][i]}", (i, j)
                    )
        for i in range(r):
            for j in range(r):
                if gcd(d[i], d[j]) % self.gram[i][j].den:
                    raise InvalidModuleError(
                        "compatibility",
                        f"gram[{i}][{j}] = {self.gram[i][j]} has order not dividing gcd({d[i]}, {d[j]})",
                        (i, j),
                    )

    @classmethod
    def trivial_form(cls, orders: Sequence[int]) -> "AlternateModule":
        return cls(FinAbGroup(orders), [[QZ()] * len(orders) for _ in orders])

    @property
    def orders(self) -> tuple[int, ...]:
        return self.group.orders

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def cardinality(self) -> int:
        return self.group.cardinality

    @cached_property
    def _scaled(self) -> tuple[int, list[list[int]]]:
        # E * gram as integers, E the exponent: phi(a, b) = (a^T G b mod E) / E
        E = self.group.exponent
        return E, [[x.num * (E // x.den) for x in row] for row in self.gram]

    def evaluate(self, a: Sequence[int], b: Sequence[int]) -> QZ:
        a = self.group.element(tuple(a))
        b = self.group.element(tuple(b))
        E, G = self._scaled
        total = sum(ai * sum(g * bj for g, bj in zip(G[i], b)) for i, ai in enumerate(a) if ai)
        return QZ(total, E)

    def pairing_row(self, s: Sequence[int]) -> list[int]:
        """Integer row v with phi(a, s) = (v . a) / E."""
        E, G = self._scaled
        return [sum(G[i][j] * s[j] for j in range(self.rank)) for i in range(self.rank)]

    def kernel(self) -> Subgroup:
        return kernel(self)

    def is_symplectic(self) -> bool:
        return kernel(self).is_trivial()

    def __str__(self) -> str:
        rows = ", ".join("[" + " ".join(str(x) for x in row) + "]" for row in self.gram)
        return f"AlternateModule(orders={list(self.orders)}, gram=[{rows}])"


def standard_symplectic(b_orders: Sequence[int]) -> AlternateModule:
    """B x B* for B = prod Z/b_i: generators f_1..f_s, f*_1..f*_s with phi(f_i, f*_i) = 1/b_i."""
    s = len(b_orders)
    gram = [[QZ() for _ in range(2 * s)] for _ in range(2 * s)]
    for i, b in enumerate(b_orders):
        gram[i][s + i] = QZ(1, b)
        gram[s + i][i] = QZ(-1, b)
    return AlternateModule(FinAbGroup(list(b_orders) * 2), gram)


def evaluate(m: AlternateModule, a: Sequence[int], b: Sequence[int]) -> QZ:
    return m.evaluate(a, b)


def kernel(m: AlternateModule) -> Subgroup:
    E, G = m._scaled
    # constraint j: sum_i a_i G[i][j] = 0 mod E
    M = [[G[i][j] for i in range(m.rank)] for j in range(m.rank)]
    return solve_congruence_kernel(M, [E] * m.rank, m.orders)


def orthogonal(m: AlternateModule, S: Subgroup) -> Subgroup:
    if S.ambient != m.group:
        raise ValueError("subgroup does not live in this module")
    E, _ = m._scaled
    M = [m.pairing_row(s) for s in S.gens]
    return solve_congruence_kernel(M, [E] * len(M), m.orders)


def is_isotropic(m: AlternateModule, S: Subgroup) -> bool:
    gens = S.gens
    return all(m.evaluate(gens[i], gens[j]).is_zero() for i in range(len(gens)) for j in range(i + 1, len(gens)))


def is_lagrangian(m: AlternateModule, S: Subgroup) -> bool:
    return orthogonal(m, S) == S


def lagrangian_cardinal(m: AlternateModule) -> int:
    """n = sqrt(|A| |K|), the common order of all Lagrangians."""
    sq = m.cardinality * kernel(m).cardinality
    n = isqrt(sq)
    if n * n != sq:
        raise AssertionError(f"|A||K| = {sq} is not a perfect square")
    return n


def find_lagrangian(m: AlternateModule) -> Subgroup:
    """Grow the kernel into a maximal isotropic subgroup.

    While current is not its own orthogonal, adjoin the first canonical
    generator of the orthogonal that is missing from current.
    """
    current = kernel(m)
    while True:
        orth = orthogonal(m, current)
        if orth == current:
            return current
        x = next(g for g in orth.gens if g not in current)
        current = Subgroup.generated(m.group, current.gens + (x,))


def ortho_sum(*modules: AlternateModule) -> AlternateModule:
    orders: list[int] = []
    for mod in modules:
        orders.extend(mod.orders)
    n = len(orders)
    gram = [[QZ() for _ in range(n)] for _ in range(n)]
    off = 0
    for mod in modules:
        for i in range(mod.rank):
            for j in range(mod.rank):
                gram[off + i][off + j] = mod.gram[i][j]
        off += mod.rank
    return AlternateModule(FinAbGroup(orders), gram)


def induced_submodule(m: AlternateModule, S: Subgroup) -> tuple[AlternateModule, Morphism]:
    """Restriction of phi to S on its canonical generators, with the inclusion into A."""
    if S.ambient != m.group:
        raise ValueError("subgroup does not live in this module")
    gens = S.gens
    gram = [[m.evaluate(g, h) for h in gens] for g in gens]
    sub = AlternateModule(FinAbGroup(S.orders), gram)
    return sub, Morphism.from_columns(sub.group, m.group, gens)


@dataclass(frozen=True)
class QuotientResult:
    quotient: AlternateModule
    projection: Morphism
    lifts: tuple[tuple[int, ...], ...]


def quotient_by_kernel(m: AlternateModule) -> QuotientResult:
    """The symplectic module A/K with the projection pi and a lift of each generator."""
    Q, pi, lifts = quotient_group(kernel(m))
    gram = [[m.evaluate(a, b) for b in lifts] for a in lifts]
    return QuotientResult(AlternateModule(Q, gram), pi, tuple(lifts))


def rebase(m: AlternateModule) -> tuple[AlternateModule, Morphism]:
    """Re-express m on a divisibility-ordered cyclic decomposition.

    Returns the new module and the isometry from m onto it.
    """
    new, incl = induced_submodule(m, Subgroup.whole(m.group))
    return new, incl.inverse()


def is_p_group(group: FinAbGroup, p: int) -> bool:
    return all(primefactors(d) == [p] for d in group.orders)


def sylow_decompose(m: AlternateModule) -> list[tuple[int, AlternateModule, Morphism]]:
    """Primary components S_p with their inclusions, one per prime dividing |A|.

    Components for distinct primes are mutually orthogonal, so the sum of the
    inclusions is an isometry from their orthogonal sum onto m.
    """
    N = m.cardinality
    primes = primefactors(N)
    if len(primes) == 1 and is_p_group(m.group, primes[0]):
        return [(primes[0], m, Morphism.identity(m.group))]
    parts = []
    for p in primes:
        cofactor = N
        while cofactor % p == 0:
            cofactor //= p
        Sp = Subgroup.generated(m.group, [m.group.scale(cofactor, m.group.generator(i)) for i in range(m.rank)])
        sub, incl = induced_submodule(m, Sp)
        parts.append((p, sub, incl))
    return parts


def sum_of_inclusions(parts: Sequence[Morphism], target: FinAbGroup) -> Morphism:
    """The map from the direct sum of the sources to ``target`` adding the images."""
    src = FinAbGroup(tuple(o for f in parts for o in f.source.orders))
    cols = [f.column(i) for f in parts for i in range(f.source.rank)]
    return Morphism.from_columns(src, target, cols)


def pulls_back(f: Morphism, source: AlternateModule, target: AlternateModule) -> bool:
    """True when phi_target(f e_i, f e_j) = phi_source(e_i, e_j) for every generator pair."""
    cols = [f.column(i) for i in range(source.rank)]
    return all(
        target.evaluate(cols[i], cols[j]) == source.gram[i][j] for i in range(source.rank) for j in range(source.rank)
    )
