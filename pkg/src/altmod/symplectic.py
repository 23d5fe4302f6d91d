"""Symplectic modules: hyperbolic splitting and classification as B x B*."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ablattice import FinAbGroup, Morphism, Subgroup, direct_sum
from .altmodule import (
    AlternateModule,
    induced_submodule,
    kernel,
    orthogonal,
    pulls_back,
    standard_symplectic,
    sum_of_inclusions,
    sylow_decompose,
)


class NotSymplecticError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    b_orders: tuple[int, ...]
    isometry: Morphism

    @property
    def standard(self) -> AlternateModule:
        return standard_symplectic(self.b_orders)


def max_pairing_pair(m: AlternateModule) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generators (x, y) whose pairing has the largest order among generator pairs.

    For a symplectic p-group this order equals the exponent and the orders of
    x and y. Ties go to the lexicographically first pair.
    """
    if m.cardinality == 1:
        raise NotSymplecticError("module is trivial")
    if not kernel(m).is_trivial():
        raise NotSymplecticError("kernel nontrivial")
    best = None
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            o = m.gram[i][j].order
            if best is None or o > best[0]:
                best = (o, i, j)
    _, i, j = best
    return m.group.generator(i), m.group.generator(j)


def split_symplectic_submodule(m: AlternateModule, B: Subgroup) -> tuple[AlternateModule, AlternateModule, Morphism]:
    """Split m as B + B^perp for a subgroup B carrying a nondegenerate form.

    Returns the modules induced on B and B^perp and the isometry from m onto
    their orthogonal sum. A trivial B gives the identity split (B^perp = A).
    """
    inner, inc_b = induced_submodule(m, B)
    if not kernel(inner).is_trivial():
        raise NotSymplecticError("induced form on B is degenerate")
    outer, inc_c = induced_submodule(m, orthogonal(m, B))
    sigma = sum_of_inclusions([inc_b, inc_c], m.group)
    return inner, outer, sigma.inverse()


def _classify_p(m: AlternateModule) -> tuple[list[int], Morphism]:
    # b_orders come out largest first; the caller reverses
    if m.cardinality == 1:
        return [], Morphism(m.group, FinAbGroup(), [])
    G = m.group
    x, y = max_pairing_pair(m)
    pairing = m.evaluate(x, y)
    d = pairing.order
    y = G.scale(pow(pairing.num, -1, d), y)  # now phi(x, y) = 1/d
    B = Subgroup.generated(G, [x, y])
    Bperp = orthogonal(m, B)
    outer, _ = induced_submodule(m, Bperp)
    b_rest, iso_rest = _classify_p(outer)
    s = len(b_rest)

    columns = []
    for i in range(m.rank):
        g = G.generator(i)
        # g = alpha x + beta y + c with c orthogonal to x and y
        alpha = (m.evaluate(g, y).num * d // m.evaluate(g, y).den) % d
        beta = (-m.evaluate(g, x).num * d // m.evaluate(g, x).den) % d
        c = G.add(g, G.add(G.scale(-alpha, x), G.scale(-beta, y)))
        rest = iso_rest(Bperp.coordinates(c))
        columns.append([alpha, *rest[:s], beta, *rest[s:]])
    b = [d] + b_rest
    return b, Morphism.from_columns(G, standard_symplectic(b).group, columns)


def _reverse_standard(b: Sequence[int]) -> Morphism:
    """Isometry Std(b) -> Std(reversed b) permuting the hyperbolic planes."""
    s = len(b)
    src = standard_symplectic(b).group
    cols = []
    for half in range(2):
        for i in range(s):
            cols.append(src.generator(half * s + (s - 1 - i)))
    tgt = standard_symplectic(list(reversed(b))).group
    return Morphism.from_columns(src, tgt, cols)


def merge_standard(parts: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], Morphism]:
    """Combine standard modules for pairwise coprime B_p into one standard module.

    ``parts`` are divisibility-ordered b_orders of the B_p. They are aligned on
    the right and multiplied position by position (CRT), giving the invariant
    factors of B = prod B_p. Returns those and the isometry from the
    orthogonal sum of the Std(B_p) onto Std(B).
    """
    s = max((len(b) for b in parts), default=0)
    merged = [1] * s
    for b in parts:
        for k, bk in enumerate(b):
            merged[s - len(b) + k] *= bk
    target = standard_symplectic(merged).group
    src_orders: list[int] = []
    cols = []
    for b in parts:
        sp = len(b)
        src_orders.extend(list(b) * 2)
        images_f, images_fs = [], []
        for k, bk in enumerate(b):
            j = s - sp + k
            mult = merged[j] // bk
            inv = pow(mult, -1, bk)
            images_f.append(target.scale(mult, target.generator(j)))
            images_fs.append(target.scale(inv * mult, target.generator(s + j)))
        cols.extend(images_f + images_fs)
    return tuple(merged), Morphism.from_columns(FinAbGroup(src_orders), target, cols)


def classify(m: AlternateModule) -> Classification:
    """Find b_orders and an isometry m -> Std(b_orders); m must be symplectic."""
    if not kernel(m).is_trivial():
        raise NotSymplecticError("kernel nontrivial")
    parts = sylow_decompose(m)
    inv = sum_of_inclusions([inc for _, _, inc in parts], m.group).inverse()
    b_parts, isos = [], []
    for p, part, _ in parts:
        b, iso = _classify_p(part)
        isos.append(_reverse_standard(b) @ iso)
        b_parts.append(list(reversed(b)))
    b, merge = merge_standard(b_parts)
    if parts:
        isometry = merge @ direct_sum(*isos) @ inv
    else:
        isometry = Morphism(m.group, FinAbGroup(), [])
    std = standard_symplectic(b)
    if not (pulls_back(isometry, m, std) and isometry.is_bijective()):
        raise AssertionError("classification isometry failed its own check")
    return Classification(b, isometry)
