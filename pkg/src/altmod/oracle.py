"""Brute-force ground truth for small alternate modules.

Works on explicit element tables so that it shares no code path with the
Smith-normal-form machinery it is used to audit. Subgroups are frozensets
of coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm

import numpy as np

from .ablattice import QZ
from .altmodule import AlternateModule

DEFAULT_BOUND = 512
HARD_BOUND = 4096
ISOMETRY_BOUND = 256

ElementSet = frozenset


class BoundExceeded(ValueError):
    pass


class ElementTable:
    """All elements of A indexed 0..N-1 in lexicographic order, with the pairing table."""

    def __init__(self, m: AlternateModule, bound: int = DEFAULT_BOUND):
        N = m.cardinality
        limit = min(bound, HARD_BOUND)
        if N > limit:
            raise BoundExceeded(f"|A| = {N} exceeds the oracle bound {limit}")
        self.module = m
        self.orders = np.array(m.orders, dtype=np.int64)
        self.N = N
        r = m.rank
        self.coords = np.array(list(product(*(range(d) for d in m.orders))), dtype=np.int64).reshape(N, r)
        # mixed-radix weights matching lexicographic order
        w = [1] * r
        for i in range(r - 2, -1, -1):
            w[i] = w[i + 1] * m.orders[i + 1]
        self.weights = np.array(w, dtype=np.int64)
        # pairing[a, b] = numerator of phi(a, b) over the common denominator E
        E = m.group.exponent
        G = np.array([[x.num * (E // x.den) for x in row] for row in m.gram], dtype=np.int64).reshape(r, r)
        self.E = E
        self.pairing = (self.coords @ G @ self.coords.T) % E if r else np.zeros((1, 1), dtype=np.int64)

    def index(self, x) -> int:
        return int(np.dot(np.asarray(x, dtype=np.int64) % self.orders, self.weights)) if len(x) else 0

    def element(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[i])

    def shift(self, idx: np.ndarray, y: int) -> np.ndarray:
        """Indices of {x + y : x in idx}."""
        return ((self.coords[idx] + self.coords[y]) % self.orders) @ self.weights

    def close(self, H: np.ndarray, x: int) -> np.ndarray:
        """Sorted indices of <H, x> for a subgroup H given by sorted indices."""
        inH = np.zeros(self.N, dtype=bool)
        inH[H] = True
        parts = [H]
        cur = x
        while not inH[cur]:
            parts.append(self.shift(H, cur))
            cur = int(self.shift(np.array([cur]), x)[0])
        return np.unique(np.concatenate(parts))

    def span(self, gens) -> np.ndarray:
        H = np.array([0], dtype=np.int64)
        for g in gens:
            H = self.close(H, self.index(g))
        return H

    def as_set(self, idx: np.ndarray) -> ElementSet:
        return frozenset(self.element(int(i)) for i in idx)

    def is_isotropic(self, idx: np.ndarray) -> bool:
        return not self.pairing[np.ix_(idx, idx)].any()


@dataclass(frozen=True)
class SubgroupCensus:
    ambient: AlternateModule
    subgroups: tuple[ElementSet, ...]
    maximal_isotropic: tuple[ElementSet, ...]


def _sort_key(s: ElementSet):
    return (len(s), sorted(s))


def enumerate_subgroups(m: AlternateModule, bound: int = DEFAULT_BOUND) -> SubgroupCensus:
    """Every subgroup of A, found by closing under one element at a time.

    A subgroup H is a maximal isotropic one when it is isotropic and no
    one-element extension <H, x> is; any larger isotropic subgroup would
    contain such an extension.
    """
    T = ElementTable(m, bound)
    zero = np.array([0], dtype=np.int64)
    seen: dict[bytes, np.ndarray] = {zero.tobytes(): zero}
    queue = [zero]
    maximal = []
    while queue:
        H = queue.pop()
        covered = np.zeros(T.N, dtype=bool)
        covered[H] = True
        iso = T.is_isotropic(H)
        extendable = False
        for x in range(T.N):
            if covered[x]:
                continue
            covered[T.shift(H, x)] = True  # <H, x> depends only on the coset x + H
            K = T.close(H, x)
            key = K.tobytes()
            if key not in seen:
                seen[key] = K
                queue.append(K)
            if iso and not extendable and T.is_isotropic(K):
                extendable = True
        if iso and not extendable:
            maximal.append(H)
    subs = sorted((T.as_set(H) for H in seen.values()), key=_sort_key)
    maxi = sorted((T.as_set(H) for H in maximal), key=_sort_key)
    return SubgroupCensus(m, tuple(subs), tuple(maxi))


def brute_kernel(m: AlternateModule, bound: int = DEFAULT_BOUND) -> ElementSet:
    T = ElementTable(m, bound)
    idx = np.flatnonzero(~T.pairing.any(axis=1))
    return T.as_set(idx)


def brute_orthogonal(m: AlternateModule, S, bound: int = DEFAULT_BOUND) -> ElementSet:
    """{a : phi(a, s) = 0 for all s in S}, S any collection of elements."""
    T = ElementTable(m, bound)
    cols = [T.index(s) for s in S]
    idx = np.flatnonzero(~T.pairing[:, cols].any(axis=1)) if cols else np.arange(T.N)
    return T.as_set(idx)


def span(m: AlternateModule, gens, bound: int = DEFAULT_BOUND) -> ElementSet:
    """Elements of the subgroup generated by ``gens``, by repeated addition."""
    T = ElementTable(m, bound)
    return T.as_set(T.span(gens))


def _order_profile(m: AlternateModule) -> dict[int, int]:
    prof: dict[int, int] = {}
    for x in product(*(range(d) for d in m.orders)):
        o = lcm(1, *(d // np.gcd(c, d) for c, d in zip(x, m.orders)))
        prof[int(o)] = prof.get(int(o), 0) + 1
    return prof


def brute_isometric(m1: AlternateModule, m2: AlternateModule, bound: int = ISOMETRY_BOUND) -> bool:
    """Exhaustive search for an isomorphism A1 -> A2 pulling phi2 back to phi1.

    Generator images are restricted to elements of the same order and pruned
    as soon as a pairing with an earlier image disagrees.
    """
    if m1.cardinality != m2.cardinality:
        return False
    if m1.cardinality > min(bound, HARD_BOUND):
        raise BoundExceeded(f"|A| = {m1.cardinality} exceeds the isometry bound {bound}")
    if _order_profile(m1) != _order_profile(m2):
        return False
    T2 = ElementTable(m2, HARD_BOUND)
    orders2 = [m2.group.element_order(T2.element(i)) for i in range(T2.N)]
    candidates = [[i for i in range(T2.N) if orders2[i] == d] for d in m1.orders]
    target = [[m1.gram[i][j] for j in range(m1.rank)] for i in range(m1.rank)]

    def pair(a: int, b: int) -> QZ:
        return QZ(int(T2.pairing[a, b]), T2.E)

    chosen: list[int] = []

    def search(i: int) -> bool:
        if i == m1.rank:
            return len(T2.span([T2.element(c) for c in chosen])) == T2.N
        for c in candidates[i]:
            if all(pair(chosen[j], c) == target[j][i] for j in range(i)):
                chosen.append(c)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return search(0)
