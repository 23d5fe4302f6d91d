"""Constructive embedding of an alternate module into a standard module B x B*.

A non-symplectic p-primary module is enlarged one step at a time, keeping
the Lagrangian order n fixed while |A| grows, until the kernel vanishes. The
resulting symplectic module is then classified. Each step records enough
data to be audited on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any

from .ablattice import QZ, FinAbGroup, Morphism, Subgroup, direct_sum
from .altmodule import (
    AlternateModule,
    is_p_group,
    kernel,
    lagrangian_cardinal,
    ortho_sum,
    quotient_by_kernel,
    rebase,
    standard_symplectic,
    sum_of_inclusions,
    sylow_decompose,
)
from .symplectic import classify, merge_standard, split_symplectic_submodule

CASE1 = "case1_adjoin_zp"
CASE2_SPLIT = "case2_split_symplectic"
CASE2_STRETCH = "case2_stretch_generator"


class StepError(ValueError):
    """A construction step was requested outside its preconditions."""


@dataclass(frozen=True)
class ExtensionStep:
    kind: str
    input: AlternateModule
    output: AlternateModule
    inclusion: Morphism
    witness: dict[str, Any]

    def record(self) -> dict[str, Any]:
        return {"kind": self.kind, "witness": self.witness}


@dataclass(frozen=True)
class EmbeddingCertificate:
    source: AlternateModule
    b_orders: tuple[int, ...]
    embedding: Morphism
    trace: tuple[dict[str, Any], ...] = ()
    steps: tuple[ExtensionStep, ...] = field(default=(), compare=False, repr=False)


def _in_pA(x, p: int) -> bool:
    # valid when every cyclic factor has order divisible by p
    return all(c % p == 0 for c in x)


def _check_p_group(m: AlternateModule, p: int) -> None:
    if m.cardinality > 1 and not is_p_group(m.group, p):
        raise StepError(f"module of order {m.cardinality} is not a {p}-group")


def _coords(x) -> list[int]:
    return [int(c) for c in x]


def extend_case1(m: AlternateModule, p: int) -> ExtensionStep:
    """Adjoin Z/p = <gamma> pairing to one generator, when K is not inside pA.

    Works on the divisibility-ordered rebasing of m: k0 is the first canonical
    generator of K outside pA and i0 the first index with p not dividing its
    coefficient; then phi(gamma, e_i0) = 1/p and gamma is orthogonal to the rest.
    """
    _check_p_group(m, p)
    base, to_base = rebase(m)
    K = kernel(base)
    k0 = next((k for k in K.gens if not _in_pA(k, p)), None)
    if k0 is None:
        raise StepError("kernel is contained in pA; case 1 does not apply")
    i0 = next(i for i, a in enumerate(k0) if a % p)
    r = base.rank
    gram = [[QZ()] * (r + 1)] + [[QZ()] + list(row) for row in base.gram]
    gram = [list(row) for row in gram]
    gram[0][i0 + 1] = QZ(1, p)
    gram[i0 + 1][0] = QZ(-1, p)
    out = AlternateModule([p, *base.orders], gram)
    into = Morphism.from_columns(base.group, out.group, [(0, *base.group.generator(i)) for i in range(r)])
    witness = {
        "p": p,
        "basis": [_coords(to_base.inverse()(base.group.generator(i))) for i in range(r)],
        "k0": _coords(k0),
        "i0": i0,
        "gamma_index": 0,
        "gamma_pairing": str(out.evaluate(out.group.generator(0), (0, *k0))),
    }
    return ExtensionStep(CASE1, m, out, into @ to_base, witness)


def _canonical_root(q: QZ, p: int) -> QZ:
    # a/m -> a/(pm), one of the p solutions of p * lambda = q
    return QZ(q.num, p * q.den)


def extend_stretch(m: AlternateModule, p: int, e_index: int) -> ExtensionStep:
    """Replace the generator e = e_index by e_hat of order p*ord(e) with p*e_hat = e.

    Needs ord(phi(e, e_i)) < ord(e_i) for every other generator; then
    phi(e_hat, e_i) is the canonical p-th root of phi(e, e_i).
    """
    _check_p_group(m, p)
    r = m.rank
    for i in range(r):
        if i != e_index and m.gram[e_index][i].order >= m.orders[i]:
            raise StepError(
                f"phi(e_{e_index}, e_{i}) = {m.gram[e_index][i]} has full order {m.orders[i]}; cannot stretch"
            )
    gram = [list(row) for row in m.gram]
    roots = {}
    for i in range(r):
        if i != e_index:
            lam = _canonical_root(m.gram[e_index][i], p)
            roots[i] = lam
            gram[e_index][i] = lam
            gram[i][e_index] = -lam
    orders = list(m.orders)
    orders[e_index] *= p
    out = AlternateModule(orders, gram)
    images = [out.group.scale(p if i == e_index else 1, out.group.generator(i)) for i in range(r)]
    incl = Morphism.from_columns(m.group, out.group, images)
    witness = {
        "p": p,
        "e_index": e_index,
        "roots": {str(i): str(lam) for i, lam in roots.items()},
    }
    return ExtensionStep(CASE2_STRETCH, m, out, incl, witness)


def _stretch_kernel_witness(base: AlternateModule, p: int) -> tuple[int, ...]:
    """An element w of K with phi(e, w / p) of order p, e the first generator.

    Classify A/K, read pi(e) in the standard basis, pick a coordinate not
    divisible by p and pull back the partner basis element a0; the witness is
    ord(a0 mod K) * a0.
    """
    q = quotient_by_kernel(base)
    cls = classify(q.quotient)
    to_std = cls.isometry @ q.projection
    s = len(cls.b_orders)
    image = to_std(base.group.generator(0))
    target = to_std.target
    for i in range(s):
        # coefficient of f*_i pairs with f_i, coefficient of f_i with f*_i
        if image[s + i] % p:
            partner = target.generator(i)
            break
        if image[i] % p:
            partner = target.generator(s + i)
            break
    else:
        raise AssertionError("pi(e) lies in p(A/K)")
    a0 = to_std.preimage(partner)
    return base.group.scale(cls.b_orders[i], a0)


def _check_constant_lagrangians(step: ExtensionStep, w: tuple[int, ...], p: int) -> None:
    """Recompute both kernels around a witness w in K_in with iota(w) outside K_out."""
    K_in, K_out = kernel(step.input), kernel(step.output)
    iw = step.inclusion(w)
    if w not in K_in or iw in K_out:
        raise AssertionError("kernel witness does not separate the kernels")
    image = Subgroup.generated(step.output.group, [step.inclusion(k) for k in K_in.gens])
    if not (K_out <= image and image.cardinality == p * K_out.cardinality):
        raise AssertionError("kernel of the extension is not an index-p subgroup of the old kernel")


def fundamental_step(m: AlternateModule, p: int) -> ExtensionStep:
    """One extension with |A| growing and n fixed, for a non-symplectic p-group module.

    Dispatch on the divisibility-ordered rebasing A = <e> x <e_1> x ...:
    case 1 if K is not inside pA; otherwise split off <e, e_i> when some
    phi(e, e_i) has order d_i and recurse on its orthogonal; otherwise stretch e.
    """
    _check_p_group(m, p)
    K = kernel(m)
    if K.is_trivial():
        raise StepError("module is symplectic; no extension step needed")
    base, to_base = rebase(m)
    Kb = kernel(base)
    if any(not _in_pA(k, p) for k in Kb.gens):
        return extend_case1(m, p)

    for i in range(1, base.rank):
        if base.gram[0][i].order == base.orders[i]:
            B = Subgroup.generated(base.group, [base.group.generator(0), base.group.generator(i)])
            inner, outer, split = split_symplectic_submodule(base, B)
            sub = fundamental_step(outer, p)
            out = ortho_sum(inner, sub.output)
            incl = direct_sum(Morphism.identity(inner.group), sub.inclusion) @ split @ to_base
            witness = {
                "p": p,
                "basis": [_coords(to_base.inverse()(base.group.generator(j))) for j in range(base.rank)],
                "pair": [0, i],
                "inner_orders": list(inner.orders),
                "outer_step": sub.record(),
            }
            return ExtensionStep(CASE2_SPLIT, m, out, incl, witness)

    w = _stretch_kernel_witness(base, p)
    st = extend_stretch(base, p, 0)
    step = ExtensionStep(
        CASE2_STRETCH,
        m,
        st.output,
        st.inclusion @ to_base,
        {
            **st.witness,
            "basis": [_coords(to_base.inverse()(base.group.generator(j))) for j in range(base.rank)],
            "kernel_witness": _coords(to_base.inverse()(w)),
            "witness_pairing": str(st.output.evaluate(st.output.group.generator(0), st.inclusion(w))),
        },
    )
    _check_constant_lagrangians(step, to_base.inverse()(w), p)
    return step


def embed_p(m: AlternateModule, p: int) -> EmbeddingCertificate:
    """Iterate fundamental steps until the kernel is trivial, then classify."""
    _check_p_group(m, p)
    current = m
    inclusion = Morphism.identity(m.group)
    steps = []
    while not kernel(current).is_trivial():
        step = fundamental_step(current, p)
        steps.append(step)
        inclusion = step.inclusion @ inclusion
        current = step.output
    cls = classify(current)
    return EmbeddingCertificate(
        m, cls.b_orders, cls.isometry @ inclusion, tuple(s.record() for s in steps), tuple(steps)
    )


def embed(m: AlternateModule) -> EmbeddingCertificate:
    """Embed m into B x B* with |B| = n, one primary component at a time."""
    parts = sylow_decompose(m)
    inv = sum_of_inclusions([inc for _, _, inc in parts], m.group).inverse()
    certs = [embed_p(part, p) for p, part, _ in parts]
    b, merge = merge_standard([c.b_orders for c in certs])
    if certs:
        embedding = merge @ direct_sum(*(c.embedding for c in certs)) @ inv
    else:
        embedding = Morphism(m.group, FinAbGroup(), [])
    trace = tuple({"prime": p, **rec} for (p, _, _), c in zip(parts, certs) for rec in c.trace)
    steps = tuple(s for c in certs for s in c.steps)
    cert = EmbeddingCertificate(m, b, embedding, trace, steps)
    problems = verify_certificate(cert)
    if problems:
        raise AssertionError(f"embedding failed verification: {problems}")
    return cert


def verify_certificate(c: EmbeddingCertificate) -> list[str]:
    """Independent audit of a certificate; returns the violations, empty when valid.

    Checks the map is well defined, injective, pulls the standard form back
    to the source form on every generator pair, and that |B| = n. The trace is
    not consulted.
    """
    problems = []
    if any(b < 2 for b in c.b_orders):
        return [f"b_orders must all be >= 2, got {list(c.b_orders)}"]
    std = standard_symplectic(c.b_orders)
    f = c.embedding
    if f.source != c.source.group or f.target != std.group:
        return [
            f"map shape mismatch: expected {list(c.source.orders)} -> {list(std.orders)}, "
            f"got {list(f.source.orders)} -> {list(f.target.orders)}"
        ]
    well_defined = True
    for i, d in enumerate(c.source.orders):
        col = f.column(i)
        if std.group.scale(d, col) != std.group.zero():
            well_defined = False
            problems.append(f"well-definedness: {d} * image of e_{i} = {d} * {list(col)} is not 0")
    if well_defined:
        K = f.kernel()
        if not K.is_trivial():
            problems.append(f"injectivity: kernel has order {K.cardinality}, e.g. {list(K.gens[0])}")
    for i in range(c.source.rank):
        for j in range(c.source.rank):
            got = std.evaluate(f.column(i), f.column(j))
            if got != c.source.gram[i][j]:
                problems.append(f"form: phi(f e_{i}, f e_{j}) = {got} but phi(e_{i}, e_{j}) = {c.source.gram[i][j]}")
    n = lagrangian_cardinal(c.source)
    if prod(c.b_orders) != n:
        problems.append(f"cardinality: |B| = {prod(c.b_orders)} but n = {n}")
    return problems
