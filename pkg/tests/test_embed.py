import random
from math import log, prod

import pytest

from altmod import (
    AlternateModule,
    EmbeddingCertificate,
    Morphism,
    embed,
    embed_p,
    extend_case1,
    extend_stretch,
    fundamental_step,
    kernel,
    lagrangian_cardinal,
    ortho_sum,
    standard_symplectic,
    verify_certificate,
)
from altmod.altmodule import pulls_back, sylow_decompose
from altmod.embed import CASE1, CASE2_SPLIT, CASE2_STRETCH, StepError
from randmod import reference_module, random_module


def check_step(step, p):
    m, out = step.input, step.output
    assert step.inclusion.source == m.group and step.inclusion.target == out.group
    assert step.inclusion.is_well_defined() and step.inclusion.is_injective()
    assert pulls_back(step.inclusion, m, out)
    assert out.cardinality == p * m.cardinality
    assert lagrangian_cardinal(out) == lagrangian_cardinal(m)
    K_in, K_out = kernel(m), kernel(out)
    assert K_in.cardinality == p * K_out.cardinality


def test_reference_first_step_is_case1():
    step = fundamental_step(reference_module(), 2)
    assert step.kind == CASE1
    assert step.output.cardinality == 128
    assert kernel(step.output).cardinality == 2
    assert step.witness["gamma_pairing"] == "1/2"
    check_step(step, 2)


def test_reference_second_step_splits():
    first = fundamental_step(reference_module(), 2)
    second = fundamental_step(first.output, 2)
    assert second.kind == CASE2_SPLIT
    assert second.witness["outer_step"]["kind"] == CASE2_STRETCH
    assert kernel(second.output).is_trivial()
    check_step(second, 2)


def test_case1_dispatch_on_trivial_summand():
    m = ortho_sum(standard_symplectic([2]), AlternateModule.trivial_form([4]))
    step = fundamental_step(m, 2)
    assert step.kind == CASE1
    check_step(step, 2)


def test_stretch_example():
    m = AlternateModule([2, 4], [["0", "1/2"], ["1/2", "0"]])
    step = fundamental_step(m, 2)
    assert step.kind == CASE2_STRETCH
    assert step.output.orders == (4, 4)
    assert kernel(step.output).is_trivial()
    check_step(step, 2)


def test_split_example():
    m = AlternateModule(
        [2, 2, 2, 4],
        [["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"], ["0", "0", "0", "1/2"], ["0", "0", "1/2", "0"]],
    )
    assert embed(m).b_orders == (2, 4)


def test_step_preconditions():
    with pytest.raises(StepError):
        fundamental_step(standard_symplectic([2]), 2)
    with pytest.raises(StepError):
        fundamental_step(AlternateModule.trivial_form([3]), 2)
    with pytest.raises(StepError):
        extend_case1(AlternateModule([2, 4], [["0", "1/2"], ["1/2", "0"]]), 2)
    with pytest.raises(StepError):
        extend_stretch(standard_symplectic([2]), 2, 0)


def test_random_steps():
    rng = random.Random(17)
    for _ in range(150):
        m = random_module(rng, 512, mixed=0)
        if kernel(m).is_trivial():
            continue
        p = sylow_decompose(m)[0][0]
        step = fundamental_step(m, p)
        assert step.kind in (CASE1, CASE2_SPLIT, CASE2_STRETCH)
        check_step(step, p)


def test_step_count_bounded_by_kernel():
    rng = random.Random(19)
    for _ in range(100):
        m = random_module(rng, 512, mixed=0)
        p = sylow_decompose(m)[0][0] if m.cardinality > 1 else 2
        cert = embed_p(m, p)
        k = kernel(m).cardinality
        assert len(cert.trace) <= round(log(k, p))
        assert prod(cert.b_orders) == lagrangian_cardinal(m)


def test_embed_examples():
    assert embed(reference_module()).b_orders == (2, 8)
    assert embed(AlternateModule.trivial_form([2, 4])).b_orders == (2, 4)
    assert embed(AlternateModule.trivial_form([6])).b_orders == (6,)
    assert embed(AlternateModule([], [])).b_orders == ()
    s = standard_symplectic([3, 9])
    cert = embed(s)
    assert cert.b_orders == (3, 9) and cert.trace == ()


def test_embed_trace_records_primes():
    m = ortho_sum(reference_module(), AlternateModule.trivial_form([3]))
    cert = embed(m)
    assert cert.b_orders == (2, 24)
    assert {rec["prime"] for rec in cert.trace} == {2, 3}


def test_embed_is_deterministic():
    a, b = embed(reference_module()), embed(reference_module())
    assert a.embedding.images == b.embedding.images and a.trace == b.trace


def _cert(source, b, rows):
    target = standard_symplectic(b).group
    return EmbeddingCertificate(source, tuple(b), Morphism(source.group, target, rows))


def test_verify_hand_certificates():
    # both maps embed the trivial form on Z/2 x Z/4, so B is not unique
    triv = AlternateModule.trivial_form([2, 4])
    assert verify_certificate(_cert(triv, [2, 4], [[1, 0], [0, 1], [0, 0], [0, 0]])) == []
    assert verify_certificate(_cert(triv, [8], [[4, 0], [0, 2]])) == []


def test_verify_rejects_corruptions():
    triv = AlternateModule.trivial_form([2, 4])
    bad = verify_certificate(_cert(triv, [8], [[2, 0], [0, 2]]))
    assert any(v.startswith("well-definedness") for v in bad)
    bad = verify_certificate(_cert(triv, [8], [[4, 0], [0, 4]]))
    assert any(v.startswith("injectivity") for v in bad)
    bad = verify_certificate(_cert(triv, [2, 4], [[1, 0], [0, 1], [0, 1], [0, 0]]))
    assert bad and all(v.startswith("form") for v in bad)
    bad = verify_certificate(_cert(triv, [2, 4, 2], [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0], [0, 0]]))
    assert any(v.startswith("cardinality") for v in bad)


def _brute_isometric_embedding(m, b, rows):
    std = standard_symplectic(b)
    elements = list(m.group.elements())
    for i, d in enumerate(m.orders):
        if any((d * r[i]) % t for r, t in zip(rows, std.orders)):
            return False
    image = {tuple(sum(r[i] * x[i] for i in range(m.rank)) % t for r, t in zip(rows, std.orders)) for x in elements}
    if len(image) != len(elements):
        return False
    f = Morphism(m.group, std.group, rows)
    same_form = all(std.evaluate(f(x), f(y)) == m.evaluate(x, y) for x in elements for y in elements)
    return same_form and prod(b) == lagrangian_cardinal(m)


def test_verify_agrees_with_brute_force_on_perturbed_maps():
    rng = random.Random(23)
    rejected = 0
    for _ in range(60):
        m = random_module(rng, 64)
        cert = embed(m)
        if not cert.b_orders:
            continue
        rows = [list(r) for r in cert.embedding.images]
        k, i = rng.randrange(len(rows)), rng.randrange(m.rank)
        rows[k][i] += 1
        ok = not verify_certificate(_cert(m, cert.b_orders, rows))
        assert ok == _brute_isometric_embedding(m, cert.b_orders, rows)
        rejected += not ok
    assert rejected >= 5
