import random
from itertools import product

import pytest

from altmod import (
    QZ,
    AlternateModule,
    Subgroup,
    classify,
    max_pairing_pair,
    orthogonal,
    standard_symplectic,
    subgroup_generated,
)
from altmod import oracle
from altmod.altmodule import pulls_back
from altmod.symplectic import NotSymplecticError, merge_standard, split_symplectic_submodule
from randmod import reference_module, random_symplectic


def test_max_pairing_pair_standard():
    s = standard_symplectic([2, 4])
    x, y = max_pairing_pair(s)
    assert s.evaluate(x, y).order == 4
    assert (x, y) == ((0, 1, 0, 0), (0, 0, 0, 1))


def test_max_pairing_pair_rejects():
    with pytest.raises(NotSymplecticError):
        max_pairing_pair(reference_module())
    with pytest.raises(NotSymplecticError):
        max_pairing_pair(AlternateModule([], []))


def test_split_hyperbolic_plane():
    s = standard_symplectic([2, 4])
    B = subgroup_generated(s.group, [(0, 1, 0, 0), (0, 0, 0, 1)])
    inner, outer, iso = split_symplectic_submodule(s, B)
    assert inner.cardinality == 16 and outer.cardinality == 4
    assert oracle.brute_isometric(outer, standard_symplectic([2]))
    assert oracle.brute_isometric(inner, standard_symplectic([4]))
    from altmod import ortho_sum

    assert iso.is_bijective() and pulls_back(iso, s, ortho_sum(inner, outer))


def test_split_trivial_subgroup_is_identity():
    s = standard_symplectic([3])
    inner, outer, iso = split_symplectic_submodule(s, Subgroup.trivial(s.group))
    assert inner.cardinality == 1 and outer == s
    assert iso.is_bijective()


def test_split_rejects_degenerate():
    s = standard_symplectic([2, 4])
    B = subgroup_generated(s.group, [(1, 0, 0, 0)])
    with pytest.raises(NotSymplecticError):
        split_symplectic_submodule(s, B)


def test_classify_examples():
    assert classify(standard_symplectic([2, 4])).b_orders == (2, 4)
    assert classify(AlternateModule([], [])).b_orders == ()
    # Z/4 x Z/4 with pairing 3/4 is Std([4])
    assert classify(AlternateModule([4, 4], [["0", "3/4"], ["1/4", "0"]])).b_orders == (4,)
    # Z/6 x Z/6 splits into 2- and 3-parts that merge back into one plane
    m = AlternateModule([6, 6], [["0", "1/6"], ["5/6", "0"]])
    assert classify(m).b_orders == (6,)
    with pytest.raises(NotSymplecticError):
        classify(reference_module())


def test_classify_quotient_of_reference_module():
    from altmod import quotient_by_kernel

    q = quotient_by_kernel(reference_module()).quotient
    cls = classify(q)
    assert cls.b_orders == (4,)
    assert oracle.brute_isometric(q, standard_symplectic([4]))
    assert not oracle.brute_isometric(q, standard_symplectic([2, 2]))


def test_merge_standard():
    b, f = merge_standard([[2, 4], [3]])
    assert b == (2, 12)
    from altmod import ortho_sum

    src = ortho_sum(standard_symplectic([2, 4]), standard_symplectic([3]))
    assert f.is_bijective() and pulls_back(f, src, standard_symplectic(b))


@pytest.mark.parametrize("b", [[2], [4], [2, 4], [2, 2, 4], [3, 9], [6], [2, 6], [3, 12], [5, 5]])
def test_random_fillings_classify_to_same_b(b):
    rng = random.Random(sum(b))
    for _ in range(5):
        m = random_symplectic(rng, b)
        cls = classify(m)
        assert cls.b_orders == tuple(b)
        assert cls.isometry.is_bijective() and pulls_back(cls.isometry, m, cls.standard)


def test_classify_random_fillings_against_oracle():
    rng = random.Random(31)
    for b in ([2, 2], [4], [2, 4]):
        for _ in range(3):
            m = random_symplectic(rng, b)
            assert oracle.brute_isometric(m, classify(m).standard)


def test_isometry_preserves_every_pair():
    m = random_symplectic(random.Random(5), [2, 4])
    cls = classify(m)
    std = cls.standard
    for a, c in product(m.group.elements(), repeat=2):
        if sum(a) + sum(c) > 6:
            continue
        assert std.evaluate(cls.isometry(a), cls.isometry(c)) == m.evaluate(a, c)


def test_orthogonal_of_hyperbolic_plane_is_complement():
    s = standard_symplectic([2, 4])
    B = subgroup_generated(s.group, [(1, 0, 0, 0), (0, 0, 1, 0)])
    Bp = orthogonal(s, B)
    assert Bp == subgroup_generated(s.group, [(0, 1, 0, 0), (0, 0, 0, 1)])
    assert s.evaluate((1, 0, 0, 0), (0, 0, 1, 0)) == QZ(1, 2)
