import random

import pytest

from dgcoalg.field import F2, QQ
from dgcoalg.symmetric_sequence import (character_sequence, compose_product, direct_sum, disk_sequence,
                                        sphere_sequence, unit_iso_left, unit_iso_right, unit_sequence,
                                        zero_sequence)
from dgcoalg.chain_complex import homology

from oracles import composite_dim

FIELDS = [F2, QQ]


def random_sequence(rng, F, max_p=3):
    parts = []
    for j in range(rng.randint(1, 2)):
        kind = rng.choice(["sphere", "trivial", "sign", "disk"])
        p, k = rng.randint(1, max_p), rng.randint(-3, 3)
        if kind == "sphere":
            parts.append(sphere_sequence(F, k, p, name=f"s{j}"))
        elif kind == "disk":
            parts.append(disk_sequence(F, k, p))
        else:
            parts.append(character_sequence(F, p, k, sign=kind == "sign"))
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


def total_dims(M, A):
    return {n: M.component(n).dim() for n in range(A + 1)}


@pytest.mark.parametrize("F", FIELDS)
def test_unit_sequence(F):
    I = unit_sequence(F, 3)
    assert I.dims(1) == {0: 1}
    assert I.component(0).dim() == 0 and I.component(2).dim() == 0


@pytest.mark.parametrize("F", FIELDS)
def test_sphere_and_disk_sequences(F):
    assert sphere_sequence(F, 0, 2).dims(2) == {0: 2}
    assert sphere_sequence(F, 0, 0).dims(0) == {0: 1}
    D = disk_sequence(F, 2, 3)
    assert D.check() == []
    assert homology(D.component(3)).betti() == {}


@pytest.mark.parametrize("F", FIELDS)
def test_random_sequences_satisfy_coxeter_relations(F):
    rng = random.Random(3)
    for _ in range(50):
        M = random_sequence(rng, F)
        assert M.check() == []
        assert compose_product(M, random_sequence(rng, F), 4).check() == []


@pytest.mark.parametrize("F", FIELDS)
def test_unit_laws(F):
    rng = random.Random(1)
    I = unit_sequence(F)
    for _ in range(20):
        M = random_sequence(rng, F)
        L, R = compose_product(I, M, 4), compose_product(M, I, 4)
        for n in range(5):
            assert L.dims(n) == M.dims(n) == R.dims(n)
            for iso in (unit_iso_left(L, n), unit_iso_right(R, n)):
                assert sorted(map(repr, iso.values())) == sorted(map(repr, M.component(n).labels()))


def test_s0_2_composite_arity_4():
    M = sphere_sequence(F2, 0, 2)
    MN = compose_product(M, M, 4)
    assert MN.dims(4) == {0: 24}
    assert composite_dim({2: 2}, {2: 2}, 4) == 24


@pytest.mark.parametrize("F", FIELDS)
def test_composite_dims_match_partition_oracle(F):
    rng = random.Random(9)
    for _ in range(20):
        M, N = random_sequence(rng, F), random_sequence(rng, F)
        MN = compose_product(M, N, 4)
        dm, dn = total_dims(M, 4), total_dims(N, 4)
        for n in range(1, 5):
            assert MN.component(n).dim() == composite_dim(dm, dn, n)


@pytest.mark.parametrize("F", FIELDS)
def test_associativity_dimensions(F):
    rng = random.Random(7)
    for _ in range(20):
        M, N, P = (random_sequence(rng, F) for _ in range(3))
        left = compose_product(compose_product(M, N, 4), P, 4)
        right = compose_product(M, compose_product(N, P, 4), 4)
        for n in range(5):
            assert left.dims(n) == right.dims(n)


def test_empty_support_gives_zero():
    M = sphere_sequence(F2, 0, 2)
    N = sphere_sequence(F2, 0, 3)
    MN = compose_product(M, N, 5)
    assert all(MN.component(n).dim() == 0 for n in range(6))
    assert compose_product(zero_sequence(F2, 2), M, 3).component(2).dim() == 0
