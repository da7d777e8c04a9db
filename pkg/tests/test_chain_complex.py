import random

import pytest

from dgcoalg.chain_complex import (ChainComplex, GradedVectorSpace, LinearMap, betti_numbers, direct_sum,
                                   disk, hom_complex, homology, is_chain_map, is_quasi_iso,
                                   mapping_cone, sphere, summand_inclusion, tensor, tensor_power,
                                   unit_complex)
from dgcoalg.field import F2, QQ

from oracles import dense_rank

FIELDS = [F2, QQ]


def random_complex(rng, F, lo=-2, hi=2, maxdim=2):
    basis = {d: [f"e{d}_{j}" for j in range(rng.randint(0, maxdim))] for d in range(lo, hi + 1)}
    basis = {d: b for d, b in basis.items() if b}
    # d = composite of random maps through a splitting, guaranteeing d^2 = 0:
    # pick for each degree a random subset of "top" vectors hitting random cycles
    dmap: dict = {}
    for d in sorted(basis):
        for x in basis[d]:
            below = basis.get(d - 1, [])
            # only hit vectors that are not themselves sources of nonzero d
            targets = [y for y in below if y not in dmap]
            v = {y: F(rng.randint(1, 2)) for y in targets if rng.random() < 0.5}
            v = {y: c for y, c in v.items() if c}
            if v:
                dmap[x] = v
    return ChainComplex(F, GradedVectorSpace(basis), dmap)


@pytest.mark.parametrize("F", FIELDS)
def test_tensor_unit_and_spheres(F):
    B = disk(F, 1)
    T = tensor(unit_complex(F), B)
    assert T.dims() == B.dims()
    assert {lab[1] for lab in T.labels()} == set(B.labels())
    S = tensor(sphere(F, 0), sphere(F, 0))
    assert S.dims() == {0: 1}


@pytest.mark.parametrize("F", FIELDS)
def test_tensor_disk_sphere_acyclic(F):
    T = tensor(disk(F, 1), sphere(F, 0))
    assert homology(T).betti() == {}
    # oracle: the differential matrix has full rank 1
    assert dense_rank([[1]], F.p) == 1


@pytest.mark.parametrize("F", FIELDS)
def test_hom_complex_examples(F):
    B = disk(F, 2)
    H = hom_complex(unit_complex(F), B)
    assert H.dims() == B.dims()
    assert hom_complex(sphere(F, 2), sphere(F, 5)).dims() == {3: 1}
    H = hom_complex(disk(F, 1), sphere(F, 0))
    assert H.dims() == {-1: 1, 0: 1}
    assert H.d.rank() == 1 and homology(H).betti() == {}


@pytest.mark.parametrize("F", FIELDS)
def test_random_complexes_d_squared_and_euler(F):
    rng = random.Random(11)
    for _ in range(50):
        A, B = random_complex(rng, F), random_complex(rng, F)
        for C in (tensor(A, B), hom_complex(A, B), tensor_power(A, 2)):
            for x in C.labels():
                assert C.differential(C.d.image_of(x)) == {}
            H = homology(C)
            assert sum((-1) ** (d % 2) * b for d, b in H.betti().items()) == C.euler_characteristic()
        # Kunneth over a field
        bt = homology(tensor(A, B)).betti()
        ba, bb = homology(A).betti(), homology(B).betti()
        want: dict = {}
        for i, x in ba.items():
            for j, y in bb.items():
                want[i + j] = want.get(i + j, 0) + x * y
        assert bt == want


@pytest.mark.parametrize("F", FIELDS)
def test_homology_matches_rank_formula(F):
    rng = random.Random(5)
    for _ in range(30):
        C = random_complex(rng, F, maxdim=3)
        assert homology(C).betti() == betti_numbers(C)


@pytest.mark.parametrize("F", FIELDS)
def test_chain_maps_and_quasi_isos(F):
    S, D = sphere(F, 0), disk(F, 1)
    total = direct_sum(D, S)
    inc = summand_inclusion(total, S, 1)
    assert is_chain_map(inc, S, total)
    assert is_quasi_iso(inc, S, total)
    assert not is_quasi_iso(summand_inclusion(total, D, 0), D, total)
    # the differential is a chain map of degree -1
    assert is_chain_map(D.d, D, D)
    f = LinearMap.identity(F, D.space)
    assert f.compose(D.d) == D.d


@pytest.mark.parametrize("F", FIELDS)
def test_mapping_cone_of_quasi_iso_is_acyclic(F):
    S, D = sphere(F, 0), disk(F, 1)
    total = direct_sum(D, S)
    inc = summand_inclusion(total, S, 1)
    assert homology(mapping_cone(inc, S, total)).betti() == {}


def test_bad_differential_rejected():
    with pytest.raises(ValueError):
        ChainComplex(F2, GradedVectorSpace({0: ["a"], 1: ["b"]}), {"a": {"b": 1}})
    with pytest.raises(ValueError):
        ChainComplex(F2, GradedVectorSpace({0: ["a"], 1: ["b"], 2: ["c"]}), {"c": {"b": 1}, "b": {"a": 1}})
