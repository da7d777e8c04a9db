import itertools
import random

import pytest

from dgcoalg.chain_complex import ChainComplex, GradedVectorSpace, LinearMap, unit_complex
from dgcoalg.coalgebra import CellCoalgebra, cooperation_space, sphere_presentation, verify_pcoalgebra
from dgcoalg.dual_schur import (cofree_coalgebra, cofree_over_endofunctor, dual_schur_apply, dual_schur_map,
                                lax_structure, universal_property_counts)
from dgcoalg.field import F2, QQ
from dgcoalg.symmetric_sequence import sphere_sequence, unit_sequence, zero_sequence
from dgcoalg.trees import free_operad

FIELDS = [F2, QQ]


def k2(F):
    return ChainComplex(F, GradedVectorSpace({0: ["a", "b"]}), {})


@pytest.mark.parametrize("F", FIELDS)
def test_dual_schur_values(F):
    V = ChainComplex(F, GradedVectorSpace({0: ["a"], 1: ["b"]}), {"b": {"a": F.one}})
    assert dual_schur_apply(unit_sequence(F), V, 3).complex.dims() == V.dims()
    assert dual_schur_apply(sphere_sequence(F, 0, 2), k2(F), 2).complex.dims() == {0: 4}
    assert dual_schur_apply(sphere_sequence(F, 1, 1), unit_complex(F), 1).complex.dims() == {-1: 1}


@pytest.mark.parametrize("F", FIELDS)
def test_lax_structure_identity_and_injective(F):
    I = unit_sequence(F)
    phi, S, T, _ = lax_structure(I, I, k2(F), 2)
    assert phi.rank() == S.complex.dim() == T.complex.dim() == 2
    M = sphere_sequence(F, 0, 2)
    phi, S, T, _ = lax_structure(M, M, k2(F), 4)
    assert phi.rank() == S.complex.dim()


@pytest.mark.parametrize("F", FIELDS)
def test_lax_structure_naturality(F):
    rng = random.Random(4)
    M = sphere_sequence(F, 0, 2)
    V, V2 = k2(F), ChainComplex(F, GradedVectorSpace({0: ["p", "q"]}), {})
    f = LinearMap(F, V.space, V2.space, 0,
                  {x: {y: F(rng.randint(0, 2)) for y in ("p", "q") if F(rng.randint(0, 2))} for x in ("a", "b")})
    phi, S, T, _ = lax_structure(M, M, V, 4)
    phi2, S2, T2, _ = lax_structure(M, M, V2, 4)
    W, W2 = dual_schur_apply(M, V, 4), dual_schur_apply(M, V2, 4)
    inner = dual_schur_map(f, W, W2)
    outer = dual_schur_map(inner, S, S2)
    assert phi2.compose(outer) == dual_schur_map(f, T, T2).compose(phi)


@pytest.mark.parametrize("F", FIELDS)
def test_cofree_over_unit(F):
    V = ChainComplex(F, GradedVectorSpace({0: ["a"], 1: ["b"]}), {"b": {"a": F.one}})
    res = cofree_coalgebra(free_operad(zero_sequence(F, 1), 2), V, 2)
    assert res.complex.dims() == V.dims()
    assert res.provenance["refinement_rounds"] == 0


@pytest.mark.parametrize("F", FIELDS)
def test_cofree_on_one_unary_generator(F):
    P = free_operad(sphere_sequence(F, 1, 1), 1, (0, 5))
    res = cofree_coalgebra(P, unit_complex(F), 1, (-5, 0))
    assert res.complex.dims() == {-m: 1 for m in range(6)}
    assert verify_pcoalgebra(res.structure).passed
    C, prov = cofree_over_endofunctor(sphere_sequence(F, 1, 1), unit_complex(F), (-5, 0))
    assert C.dims() == res.complex.dims()
    assert prov["dims_history"][-1] == prov["dims_history"][-2]


@pytest.mark.parametrize("F", FIELDS)
def test_cofree_on_binary_generator(F):
    V = ChainComplex(F, GradedVectorSpace({0: ["a"]}), {})
    res = cofree_coalgebra(free_operad(sphere_sequence(F, 0, 2), 3), V, 3)
    assert verify_pcoalgebra(res.structure, samples=200).passed
    assert res.provenance["dims"] == res.complex.dims()


def test_cofree_of_zero_sequence_is_v():
    V = k2(QQ)
    C, prov = cofree_over_endofunctor(zero_sequence(QQ, 1), V, (-3, 3))
    assert C.dims() == V.dims() and prov["iterations"] == 1


def complexes(maxdim, degs):
    for n in range(0, maxdim + 1):
        for ds in itertools.combinations_with_replacement(degs, n):
            basis: dict = {}
            for j, d in enumerate(ds):
                basis.setdefault(d, []).append(f"c{j}")
            labs = [(f"c{j}", d) for j, d in enumerate(ds)]
            slots = [(a, b) for a, da in labs for b, db in labs if db == da - 1]
            for co in itertools.product((0, 1), repeat=len(slots)):
                dm: dict = {}
                for (a, b), c in zip(slots, co):
                    if c:
                        dm.setdefault(a, {})[b] = 1
                yield ChainComplex(F2, GradedVectorSpace(basis), dm)


def test_universal_property_trivial_source():
    pres = sphere_presentation(F2, 1, 2)
    C1 = CellCoalgebra(pres, ChainComplex(F2, GradedVectorSpace({0: ["c"]}), {}), {"x": {}})
    C = C1.as_pcoalgebra(1, (0, 5))
    for V in complexes(2, (0,)):
        if not V.dim():
            continue
        res = cofree_coalgebra(C.operad, V, 1, (-6, 1))
        r = universal_property_counts(C, res, V)
        assert r["coalgebra_maps"] == r["chain_maps"] and r["bijective"]
