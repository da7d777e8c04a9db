import pytest

from dgcoalg.chain_complex import betti_numbers
from dgcoalg.field import F2, QQ, Field
from dgcoalg.simplicial import (BUILTINS, SimplicialError, SimplicialSet, boundary_simplex, builtin,
                                minimal_circle, normalized_chains, rp2, simplicial_complex,
                                simplicial_map_chains, standard_simplex, torus)

from oracles import complex_betti

FIELDS = [F2, QQ]


def _betti(X, F):
    b = betti_numbers(normalized_chains(X, F))
    return {d: v for d, v in b.items() if v}


def _oracle(facets, p):
    return {d: v for d, v in complex_betti(facets, p).items() if v}


@pytest.mark.parametrize("F,p", [(F2, 2), (QQ, None), (Field(3), 3)])
def test_betti_against_dense_oracle(F, p):
    from dgcoalg.simplicial import RP2_FACETS
    tor = []
    for i in range(7):
        tor += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)]
    cases = [(standard_simplex(0), [(0,)]),
             (boundary_simplex(2), [(0, 1), (1, 2), (0, 2)]),
             (rp2(), RP2_FACETS),
             (torus(), tor)]
    for X, facets in cases:
        assert _betti(X, F) == _oracle(facets, p), X


@pytest.mark.parametrize("F", FIELDS)
def test_minimal_circle(F):
    assert _betti(minimal_circle(), F) == {0: 1, 1: 1}


def test_rp2_betti_depends_on_field():
    assert _betti(rp2(), F2) == {0: 1, 1: 1, 2: 1}
    assert _betti(rp2(), QQ) == {0: 1}


@pytest.mark.parametrize("F", FIELDS)
def test_chains_square_zero(F):
    for X in [torus(), rp2(), standard_simplex(3), minimal_circle()]:
        C = normalized_chains(X, F)
        for x in C.labels():
            assert C.differential(C.differential({x: F.one})) == {}


def test_counts_and_euler_characteristic():
    assert [len(rp2().simplices[d]) for d in range(3)] == [6, 15, 10]
    assert [len(torus().simplices[d]) for d in range(3)] == [7, 21, 14]


def test_builtins_and_empty():
    for name in BUILTINS:
        assert isinstance(builtin(name), SimplicialSet)
    assert builtin("delta3").dimension == 3
    assert boundary_simplex(0).is_empty()
    with pytest.raises(SimplicialError):
        builtin("klein")


def test_json_round_trip():
    for X in [rp2(), minimal_circle(), standard_simplex(2)]:
        assert SimplicialSet.from_json(X.to_json()) == X


def test_degenerate_faces_and_face_lookup():
    S = minimal_circle()
    assert S.face(S.nondegenerate("e"), 0) == ("v", (0,))
    D = standard_simplex(3)
    assert D.face_by_vertices("[0123]", (0, 2)) == "[02]"
    assert D.face_by_vertices("[0123]", (2, 0)) is None


def test_invalid_sets_rejected():
    with pytest.raises(SimplicialError):
        SimplicialSet({0: ["v"], 1: ["e"]}, {"e": [("v", (0,))]})
    with pytest.raises(SimplicialError):
        SimplicialSet({0: ["v"], 1: ["e"]}, {"e": [("w", (0,)), ("v", (0,))]})
    with pytest.raises(SimplicialError):
        SimplicialSet({0: ["v", "v"]}, {})
    # d_0 d_1 = d_0 d_0 fails when the two faces of the 2-simplex disagree
    bad = {0: ["a", "b"], 1: ["e", "f"], 2: ["s"]}
    faces = {"e": [("b", (0,)), ("a", (0,))], "f": [("a", (0,)), ("a", (0,))],
             "s": [("e", (0, 1)), ("f", (0, 1)), ("f", (0, 1))]}
    with pytest.raises(SimplicialError):
        SimplicialSet(bad, faces)


@pytest.mark.parametrize("F", FIELDS)
def test_simplicial_map_is_chain_map(F):
    X, Y = standard_simplex(2), standard_simplex(1)
    f = simplicial_map_chains(X, Y, {0: 0, 1: 0, 2: 1}, F)
    CX, CY = normalized_chains(X, F), normalized_chains(Y, F)
    for x in CX.labels():
        lhs = {}
        for y, c in f.image_of(x).items():
            for z, e in CY.differential({y: c}).items():
                lhs[z] = F.add(lhs.get(z, F.zero), e)
        rhs = {}
        for y, c in CX.differential({x: F.one}).items():
            for z, e in f.image_of(y).items():
                rhs[z] = F.add(rhs.get(z, F.zero), F.mul(c, e))
        assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}
    with pytest.raises(SimplicialError):
        simplicial_map_chains(X, Y, {0: 1, 1: 0, 2: 0}, F)


def test_complex_from_facets_orders_vertices():
    K = simplicial_complex([(2, 0, 1)])
    assert K.simplices[2] == ["[012]"]
