import json

import pytest

from dgcoalg import io
from dgcoalg.chain_complex import ChainComplex, GradedVectorSpace
from dgcoalg.coalgebra import CellCoalgebra, truncated_polynomial_dual
from dgcoalg.field import F2, QQ, Field
from dgcoalg.simplicial import rp2
from dgcoalg.symmetric_sequence import sphere_sequence
from dgcoalg.trees import ainfty_presentation, attach_cell, empty_presentation


def _canonical(to_json, from_json, obj):
    text = io.dumps(to_json(obj))
    again = io.dumps(to_json(from_json(json.loads(text))))
    assert text == again
    return text


def test_field_specs():
    assert io.parse_field("Q") == QQ and io.parse_field("2") == F2
    assert io.parse_field("F3") == Field(3) and io.parse_field({"p": 5}) == Field(5)
    for bad in ["F4", "x", "0"]:
        with pytest.raises(io.FormatError):
            io.parse_field(bad)


def test_scalars():
    assert io.scalar_from_json(QQ, "-3/4", "c") == QQ(-3) / 4
    assert io.scalar_from_json(Field(5), "1/2", "c") == 3
    with pytest.raises(io.FormatError):
        io.scalar_from_json(Field(5), "1/5", "c")


@pytest.mark.parametrize("F", [F2, QQ])
def test_complex_round_trip(F):
    C = ChainComplex(F, GradedVectorSpace({0: ["a"], 1: ["b", "c"]}), {"b": {"a": F.one}, "c": {"a": F.one}})
    _canonical(io.complex_to_json, io.complex_from_json, C)


def test_complex_errors_name_location():
    bad = {"field": "Q", "basis": {"0": ["a"], "1": ["b"]}, "d": [{"from": "b", "to": "zz", "coeff": "1"}]}
    with pytest.raises(io.FormatError) as e:
        io.complex_from_json(bad)
    assert e.value.location.startswith("complex")
    with pytest.raises(io.FormatError):
        io.complex_from_json({"field": "Q", "basis": {"x": ["a"]}})
    with pytest.raises(io.FormatError):
        io.complex_from_json({"field": "Q"})


def test_nonzero_d_squared_rejected():
    bad = {"field": "Q", "basis": {"0": ["a"], "1": ["b"], "2": ["c"]},
           "d": [{"from": "c", "to": "b", "coeff": "1"}, {"from": "b", "to": "a", "coeff": "1"}]}
    with pytest.raises(io.FormatError):
        io.complex_from_json(bad)


@pytest.mark.parametrize("F", [F2, QQ])
def test_sequence_round_trip(F):
    for spec in ["sphere:0:2", "disk:1:3", "sign:3:0", "unit", "sphere:0:2+trivial:3:1"]:
        M = io.parse_sequence_spec(spec, F)
        _canonical(io.sequence_to_json, io.sequence_from_json, M)
    assert io.sequence_from_json(io.sequence_to_json(sphere_sequence(F, 0, 2))).dims(2) == \
        sphere_sequence(F, 0, 2).dims(2)
    with pytest.raises(io.FormatError):
        io.parse_sequence_spec("moebius:1:2", F)


def test_presentation_round_trip():
    P = ainfty_presentation(QQ, 4)
    _canonical(io.presentation_to_json, io.presentation_from_json, P)
    with pytest.raises(io.FormatError):
        io.parse_presentation_spec("ainfty", QQ)


def test_cell_coalgebra_round_trip():
    A = truncated_polynomial_dual(F2, 3)
    P = attach_cell(empty_presentation(F2), 2, 0, 0, name="m2")
    C = CellCoalgebra(P, A.carrier, {"m2": dict(A.maps[2])})
    text = _canonical(io.cell_coalgebra_to_json, io.cell_coalgebra_from_json, C)
    D = io.cell_coalgebra_from_json(json.loads(text))
    assert D.generators == C.generators and D.carrier.labels() == C.carrier.labels()


def test_ainfty_round_trip():
    for spec in ["poly-dual:3", "poly-dual-counital:4"]:
        _canonical(io.ainfty_to_json, io.ainfty_from_json, io.parse_ainfty_spec(spec))


def test_simplicial_loading(tmp_path):
    assert io.simplicial_from_json("rp2") == rp2()
    assert io.simplicial_from_json({"builtin": "rp2"}) == rp2()
    p = tmp_path / "x.json"
    p.write_text(json.dumps(rp2().to_json()))
    assert io.simplicial_from_json(io.load_json(str(p))) == rp2()
    with pytest.raises(io.FormatError):
        io.simplicial_from_json("nothing")
    with pytest.raises(io.FormatError):
        io.load_json(str(tmp_path / "missing.json"))
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(io.FormatError):
        io.load_json(str(tmp_path / "bad.json"))


def test_dumps_is_sorted_and_stable():
    assert io.dumps({"b": 1, "a": [2]}) == io.dumps({"a": [2], "b": 1})
