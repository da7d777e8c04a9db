import json

import pytest

from dgcoalg.cli import CONFIG_ENV, main

BAD_COALGEBRA = {
    "presentation": "sphere:2:1",
    "carrier": {"field": "2", "basis": {"1": ["a"]}, "d": []},
    "cooperations": [{"op": "x", "matrix": [{"from": "a", "to": ["a", "a"], "coeff": "1"}]}],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_homology_rp2_depends_on_field(capsys):
    code, rep = run(capsys, "homology", "builtin:rp2")
    assert code == 0 and rep["betti"] == {"0": 1, "1": 1, "2": 1}
    code, rep = run(capsys, "--field", "Q", "homology", "builtin:rp2")
    assert rep["betti"] == {"0": 1}
    code, rep = run(capsys, "homology", "builtin:rp2", "--field", "Q")
    assert rep["betti"] == {"0": 1}


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["e-structure", "builtin:boundary2", "--arity", "2", "--deg", "2", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["verify-ainfty", "poly-dual-counital:3", "--perturb", "--involving", "x0",
                 "--seed", "7", "--out", str(a)]) == 1
    assert main(["verify-ainfty", "poly-dual-counital:3", "--perturb", "--involving", "x0",
                 "--seed", "7", "--out", str(b)]) == 1
    assert a.read_bytes() == b.read_bytes()


def test_invalid_coalgebra_exits_nonzero_with_witness(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(BAD_COALGEBRA))
    code, rep = run(capsys, "verify-coalgebra", str(p))
    assert code == 1 and rep["status"] == "fail"
    w = rep["verification"]["witnesses"][0]
    assert w["check"] == "degree" and w["witness"]["generator"] == "x"


def test_empty_simplicial_set_passes(capsys):
    code, rep = run(capsys, "e-structure", '{"simplices": {}}')
    assert code == 0 and rep["status"] == "pass"
    assert all(t["matrix"] == [] for t in rep["tables"])


def test_steenrod_square_on_rp2(capsys):
    code, rep = run(capsys, "steenrod", "builtin:rp2", "--i", "1", "--class", "1:0")
    assert code == 0 and rep["square"]["zero"] is False and rep["square"]["degree"] == 2


def test_free_operad_and_compose_product(capsys):
    code, rep = run(capsys, "free-operad", "sphere:0:2", "--max-arity", "3")
    assert code == 0
    assert [rep["dims"][str(n)] for n in (1, 2, 3)] == [{"0": 1}, {"0": 2}, {"0": 12}]
    code, rep = run(capsys, "compose-product", "sphere:0:2", "sphere:0:2", "--max-arity", "4")
    assert code == 0 and rep["dims"]["4"] == {"0": 24}


def test_ainfty_controls(capsys):
    assert run(capsys, "verify-ainfty", "poly-dual:3")[0] == 0
    assert run(capsys, "verify-ainfty", "poly-dual-counital:3", "--perturb", "--involving", "x0")[0] == 1


def test_abbreviated_flags_are_not_guessed(capsys):
    with pytest.raises(SystemExit):
        main(["homology", "builtin:rp2", "--fie", "Q"])


def test_lift_random(capsys):
    code, rep = run(capsys, "lift", "random", "--seed", "3")
    assert code == 0


def test_errors_are_json(capsys, tmp_path):
    code, rep = run(capsys, "homology", str(tmp_path / "missing.json"))
    assert code == 2 and rep["error"]["type"] == "format"
    code, rep = run(capsys, "cofree", "unit", "unit", "--deg-min", "0")
    assert code == 2 and "error" in rep


def test_config_file_supplies_defaults(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"field": "Q"}))
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    assert run(capsys, "homology", "builtin:rp2")[1]["betti"] == {"0": 1}
    assert run(capsys, "--field", "2", "homology", "builtin:rp2")[1]["betti"] == {"0": 1, "1": 1, "2": 1}


def test_free_operad_lists_twelve_trees(capsys):
    code, rep = run(capsys, "free-operad", "sphere:0:2", "--arity", "3")
    assert code == 0 and len(rep["basis"]["3"]) == 12


def test_e_structure_tables_contain_aw(capsys):
    code, rep = run(capsys, "e-structure", "builtin:delta1", "--arity", "2", "--deg", "0")
    ident = next(t for t in rep["tables"] if t["arity"] == 2 and t["op"] == [[1, 2]])
    entries = {(r["from"], tuple(r["to"])) for r in ident["matrix"]}
    assert entries == {("[01]", ("[0]", "[01]")), ("[01]", ("[01]", "[1]")),
                       ("[0]", ("[0]", "[0]")), ("[1]", ("[1]", "[1]"))}


def test_e_structure_defaults_pass_on_boundary(capsys):
    code, rep = run(capsys, "e-structure", "builtin:boundary2")
    assert code == 0 and rep["status"] == "pass"
    assert rep["truncation"] == {"max_arity": 3, "max_deg": 4}


def test_cofree_report_has_provenance(capsys):
    code, rep = run(capsys, "cofree", "sphere:1:2", "unit", "--window=-5:0", "--max-arity", "1")
    assert code == 0 and "provenance" in rep
