import json

from threepage.cli import main
from threepage.fixtures import WG, WG_PRINTED

W = str(WG)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_relations_list_has_96_lines(capsys):
    code, out, _ = run(capsys, "relations", "--list", "--tier", "full")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 96
    assert lines[0].endswith("[1, 0]") and " = " in lines[0]


def test_relations_json(capsys):
    code, out, _ = run(capsys, "relations", "--tier", "singular", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 84 and doc["families"][:5] == [6, 12, 54, 9, 3]


def test_equiv_exit_codes(capsys):
    assert run(capsys, "equiv", "b0 d0", "")[0] == 0
    assert run(capsys, "equiv", "a1 x1", "a1", "--tier", "singular")[0] == 3
    code, out, _ = run(capsys, "equiv", "a1 b1 x1 d1 c1", "", "--max-states", "3")
    assert code == 2 and "Unknown" in out


def test_equiv_path_output(capsys):
    code, out, _ = run(capsys, "equiv", "b0 d0 a1 c1", "a1 c1", "--path")
    assert code == 0 and "Proved" in out and "a1 c1" in out.splitlines()[-1]


def test_chi_of_fixture(capsys):
    code, out, _ = run(capsys, "chi", W)
    assert (code, out.strip()) == (0, "2")


def test_invalid_input_exit_code(capsys):
    assert run(capsys, "parse", "a0 q7")[0] == 1
    code, _, err = run(capsys, "decode", str(WG_PRINTED))
    assert code == 1 and "unbalanced" in err
    assert run(capsys, "chi", "a0")[0] == 1


def test_unknown_flags_are_rejected(capsys):
    code, _, err = run(capsys, "chi", W, "--bogus")
    assert code == 1 and "unrecognized" in err
    assert run(capsys, "frobnicate")[0] == 1


def test_parse_and_resolve(capsys):
    code, out, _ = run(capsys, "parse", "  a1   c1 ", "--json")
    assert json.loads(out) == {"word": "a1 c1", "length": 2, "singular": 0}
    code, out, _ = run(capsys, "resolve", W, "--sign", "neg", "--json")
    assert json.loads(out)["length"] == len(WG) + 2
    code, out, _ = run(capsys, "resolve", W, "--sign", "pos")
    assert len(out.split()) == len(WG) - 2


def test_decode_json(capsys):
    code, out, _ = run(capsys, "decode", W, "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["singular_points"]) == 2 and len(doc["axis_points"]) == len(WG)


def test_invariants_and_admissible(capsys):
    code, out, _ = run(capsys, "invariants", W)
    doc = json.loads(out)
    assert doc["chi"] == 2 and doc["singular"] == 2
    assert doc["resolutions"]["+"]["triviality"]["status"] == "CertifiedTrivial"
    code, out, _ = run(capsys, "admissible", W)
    assert (code, out.strip()) == (0, "Admissible")


def test_not_admissible_exit_code(capsys, tmp_path):
    from threepage.fixtures import diagram_json

    f = tmp_path / "hopf.json"
    f.write_text(diagram_json("hopf"))
    code, out, _ = run(capsys, "encode", "--input", str(f))
    assert code == 0
    assert run(capsys, "admissible", out.strip())[0] == 3


def test_encode_json(capsys, tmp_path):
    from threepage.fixtures import diagram_json

    f = tmp_path / "trefoil.json"
    f.write_text(diagram_json("trefoil"))
    code, out, _ = run(capsys, "encode", "--input", str(f), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["crossings"] == 3 and doc["components"] == 1


def test_encode_rejects_bad_files(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"vertices": [{"id": 0, "type": "crossing", "rotation": [1, 1, 1], "over": [0, 2]}], "edges": []}')
    assert run(capsys, "encode", "--input", str(f))[0] == 1
    assert run(capsys, "encode", "--input", str(tmp_path / "missing.json"))[0] == 1


def test_simplify_and_central(capsys):
    code, out, _ = run(capsys, "simplify", "b0 d0 a1 c1", "--tier", "classical")
    assert code == 0 and len(out.split()) == 2
    code, out, _ = run(capsys, "central", "", "--json")
    assert code == 0 and json.loads(out)["outcome"] == "Proved"


def test_json_output_is_stable(capsys):
    outs = {run(capsys, "equiv", "b0 d0 a1 c1", "a1 c1", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("THREEPAGE_MAX_STATES", "2")
    code, _, _ = run(capsys, "equiv", "a1 b1 x1 d1 c1", "")
    assert code == 2


def test_selftest_detects_corrupted_table(capsys):
    code, out, _ = run(capsys, "selftest", "--corrupt-table", "d2", "--contexts", "2", "--json")
    doc = json.loads(out)
    assert code == 3 and not doc["ok"]
    assert doc["violations"] and doc["violations"][0]["relation"]
