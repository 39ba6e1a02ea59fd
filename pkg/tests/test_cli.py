import json
import shlex
import sys

import pytest

from homcount.cli import main

EDGE_JSON = {"signature": {"E": 2}, "universe": ["a", "b"], "relations": {"E": [["a", "b"]]}}
CYC2_JSON = {
    "signature": {"E": 2},
    "universe": ["x", "y"],
    "relations": {"E": [["x", "y"], ["y", "x"]]},
}
ISO2_JSON = {"signature": {"E": 2}, "universe": ["p", "q"], "relations": {"E": []}}
ISO3_JSON = {"signature": {"E": 2}, "universe": ["1", "2", "3"], "relations": {"E": []}}
LOOP_JSON = {"signature": {"E": 2}, "universe": ["v"], "relations": {"E": [["v", "v"]]}}
SIG_U1_JSON = {"U": 1}
SIG_E2_JSON = {"E": 2}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, obj in (
        ("edge", EDGE_JSON),
        ("cyc2", CYC2_JSON),
        ("iso2", ISO2_JSON),
        ("iso3", ISO3_JSON),
        ("loop", LOOP_JSON),
        ("sig_u", SIG_U1_JSON),
        ("sig_e", SIG_E2_JSON),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        paths[name] = str(p)
    paths["tmp"] = tmp_path
    return paths


def test_count_command(files, capsys):
    assert main(["count", "--kind", "hom", "--from", files["edge"], "--to", files["cyc2"]]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert main(["count", "--kind", "condens", "--from", files["edge"], "--to", files["cyc2"]]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["count", "--kind", "surjhom", "--from", files["iso3"], "--to", files["iso2"]]) == 0
    assert capsys.readouterr().out.strip() == "6"


def test_count_signature_mismatch_exits_2(files, capsys):
    bad = files["tmp"] / "u.json"
    bad.write_text(json.dumps({"signature": {"U": 1}, "universe": ["a"], "relations": {"U": []}}))
    assert main(["count", "--kind", "hom", "--from", files["edge"], "--to", str(bad)]) == 2
    assert "SignatureMismatch" in capsys.readouterr().err


def test_count_invalid_file_exits_2(files, capsys):
    bad = files["tmp"] / "bad.json"
    bad.write_text('{"signature": {"E": 2}, "universe": ["a"], "relations": {"E": [["a", "z"]]}}')
    assert main(["count", "--kind", "hom", "--from", str(bad), "--to", files["cyc2"]]) == 2
    err = capsys.readouterr().err
    assert "ForeignElement" in err and "relations.E" in err


def test_expand_surjhom_and_condens(files, capsys):
    out = files["tmp"] / "exp.json"
    assert main(["expand", "--kind", "surjhom", "--template", files["iso2"], "--out", str(out)]) == 0
    capsys.readouterr()
    obj = json.loads(out.read_text())
    assert [t["coefficient"] for t in obj["terms"]] == ["1", "-2"]

    out2 = files["tmp"] / "expc.json"
    assert main(["expand", "--kind", "condens", "--template", files["loop"], "--out", str(out2)]) == 0
    capsys.readouterr()
    obj2 = json.loads(out2.read_text())
    assert [t["coefficient"] for t in obj2["terms"]] == ["1", "-1"]

    single = files["tmp"] / "exps.json"
    vertex = files["tmp"] / "vertex.json"
    vertex.write_text(json.dumps({"signature": {"E": 2}, "universe": ["a"], "relations": {"E": []}}))
    assert main(["expand", "--kind", "surjhom", "--template", str(vertex), "--out", str(single)]) == 0
    capsys.readouterr()
    assert len(json.loads(single.read_text())["terms"]) == 1


def test_expand_is_byte_deterministic(files, capsys):
    out1 = files["tmp"] / "a.json"
    out2 = files["tmp"] / "b.json"
    main(["expand", "--kind", "surjhom", "--template", files["cyc2"], "--out", str(out1)])
    main(["expand", "--kind", "surjhom", "--template", files["cyc2"], "--out", str(out2)])
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_passes_and_catches_corruption(files, capsys):
    exp = files["tmp"] / "exp.json"
    main(["expand", "--kind", "surjhom", "--template", files["iso2"], "--out", str(exp)])
    capsys.readouterr()

    code = main(["verify", "--expansion", str(exp), "--samples", "50", "--max-size", "4", "--seed", "0"])
    out = capsys.readouterr().out
    assert code == 0 and "PASS" in out

    obj = json.loads(exp.read_text())
    obj["terms"][1]["coefficient"] = "-3"
    corrupt = files["tmp"] / "corrupt.json"
    corrupt.write_text(json.dumps(obj))
    code = main(["verify", "--expansion", str(corrupt), "--samples", "20", "--max-size", "3", "--seed", "0"])
    out = capsys.readouterr().out
    assert code == 1 and "MISMATCH" in out and "counterexample" in out

    assert main(["verify", "--expansion", str(exp), "--samples", "0"]) == 2


def test_verify_output_is_deterministic(files, capsys):
    exp = files["tmp"] / "exp.json"
    main(["expand", "--kind", "condens", "--template", files["cyc2"], "--out", str(exp)])
    capsys.readouterr()
    main(["verify", "--expansion", str(exp), "--samples", "10", "--max-size", "3", "--seed", "7"])
    first = capsys.readouterr().out
    main(["verify", "--expansion", str(exp), "--samples", "10", "--max-size", "3", "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second


def test_extract_self_test(files, capsys):
    exp = files["tmp"] / "exp.json"
    main(["expand", "--kind", "surjhom", "--template", files["iso2"], "--out", str(exp)])
    capsys.readouterr()
    code = main(["extract", "--expansion", str(exp), "--input", files["iso3"], "--self-test"])
    out = capsys.readouterr().out
    assert code == 0
    values = [line.split("\t")[1] for line in out.strip().splitlines() if "\t" in line]
    assert values == ["8", "1"]
    assert "match" in out


def test_extract_external_oracle(files, capsys):
    exp = files["tmp"] / "exp.json"
    main(["expand", "--kind", "surjhom", "--template", files["iso2"], "--out", str(exp)])
    capsys.readouterr()
    oracle_cmd = (
        f"{shlex.quote(sys.executable)} -m homcount count --kind surjhom "
        f"--from /dev/stdin --to {shlex.quote(files['iso2'])}"
    )
    code = main(["extract", "--expansion", str(exp), "--input", files["iso3"], "--oracle-cmd", oracle_cmd])
    out = capsys.readouterr().out
    assert code == 0
    values = [line.split("\t")[1] for line in out.strip().splitlines() if "\t" in line]
    assert values == ["8", "1"]


def test_extract_garbage_oracle_exits_1(files, capsys):
    exp = files["tmp"] / "exp.json"
    main(["expand", "--kind", "surjhom", "--template", files["iso2"], "--out", str(exp)])
    capsys.readouterr()
    code = main(["extract", "--expansion", str(exp), "--input", files["iso3"], "--oracle-cmd", "echo garbage"])
    capsys.readouterr()
    assert code == 1


def test_enumerate_command(files, capsys):
    assert main(["enumerate", "--signature", files["sig_e"], "--max-size", "1"]) == 0
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "2 classes"

    assert main(["enumerate", "--signature", files["sig_e"], "--max-size", "2"]) == 0
    out = capsys.readouterr().out
    assert out.strip().splitlines()[-1] == "12 classes"

    assert main(["enumerate", "--signature", files["sig_e"], "--max-size", "4"]) == 2
    assert "SliceTooLarge" in capsys.readouterr().err


def test_enumerate_is_byte_deterministic(files, capsys):
    main(["enumerate", "--signature", files["sig_e"], "--max-size", "2"])
    first = capsys.readouterr().out
    main(["enumerate", "--signature", files["sig_e"], "--max-size", "2"])
    second = capsys.readouterr().out
    assert first == second


def test_matrices_command(files, capsys):
    assert main(["matrices", "--signature", files["sig_e"], "--max-size", "2"]) == 0
    assert "identities hold" in capsys.readouterr().out
    assert main(["matrices", "--signature", files["sig_u"], "--max-size", "2"]) == 0
    assert "identities hold" in capsys.readouterr().out


def test_malformed_json_exits_2(files, capsys):
    bad = files["tmp"] / "broken.json"
    bad.write_text("{not json")
    assert main(["count", "--kind", "hom", "--from", str(bad), "--to", files["cyc2"]]) == 2
    assert "invalid JSON" in capsys.readouterr().err
