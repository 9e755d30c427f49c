import json
import subprocess
import sys

import jsonschema
import pytest

from ellbundles import cli, verify
from ellbundles.cli import emit, load_schema, main


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_wpl_json_and_schema(capsys):
    status, out, _ = run(["wpl", "--weights", "4,6", "--range", "0..12"], capsys)
    assert status == 0 and out.endswith("\n")
    data = json.loads(out)
    jsonschema.validate(data, load_schema("wpl"))
    assert [r["rank"] for r in data["rows"]["h0"]][-3:] == [1, 0, 2]


def test_wpl_ascii_glyphs(capsys):
    status, out, _ = run(["wpl", "--weights", "4,6", "--range", "-22..12", "--format", "ascii"],
                         capsys)
    assert status == 0
    assert out.count("#") == 7 + 7


def test_ext_chart_names_alpha(capsys):
    status, out, _ = run(["ext-chart", "--smax", "2", "--nmax", "6", "--prime", "3"], capsys)
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("ext-chart"))
    row = next(r for r in data["bidegrees"] if (r["s"], r["n"]) == (1, 2))
    assert row["torsion"] == [3] and row["classes"] == ["α"]


def test_ext_chart_stabilize(capsys):
    status, out, _ = run(["ext-chart", "--smax", "1", "--nmax", "26", "--stabilize"], capsys)
    data = json.loads(out)
    jsonschema.validate(data, load_schema("ext-chart"))
    assert {"s": 1, "n": 2, "group": "Z/3"} in data["stable"]


def test_ext_chart_resource_cap(capsys):
    status, _, err = run(["ext-chart", "--smax", "3", "--nmax", "20", "--prime", "2",
                          "--cap", "100"], capsys)
    assert status == 3 and json.loads(err)["kind"] == "resource"


def test_ext_chart_bad_prime(capsys):
    status, _, _ = run(["ext-chart", "--smax", "1", "--nmax", "4", "--prime", "4"], capsys)
    assert status == 2


@pytest.mark.parametrize("argv", [
    ["wpl", "--weights", "4,6", "--range", "0..12", "--bogus"],
    ["wpl", "--weights", "4", "--range", "0..12"],
    ["wpl", "--weights", "4,6", "--range", "3..1"],
    ["nosuch"],
    ["bundles", "normalize"],
    ["reps", "decompose", "--construct", "mbar(1)", "--group", "A5"],
])
def test_invalid_flags_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_reps_decompose(capsys):
    argv = ["reps", "decompose", "--group", "GL2F3", "--construct", "ind(Q8, mbar(1))",
            "--field", "2", "--seed", "7"]
    status, out, _ = run(argv, capsys)
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("reps"))
    assert data["rank"] == 18 and all(s["certified"] for s in data["summands"])


def test_reps_bad_construct(capsys):
    for expr in ["ind(Q8, nothing)", "mbar(", "__import__('os')"]:
        status, _, _ = run(["reps", "decompose", "--construct", expr], capsys)
        assert status == 2


def test_reps_rank_bound(capsys):
    status, _, _ = run(["reps", "decompose", "--construct", "mbar(4)", "--group", "C2xC2",
                        "--rank-bound", "3"], capsys)
    assert status == 3


def test_bundles_normalize(tmp_path, capsys):
    spec = {"stages": [{"twist": 0, "components": [
        {"kind": "Line", "twist": -2, "value": 1}, {"kind": "Line", "twist": -4, "value": 0}]}]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    status, out, _ = run(["bundles", "normalize", "--spec", str(path), "--resolver", "enumerate"],
                         capsys)
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("bundles"))
    assert [f["label"] for f in data["normal_forms"]] == ["ω^-4 ⊕ E_α", "f_*f^*O"]
    assert all(f["rank"] == 3 for f in data["normal_forms"])


def test_bundles_normalize_malformed(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"stages": [{"twist": 0, "components": [
        {"kind": "Line", "twist": 0, "value": 1}]}]}))
    assert run(["bundles", "normalize", "--spec", str(path)], capsys)[0] == 2
    assert run(["bundles", "normalize", "--spec", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_bundles_cohomology_and_ifunctor(capsys):
    status, out, _ = run(["bundles", "cohomology", "--bundle", "Line:0,Ealpha:0"], capsys)
    data = json.loads(out)
    jsonschema.validate(data, load_schema("bundles"))
    assert data["cohomology"]["H1"][2] == 1 and data["cohomology"]["H1"][4] == 1
    status, out, _ = run(["bundles", "ifunctor", "--lattice", "IdealZeta"], capsys)
    data = json.loads(out)
    jsonschema.validate(data, load_schema("bundles"))
    assert data["image"]["label"] == "E_α⊗ω^4"
    assert run(["bundles", "ifunctor", "--lattice", "sign"], capsys)[0] == 2


def test_verify_subset(capsys):
    status, out, _ = run(["verify", "--criterion", "1", "--criterion", "7"], capsys)
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, load_schema("verify"))
    assert {c["criterion"] for c in data["checks"]} == {1, 7}


def test_verify_failure_exit_1(monkeypatch, capsys):
    manifest = verify.load_manifest()
    broken = dict(manifest)
    broken["checks"] = [dict(c) for c in manifest["checks"] if c["criterion"] == 1]
    broken["checks"][0]["expected"] = [0]
    monkeypatch.setattr(verify, "load_manifest", lambda suite="paper": broken)
    status, out, _ = run(["verify", "--criterion", "1", "--format", "ascii"], capsys)
    assert status == 1 and "criterion 1: FAIL" in out


def test_manifest_schema_and_coverage():
    manifest = verify.load_manifest()
    jsonschema.validate(manifest, load_schema("manifest"))
    assert {c["criterion"] for c in manifest["checks"]} == set(range(1, 10))
    assert {c["name"] for c in manifest["checks"]} == set(verify.CHECKS)


def test_emit_empty_and_determinism(capsys):
    assert emit({}, "json") == "{}\n"
    argv = ["reps", "decompose", "--construct", "ind(Q8, mbar(1))", "--seed", "3"]
    first = run(argv, capsys)[1]
    assert first == run(argv, capsys)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellbundles", "wpl", "--weights", "1,1",
                           "--range", "0..3", "--format", "ascii"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.count("#") == 10


def test_config_dataclass():
    cfg = cli.parse_config(["wpl", "--weights", "2,3", "--range", "0..5", "--seed", "4"])
    assert cfg.subcommand == "wpl" and cfg.seed == 4 and cfg.options["weights"] == (2, 3)
