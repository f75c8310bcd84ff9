import json

import pytest

from mubgeo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_writes_artifact(tmp_path, capsys):
    out = tmp_path / "fam.json"
    code, stdout, _ = run(capsys, "construct", "--construction", "planar",
                          "--p", "3", "--n", "1", "--output", str(out))
    assert code == 0 and "q=3" in stdout
    data = json.loads(out.read_text())
    assert data["q"] == 3 and len(data["bases"]) == 3


def test_construct_csv_format(tmp_path, capsys):
    out = tmp_path / "fam.csv"
    code, _, _ = run(capsys, "construct", "--construction", "planar",
                     "--p", "3", "--n", "1", "--format", "csv",
                     "--output", str(out))
    assert code == 0
    assert out.read_text().splitlines()[0] == "a,b,e_0,e_1,e_2"


def test_verify_pass_exit_zero(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code, stdout, _ = run(capsys, "verify", "--construction", "galois-ring",
                          "--n", "2", "--output", str(out))
    assert code == 0 and "pass" in stdout
    report = json.loads(out.read_text())
    assert report["verdict"] == "pass"
    assert report["histogram"]["16"] == 16


def test_verify_corrupted_family_exit_one(tmp_path, capsys):
    fam_path = tmp_path / "fam.json"
    run(capsys, "construct", "--construction", "planar", "--p", "3",
        "--n", "1", "--output", str(fam_path))
    data = json.loads(fam_path.read_text())
    data["bases"][1][0][2] = (data["bases"][1][0][2] + 1) % 3
    fam_path.write_text(json.dumps(data))
    code, stdout, _ = run(capsys, "verify", "--input", str(fam_path),
                          "--output", str(tmp_path / "v.json"))
    assert code == 1 and "fail" in stdout


def test_invalid_parameters_exit_two(capsys):
    code, _, stderr = run(capsys, "construct", "--construction", "alltop",
                          "--p", "3", "--n", "1", "--output", "-")
    assert code == 2
    err = json.loads(stderr)
    assert err["error"] == "characteristic_too_small"

    code, _, stderr = run(capsys, "verify", "--construction", "symplectic",
                          "--p", "3", "--n", "2", "--output", "-")
    assert code == 2
    assert "odd" in json.loads(stderr)["message"]


def test_missing_construction_exit_two(capsys):
    code, _, stderr = run(capsys, "verify", "--output", "-")
    assert code == 2 and "required" in json.loads(stderr)["message"]


def test_stdout_streaming(capsys):
    code, stdout, _ = run(capsys, "audit", "--construction", "planar",
                          "--p", "3", "--n", "1", "--output", "-")
    assert code == 0
    payload = json.loads(stdout.splitlines()[0])
    assert payload["rank"] == 2 and payload["verdict"] == "pass"


def test_geometry_command(capsys):
    code, stdout, _ = run(capsys, "geometry", "--construction", "galois-ring",
                          "--n", "2", "--output", "-")
    assert code == 0
    payload = json.loads(stdout.splitlines()[0])
    assert payload["census"]["points"] == 6
    assert payload["phg_identity"]["ok"]


def test_all_command_deterministic_bytes(tmp_path, capsys):
    args = ("all", "--construction", "planar", "--p", "5", "--n", "1",
            "--mode", "sampled", "--samples", "50", "--seed", "7")
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(capsys, *args, "--output", str(out1))[0] == 0
    assert run(capsys, *args, "--output", str(out2))[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["verify"]["seed"] == 7
    assert payload["audit"]["verdict"] == "pass"
    assert payload["geometry"]["pg_identity"]["ok"]


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MUBGEO_OUTPUT_DIR", str(tmp_path))
    code, stdout, _ = run(capsys, "construct", "--construction",
                          "galois-ring", "--n", "1")
    assert code == 0
    expected = tmp_path / "construct_galois-ring_n1.json"
    assert expected.exists() and str(expected) in stdout


def test_input_round_trip(tmp_path, capsys):
    fam_path = tmp_path / "fam.json"
    run(capsys, "construct", "--construction", "symplectic", "--p", "3",
        "--n", "3", "--s", "1", "--output", str(fam_path))
    code, stdout, _ = run(capsys, "verify", "--input", str(fam_path),
                          "--output", str(tmp_path / "v.json"))
    assert code == 0 and "pass" in stdout


def test_planar_poly_flag(tmp_path, capsys):
    # x^2 passed explicitly must match the default
    out1, out2 = tmp_path / "d.json", tmp_path / "e.json"
    run(capsys, "construct", "--construction", "planar", "--p", "3",
        "--n", "1", "--output", str(out1))
    run(capsys, "construct", "--construction", "planar", "--p", "3",
        "--n", "1", "--planar-poly", "0,0,1", "--output", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    # a non-planar polynomial is rejected
    code, _, stderr = run(capsys, "construct", "--construction", "planar",
                          "--p", "3", "--n", "1", "--planar-poly", "0,1",
                          "--output", "-")
    assert code == 2 and json.loads(stderr)["error"] == "not_planar"


def test_compare_derived_containment(capsys):
    code, stdout, _ = run(capsys, "compare-derived",
                          "--construction-a", "planar", "--p-a", "5",
                          "--n-a", "1",
                          "--construction-b", "alltop", "--p-b", "5",
                          "--n-b", "1", "--output", "-")
    assert code == 0
    payload = json.loads(stdout.splitlines()[0])
    assert payload["verdict"] == "b-contains-a"
    assert payload["size_a"] == 25 and payload["size_b"] == 125


def test_compare_derived_equal_and_mismatch(capsys):
    code, stdout, _ = run(capsys, "compare-derived",
                          "--construction-a", "planar", "--p-a", "3",
                          "--n-a", "1",
                          "--construction-b", "planar", "--p-b", "3",
                          "--n-b", "1", "--output", "-")
    assert code == 0
    assert json.loads(stdout.splitlines()[0])["verdict"] == "equal"

    code, _, stderr = run(capsys, "compare-derived",
                          "--construction-a", "planar", "--p-a", "3",
                          "--n-a", "1",
                          "--construction-b", "planar", "--p-b", "5",
                          "--n-b", "1", "--output", "-")
    assert code == 2 and "mismatch" in json.loads(stderr)["message"]
