"""Command-line front end: output formats, exit codes, determinism."""

import json

import pytest

from superharm import cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out


# -- single-shot computations -------------------------------------------------


def test_dims_single_value(capsys):
    code, out = run(["dims", "--m", "3", "--n", "1", "--k", "2"], capsys)
    assert code == 0
    assert json.loads(out) == {"dim": 12}


def test_dims_sweep_csv(capsys):
    code, out = run(["dims", "--m", "3", "--n", "1", "--kmax", "3", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k,harmonics,polynomials"
    assert lines[1] == "0,1,1"
    assert lines[2] == "1,5,5"
    assert lines[3] == "2,12,13"


def test_dims_csv_needs_sweep(capsys):
    code, out = run(["dims", "--m", "3", "--n", "1", "--k", "2", "--format", "csv"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["type"] == "invalid-config"


def test_pizzetti_constant(capsys):
    # total sphere area at M = 1 is exactly 2
    code, out = run(["pizzetti", "--m", "3", "--n", "1", "--poly", "1"], capsys)
    assert code == 0
    assert json.loads(out) == {"value": "2"}


def test_pizzetti_degenerate_area_is_zero(capsys):
    code, out = run(["pizzetti", "--m", "2", "--n", "1", "--poly", "1"], capsys)
    assert code == 0
    assert json.loads(out) == {"value": "0"}


def test_pizzetti_bad_polynomial(capsys):
    code, out = run(["pizzetti", "--m", "2", "--n", "1", "--poly", "x9^2"], capsys)
    assert code == 2
    assert "error" in json.loads(out)


def test_fischer_classical_blocks(capsys):
    code, out = run(["fischer", "--m", "2", "--n", "0", "--poly", "x1^2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["round_trip"] is True
    assert [b["j"] for b in payload["blocks"]] == [0, 1]


def test_fischer_rejects_inhomogeneous(capsys):
    code, out = run(["fischer", "--m", "2", "--n", "0", "--poly", "x1^2 + x2"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["type"] == "invalid-config"


def test_fischer_rejects_degenerate_superdimension(capsys):
    code, out = run(["fischer", "--m", "2", "--n", "1", "--poly", "x1^2"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["type"] == "unsupported-signature"


def test_funk_hecke_classical_value(capsys):
    code, out = run(["funk-hecke", "--m", "3", "--n", "0", "--l", "0", "--k", "2"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == "4/3*pi"


def test_funk_hecke_parity_zero(capsys):
    code, out = run(["funk-hecke", "--m", "3", "--n", "0", "--l", "0", "--k", "1"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == "0"


def test_funk_hecke_profile_rows(capsys):
    code, out = run(
        ["funk-hecke", "--m", "3", "--n", "1", "--l", "1", "--profile", "0,1,0,1/2"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert [v["k"] for v in payload["values"]] == [1, 3]


def test_funk_hecke_needs_kernel(capsys):
    code, out = run(["funk-hecke", "--m", "3", "--n", "1", "--l", "0"], capsys)
    assert code == 2


def test_bochner_gaussian_self_reciprocal(capsys):
    code, out = run(
        ["bochner", "--m", "3", "--n", "1", "--k", "1", "--profile", "exp(1/2)"], capsys
    )
    assert code == 0
    import math

    for row in json.loads(out)["rows"]:
        assert abs(row["value"] - math.exp(-row["u"] ** 2 / 2)) < 1e-8


def test_bochner_rejects_growth(capsys):
    code, out = run(
        ["bochner", "--m", "3", "--n", "0", "--k", "0", "--profile", "poly([0,1])"], capsys
    )
    assert code == 2
    assert json.loads(out)["error"]["type"] == "non-integrable"


def test_reduce_integral_gaussian_branches(capsys):
    code, out = run(["reduce-integral", "--m", "2", "--n", "1", "--profile", "exp(1)"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == "1"
    code, out = run(["reduce-integral", "--m", "3", "--n", "1", "--profile", "exp(1)"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == "pi^(1/2)"


def test_fundsol_normalization(capsys):
    code, out = run(["fundsol", "--m", "3", "--n", "1", "--l", "1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["annihilated"] is True
    assert payload["normalization"]["computed"] == "-2"
    assert payload["normalization"]["passed"] is True


# -- kernel expansion check ---------------------------------------------------


def test_mehler_seeded_pass(capsys):
    code, out = run(["mehler", "--m", "3", "--n", "1", "--seed", "11"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["residual"] < 1e-8


def test_mehler_degenerate_rejected(capsys):
    code, out = run(["mehler", "--m", "2", "--n", "1", "--seed", "11"], capsys)
    assert code == 2
    assert json.loads(out)["error"]["type"] == "unsupported-signature"


def test_env_tolerance_drives_check_failure(capsys, monkeypatch):
    # an unreachable tolerance turns the same run into a reported failure
    monkeypatch.setenv(cli.DEFAULT_TOL_ENV, "1e-30")
    code, out = run(["mehler", "--m", "3", "--n", "1", "--seed", "11"], capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["passed"] is False
    assert payload["tolerance"] == 1e-30


# -- spectra ------------------------------------------------------------------


def test_spectrum_oscillator_rows(capsys):
    code, out = run(
        ["spectrum", "--m", "3", "--n", "1", "--V", "osc", "--jmax", "2", "--kmax", "2"], capsys
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["E"] for r in rows[:4]] == [0.5, 1.5, 2.5, 2.5]
    assert rows[0]["degeneracy"] == 1
    assert rows[1]["degeneracy"] == 5
    by_jk = {(r["j"], r["k"]): r for r in rows}
    assert by_jk[(0, 2)]["degeneracy"] == 12


def test_spectrum_csv_flat(capsys):
    code, out = run(
        ["spectrum", "--m", "1", "--n", "0", "--V", "osc", "--jmax", "1", "--kmax", "0",
         "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "j,k,E,degeneracy,err"
    assert len(lines) == 3


def test_spectrum_numeric_oscillator(capsys):
    code, out = run(
        ["spectrum", "--m", "3", "--n", "0", "--V", "poly([0,1/2])", "--jmax", "0",
         "--kmax", "0", "--rmax", "10", "--nodes", "800"], capsys
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert abs(row["E"] - 1.5) < 1e-5
    assert row["err"] < 1e-4


def test_spectrum_numeric_needs_confinement(capsys):
    code, out = run(
        ["spectrum", "--m", "3", "--n", "0", "--V=-1*pow(-1/2)", "--jmax", "0",
         "--kmax", "0"], capsys
    )
    assert code == 2
    assert "box" in json.loads(out)["error"]["message"]


# -- configuration limits and output files ------------------------------------


def test_signature_caps(capsys):
    code, out = run(["dims", "--m", "7", "--n", "0", "--k", "1"], capsys)
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "dims.json"
    code, out = run(["dims", "--m", "3", "--n", "1", "--k", "2", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == {"dim": 12}


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["verify-all", "--suite", "no-such-suite"])
    capsys.readouterr()


# -- seeded verification ------------------------------------------------------


def test_verify_subset_passes(capsys):
    code, out = run(["verify-all", "--suite", "scalar-exact"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert [s["suite"] for s in payload["suites"]] == ["scalar-exact"]


def test_verify_subset_deterministic(capsys):
    args = ["verify-all", "--seed", "7", "--suite", "scalar-exact", "--suite",
            "grassmann-algebra"]
    _, first = run(args, capsys)
    _, second = run(args, capsys)
    assert first == second
    names = [s["suite"] for s in json.loads(first)["suites"]]
    assert names == sorted(names)
