import csv
import io
import os
import subprocess
import sys

import numpy as np
import pytest

from horofourier.cli import (
    EXIT_FAIL,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_USAGE,
    GridConfig,
    UsageError,
    load_config,
    main,
    parse_values,
    radial_csv,
)
from horofourier.transforms import profile_from_function, standard_profile


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "phi", "--lambda", "0", "--t", "0")
    assert code == EXIT_OK
    r = rows(out)
    assert list(r[0]) == ["lambda_re", "lambda_im", "t", "n", "value_re", "value_im"]
    assert float(r[0]["value_re"]) == pytest.approx(1.0, abs=1e-15)
    code, out, _ = run(capsys, "eval", "qpoly", "--n", "0", "--lambda", "5")
    assert float(rows(out)[0]["value_re"]) == 1.0
    code, out, _ = run(capsys, "eval", "density", "--lambda", "1")
    assert float(rows(out)[0]["value_re"]) == pytest.approx(0.25 * np.tanh(np.pi / 2), rel=1e-15)


def test_eval_grid_and_format(capsys):
    code, out, _ = run(capsys, "eval", "eisenstein", "--n", "2", "--lambda", "0:2:3", "--t", "0.5,1")
    r = rows(out)
    assert code == EXIT_OK and len(r) == 6
    assert all(row["n"] == "2.0000000000000000e+00" for row in r)
    assert out.endswith("\n") and "\r" not in out


@pytest.mark.parametrize("argv", [
    ["eval", "phi", "--bogus"],
    ["frobnicate"],
    [],
    ["eval", "phi", "--lambda", "1:2"],
    ["eval", "phi", "--t", "-1"],
    ["eval", "density", "--lambda", "1+1j"],
    ["verify", "estimates", "--tolerance-scale", "0"],
    ["--jobs", "0", "eval", "phi"],
    ["transform", "forward"],
    ["transform", "forward", "--profile", "nope"],
    ["transform", "forward", "--profile", "sech4_n0", "--t-panels", "0"],
    ["transform", "hft", "--profile", "sech4_n0", "--n-theta", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_strict_parity(capsys):
    assert run(capsys, "--strict-parity", "eval", "eisenstein", "--n", "1")[0] == EXIT_USAGE
    assert run(capsys, "eval", "eisenstein", "--n", "1", "--strict-parity")[0] == EXIT_USAGE
    assert run(capsys, "eval", "eisenstein", "--n", "2", "--strict-parity")[0] == EXIT_OK
    assert run(capsys, "transform", "forward", "--profile", "sech4_n3", "--strict-parity")[0] == EXIT_USAGE


def test_forward_is_even(capsys, tmp_path):
    code, _, _ = run(capsys, "--out", str(tmp_path), "transform", "forward", "--profile", "sech4_n0")
    assert code == EXIT_OK
    r = rows((tmp_path / "forward_sech4_n0.csv").read_text())
    assert list(r[0]) == ["lambda_re", "lambda_im", "h_re", "h_im"]
    lam = np.array([float(x["lambda_re"]) for x in r])
    h = np.array([complex(float(x["h_re"]), float(x["h_im"])) for x in r])
    assert np.allclose(lam, -lam[::-1], atol=1e-12)
    assert np.max(np.abs(np.abs(h) - np.abs(h[::-1]))) < 1e-12


def test_inverse_round_trip_reported(capsys):
    code, out, _ = run(capsys, "transform", "inverse", "--profile", "sech4_n0")
    assert code == EXIT_OK
    line = next(x for x in out.splitlines() if x.startswith("round-trip"))
    assert float(line.split(":")[1]) < 1e-6


def test_file_round_trip(capsys, tmp_path):
    f = standard_profile(1, 3, GridConfig().t_rule())
    src = tmp_path / "g.csv"
    src.write_text(radial_csv(f))
    assert run(capsys, "--out", str(tmp_path), "transform", "forward", "--input", str(src))[0] == EXIT_OK
    spec = tmp_path / "forward_g.csv"
    assert run(capsys, "--out", str(tmp_path), "transform", "inverse", "--input", str(spec))[0] == EXIT_OK
    r = rows((tmp_path / "inverse_forward_g.csv").read_text())
    t = np.array([float(x["t"]) for x in r])
    g = np.array([float(x["value_re"]) for x in r])
    mask = t <= 4
    assert np.max(np.abs(g[mask] - f.values.real[mask])) < 1e-8


def test_hft_output(capsys, tmp_path):
    code, _, _ = run(capsys, "--out", str(tmp_path), "transform", "hft", "--profile", "sech6_n1", "--n-theta", "4",
                     "--lambda-max", "8", "--lambda-panels", "2", "--lambda-order", "8")
    assert code == EXIT_OK
    r = rows((tmp_path / "hft_sech6_n1.csv").read_text())
    assert len(r) == 16 * 4 and list(r[0]) == ["lambda_re", "lambda_im", "theta", "F_re", "F_im"]


@pytest.mark.parametrize("content", [
    "garbage\n1,2\n",
    "# n = 0\n# kappa = 4\nt,value_re,value_im\n0.1,abc,0\n",
    "# kappa = 4\nt,value_re,value_im\n0.1,1,0\n",
    "# n = 0\n# kappa = 4\nt,value_re,value_im\n0.1,1,0\n",
    "# n = 0\n# kappa = 4\nt,value_re,value_im\n",
    "# broken\nt,value_re,value_im\n0.1,1,0\n",
])
def test_malformed_input_exit_3(capsys, tmp_path, content):
    p = tmp_path / "bad.csv"
    p.write_text(content)
    code, _, err = run(capsys, "transform", "forward", "--input", str(p))
    assert code == EXIT_INVARIANT
    assert "invariant violated" in err


def test_profile_invariant_exit_3(capsys, tmp_path):
    rule = GridConfig().t_rule()
    bad = profile_from_function(0, lambda t: np.cosh(t) ** -4, 4.0, rule)
    text = radial_csv(bad).replace("# n = 0", "# n = 2")
    p = tmp_path / "odd.csv"
    p.write_text(text)
    code, _, err = run(capsys, "transform", "forward", "--input", str(p))
    assert code == EXIT_INVARIANT and "origin-vanishing" in err


def test_missing_input_file_is_usage(capsys, tmp_path):
    assert run(capsys, "transform", "forward", "--input", str(tmp_path / "none.csv"))[0] == EXIT_USAGE


def test_outputs_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        run(capsys, "--out", str(d), "eval", "eisenstein", "--n", "1", "--lambda=-2:2:5", "--t", "0:3:4")
        run(capsys, "--out", str(d), "transform", "forward", "--profile", "sech6_n2")
        outs.append({p: (d / p).read_bytes() for p in sorted(os.listdir(d))})
    assert outs[0] == outs[1] and len(outs[0]) == 2


def test_parse_values():
    assert parse_values("1,2").tolist() == [1, 2]
    assert parse_values("0:1:3", float).tolist() == [0.0, 0.5, 1.0]
    assert parse_values("1+0.5j")[0] == 1 + 0.5j
    for bad in ("a", "0:1:0", "1:2"):
        with pytest.raises(UsageError):
            parse_values(bad)


def test_config_loading(tmp_path):
    assert load_config(None).jobs == 1
    good = tmp_path / "run.toml"
    good.write_text('jobs = 2\n\n[suite]\nfamily_n = [0, 2]\ntolerance_scale = 0.5\n\n[grids]\nt_max = 10.0\n')
    cfg = load_config(str(good))
    assert cfg.jobs == 2 and cfg.suite.family_n == (0, 2) and cfg.suite.tolerance_scale == 0.5
    assert cfg.grids.t_max == 10.0
    flat = tmp_path / "flat.toml"
    flat.write_text("family_a = [3]\nstrict_parity = true\n")
    cfg = load_config(str(flat))
    assert cfg.suite.family_a == (3,) and cfg.strict_parity
    for text in ("nonsense = 1\n", "[grids]\nt_max = -1.0\n", "jobs = 0\n", "family_n = 3\n", "x = [\n"):
        bad = tmp_path / "bad.toml"
        bad.write_text(text)
        with pytest.raises(UsageError):
            load_config(str(bad))
    with pytest.raises(UsageError):
        load_config(str(tmp_path / "missing.toml"))


def test_config_drives_grids(capsys, tmp_path):
    cfg = tmp_path / "g.toml"
    cfg.write_text("[grids]\nlambda_max = 10.0\nlambda_panels = 2\nlambda_order = 8\n")
    code, out, _ = run(capsys, "--config", str(cfg), "transform", "forward", "--profile", "sech4_n0")
    assert code == EXIT_OK and len(rows(out)) == 16


def test_bad_config_exit_2(capsys, tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("unknown_key = 1\n")
    assert run(capsys, "--config", str(cfg), "eval", "phi")[0] == EXIT_USAGE


def test_verify_estimates_pass_and_forced_failure(capsys, tmp_path):
    code, out, err = run(capsys, "--out", str(tmp_path), "verify", "estimates")
    assert code == EXIT_OK
    assert "AC1" in err and "AC2" in err
    summary = rows((tmp_path / "summary_estimates.csv").read_text())
    assert list(summary[0]) == ["check_id", "status", "measured", "tolerance"]
    assert all(r["status"] == "PASS" for r in summary)
    assert (tmp_path / "report_estimates.txt").read_text().strip()
    code, _, _ = run(capsys, "--out", str(tmp_path / "tight"), "verify", "estimates", "--tolerance-scale", "1e-3")
    assert code == EXIT_FAIL


def test_verify_pw_table(capsys, tmp_path):
    cfg = tmp_path / "pw.toml"
    cfg.write_text("[suite]\npw_radii = [1.0]\ndecay_orders = [0]\n")
    code, _, _ = run(capsys, "--config", str(cfg), "--out", str(tmp_path), "verify", "pw")
    assert code == EXIT_OK
    r = rows((tmp_path / "pw_table.csv").read_text())
    assert len(r) == 1 and abs(float(r[0]["R_hat"]) - 1) < 0.05 and r[0]["outcome"] == "finite"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "horofourier", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "eval" in res.stdout
    res = subprocess.run([sys.executable, "-m", "horofourier", "eval", "qpoly", "--n", "2", "--lambda", "1j"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and rows(res.stdout)[0]["value_re"] == "0.0000000000000000e+00"


def test_shipped_config_matches_defaults():
    from horofourier.cli import RunConfig

    path = os.path.join(os.path.dirname(__file__), os.pardir, "configs", "default.toml")
    assert load_config(path) == RunConfig()
