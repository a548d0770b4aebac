import csv
import io
import json
import os

import pytest

from berezinlab import cli
from berezinlab.config import ConfigError, build_config, load_config, parse_config

EXAMPLE = os.path.join(os.path.dirname(__file__), "..", "examples", "configs", "quick.ini")


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        parse_config("[run]\nbudjet = low\n")


def test_unknown_section_rejected():
    with pytest.raises(ConfigError):
        parse_config("[misc]\nx = 1\n")


def test_bad_value_rejected():
    with pytest.raises(ConfigError):
        parse_config("[run]\nseed = abc\n")


def test_parse_error_reports_line():
    with pytest.raises(ConfigError, match="line"):
        parse_config("[run]\nseed = 1\nseed = 2\n")


def test_flags_override_file():
    values = parse_config("[run]\nbudget = low\nseed = 3\n[deformation]\nt = 9\n")
    cfg = build_config(values, {("run", "seed"): 7})
    assert (cfg.budget, cfg.seed, cfg.t) == ("low", 7, 9.0)


def test_invalid_deformation_rejected():
    with pytest.raises(ConfigError):
        build_config({("deformation", "t"): 0.5})


def test_example_config_loads():
    cfg = load_config(EXAMPLE)
    assert cfg.budget == "low"


def test_eval_delta_single_row(capsys):
    assert cli.main(["eval", "delta", "--points", "1j"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 2
    assert float(rows[1][5]) == pytest.approx(0.0017853698506421465, rel=1e-12)
    assert rows[1][7].startswith("log q")


def test_eval_phi_grid_100_rows(capsys):
    assert cli.main(["eval", "phi", "--grid=-0.5,0.5,10,0.9,2,10", "--xi", "1j"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 101


def test_eval_log_delta_reduced_agrees(capsys):
    pts = "0.3+0.2j;2.4+0.05j;-1.7+0.3j"
    cli.main(["eval", "log_delta", "--points", pts])
    a = list(csv.reader(io.StringIO(capsys.readouterr().out)))[1:]
    cli.main(["eval", "log_delta", "--points", pts, "--reduce"])
    b = list(csv.reader(io.StringIO(capsys.readouterr().out)))[1:]
    import math
    for ra, rb in zip(a, b):
        assert float(ra[5]) == pytest.approx(float(rb[5]), rel=1e-9)
        k = (float(ra[6]) - float(rb[6])) / (2 * math.pi)
        assert abs(k - round(k)) < 1e-7


def test_eval_parse_error_has_column(capsys):
    assert cli.main(["eval", "delta", "--points", "1j; abc"]) == 2
    assert "column 5" in capsys.readouterr().err


def test_usage_error_exit_code():
    assert cli.main(["verify", "--budget", "huge"]) == 2
    assert cli.main(["frobnicate"]) == 2


def test_unknown_suite_exit_code(tmp_path):
    assert cli.main(["verify", "--suite", "nope", "--out", str(tmp_path)]) == 2


def test_verify_writes_reports_and_config(tmp_path, capsys):
    out = tmp_path / "r"
    code = cli.main(["verify", "--suite", "positivity-basic,area", "--budget", "low", "--out", str(out)])
    assert code == 0
    assert sorted(os.listdir(out)) == ["area.json", "config.ini", "positivity.json", "summary.csv"]
    doc = json.loads((out / "positivity.json").read_text())
    assert doc["passed"] and all("spec_hash" in r and r["paper_ref"] for r in doc["reports"])
    assert "budget = low" in (out / "config.ini").read_text()


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    from berezinlab import suites
    from berezinlab.reports import VerificationReport

    def failing(opt):
        return [VerificationReport.build("fake", "always fails", labels={}, params={}, residuals=[1.0], tolerance=0.0)]

    monkeypatch.setitem(suites.SUITES, "area", failing)
    assert cli.main(["verify", "--suite", "area", "--out", str(tmp_path)]) == 1


def test_verify_is_byte_identical(tmp_path):
    for d in ("a", "b"):
        assert cli.main(["verify", "--suite", "positivity,monotonicity", "--budget", "low", "--seed", "4",
                         "--out", str(tmp_path / d)]) == 0
    # config.ini records the output directory, so only the reports are compared
    for name in ("positivity.json", "monotonicity.json", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_plotdata_kinds(tmp_path):
    f = tmp_path / "h.csv"
    assert cli.main(["plotdata", "kernel-heatmap", "--n", "5", "--out", str(f)]) == 0
    assert len(f.read_text().splitlines()) == 26
    assert cli.main(["plotdata", "eigen-spectrum", "--out", str(f)]) == 0
    ev = [float(r["eigenvalue"]) for r in csv.DictReader(f.open())]
    assert ev == sorted(ev) and max(ev) < 1e-6
    assert cli.main(["plotdata", "residual-vs-budget", "--out", str(f)]) == 0
    res = [float(r["abs_residual"]) for r in csv.DictReader(f.open())]
    assert all(b < a for a, b in zip(res, res[1:]))
    assert res[-1] < 1e-10
