"""Tests for the command-line front end: config, dispatch, reports, exits."""
import json

import numpy as np
import pytest

from gl3osc import cli, whittaker
from gl3osc.cli import RunConfig, config_from_args, build_parser, main, run
from gl3osc.errors import ConfigError
from gl3osc.reports import Check, Report, decode_value, encode_value, load_report


def _args(*argv):
    return build_parser().parse_args(argv)


def test_run_config_validates_fields():
    with pytest.raises(ConfigError):
        RunConfig(command="warp-drive")
    with pytest.raises(ConfigError):
        RunConfig(command="bump", T=5.0)
    with pytest.raises(ConfigError):
        RunConfig(command="bump", tol=0.0)
    with pytest.raises(ConfigError):
        RunConfig(command="bump", kappa=2.0)
    with pytest.raises(ConfigError):
        RunConfig(command="bump", c1=0.0)
    with pytest.raises(ConfigError):
        RunConfig(command="scaling", grid=(250.0,))
    with pytest.raises(ConfigError):
        RunConfig(command="scaling", grid=(250.0, 5.0))


def test_per_command_defaults():
    cfg = config_from_args(_args("s-sum"))
    assert cfg.T == 200.0
    assert cfg.tol == 1e-6
    cfg = config_from_args(_args("key-identity"))
    assert cfg.T == 500.0
    assert cfg.tol == 1e-9
    cfg = config_from_args(_args("zeta-local", "--t", "250", "--tol", "1e-8"))
    assert cfg.T == 250.0
    assert cfg.tol == 1e-8


def test_grid_flag_parses_comma_list():
    cfg = config_from_args(_args("scaling", "--grid", "250,500,1000"))
    assert cfg.grid == (250.0, 500.0, 1000.0)
    with pytest.raises(ConfigError):
        config_from_args(_args("scaling", "--grid", "250,abc"))


def test_invalid_kappa_exits_2(capsys):
    assert main(["bump", "--kappa", "2"]) == 2
    assert "kappa" in capsys.readouterr().err


def test_bump_command_end_to_end(tmp_path, capsys):
    out = tmp_path / "bump.json"
    assert main(["bump", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert "all checks passed" in lines[-1]
    report = load_report(out)
    assert report.command == "bump"
    assert report.passed
    assert report.first_failure is None
    # reloaded report reproduces the file byte for byte
    assert report.canonical_json() == out.read_text()


def test_reports_are_byte_identical_across_runs(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(["bump", "--out", str(first)]) == 0
    assert main(["bump", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_zeta_local_passes_at_default_t(capsys):
    assert main(["zeta-local"]) == 0
    assert "zeta-local-residual" in capsys.readouterr().out


def test_scaling_writes_csv_next_to_json(tmp_path):
    out = tmp_path / "scaling.json"
    code = main(["scaling", "--grid", "250,500,1000", "--tol", "1e-9",
                 "--out", str(out)])
    assert code == 0
    rows = (tmp_path / "scaling.json.csv").read_text().strip().splitlines()
    assert rows[0] == "T,normalized_abs_z"
    assert len(rows) == 4
    t_vals = [float(r.split(",")[0]) for r in rows[1:]]
    assert t_vals == [250.0, 500.0, 1000.0]


def test_scaling_needs_three_grid_points(capsys):
    assert main(["scaling", "--grid", "250,500"]) == 2
    assert "3 grid points" in capsys.readouterr().err


def test_coeffs_command_with_explicit_table(tmp_path, capsys):
    # a valid but non-multiplicative table: growth passes, hecke fails
    from gl3osc.coeffs import CoefficientTable, save_coefficients, synth_eisenstein
    from gl3osc.gammafactor import LanglandsParams

    table = synth_eisenstein(LanglandsParams(alpha=(0j, 0j, 0j)), 2000)
    values = table.values.copy()
    values.setflags(write=True)
    values[6] += 0.5  # break a(2)a(3) = a(6)
    broken = CoefficientTable(values=values, x_max=table.x_max, source="synthetic")
    path = tmp_path / "coeffs.csv"
    save_coefficients(broken, path)
    assert main(["coeffs", "--coeffs", str(path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL A11-hecke" in out


def test_coeffs_command_rejects_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("not,a,valid,row\n")
    assert main(["coeffs", "--coeffs", str(path)]) == 2


def test_s_sum_command_with_sparse_table(tmp_path):
    from gl3osc.coeffs import CoefficientTable, save_coefficients

    x_max = 2 * int(np.ceil(100.0**1.52))
    values = np.zeros(x_max + 1, dtype=complex)
    values[1] = 1.0
    values[110] = 1.1j
    values[138] = -0.8 - 0.5j
    path = tmp_path / "sparse.csv"
    save_coefficients(
        CoefficientTable(values=values, x_max=x_max, source="synthetic"), path)
    out = tmp_path / "route.json"
    code = main(["s-sum", "--t", "100", "--coeffs", str(path),
                 "--out", str(out)])
    report = load_report(out)
    assert report.command == "s-sum"
    assert {c.check_id for c in report.checks} == {"A10-sum-integral",
                                                   "A10-keyident"}
    got = {c.check_id: c.passed for c in report.checks}
    assert got["A10-sum-integral"]
    assert code in (0, 1)  # sparse tables may sit outside the aggregate envelope


def test_suite_aggregates_and_records_first_failure(monkeypatch, tmp_path):
    calls = []

    def fake_battery(config):
        calls.append(config.command)
        ok = Check(f"{config.command}-ok", "stub", 0.0, 1.0)
        bad = Check(f"{config.command}-bad", "stub", 2.0, 1.0)
        return {"t": config.T}, (ok, bad) if config.command == "gamma" else (ok,)

    monkeypatch.setattr(cli, "DISPATCH",
                        {name: fake_battery for name in cli.DISPATCH})
    monkeypatch.setattr(cli, "SUITE_ORDER", ("bump", "gamma", "coeffs"))
    out = tmp_path / "suite.json"
    assert main(["suite", "--out", str(out)]) == 1
    assert calls == ["bump", "gamma", "coeffs"]
    report = load_report(out)
    # the failing check does not stop later batteries
    assert [c.check_id for c in report.checks] == [
        "bump-ok", "gamma-ok", "gamma-bad", "coeffs-ok"]
    assert report.first_failure == "gamma-bad"
    assert set(report.outputs) == {"bump", "gamma", "coeffs"}


def test_suite_uses_per_command_defaults(monkeypatch):
    seen = {}

    def fake_battery(config):
        seen[config.command] = (config.T, config.tol)
        return {}, (Check(f"{config.command}-ok", "stub", 0.0, 1.0),)

    monkeypatch.setattr(cli, "DISPATCH",
                        {name: fake_battery for name in cli.DISPATCH})
    monkeypatch.setattr(cli, "SUITE_ORDER", ("oscint", "s-sum"))
    assert main(["suite"]) == 0
    assert seen["s-sum"] == (200.0, 1e-6)
    assert seen["oscint"] == (500.0, 1e-10)


def test_sign_mutation_breaks_asymptotics_but_not_identity(monkeypatch):
    # flipping the stationary-phase constant's sign must trip the zeta-local
    # comparison while leaving the self-contained key identity untouched
    true_c = whittaker.c_constant
    monkeypatch.setattr(cli, "c_constant", lambda T, c1=1.0: -true_c(T, c1))
    assert main(["zeta-local"]) == 1
    assert main(["key-identity", "--t", "60", "--tol", "1e-8"]) == 0


def test_exit_code_1_on_failed_check(monkeypatch, capsys):
    def fake_battery(config):
        return {}, (Check("doomed", "stub", 5.0, 1.0),)

    monkeypatch.setattr(cli, "DISPATCH", dict(cli.DISPATCH, bump=fake_battery))
    assert main(["bump"]) == 1
    assert "FAIL doomed" in capsys.readouterr().out


def test_encode_decode_round_trip():
    payload = {
        "z": 1.5 - 2.5j,
        "xs": [1, 2.5, True, None, "label"],
        "nested": {"arr": np.array([1.0, 2.0]), "np_f": np.float64(0.25),
                   "np_b": np.bool_(True), "np_c": np.complex128(1j)},
    }
    encoded = encode_value(payload)
    blob = json.dumps(encoded)  # must be serializable as-is
    back = decode_value(json.loads(blob))
    assert back["z"] == 1.5 - 2.5j
    assert back["xs"] == [1, 2.5, True, None, "label"]
    assert back["nested"]["arr"] == [1.0, 2.0]
    assert back["nested"]["np_b"] is True
    assert back["nested"]["np_c"] == 1j
    with pytest.raises(ConfigError):
        encode_value(object())


def test_check_rejects_negative_residual_and_empty_id():
    with pytest.raises(ConfigError):
        Check("x", "d", -1.0, 1.0)
    with pytest.raises(ConfigError):
        Check("", "d", 0.0, 1.0)
    c = Check("x", "d", np.float64(0.5), np.float64(1.0))
    assert isinstance(c.residual, float) and not isinstance(c.passed, np.bool_)


def test_report_wall_time_excluded_from_canonical_form():
    checks = (Check("a", "d", 0.0, 1.0),)
    r1 = Report(command="bump", inputs={}, outputs={}, checks=checks,
                wall_time_ms=12.0)
    r2 = Report(command="bump", inputs={}, outputs={}, checks=checks,
                wall_time_ms=99.0)
    assert r1.canonical_json() == r2.canonical_json()
    assert "wall_time_ms" not in json.loads(r1.canonical_json())
