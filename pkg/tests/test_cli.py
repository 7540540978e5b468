"""Command-line interface: verbs, exit codes, output formats."""

import csv
import io
import json

import pytest

from cesaro.cli import parse_scalar, parse_series, run, series_dirichlet_s


def _json_out(capsys, argv, expect_code=0):
    code = run(argv + ["--format", "json"])
    out = capsys.readouterr().out
    assert code == expect_code, out
    return json.loads(out)


def _value(doc):
    v = doc["value"]
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    if isinstance(v, str):  # exact rational
        return v
    return v


# -- series grammar --------------------------------------------------------

def test_parse_series_names():
    for text in ("ones", "alt_ones", "n", "alt_n", "n_pow(-0.5)",
                 "n_pow(0.3,0.4)", "zero_padded(alt_ones,1,0,1)",
                 "zero_padded(zero_padded(ones,1,0),1,1,0)"):
        s = parse_series(text)
        assert s.term_array(10).shape == (10,)


def test_parse_series_rejects_garbage():
    for text in ("fibonacci", "zero_padded(ones)", "zero_padded(ones,2,0)",
                 "n_pow()", "zero_padded(ones,)"):
        with pytest.raises(ValueError):
            parse_series(text)


def test_series_dirichlet_exponent():
    assert series_dirichlet_s("ones") == 0.0
    assert series_dirichlet_s("n") == -1.0
    assert series_dirichlet_s("n_pow(-0.5)") == 0.5
    assert series_dirichlet_s("alt_ones") is None
    assert series_dirichlet_s("zero_padded(ones,1,0)") is None


def test_parse_scalar():
    assert parse_scalar("2.5") == 2.5
    assert parse_scalar("-1,0") == -1.0
    assert parse_scalar("0.3,0.4") == complex(0.3, 0.4)
    with pytest.raises(ValueError):
        parse_scalar("1,2,3")


# -- sum and limit ---------------------------------------------------------

def test_sum_alternating_ones(capsys):
    doc = _json_out(capsys, ["sum", "alt_ones"])
    assert _value(doc) == pytest.approx(0.5, abs=1e-8)
    assert doc["mechanism"] == "strong(1)"


def test_sum_alternating_naturals(capsys):
    doc = _json_out(capsys, ["sum", "alt_n"])
    assert _value(doc) == pytest.approx(0.25, abs=1e-7)
    assert doc["mechanism"] == "strong(2)"


def test_sum_zero_padded(capsys):
    doc = _json_out(capsys, ["sum", "zero_padded(alt_ones,1,0,1)"])
    assert _value(doc) == pytest.approx(2.0 / 3.0, abs=1e-7)


def test_sum_naturals_routes_through_continuation(capsys):
    doc = _json_out(capsys, ["sum", "n"])
    assert _value(doc) == pytest.approx(-1.0 / 12.0, abs=1e-9)


def test_sum_harmonic_is_a_pole(capsys):
    code = run(["sum", "n_pow(-1)", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 3
    assert doc["status"] == "pole"


def test_sum_exact_mode(capsys):
    doc = _json_out(capsys, ["sum", "alt_ones", "--exact"])
    assert _value(doc) == "1/2"


def test_limit_decaying_power(capsys):
    doc = _json_out(capsys, ["limit", "n_pow(-0.5)"])
    assert abs(_value(doc)) < 1e-8


def test_limit_constant_series(capsys):
    doc = _json_out(capsys, ["limit", "ones"])
    assert _value(doc) == pytest.approx(1.0, abs=1e-8)


# -- zeta / eta ------------------------------------------------------------

def test_zeta_value_with_fused_flag(capsys):
    # "--s -1,0" must survive argparse's dislike of dash-leading values
    doc = _json_out(capsys, ["zeta", "--s", "-1,0"])
    assert _value(doc) == pytest.approx(-1.0 / 12.0, abs=1e-9)


def test_zeta_complex_argument(capsys):
    doc = _json_out(capsys, ["zeta", "--s", "0.3,0.4"])
    want = complex(-0.552296663502482, -0.583761333344439)
    assert _value(doc) == pytest.approx(want, abs=1e-8)


def test_zeta_pole_exit_code(capsys):
    code = run(["zeta", "--s", "1,0", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 3
    assert doc["status"] == "pole"
    assert doc["residue"] == pytest.approx(1.0, abs=1e-6)


def test_zeta_discrete_anomaly(capsys):
    doc = _json_out(capsys, ["zeta", "--s", "-1,0", "--discrete"])
    assert _value(doc) == pytest.approx(1.0, abs=1e-6)
    assert doc["anomaly"] is True


def test_zeta_corrected_exact(capsys):
    doc = _json_out(capsys, ["zeta", "--s", "-3,0", "--corrected",
                             "--exact"])
    assert _value(doc) == "1/120"


def test_eta_value(capsys):
    doc = _json_out(capsys, ["eta", "--s", "0"])
    assert _value(doc) == pytest.approx(0.5, abs=1e-8)


# -- integral / mellin -----------------------------------------------------

def test_integral_exponential(capsys):
    doc = _json_out(capsys, ["integral", "--f", "exp", "--spec", "[]"])
    assert _value(doc) == pytest.approx(1.0, abs=1e-8)
    assert doc["cutoff_variables"] == 1


def test_integral_log_pole(capsys):
    spec = json.dumps([{"kind": "zero"}, {"kind": "infinity"}])
    code = run(["integral", "--f", "one_over_x", "--spec", spec,
                "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 3
    assert set(doc["log_flags"].split(",")) == {"zero", "infinity"}


def test_integral_unknown_function(capsys):
    code = run(["integral", "--f", "nope", "--spec", "[]"])
    assert code == 2


def test_integral_bad_spec_json(capsys):
    code = run(["integral", "--f", "exp", "--spec", "{not json"])
    assert code == 2


def test_mellin_value_and_pole(capsys):
    doc = _json_out(capsys, ["mellin", "--s", "0.5"])
    assert _value(doc) == pytest.approx(3.14159265358979, abs=1e-6)
    code = run(["mellin", "--s", "1", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 3
    assert doc["residue"] == pytest.approx(-1.0, abs=1e-6)


# -- sweep / table ---------------------------------------------------------

def test_sweep_zeta_values(capsys):
    doc = _json_out(capsys, ["sweep", "zeta", "--start", "-2", "--stop", "0",
                             "--count", "3"])
    rows = doc["rows"]
    assert [r["status"] for r in rows] == ["ok"] * 3
    got = [r["value_re"] for r in rows]
    assert got == pytest.approx([0.0, -1.0 / 12.0, -0.5], abs=1e-9)


def test_sweep_crosses_pole_without_aborting(capsys):
    doc = _json_out(capsys, ["sweep", "zeta", "--start", "0.5",
                             "--stop", "1.5", "--count", "3"])
    rows = doc["rows"]
    assert rows[1]["status"] == "pole"
    assert rows[1]["value_re"] is None
    assert rows[0]["status"] == "ok" and rows[2]["status"] == "ok"


def test_sweep_empty_grid_is_usage_error(capsys):
    assert run(["sweep", "zeta", "--start", "0", "--stop", "1",
                "--count", "0"]) == 2


def test_sweep_is_deterministic(capsys):
    argv = ["sweep", "eta", "--start", "-1", "--stop", "1", "--count", "5",
            "--format", "csv"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    second = capsys.readouterr().out
    assert first == second


def test_sweep_csv_parses(capsys):
    argv = ["sweep", "mellin", "--start", "0.2", "--stop", "0.8",
            "--count", "4", "--format", "csv"]
    assert run(argv) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["s", "value_re", "value_im", "path", "removed",
                       "status"]
    assert len(rows) == 5


def test_table_verb_exact_entries(capsys):
    doc = _json_out(capsys, ["table", "--kind", "k", "--max-delta", "2",
                             "--max-r", "1"])
    by_key = {(r["delta"], r["r"]): r["limit"] for r in doc["rows"]}
    assert by_key[(0, 0)] == "1"
    assert by_key[(1, 0)] == "-1/2"
    assert by_key[(2, 1)] == "1/4"


# -- dispatch and exit codes -----------------------------------------------

def test_unknown_verb_is_usage_error(capsys):
    assert run(["frobnicate"]) == 2


def test_missing_required_flag_is_usage_error(capsys):
    assert run(["zeta"]) == 2


def test_bad_series_is_usage_error(capsys):
    assert run(["sum", "fibonacci"]) == 2


def test_help_exits_clean(capsys):
    assert run(["--help"]) == 0


def test_cli_matches_library(capsys):
    from cesaro.config import DEFAULT_CONFIG
    from cesaro.zeta import zeta
    doc = _json_out(capsys, ["zeta", "--s", "-1.5,0"])
    lib = complex(zeta(-1.5, DEFAULT_CONFIG).value).real
    assert _value(doc) == pytest.approx(lib, abs=1e-12)
