import csv
import io
import json
import subprocess
import sys

import pytest

from symcurves.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from symcurves.report import Check, Report, fmt_real


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_curve_text(capsys):
    code, out, _ = run(capsys, "curve", "as", "-n", "3", "-q", "2", "-i", "2", "--count")
    assert code == EXIT_OK
    assert "degree=4 genus=6 predicted N1=33" in out
    assert "N1=33" in out and "PASS curve.N1" in out


def test_curve_json_round_trip(capsys):
    code, out, _ = run(capsys, "curve", "kummer", "-n", "3", "-q", "2", "-i", "2", "--count", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema_version"] == 1 and "runtime" not in data
    rec = data["results"][0]
    assert rec["invariants"]["genus"] == 9 and rec["census"]["N1"] == 33
    assert Report.from_dict(data).to_json() == out


def test_curve_csv(capsys):
    code, out, _ = run(capsys, "curve", "hermitian", "-q", "3", "--count", "--csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["record", "key", "value"]
    assert ["0", "census.N1", "28"] in rows
    assert ["check", "curve.hasse-weil", "pass"] in rows


@pytest.mark.parametrize(
    "argv",
    [
        ["curve", "subcover", "-n", "3", "-q", "2", "--count", "--n2"],
        ["curve", "gs", "-q", "3", "--count"],
        ["curve", "tracenorm", "-n", "4", "-q", "2", "-m", "2", "--count"],
        ["curve", "as", "-n", "3", "-q", "2", "--autos"],
        ["oesterle", "8", "17"],
    ],
)
def test_commands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK, out


def test_subcover_with_explicit_basis(capsys):
    code, out, _ = run(capsys, "curve", "subcover", "-n", "3", "-q", "2", "--w-basis", "2", "--n2", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["results"][0]["N2"] == 24


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["curve", "as", "-n", "3", "-q", "3", "--count", "--json"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "oesterle", "8", "17", "--json", "--timing")
    assert "total" in json.loads(out)["runtime"]


def test_oesterle_output(capsys):
    code, out, _ = run(capsys, "oesterle", "8", "17", "--json")
    rec = json.loads(out)["results"][0]
    assert (rec["m"], rec["g_ceiling"], rec["u"]) == (2, 2, "0.177894")


def test_table_flags_known_misprints(capsys):
    code, out, _ = run(capsys, "table1", "--max-field-order", "4096", "--json")
    data = json.loads(out)
    failed = {c["name"] for c in data["checks"] if not c["passed"]}
    assert failed == {"table.g2[n=3,q=11]", "table.g3[n=4,q=4]", "table.oesterle[n=4,q=3]"}
    assert code == EXIT_FAIL
    assert len(data["results"]) == 14


def test_usage_errors(capsys):
    assert run(capsys, "curve", "elliptic")[0] == EXIT_USAGE
    assert run(capsys, "curve", "as", "-n", "3", "-q", "6")[0] == EXIT_USAGE
    assert run(capsys, "curve", "as", "-i", "5")[0] == EXIT_USAGE
    assert run(capsys, "curve", "kummer", "-i", "2", "--autos")[0] == EXIT_USAGE
    assert run(capsys, "curve", "kummer", "-n", "4", "-i", "2")[0] == EXIT_USAGE
    assert run(capsys, "oesterle", "8", "17", "--json", "--csv")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE
    _, _, err = run(capsys, "oesterle", "9", "3")
    assert "error" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "curve", "as", "-n", "5", "-q", "2", "--count", "--max-field-order", "16")
    assert code == EXIT_BUDGET and "budget" in err


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("SYMCURVES_MAX_FIELD_ORDER", "16")
    assert run(capsys, "curve", "as", "-n", "3", "-q", "3", "--count")[0] == EXIT_BUDGET


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sympoly", "--qmax", "2", "--nmax", "3")
    assert code == EXIT_OK
    assert out.rstrip().splitlines()[-1].endswith("checks passed")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symcurves", "curve", "hermitian", "-q", "2", "--count"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "N1=9" in proc.stdout


# -- report objects ------------------------------------------------------------------------


def test_report_rendering():
    r = Report(command=["x"], results=[{"a": 1, "b": {"c": [1, 2]}}])
    r.check("ok", True)
    r.check("bad", False, "why")
    r.skipped.append("big")
    assert not r.ok and [c.name for c in r.failures] == ["bad"]
    text = r.to_text()
    assert "a=1  b.c=[1, 2]" in text and "FAIL bad: why" in text and "SKIP big" in text
    assert "1/2 checks passed" in text
    assert Check("n", True).line() == "PASS n"
    assert Report.from_dict(json.loads(r.to_json())) == r


def test_report_rejects_other_schema_versions():
    with pytest.raises(ValueError):
        Report.from_dict({"schema_version": 2, "command": []})


def test_fmt_real():
    assert fmt_real(1.41421356) == "1.41421"
    assert fmt_real(2.0) == "2"
