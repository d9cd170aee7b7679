import io
import json
from contextlib import redirect_stdout

import pytest

from miczlab import cli


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        status = cli.main(argv)
    return status, buf.getvalue()


def test_spectrum_table_example():
    status, out = run_cli(["spectrum", "--n", "1", "--mu", "0", "--imax", "3"])
    assert status == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    spec_rows = [r for r in rows if r["check"] == "spectrum"]
    energies = [r["detail"].split(";")[0] for r in spec_rows]
    dims = [r["detail"].split(";")[1] for r in spec_rows]
    assert energies == ["E=-1/2", "E=-1/8", "E=-1/18", "E=-1/32"]
    assert dims == ["dim=1", "dim=4", "dim=9", "dim=16"]


def test_expectation_rows_all_mu():
    status, out = run_cli(["expectation", "--n", "1", "--mu", "1/2", "--imax", "2"])
    assert status == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 3
    assert all(r["detail"].startswith("value=1/2") for r in rows)
    assert all(r["status"] == "exact-pass" for r in rows)


def test_verify_commutators_example():
    status, out = run_cli(
        ["verify", "commutators", "--n", "1", "--mu", "1/2", "--seed", "7",
         "--battery-size", "4"]
    )
    assert status == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert rows[0]["check"] == "commutators"
    assert rows[0]["status"] == "exact-pass"
    assert rows[0]["seed"] == 7


def test_byte_identical_reports():
    argv = ["verify", "lemma1", "branch", "--n", "1", "--mu=-1/2",
            "--battery-size", "4", "--seed", "11"]
    s1, out1 = run_cli(argv)
    s2, out2 = run_cli(argv)
    assert s1 == s2 == 0
    assert out1 == out2
    assert "elapsed_ms" in out1 and '"elapsed_ms":null' in out1


def test_timings_flag_breaks_no_schema():
    status, out = run_cli(
        ["verify", "degeneracy", "--n", "1", "--mu", "0", "--timings"]
    )
    assert status == 0
    row = json.loads(out.strip().splitlines()[0])
    assert isinstance(row["elapsed_ms"], float)


def test_markdown_format():
    status, out = run_cli(
        ["degeneracy", "--n", "1", "--mu", "1/2", "--imax", "2",
         "--format", "markdown"]
    )
    assert status == 0
    assert out.startswith("| check |")
    assert "I=2:dim=12" in out


def test_json_keys_schema():
    status, out = run_cli(["degeneracy", "--n", "2", "--mu", "3/2"])
    assert status == 0
    row = json.loads(out.strip().splitlines()[0])
    assert set(row) == {
        "check", "n", "mu", "params", "battery", "seed", "status",
        "residual_terms", "elapsed_ms", "detail",
    }


def test_mu_validation():
    with pytest.raises(SystemExit):
        run_cli(["spectrum", "--n", "1", "--mu", "2"])
    with pytest.raises(SystemExit):
        run_cli(["spectrum", "--n", "1", "--mu", "1/3"])


def test_jobs_parallel_merge_deterministic():
    argv = ["verify", "branch", "degeneracy", "--n", "1", "--mu", "0",
            "--mu", "1/2", "--imax", "2"]
    s1, out1 = run_cli(argv)
    s2, out2 = run_cli(argv + ["--jobs", "2"])
    assert s1 == s2 == 0
    assert out1 == out2


def test_exit_status_contract():
    # a failing check must produce a nonzero exit and a machine-readable record
    from miczlab.reports import VerificationReport

    cfg = cli.RunConfig(checks=("degeneracy",), n_values=(1,), mu_values=("0",))
    status, reports = cli.run(cfg)
    assert status == 0 and all(r.passed() for r in reports)
    bad = VerificationReport(
        check="synthetic", n=1, mu="0", params={}, battery="", seed=0,
        status="fail", detail="forced",
    )
    assert not bad.passed()
