import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hyperconical import cli

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "records.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def validate(recs):
    for r in recs:
        jsonschema.validate(r, SCHEMA)


def test_eval_gamma_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "hyp_gamma", "--a-plus", "1", "--a-minus", "1", "--z", "0")
    assert code == 0
    (rec,) = records(out)
    validate([rec])
    assert rec["value_re"] == pytest.approx(1.0, abs=1e-15) and rec["kind"] == "regular"
    assert rec["err_est"] is None and rec["n_evals"] == 0


def test_eval_normalisation(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "rcal", "--a-plus", "1", "--a-minus", "1.3", "--b", "0.6",
                       "--x", "0.8", "--y", "0", "--y-imag", "0.6")
    assert code == 0
    (rec,) = records(out)
    validate([rec])
    assert abs(complex(rec["value_re"], rec["value_im"]) - 1) < 1e-8


def test_eval_domain_rejection(capsys):
    code, out, err = run(capsys, "eval", "--fn", "conical_C", "--a-plus", "1", "--a-minus", "1", "--b", "2.5",
                         "--x", "0.3", "--y", "0.5")
    assert code == 2
    assert "outside (eps_b, 2a - eps_b)" in err
    validate(records(out))


def test_eval_reports_quadrature_estimates(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "rcal_r", "--a-plus", "1", "--a-minus", "1", "--b", "0.5",
                       "--x", "0.3", "--y", "0.4")
    (rec,) = records(out)
    assert code == 0 and rec["n_evals"] > 0 and rec["err_est"] >= 0


def test_unknown_names_exit_2(capsys):
    assert run(capsys, "eval", "--fn", "nope")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "--id", "nope")[0] == 2
    assert run(capsys, "probe", "--id", "nope")[0] == 2
    assert run(capsys, "verify")[0] == 2


def test_verify_records_and_determinism(capsys):
    code, out1, _ = run(capsys, "verify", "--suite", "prop31", "-j", "1")
    assert code == 0
    recs = records(out1)
    validate(recs)
    assert len(recs) == 150 and all(r["verdict"] == "pass" for r in recs)
    _, out2, _ = run(capsys, "verify", "--suite", "prop31", "-j", "1")
    assert out1 == out2


def test_verify_tolerance_override_and_failure_exit(capsys):
    assert run(capsys, "verify", "--id", "idd", "--tol", "1e-30", "--limit", "3")[0] == 1
    # limit identities keep their own tolerance
    assert run(capsys, "verify", "--suite", "minimal-reps", "--tol", "1e-7")[0] == 0


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "propC1", "--format", "csv", "--limit", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and {"identity", "residual", "verdict"} <= set(rows[0])
    assert all(r["verdict"] == "pass" for r in rows)


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "gamma\tGades" in out


def test_verify_grid_file(tmp_path, capsys):
    grid = tmp_path / "pts.jsonl"
    grid.write_text(json.dumps({"a_plus": 1.0, "a_minus": 1.5, "z": {"re": 0.3, "im": 0.1}}) + "\n")
    code, out, _ = run(capsys, "verify", "--id", "refl", "--grid", str(grid))
    (rec,) = records(out)
    assert code == 0 and rec["params"]["a_minus"] == 1.5
    assert run(capsys, "verify", "--suite", "gamma", "--grid", str(grid))[0] == 2


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('format = "csv"\n[verify]\ntol = 1e-30\n')
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--id", "idd", "--limit", "2")
    assert code == 1  # config tolerance beats the registered default
    assert out.splitlines()[0].startswith("identity,")  # config format applies
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--id", "idd", "--limit", "2",
                       "--tol", "1e-3", "--format", "json")
    assert code == 0  # flags beat the config
    validate(records(out))


def test_jobs_from_environment(monkeypatch):
    ns = cli.build_parser().parse_args(["verify", "--suite", "prop31"])
    o = cli.Options(ns, {})
    monkeypatch.setenv("HYPERCONICAL_JOBS", "3")
    assert cli._jobs(o) == 3
    monkeypatch.setenv("HYPERCONICAL_JOBS", "x")
    with pytest.raises(cli.UsageError):
        cli._jobs(o)


def test_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "verify", "--suite", "elementary", "-j", "1")
    _, parallel, _ = run(capsys, "verify", "--suite", "elementary", "-j", "2")
    assert serial == parallel


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--fn", "hyp_gamma", "--a-plus", "1", "--a-minus", "1",
                       "--grid", "z=-1:1:3", "--grid", "a_minus=1,2")
    recs = records(out)
    validate(recs)
    assert code == 0 and len(recs) == 6


@pytest.mark.parametrize("pid", ["appendix-b", "toda-limit", "nr-limit"])
def test_probes_pass(pid, capsys):
    code, out, _ = run(capsys, "probe", "--id", pid)
    recs = records(out)
    validate(recs)
    assert code == 0 and len(recs) >= 3


def test_probe_lambda_two(capsys):
    code, out, _ = run(capsys, "probe", "--id", "appendix-b", "--lambda", "2")
    assert code == 0


def test_meta_record(capsys):
    _, out, _ = run(capsys, "probe", "--id", "yas", "--meta")
    recs = records(out)
    validate(recs)
    assert recs[0]["meta"]["command"] == "probe"


def test_output_file(tmp_path, capsys):
    path = tmp_path / "o.jsonl"
    code, out, _ = run(capsys, "eval", "--fn", "e_func", "--a-plus", "1", "--a-minus", "1", "--z", "0.2",
                       "-o", str(path))
    assert code == 0 and out == ""
    validate(records(path.read_text()))


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "hyperconical.cli", "eval", "--fn", "hyp_gamma",
                        "--a-plus", "1", "--a-minus", "1", "--z", "0"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["value_re"] == pytest.approx(1.0)
