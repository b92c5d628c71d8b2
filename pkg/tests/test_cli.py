import csv
import io
import math
import subprocess
import sys

import pytest

from diffusion_capacity.cli import main, read_config
from diffusion_capacity.sweep import SweepRow, f_grid, sweep, sweep_point


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_impulse_peak_comment(capsys):
    code, out = run(["impulse", "--dist", "2", "--diff-coeff", "1", "--t-max", "5", "--n-points", "50"], capsys)
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("# peak t=1 ")
    g_peak = float(first.split("g=")[1])
    assert g_peak == pytest.approx(math.exp(-1) / (4 * math.pi), rel=1e-11)
    rows = csv_rows(out)
    assert len(rows) == 50
    assert max(float(r["g"]) for r in rows) <= g_peak


def test_impulse_single_point(capsys):
    code, out = run(["impulse", "--n-points", "1", "--t-max", "3"], capsys)
    rows = csv_rows(out)
    assert code == 0 and len(rows) == 1 and float(rows[0]["t"]) == 3.0


def test_impulse_bad_range():
    with pytest.raises(SystemExit) as exc:
        main(["impulse", "--t-max", "-1"])
    assert exc.value.code == 2


def test_sweep_header_and_best(capsys):
    code, out = run(["sweep", "1", "6", "--step", "0.5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(SweepRow.column_names())
    assert lines[-1].startswith("# best: f_tilde=4")
    rows = csv_rows(out)
    assert [float(r["f_tilde"]) for r in rows] == pytest.approx(list(f_grid(1, 6, 0.5)))
    for r in rows:
        assert float(r["capacity"]) == pytest.approx(math.log2(float(r["w"])), rel=1e-10)


def test_sweep_zero_policy(capsys):
    code, out = run(["sweep", "3", "4", "--step", "0.5", "--alpha-policy", "zero"], capsys)
    assert code == 0
    rows = csv_rows(out)
    assert all(float(r["alpha_used"]) == 0.0 for r in rows)
    assert all(float(r["t11"]) != 1.0 for r in rows)


@pytest.mark.parametrize("argv", [["sweep", "5", "1"], ["sweep", "0.0001", "1"], ["sweep", "1", "2", "--step", "0"]])
def test_sweep_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_sweep_rows_flag_failures():
    rows = sweep([1.0, 2e-3, 3.9])
    assert rows[0].ok and rows[2].ok
    assert not rows[1].ok and math.isnan(rows[1].w)


def test_sweep_all_failed_exit_code(tmp_path, capsys):
    # Every point below ~2.8e-3 overflows T01.
    code = main(["sweep", "0.001", "0.002", "--step", "0.0005", "--output", str(tmp_path / "s.csv")])
    assert code == 3


def test_sweep_point_alpha_policy_validation():
    with pytest.raises(ValueError):
        sweep_point(3.9, alpha_policy="max")


def test_capacity_command(capsys):
    code, out = run(["capacity", "1", "1", "1", "1"], capsys)
    assert code == 0
    assert out.strip() == "w=2 capacity=1 bits/tau0 capacity_per_t00=1 bits/T00"
    _, out = run(["capacity", "1", "2", "3", "1"], capsys)
    assert float(out.split()[0][2:]) == pytest.approx(1.529, abs=2e-3)
    _, out = run(["capacity", "1", "1.85", "5.24", "1"], capsys)
    per_t00 = float(out.split("capacity_per_t00=")[1].split()[0])
    assert per_t00 == pytest.approx(0.50, abs=0.01)


def test_capacity_rejects_non_positive():
    with pytest.raises(SystemExit) as exc:
        main(["capacity", "1", "0", "1", "1"])
    assert exc.value.code == 2


def test_timing_command(capsys):
    code, out = run(["timing", "--f-tilde", "3.9"], capsys)
    assert code == 0
    (row,) = csv_rows(out)
    assert float(row["t01"]) == pytest.approx(1.8481, abs=1e-4)
    assert float(row["t10"]) == pytest.approx(5.2353, abs=1e-4)
    assert float(row["overshoot"]) == pytest.approx(0.2331, abs=1e-3)
    assert float(row["t11_alpha0"]) == pytest.approx(1.4812, abs=1e-3)


def test_timing_from_physical_parameters(capsys):
    f = 4 * math.pi * 3.9
    _, phys = run(["timing", "--diff-coeff", "1", "--distance", "2", "--sensitivity", "1", "--max-rate", str(f)], capsys)
    _, norm = run(["timing", "--f-tilde", "3.9"], capsys)
    (a,), (b,) = csv_rows(phys), csv_rows(norm)
    assert float(a["t01"]) == pytest.approx(float(b["t01"]), rel=1e-10)


def test_timing_needs_rate():
    with pytest.raises(SystemExit) as exc:
        main(["timing"])
    assert exc.value.code == 2


def test_simulate_markov(capsys):
    code, out = run(["simulate", "101", "--f-tilde", "3.9", "--mode", "markov"], capsys)
    assert code == 0
    assert "# decoded=101 mismatches=0" in out
    rows = csv_rows(out)
    assert len(rows) == 1 + 3 * 64
    boundaries = [float(r["concentration"]) for r in rows if r["boundary"] == "1"]
    assert boundaries[0] == pytest.approx(2.0, abs=1e-8)
    assert boundaries[1] == pytest.approx(1.0, abs=1e-8)


def test_simulate_full_deviation(capsys):
    _, out = run(["simulate", "1011", "--mode", "full"], capsys)
    summary = out.splitlines()[-1]
    deviation = float(summary.split("max_boundary_deviation=")[1])
    assert deviation > 0


@pytest.mark.parametrize("argv", [["simulate", "10a1"], ["simulate"], ["simulate", "11", "--random", "4"]])
def test_simulate_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_random_simulation_reproducible(tmp_path):
    paths = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        assert main(["simulate", "--random", "128", "--seed", "42", "--output", str(path)]) == 0
        paths.append(path)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_file_matches_flags(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# default grid\nf_min = 2\nf-max=5\n--step=0.25\nalpha-policy=clamp\n")
    assert read_config(str(cfg))["f_max"] == "5"
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", str(cfg), "--output", str(a)]) == 0
    assert main(["sweep", "2", "5", "--step", "0.25", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    # Flags override file values.
    c = tmp_path / "c.csv"
    main(["sweep", "--config", str(cfg), "--step", "0.5", "--output", str(c)])
    assert len(c.read_text().splitlines()) == 1 + 7


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("stepsize=0.1\n")
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--config", str(cfg)])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "diffusion_capacity", "capacity", "1", "1", "1", "1"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.startswith("w=2 ")
