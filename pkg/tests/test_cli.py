import math

import pytest

from spinlogic import cli, gates, noise


def run_cli(*argv) -> int:
    return cli.main(list(argv))


# ---------------------------------------------------------------- verify


def test_verify_passes_and_lists_every_check(capsys):
    assert run_cli("verify") == 0
    out = capsys.readouterr().out
    for name in ("flip-gate", "hadamard-gate", "phase-gate", "swap-gate",
                 "cycle-permutation", "full-space-oracle", "auxiliary-decoupling"):
        assert name in out
    assert "FAIL" not in out


def test_verify_single_check_prints_the_measured_swap_phase(capsys):
    assert run_cli("verify", "--check", "swap-phase") == 0
    out = capsys.readouterr().out
    assert f"{math.pi / 4:.17g}" in out
    assert "measured overall swap phase" in out


def test_verify_rejects_unknown_check(capsys):
    assert run_cli("verify", "--check", "nonsense") == 2


def test_verify_fails_with_corrupted_timing(capsys):
    assert run_cli("verify", "--corrupt-t2", "0.7") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "flip" in out


# ---------------------------------------------------------------- simulate


def test_simulate_flip_reports_global_phase(capsys):
    assert run_cli("simulate", "--gate", "F", "--state", "1,0", "0,0") == 0
    out = capsys.readouterr().out
    assert f"{gates.FLIP_PHASE:.17g}" in out
    assert "leakage" in out
    assert "V1(t4) V0(t3) V1(t2) V0(t1)" in out


def test_simulate_swap_takes_four_amplitudes(capsys):
    assert run_cli("simulate", "--gate", "SWAP",
                   "--state", "0,0", "1,0", "0,0", "0,0") == 0
    out = capsys.readouterr().out
    assert "|10>" in out


def test_simulate_phase_gate_in_degrees(capsys):
    assert run_cli("simulate", "--gate", "P", "--theta", "90", "--degrees",
                   "--state", "0,0", "1,0") == 0
    out = capsys.readouterr().out
    assert "deg" in out


def test_simulate_rejects_bad_input(capsys):
    assert run_cli("simulate", "--gate", "F", "--state", "1,0") == 2
    assert run_cli("simulate", "--gate", "F", "--state", "1,0", "1,0") == 2
    assert run_cli("simulate", "--gate", "P", "--state", "1,0", "0,0") == 2
    assert run_cli("simulate", "--gate", "P", "--theta", "7.0",
                   "--state", "1,0", "0,0") == 2  # out of [0, 2*pi]
    with pytest.raises(SystemExit) as err:
        run_cli("simulate", "--gate", "X", "--state", "1,0", "0,0")
    assert err.value.code == 2


# ---------------------------------------------------------------- schedules


def test_export_swap_schedule(capsys):
    assert run_cli("export-schedule", "--gate", "SWAP") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 15
    bonds = [int(line.split()[0]) for line in lines]
    assert bonds == [4, 3, 2, 1, 0] * 3
    for line in lines:
        bond, tag, decimal = line.split(" ")
        assert tag == "1/2"
        assert float(decimal) == 0.5


def test_export_flip_schedule_round_trips(capsys):
    assert run_cli("export-schedule", "--gate", "F") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert [int(l.split()[0]) for l in lines] == [0, 1, 0, 1]
    assert [float(l.split()[2]) for l in lines] == [gates.T1, gates.T2, gates.T3, gates.T4]
    assert [l.split()[1] for l in lines] == ["t1", "t2", "t3", "t4"]


def test_export_schedule_to_file_and_other_gates(tmp_path, capsys):
    target = tmp_path / "phase.schedule"
    theta = 2.5
    assert run_cli("export-schedule", "--gate", "P", "--theta", str(theta),
                   "--out", str(target)) == 0
    line = target.read_text().strip()
    bond, tag, decimal = line.split(" ")
    assert bond == "1"
    assert tag == f"t(theta={theta:.17g})"
    assert float(decimal) == gates.phase_gate_duration(theta)
    capsys.readouterr()  # drop the "wrote ..." confirmation

    assert run_cli("export-schedule", "--gate", "H", "--qubit", "B") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert [int(l.split()[0]) for l in lines] == [4, 3, 4]

    assert run_cli("export-schedule", "--gate", "FPH", "--solution", "1") == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 3
    assert [float(l.split()[2]) for l in lines] == [gates.T1_ALT, gates.T2_ALT, gates.T3_ALT]

    assert run_cli("export-schedule", "--gate", "P") == 2  # theta missing


# ---------------------------------------------------------------- sweep and fit


def test_small_sweep_writes_csv_and_warns(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    assert run_cli("sweep", "--eps", "1e-3,3e-3,1e-2", "--n-runs", "30",
                   "--seed", "99", "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "low-statistics" in printed
    assert "seed = 99 (source: flag)" in printed
    text = out.read_text()
    assert text.splitlines()[0] == noise.CSV_HEADER
    assert len(text.splitlines()) == 4


def test_sweep_output_is_byte_identical_across_workers(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--eps", "1e-3,3e-3", "--n-runs", "24", "--seed", "7"]
    assert run_cli(*args, "--workers", "1", "--out", str(a)) == 0
    assert run_cli(*args, "--workers", "3", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_degenerate_sweep_refuses_the_fit(tmp_path, capsys):
    out = tmp_path / "zero.csv"
    assert run_cli("sweep", "--eps", "0", "--n-runs", "10", "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "fit refused" in printed


def test_seed_from_environment_is_echoed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV_VAR, "31415")
    out = tmp_path / "env.csv"
    assert run_cli("sweep", "--eps", "1e-3,2e-3", "--n-runs", "10", "--out", str(out)) == 0
    printed = capsys.readouterr().out
    assert "seed = 31415" in printed
    assert "env SPINLOGIC_SEED" in printed


def test_config_file_feeds_the_sweep_and_flags_override(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(
        "# sweep settings\n"
        "eps = 1e-3,2e-3\n"
        "n-runs = 12\n"
        "seed = 555\n"
        f"out = {tmp_path / 'cfg.csv'}\n"
    )
    assert run_cli("sweep", "--config", str(config)) == 0
    printed = capsys.readouterr().out
    assert "seed = 555" in printed
    assert "config" in printed
    assert (tmp_path / "cfg.csv").exists()

    # a flag beats the file
    assert run_cli("sweep", "--config", str(config), "--seed", "777",
                   "--out", str(tmp_path / "cfg2.csv")) == 0
    printed = capsys.readouterr().out
    assert "seed = 777 (source: flag)" in printed


def test_config_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("volume = 11\n")
    assert run_cli("sweep", "--config", str(config)) == 2


def test_fit_command_refits_a_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    points = noise.sweep([1e-4, 1e-3, 1e-2], n_runs=60, seed=3)
    noise.write_csv(points, out)
    assert run_cli("fit", "--csv", str(out)) == 0
    printed = capsys.readouterr().out
    assert '"channel": "P"' in printed
    assert '"channel": "Q"' in printed
    assert "low-statistics" in printed


def test_fit_command_rejects_missing_file(capsys):
    assert run_cli("fit", "--csv", "/nonexistent/sweep.csv") == 2
