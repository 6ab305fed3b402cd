from rfmseq.cli import run

from conftest import TABLE1_TEXT


def test_missing_input_is_usage_error(capsys):
    assert run(["mine"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert run(["frobnicate"]) == 1


def test_no_subcommand(capsys):
    assert run([]) == 1


def test_stats_subcommand(table1_path, capsys):
    assert run(["stats", "--input", str(table1_path)]) == 0
    out = capsys.readouterr().out
    assert "total_monetary=575" in out
    assert "sequences=6" in out


def test_stats_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(TABLE1_TEXT))
    assert run(["stats", "--input", "-"]) == 0
    assert "total_monetary=575" in capsys.readouterr().out


def test_mine_writes_result_and_stats(table1_path, tmp_path, capsys):
    out = tmp_path / "out.txt"
    stats = tmp_path / "run.txt"
    code = run([
        "mine", "--input", str(table1_path), "--output", str(out),
        "--delta", "0.01", "--beta", "0.3", "--gamma", "0.02", "--theta", "60",
        "--stats-out", str(stats),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines and all("#R:" in l and "#F:" in l and "#M:" in l for l in lines)
    stat_keys = [l.split("=")[0] for l in stats.read_text().splitlines()]
    assert stat_keys == [
        "candidates", "patterns", "prune_swm", "prune_em", "prune_pm",
        "prune_theta", "elapsed_ms",
    ]


def test_mine_stats_default_to_stderr(table1_path, capsys):
    assert run(["mine", "--input", str(table1_path), "--beta", "0.5"]) == 0
    err = capsys.readouterr().err
    assert "candidates=" in err


def test_mine_agrees_with_oracle_subcommand(table1_path, tmp_path):
    mine_out = tmp_path / "mine.txt"
    oracle_out = tmp_path / "oracle.txt"
    argv = ["--input", str(table1_path), "--delta", "0.1", "--alpha", "1.44",
            "--beta", "0.2", "--gamma", "0.25", "--theta", "60"]
    assert run(["mine", *argv, "--output", str(mine_out)]) == 0
    assert run(["oracle", *argv, "--output", str(oracle_out), "--max-len", "8"]) == 0
    assert mine_out.read_bytes() == oracle_out.read_bytes()


def test_mine_max_reports_compression(table1_path, tmp_path):
    stats = tmp_path / "run.txt"
    assert run([
        "mine-max", "--input", str(table1_path), "--output", str(tmp_path / "o.txt"),
        "--beta", "0.3", "--stats-out", str(stats),
    ]) == 0
    assert any(l.startswith("compression_rate=") for l in stats.read_text().splitlines())


def test_theta_inf_accepted(table1_path, tmp_path):
    assert run(["mine", "--input", str(table1_path), "--theta", "inf",
                "--output", str(tmp_path / "o.txt")]) == 0


def test_bad_delta_is_usage_error(table1_path, capsys):
    assert run(["mine", "--input", str(table1_path), "--delta", "1.5"]) == 1


def test_unreadable_input_is_data_error(tmp_path, capsys):
    assert run(["mine", "--input", str(tmp_path / "missing.db")]) == 2
    assert "data error" in capsys.readouterr().err


def test_malformed_input_is_data_error(tmp_path, capsys):
    bad = tmp_path / "bad.db"
    bad.write_text("<100> a:15 -1\n")
    assert run(["stats", "--input", str(bad)]) == 2


def test_invalid_semantics_is_data_error(tmp_path):
    bad = tmp_path / "bad.db"
    bad.write_text("<50> a:1 -1 <80> b:1 -1 -2\n")
    assert run(["stats", "--input", str(bad)]) == 2


def test_oracle_budget_exit_code(table1_path, capsys):
    assert run(["oracle", "--input", str(table1_path), "--budget", "5"]) == 3
    assert "budget" in capsys.readouterr().err


def test_gen_then_stats(tmp_path, capsys):
    db_file = tmp_path / "gen.db"
    assert run(["gen", "--output", str(db_file), "--seed", "5",
                "--sequences", "20", "--items", "8"]) == 0
    assert run(["stats", "--input", str(db_file)]) == 0
    assert "sequences=20" in capsys.readouterr().out


def test_gen_deterministic(tmp_path):
    a = tmp_path / "a.db"
    b = tmp_path / "b.db"
    args = ["--seed", "9", "--sequences", "15", "--items", "6"]
    assert run(["gen", "--output", str(a), *args]) == 0
    assert run(["gen", "--output", str(b), *args]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bench_single_cell(table1_path, capsys):
    assert run(["bench", "--input", str(table1_path), "--beta", "0.2",
                "--gammas", "0.1", "--thetas", "40"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2  # header + one data row
    assert lines[0].split() == ["gamma", "theta", "runtime_s", "cand", "rfms"]


def test_bench_grid_and_beta_column(table1_path, capsys):
    assert run(["bench", "--input", str(table1_path), "--betas", "0.1,0.3",
                "--gammas", "0.0,0.1", "--thetas", "20,inf"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split()[0] == "beta"
    assert len(lines) == 1 + 2 * 2 * 2


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert run(["mine", "--help"]) == 0
    capsys.readouterr()


def test_maximal_flag_equals_mine_max(table1_path, tmp_path):
    flagged = tmp_path / "flag.txt"
    dedicated = tmp_path / "ded.txt"
    argv = ["--input", str(table1_path), "--beta", "0.3", "--gamma", "0.02",
            "--stats-out", str(tmp_path / "s.txt")]
    assert run(["mine", *argv, "--maximal", "--output", str(flagged)]) == 0
    assert run(["mine-max", *argv, "--output", str(dedicated)]) == 0
    assert flagged.read_bytes() == dedicated.read_bytes()


def test_bench_accepts_toggle_flags(table1_path, capsys):
    assert run(["bench", "--input", str(table1_path), "--beta", "0.2",
                "--gammas", "0.1", "--thetas", "40", "--no-swm", "--no-em", "--no-pm"]) == 0
    on = run(["bench", "--input", str(table1_path), "--beta", "0.2",
              "--gammas", "0.1", "--thetas", "40"])
    assert on == 0
    out = capsys.readouterr().out.strip().splitlines()
    # same rfms column in both tables, toggles only change work
    first, second = out[1].split(), out[3].split()
    assert first[-1] == second[-1]
    assert int(first[-2]) >= int(second[-2])
