import csv

import pytest

from slidewin.cli import main
from slidewin.seqio import load_seq


def test_gen_then_run(tmp_path, capsys):
    seq_path = tmp_path / "x.seq"
    assert main(["gen", "--kind", "uniform", "--n", "64", "--seed", "7", "--out", str(seq_path)]) == 0
    seq = load_seq(seq_path)
    assert len(seq) == 127 and seq.alphabet_size == 64
    csv_path = tmp_path / "runs.csv"
    code = main(["run", "--algo", "fk", "--k", "2", "--n", "64", "--input", str(seq_path),
                 "--slots", "40", "--verify", "--csv", str(csv_path)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-2].startswith("algo,k,t_rank,n,s_bits")
    rows = list(csv.DictReader(csv_path.open()))
    assert rows[0]["status"] == "ok" and rows[0]["verified"] == "True"


@pytest.mark.parametrize("argv", [
    ["run", "--algo", "ed-avg", "--n", "32", "--gen", "uniform", "--seed", "1"],
    ["run", "--algo", "ed-reduce", "--solver", "hash", "--n", "32", "--gen", "all_distinct"],
    ["run", "--algo", "ed-reduce", "--randomized", "--n", "32"],
    ["run", "--algo", "max", "--n", "32", "--gen", "all_equal", "--symbol", "5"],
    ["run", "--algo", "order", "--rank", "3", "--n", "5", "--gen", "sorting_reduction",
     "--payload", "4,2,3"],
    ["run", "--algo", "f0mod2", "--n", "32", "--space-bits", "200"],
    ["run", "--algo", "fk", "--k", "0", "--n", "32", "--gen", "planted_duplicate", "--positions", "3,40"],
])
def test_run_variants(argv, capsys):
    assert main(argv) == 0
    assert ",ok," in capsys.readouterr().out


def test_config_error_exit_code(capsys):
    assert main(["run", "--algo", "order", "--n", "5"]) == 2
    assert main(["run", "--algo", "fk", "--k", "0", "--n", "8", "--space-bits", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_bad_file_exit_code(tmp_path):
    bad = tmp_path / "bad.seq"
    bad.write_bytes(b"")
    assert main(["run", "--algo", "max", "--n", "4", "--input", str(bad)]) == 2


def test_failed_trial_exit_code(capsys):
    code = main(["run", "--algo", "ed-reduce", "--n", "64", "--gen", "planted_duplicate",
                 "--positions", "20,50", "--noise", "0.49", "--seed", "2"])
    assert code == 1
    assert ",mismatch," in capsys.readouterr().out


def test_sweep_command(tmp_path, capsys):
    config = tmp_path / "grid.cfg"
    out = tmp_path / "grid.csv"
    config.write_text(f"algo = ed-avg, max\nn = 64, 128\nseeds = 1, 2, 3\nout = {out}\n")
    assert main(["sweep", "--config", str(config)]) == 0
    assert len(list(csv.DictReader(out.open()))) == 12
    assert "mean_cost_per_n" in capsys.readouterr().out


def test_empty_sweep_is_usage_error(tmp_path):
    config = tmp_path / "grid.cfg"
    config.write_text("algo = fk\n")
    assert main(["sweep", "--config", str(config)]) == 2
