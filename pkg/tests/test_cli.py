import csv

from kbeam.cli import main

CERTIFIED_CONFIG = """\
[problem]
type = custom
length = 1.0
m0 = 1.0
m1 = 0.0
force = 1
sigma1_norm = 1.0
assumptions_global = true
"""

LONG_BEAM_CONFIG = """\
[problem]
type = custom
length = 10.0
m0 = 1.0
force = 1
sigma3_inf = 5.0
"""

ZERO_LOAD_CONFIG = """\
[problem]
type = custom
force = 0
"""

SINGULAR_LOAD_CONFIG = """\
[problem]
type = custom
force = 1/(x - 0.5)
"""


def read_csv(path):
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        return list(reader)


def test_solve_benchmark_writes_expected_groups(tmp_path, capsys):
    csv_path = tmp_path / "sol.csv"
    code = main(["solve", "--n", "10", "--max-iter", "5", "--csv", str(csv_path)])
    assert code == 0
    rows = read_csv(csv_path)
    ks = sorted({int(float(r["k"])) for r in rows})
    assert ks == [0, 1, 2, 3, 4, 5]  # six iterate groups
    assert "u_exact" in rows[0]
    out = capsys.readouterr().out
    assert "max error vs exact" in out


def test_solve_zero_load_columns_are_zero(tmp_path):
    config = tmp_path / "run.ini"
    config.write_text(ZERO_LOAD_CONFIG)
    csv_path = tmp_path / "sol.csv"
    code = main(["solve", "--config", str(config), "--n", "8", "--max-iter", "2",
                 "--csv", str(csv_path)])
    assert code == 0
    rows = read_csv(csv_path)
    assert all(float(r["u"]) == 0.0 for r in rows)
    assert "u_exact" not in rows[0]


def test_solve_writes_plot_script(tmp_path):
    csv_path = tmp_path / "sol.csv"
    plot_path = tmp_path / "plot.py"
    code = main(["solve", "--n", "8", "--max-iter", "2", "--csv", str(csv_path),
                 "--plot", str(plot_path)])
    assert code == 0
    source = plot_path.read_text()
    compile(source, str(plot_path), "exec")


def test_analyze_benchmark_reports_formal_constants(capsys):
    assert main(["analyze"]) == 0
    out = capsys.readouterr().out
    assert "(formal)" in out
    assert "hypotheses certified: no" in out


def test_analyze_certified_synthetic_problem(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text(CERTIFIED_CONFIG)
    assert main(["analyze", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "hypotheses certified: yes" in out
    assert "q  (contraction factor):         0" in out


def test_analyze_long_beam_reports_violated_length_condition(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text(LONG_BEAM_CONFIG)
    assert main(["analyze", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "length condition violated" in out
    assert "omega positive: no" in out


def test_malformed_config_exits_1(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text("[solver]\nn = ten\n")
    assert main(["solve", "--config", str(config)]) == 1
    assert "configuration error" in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path, capsys):
    assert main(["solve", "--config", str(tmp_path / "absent.ini")]) == 2
    assert "I/O error" in capsys.readouterr().err


def test_unwritable_csv_exits_2(tmp_path, capsys):
    target = tmp_path / "no-such-dir" / "out.csv"
    assert main(["solve", "--n", "8", "--max-iter", "1", "--csv", str(target)]) == 2
    assert "I/O error" in capsys.readouterr().err


def test_nonfinite_load_exits_3(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text(SINGULAR_LOAD_CONFIG)
    code = main(["solve", "--config", str(config), "--n", "10", "--max-iter", "2",
                 "--csv", str(tmp_path / "sol.csv")])
    assert code == 3
    err = capsys.readouterr().err
    assert "numerical failure" in err
    assert "i=5" in err


def test_reproduce_table1(tmp_path, capsys):
    csv_path = tmp_path / "table.csv"
    assert main(["reproduce-table1", "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "error 9" in out and "n = 10" in out and "n = 20" in out
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0].startswith("n,error_1")
    assert len(lines) == 3


def test_reproduce_table1_custom_columns(tmp_path, capsys):
    csv_path = tmp_path / "table.csv"
    assert main(["reproduce-table1", "--ks", "1,2", "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "error 2" in out and "error 9" not in out


def test_reproduce_table1_rejects_bad_columns(capsys):
    assert main(["reproduce-table1", "--ks", "a,b"]) == 1
    assert "configuration error" in capsys.readouterr().err


def test_invalid_flag_value_maps_to_config_error_exit():
    assert main(["solve", "--derivative-mode", "spectral"]) == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "kbeam" in capsys.readouterr().out
