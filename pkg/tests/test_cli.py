import json

import pytest

from enriques_lattice import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fibrations_2a1(capsys):
    code, out, _ = run(capsys, "fibrations", "--tau", "2A1")
    assert code == 0
    assert "| A1*    | 1      | 1     |" in out
    assert "sum weight*count = 527" in out


def test_fibrations_json(capsys):
    code, out, _ = run(capsys, "fibrations", "--tau", "(A1,A1)", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [(r["fibers"], r["weight"], r["count"]) for r in doc["rows"]] == [("A1", 1, 255), ("∅", 2, 136)]


def test_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "fib.csv"
    code, out, _ = run(capsys, "fibrations", "--tau", "A1", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text(encoding="utf-8").splitlines()
    assert "fibers,weight,count" in lines
    assert "A1,1,255" in lines


def test_output_is_deterministic(capsys):
    first = run(capsys, "fibrations", "--tau", "3A1", "--threads", "4")[1]
    second = run(capsys, "fibrations", "--tau", "3A1", "--threads", "1")[1]
    assert first == second


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--format", "csv")
    assert code == 0
    assert "10,3,3 6 9 12 15 18 21 14 7 10,12951552,2^13·3·17·31,2^13·3·17·31" in out
    assert "# all rows match" in out


def test_group_info(capsys):
    code, out, _ = run(capsys, "group-info", "--tau", "E8")
    assert code == 0
    assert "46998591897600" in out and "2^21·3^5·5^2·7·17·31" in out
    assert "(E8,E8)" in out


def test_polarizations_a1(capsys):
    code, out, _ = run(capsys, "polarizations", "--tau", "A1", "--hsq", "2", "--phi", "1")
    assert code == 0
    assert "matches the reference table" in out
    assert "sum r = 67456" in out


def test_polarizations_ungrouped(capsys):
    code, out, _ = run(capsys, "polarizations", "--tau", "A1", "--hsq", "0", "--ungrouped",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["rows"]) == 391
    assert sum(r["r"] for r in doc["rows"]) == 527


def test_polarizations_row_cap(capsys):
    code, out, _ = run(capsys, "polarizations", "--tau", "A1", "--hsq", "2", "--phi", "1", "--ungrouped",
                       "--row-cap", "5", "--format", "csv")
    assert code == 0
    assert len([ln for ln in out.splitlines() if not ln.startswith("#")]) == 6
    assert "printed the first 5" in out


@pytest.mark.parametrize("argv,code", [
    (["fibrations", "--tau", "A9"], 2),
    (["polarizations", "--tau", "A1", "--hsq", "2"], 2),
    (["polarizations", "--tau", "A1", "--hsq", "3", "--phi", "1"], 2),
    (["polarizations", "--tau", "A1", "--hsq", "2", "--phi", "2"], 2),
    (["polarizations", "--tau", "A1", "--hsq", "4", "--phi", "2", "--budget", "1000"], 4),
    (["fibrations", "--threads", "0"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["polarizations", "--tau", "A1"])
    assert exc.value.code == 2


ROOTS = """name = "two roots"
roots = [
  [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
  [0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
]
expected_tau = "2A1"
expected_taubar = "{taubar}"
"""


def test_root_file(capsys, tmp_path):
    p = tmp_path / "roots.toml"
    p.write_text(ROOTS.format(taubar="2A1"))
    code, out, _ = run(capsys, "fibrations", "--roots", str(p))
    assert code == 0
    assert "# name: two roots" in out and "(2A1,2A1)" in out


def test_root_file_type_mismatch(capsys, tmp_path):
    p = tmp_path / "roots.toml"
    p.write_text(ROOTS.format(taubar="A2"))
    code, _, err = run(capsys, "fibrations", "--roots", str(p))
    assert code == 3
    assert "expected_taubar" in err


def test_root_file_bad_root_reports_line(capsys, tmp_path):
    p = tmp_path / "roots.toml"
    p.write_text("roots = [\n  [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],\n  [1, 2, 0, 0, 0, 0, 0, 0, 0, 0],\n]\n")
    code, _, err = run(capsys, "fibrations", "--roots", str(p))
    assert code == 2
    assert ":3:" in err and "square -6" in err


def test_root_file_not_definite(capsys, tmp_path):
    p = tmp_path / "roots.toml"
    rows = ",\n".join(str([int(i == j) for j in range(10)]) for i in range(10))
    p.write_text(f"roots = [\n{rows}\n]\n")
    code, _, err = run(capsys, "fibrations", "--roots", str(p))
    assert code == 2
    assert "definite" in err


def test_root_file_syntax_error(capsys, tmp_path):
    p = tmp_path / "roots.toml"
    p.write_text("roots = [[1, 0\n")
    assert run(capsys, "fibrations", "--roots", str(p))[0] == 2


def test_factor():
    assert cli.factor(67456) == "2^7·17·31"
    assert cli.factor(1) == "1"
    assert cli.factor(13) == "13"
