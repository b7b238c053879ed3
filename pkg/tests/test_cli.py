import csv
import io
import json

import pytest

from folnerkit.cli import int_range, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_folner_table(capsys):
    code, out, _ = run(capsys, "folner", "--d", "2", "--n", "2..6")
    rows = json.loads(out)
    assert code == 0
    assert [r["value"] for r in rows] == [16, 96, 512, 2560, 12288]
    assert all(r["size_ok"] and r["ratio_ok"] for r in rows)


def test_bs_example_rows(capsys):
    code, out, _ = run(capsys, "bs-example", "--p", "36..60", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert {r["strict_inequality"] for r in rows} == {"yes"}


def test_boundary_file(tmp_path, capsys):
    f = tmp_path / "set.txt"
    f.write_text("# model: lamp:2\n0|\n1|\n")
    code, out, _ = run(capsys, "boundary", str(f))
    assert code == 0 and json.loads(out)["edge"] == 4


def test_boundary_file_without_header(tmp_path, capsys):
    f = tmp_path / "set.txt"
    f.write_text("0|\n")
    code, _, err = run(capsys, "boundary", str(f))
    assert code == 2 and "header" in err


def test_parse_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["folner", "--d", "2", "--n", "6..2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["nonsense"])
    code, _, _ = run(capsys, "search", "--model", "lamp:0", "--kind", "edge", "--max-size", "3")
    assert code == 2


def test_budget_exit(capsys):
    code, _, err = run(capsys, "search", "--model", "lamp:2", "--kind", "inner", "--max-size", "10", "--work-budget", "100")
    assert code == 3
    assert json.loads(err)["partial"]["completed"]


def test_headerless_set_and_graph_dump(capsys):
    code, out, err = run(capsys, "assoc", "--model", "lamp:3", "--set", "/dev/null")
    assert code == 2
    code, out, err = run(capsys, "graph", "--model", "lamp:3", "--standard", "1")
    assert code == 0 and out.count("->") == 6


def test_assoc_counterexample(tmp_path, capsys):
    f = tmp_path / "pair.txt"
    f.write_text("# model: lamp:3\n0|\n0|0:1\n")
    code, out, err = run(capsys, "assoc", "--set", str(f))
    assert code == 1 and json.loads(out)["holds"] is False and "failures" in json.loads(err)


def test_search_deterministic_across_workers(capsys):
    args = ["search", "--model", "lamp:2", "--kind", "outer", "--max-size", "5", "--mode", "exhaustive"]
    _, one, _ = run(capsys, *args, "--workers", "1")
    _, two, _ = run(capsys, *args, "--workers", "2")
    assert one == two


def test_growth_csv(capsys):
    code, out, _ = run(capsys, "growth", "--model", "lamp:2", "--radius", "3")
    assert code == 0
    assert out.splitlines()[0] == "r,V,V_lower,V_upper,ratio"
    assert out.splitlines()[-1].startswith("3,22,11,")


def test_other_subcommands(capsys):
    assert run(capsys, "harper", "--m", "3")[0] == 0
    assert run(capsys, "harper", "--d", "3", "--m", "2")[0] == 0
    assert run(capsys, "kkt", "--d", "2")[0] == 0
    code, out, _ = run(capsys, "csc", "--d", "2", "--format", "text")
    assert code == 0 and "2.88" in out
    code, out, _ = run(capsys, "series")
    assert json.loads(out)["degree"] == -1


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "folner", "--d", "2", "--n", "2", "-o", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())[0]["value"] == 16


def test_int_range():
    assert int_range("3") == [3]
    assert int_range("2..4") == [2, 3, 4]
