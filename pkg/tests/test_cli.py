import csv
import io
import json
import subprocess
import sys

import pytest

from grothendieck.bound import lower_bound
from grothendieck.cli import RunConfig, build_parser, dispatch, main, render_report
from grothendieck.opt import TableRow
from grothendieck.sphere import BandParams


def run(argv):
    out, err = io.BytesIO(), io.StringIO()
    args = vars(build_parser().parse_args(argv))
    status = dispatch(RunConfig(**args), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_bound_full_sphere_json():
    status, out, _ = run(["bound", "--d", "3", "--a", "0", "--b", "3.14159265",
                          "--rel-tol", "1e-8", "--format", "json"])
    assert status == 0
    doc = json.loads(out)
    assert set(doc) == {"d", "a", "b", "moment_term", "pair_term", "total", "quad_error",
                        "evaluations"}
    assert doc["total"] == pytest.approx(4 / 3, abs=1e-6)


def test_json_round_trip_is_exact():
    rep = lower_bound(BandParams(3, 0.0, 1.04819755))
    doc = json.loads(render_report(rep, "json"))
    assert doc == rep.as_dict()


def test_text_uses_nine_significant_digits():
    status, out, _ = run(["bound", "--d", "3", "--a", "0", "--b", "1.04819755"])
    assert status == 0
    text = out.decode()
    assert text.startswith("# bound\n")
    total = lower_bound(BandParams(3, 0.0, 1.04819755)).total
    assert f" {total:.9g} " in text and len(f"{total:.9g}") == 10


def test_table_csv_schema():
    rows = [TableRow(3, 0.05, 1.04, 1.4175, 1.3333, 1.41724),
            TableRow(6, 0.75, 0.76, 1.4702, 1.4457, None)]
    text = render_report(rows, "csv").decode()
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["d", "a_star", "b_star", "ours", "bbt", "vertesi_ref"]
    assert parsed[2][-1] == ""


def test_table_command_csv():
    status, out, _ = run(["table", "--d-min", "6", "--d-max", "7", "--rel-tol", "1e-6",
                          "--grid", "16", "--budget", "60", "--format", "csv"])
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out.decode())))
    assert [r["d"] for r in rows] == ["6", "7"]
    assert abs(float(rows[0]["ours"]) - 1.47017) < 5e-4


def test_werner_report(tmp_path):
    svg = tmp_path / "line.svg"
    status, out, _ = run(["werner", "--k3", "1.41758", "--format", "json", "--svg", str(svg)])
    assert status == 0
    doc = json.loads(out)
    onset = dict((r["name"], r["value"]) for r in doc["thresholds"])["nonlocal_onset"]
    assert onset == pytest.approx(0.705428, abs=1e-6)
    line = doc["regimes"]
    assert [r["label"] for r in line] == ["separable", "entangled-local-all",
                                          "local-projective", "unknown-window", "nonlocal"]
    assert line[0]["p_lo"] == 0.0 and line[-1]["p_hi"] == 1.0
    assert all(x["p_hi"] == y["p_lo"] for x, y in zip(line, line[1:]))
    cls = {r["p"]: r["regime"] for r in doc["classification"]}
    assert cls[0.7] == "unknown-window" and cls[0.71] == "nonlocal"
    assert svg.read_text().startswith("<svg")


def test_discrete_command():
    status, out, _ = run(["discrete", "--d", "3", "--n", "8", "--a", "0", "--b", "1.0",
                          "--samples", "5000", "--iters", "50", "--format", "json"])
    assert status == 0
    doc = json.loads(out)
    assert doc["discrete"][0]["bell_value_per_n2"] == pytest.approx(
        doc["discrete"][0]["config_value"], rel=1e-12)
    assert [r["C_bruteforce"] for r in doc["classical"]] == [1, 4, 9, 16]


@pytest.mark.parametrize("argv", [
    ["bound", "--d", "2", "--a", "0", "--b", "1"],
    ["bound", "--d", "3", "--a", "1", "--b", "0.5"],
    ["bound", "--d", "3", "--a", "0", "--b", "1", "--rel-tol", "0.5"],
    ["werner", "--k3", "1.6"],
    ["table", "--d-min", "5", "--d-max", "4"],
])
def test_invalid_input_exit_1(argv):
    status, out, err = run(argv)
    assert status == 1 and out == b"" and err.startswith("error:")


def test_bad_flag_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bound", "--nonsense"])
    assert info.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_budget_failure_exit_2(monkeypatch):
    from grothendieck import cli
    from grothendieck.quad import QuadratureBudgetError

    def boom(*args, **kwargs):
        raise QuadratureBudgetError("evaluation budget exceeded")

    monkeypatch.setattr(cli, "lower_bound", boom)
    status, _, err = run(["bound", "--d", "3", "--a", "0", "--b", "1"])
    assert status == 2 and "budget" in err


def test_unwritable_output_exit_1(tmp_path):
    status, _, err = run(["werner", "--out", str(tmp_path / "missing" / "x.txt")])
    assert status == 1 and "cannot write" in err


def test_output_file(tmp_path):
    path = tmp_path / "w.csv"
    assert run(["werner", "--format", "csv", "--out", str(path)])[0] == 0
    assert path.read_text().startswith("label,p_lo,p_hi\n")


@pytest.mark.parametrize("fmt", ["csv", "json", "text"])
def test_byte_identical_across_processes(fmt):
    argv = [sys.executable, "-m", "grothendieck", "discrete", "--d", "3", "--n", "6",
            "--a", "0", "--b", "1", "--samples", "3000", "--iters", "20", "--format", fmt]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
