import json
import subprocess
import sys
from pathlib import Path

import pytest

from nextviz.cli import main
from nextviz.datasets import cars_csv_bytes, cars_table

import oracles


@pytest.fixture(scope="module")
def cars_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "cars.csv"
    path.write_bytes(cars_csv_bytes())
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_no_view_gives_the_two_overview_categories(cars_csv, capsys):
    code, out = run_cli(capsys, "recommend", str(cars_csv))
    assert code == 0
    assert out.endswith("\n")
    payload = json.loads(out)
    assert [c["category"]["kind"] for c in payload["categories"]] == [
        "correlation",
        "distribution",
    ]


def test_repeat_runs_are_byte_identical(cars_csv, tmp_path, capsys):
    view = tmp_path / "view.json"
    view.write_text(json.dumps({"attrs": ["Cylinders", "MPG"]}))
    args = ("recommend", str(cars_csv), "--view", str(view), "--baseline", "--seed", "7")
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    assert first == second


def test_exit_code_1_for_unreadable_or_bad_input(tmp_path, capsys):
    code, _ = run_cli(capsys, "recommend", str(tmp_path / "missing.csv"))
    assert code == 1
    bad = tmp_path / "bad.csv"
    bad.write_bytes(b"a,a\n1,2\n")
    code, _ = run_cli(capsys, "recommend", str(bad))
    assert code == 1
    view = tmp_path / "broken.json"
    view.write_text("{not json")
    code, _ = run_cli(capsys, "recommend", str(bad), "--view", str(view))
    assert code == 1


def test_exit_code_2_for_invalid_spec(cars_csv, tmp_path, capsys):
    view = tmp_path / "view.json"
    view.write_text(json.dumps({"attrs": ["NotAColumn"]}))
    code, _ = run_cli(capsys, "recommend", str(cars_csv), "--view", str(view))
    assert code == 2
    view.write_text(json.dumps({"attrs": ["MPG", "Weight", "Horsepower", "Acceleration"]}))
    code, _ = run_cli(capsys, "recommend", str(cars_csv), "--view", str(view))
    assert code == 2


def test_empty_result_still_exits_zero(tmp_path, capsys):
    # one measure only: correlation is empty, distribution carries the set
    path = tmp_path / "one.csv"
    path.write_text("v\n" + "\n".join(str(i) for i in range(100)) + "\n")
    code, out = run_cli(capsys, "recommend", str(path))
    assert code == 0
    payload = json.loads(out)
    assert [c["category"]["kind"] for c in payload["categories"]] == ["distribution"]


def test_schema_override_flag(cars_csv, tmp_path, capsys):
    sidecar = tmp_path / "schema.json"
    sidecar.write_text(json.dumps({"Cylinders": {"role": "measure"}}))
    code, out = run_cli(
        capsys, "recommend", str(cars_csv), "--schema-override", str(sidecar), "--k", "30"
    )
    assert code == 0
    payload = json.loads(out)
    correlation = payload["categories"][0]
    assert len(correlation["items"]) == 15  # C(6, 2) pairs once Cylinders is a measure


def test_golden_filter_deviation_scores(cars_csv, capsys, tmp_path):
    """Filter-category deviation scores recomputed from the raw table."""
    view = tmp_path / "view.json"
    view.write_text(json.dumps({"attrs": ["Cylinders", "MPG"]}))
    code, out = run_cli(capsys, "recommend", str(cars_csv), "--view", str(view), "--k", "200")
    assert code == 0
    payload = json.loads(out)
    filter_cat = [c for c in payload["categories"] if c["category"]["kind"] == "filter"][0]

    table = cars_table()
    rows = list(zip(table["Cylinders"], table["MPG"], table["Origin"],
                    table["Year"], table["Brand"], table["BodyStyle"]))
    dims = {"Origin": 2, "Year": 3, "Brand": 4, "BodyStyle": 5}

    def mean_mpg_by_cyl(subset):
        groups = {}
        for row in subset:
            groups.setdefault(row[0], []).append(row[1])
        return {cyl: sum(v) / len(v) for cyl, v in groups.items()}

    overall = mean_mpg_by_cyl(rows)
    for item in filter_cat["items"]:
        (predicate,) = item["spec"]["filters"]
        idx = dims[predicate["attr"]]
        filtered = mean_mpg_by_cyl([r for r in rows if r[idx] == predicate["value"]])
        want = oracles.deviation_oracle(
            list(filtered), list(filtered.values()), list(overall), list(overall.values())
        )
        assert item["score"]["value"] == pytest.approx(want, abs=1e-9)
        assert item["score"]["objective"] == "deviation"


def test_include_charts_flag(cars_csv, capsys):
    code, out = run_cli(capsys, "recommend", str(cars_csv), "--include-charts", "--k", "2")
    assert code == 0
    payload = json.loads(out)
    for cat in payload["categories"]:
        for item in cat["items"]:
            assert "chart" in item


def test_subprocess_entry_point(cars_csv):
    cmd = [sys.executable, "-m", "nextviz.cli", "recommend", str(cars_csv), "--k", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["mode"] == "categorized"
