import xml.etree.ElementTree as ET

import pytest

from hadstab import MonicPolynomial
from hadstab.report import (
    EXPERIMENT_POLYS,
    reproduce_example,
    round12,
    sweep,
    sweep_csv,
    sweep_svg,
)

F1 = EXPERIMENT_POLYS[1]["f"]


def svg_elements(text):
    root = ET.fromstring(text)
    markers = [e for e in root.iter() if e.get("class") == "root"]
    circles = [e for e in root.iter() if e.get("class") == "unit-circle"]
    return markers, circles


class TestSweep:
    def test_records_sorted_and_complete(self):
        records = sweep(F1, [3.0, 1.0, 2.0])
        assert [r.p for r in records] == [1.0, 2.0, 3.0]
        assert all(len(r.roots) == F1.degree for r in records)

    def test_verdicts(self):
        records = sweep(F1, [1.0, 4.0])
        assert not records[0].stable
        assert records[1].stable

    def test_csv_schema(self):
        records = sweep(F1, [1.0, 2.0])
        text = sweep_csv(records, F1.degree)
        lines = text.strip().split("\n")
        header = lines[0].split(",")
        assert header[:3] == ["p", "stable", "max_modulus"]
        assert header[3:5] == ["root_re_1", "root_im_1"]
        assert len(header) == 3 + 2 * F1.degree
        assert len(lines) == 3
        assert lines[1].split(",")[1] == "false"

    def test_empty_csv_keeps_header(self):
        text = sweep_csv([], F1.degree)
        assert text.count("\n") == 1
        assert text.startswith("p,stable,max_modulus")

    def test_svg_marker_counts(self):
        records = sweep(F1, [1.0, 2.0, 5.0])
        markers, circles = svg_elements(sweep_svg(records))
        assert len(markers) == 3 * F1.degree
        assert len(circles) == 1

    def test_svg_color_split(self):
        records = sweep(F1, [1.0, 5.0])
        markers, _ = svg_elements(sweep_svg(records))
        fills = {m.get("fill") for m in markers}
        assert fills == {"#000000", "#9e9e9e"}


class TestRound12:
    def test_fixes_format(self):
        assert round12(3.4124375149898001) == 3.41243751499
        assert round12(0.0) == 0.0
        assert round12(float("inf")) == float("inf")


class TestReproduce:
    def test_example_one_artifacts(self, tmp_path):
        out = tmp_path / "rep"
        payload = reproduce_example(1, out, grid_n=200)
        names = {p.name for p in out.iterdir()}
        assert names == {
            "report.json",
            "table.csv",
            "sweep_f.csv",
            "sweep_f.svg",
            "sweep_g.csv",
            "sweep_g.svg",
        }
        rows = {r["quantity"]: r for r in payload["comparison"]}
        assert set(rows) == {
            "f_pstar_max_grid",
            "g_pstar_min_grid",
            "f_onset",
            "g_onset",
        }
        assert rows["f_onset"]["abs_deviation"] <= 1e-3
        assert payload["integer_sweep"]["f_unstable_powers"] == [1, 2, 3]
        assert payload["integer_sweep"]["g_unstable_powers"] == [-1]

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        reproduce_example(1, a, grid_n=100)
        reproduce_example(1, b, grid_n=100)
        for name in ("report.json", "table.csv", "sweep_f.csv", "sweep_f.svg"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_unknown_example(self, tmp_path):
        with pytest.raises(ValueError):
            reproduce_example(3, tmp_path)
