import os

import pytest

from votestab.curves import (
    FIGURE_SERIES,
    P_GRID,
    curve_rows,
    read_curves_csv,
    render_figures,
    write_curves_csv,
)


def _series(figures=(1, 2, 3, 4)):
    out = {}
    for p, name, value in curve_rows(figures):
        out.setdefault(name, {})[p] = value
    return out


def test_grid_has_101_points():
    assert len(P_GRID) == 101
    assert P_GRID[0] == 0.0 and P_GRID[-1] == 1.0


def test_figure1_meets_at_half():
    s = _series((1,))
    assert s["p_alpha"][0.5] == 0.5
    assert s["p_beta"][0.5] == 0.5
    assert s["p_beta"][0.1] == pytest.approx(0.18)


def test_figure2_kinf_step():
    s = _series((2,))
    assert s["inst_best_kinf"][0.4] == 0.0
    assert s["inst_best_kinf"][0.5] == 0.5
    assert s["inst_best_kinf"][0.6] == 0.0


def test_figure3_kinf_step():
    s = _series((3,))
    assert s["inst_worst_kinf"][0.4] == 0.5
    assert s["inst_worst_kinf"][0.0] == 0.0
    assert s["inst_worst_kinf"][1.0] == 0.0


def test_figure4_m3_below_m1():
    s = _series((4,))
    for p in (0.1, 0.25, 0.4):
        assert s["inst_avg_m3"][p] < s["inst_avg_m1"][p]
    for p in (0.0, 0.5, 1.0):
        assert s["inst_avg_m3"][p] == pytest.approx(s["inst_avg_m1"][p], abs=1e-12)


def test_csv_roundtrip(tmp_path):
    path = str(tmp_path / "curves.csv")
    write_curves_csv(path, comments=["test"])
    data = read_curves_csv(path)
    expect = _series()
    assert set(data) == {n for names in FIGURE_SERIES.values() for n in names}
    for name, points in expect.items():
        for p, value in points.items():
            assert data[name][p] == pytest.approx(value, abs=1e-15)


def test_render_figures(tmp_path):
    paths = render_figures(str(tmp_path), figures=(1,))
    assert len(paths) == 1
    assert os.path.getsize(paths[0]) > 0
