"""File writers on synthetic fields: exact layouts and round-trips."""

import json

import numpy as np
import pytest

from morsekit import GridSpec, ScalarField2D
from morsekit.fileio import (
    write_density_csv,
    write_density_meta,
    write_density_pgm,
    write_sweep_csv,
)


@pytest.fixture()
def ramp_field():
    grid = GridSpec(0.0, 2.0, 0.0, 1.0, 2, 3)
    values = np.array([[0.0, 1.0, 2.0], [3.0, 4.0, 8.0]])
    return ScalarField2D(grid, values)


class TestDensityCsv:
    def test_row_order_and_values(self, tmp_path, ramp_field):
        path = tmp_path / "density.csv"
        write_density_csv(path, ramp_field)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,y,value"
        assert len(lines) == 7
        # x outer, y inner: first block is x = 0.5 over ascending y
        x0, y0, v0 = lines[1].split(",")
        assert float(x0) == 0.5
        assert float(y0) == pytest.approx(1.0 / 6.0)
        assert float(v0) == 0.0
        x_last, y_last, v_last = lines[-1].split(",")
        assert float(x_last) == 1.5
        assert float(v_last) == 8.0

    def test_values_round_trip_through_repr(self, tmp_path):
        grid = GridSpec(0.0, 1.0, 0.0, 1.0, 2, 2)
        values = np.array([[0.1, 1.0 / 3.0], [2.0 / 7.0, 1e-30]])
        write_density_csv(tmp_path / "d.csv", ScalarField2D(grid, values))
        rows = (tmp_path / "d.csv").read_text().splitlines()[1:]
        parsed = np.array([float(r.split(",")[2]) for r in rows]).reshape(2, 2)
        assert np.array_equal(parsed, values)


class TestDensityPgm:
    def test_scaling_and_orientation(self, tmp_path, ramp_field):
        path = tmp_path / "density.pgm"
        write_density_pgm(path, ramp_field)
        lines = path.read_text().splitlines()
        assert lines[:3] == ["P2", "2 3", "65535"]
        pixels = [int(tok) for line in lines[3:] for tok in line.split()]
        # top raster row is the highest y: values[:, 2] = (2, 8) -> (16384, 65535)
        assert pixels[:2] == [16384, 65535]
        assert pixels[-2:] == [0, round(3 / 8 * 65535)]

    def test_all_zero_field(self, tmp_path):
        grid = GridSpec(0.0, 1.0, 0.0, 1.0, 2, 2)
        write_density_pgm(tmp_path / "z.pgm", ScalarField2D(grid, np.zeros((2, 2))))
        lines = (tmp_path / "z.pgm").read_text().splitlines()
        assert all(tok == "0" for line in lines[3:] for tok in line.split())

    def test_lines_stay_narrow(self, tmp_path):
        grid = GridSpec(0.0, 1.0, 0.0, 1.0, 300, 2)
        field = ScalarField2D(grid, np.full((300, 2), 0.5))
        write_density_pgm(tmp_path / "w.pgm", field)
        assert max(len(l) for l in (tmp_path / "w.pgm").read_text().splitlines()) <= 70


class TestDensityMeta:
    def test_contents(self, tmp_path, ramp_field):
        path = tmp_path / "meta.json"
        write_density_meta(path, ramp_field, "3.14", "mu_7", None, None)
        doc = json.loads(path.read_text())
        assert doc["p_text"] == "3.14"
        assert doc["state"] == "mu_7"
        assert doc["grid"]["nx"] == 2
        assert doc["value_max"] == 8.0
        assert doc["riemann_sum"] == pytest.approx(18.0 * (1.0 / 3.0))
        assert "gamma" not in doc

    def test_sorted_keys_for_determinism(self, tmp_path, ramp_field):
        path = tmp_path / "meta.json"
        write_density_meta(path, ramp_field, "2.5", "mu_0", None, None)
        keys = [line.split('"')[1] for line in path.read_text().splitlines() if '":' in line]
        top = [k for k in keys if k in {"grid", "p_text", "pgm_orientation", "riemann_sum", "state", "value_max"}]
        assert top == sorted(top)


class TestSweepCsv:
    def test_two_rows_per_point(self, tmp_path, basis_3pi, mu_3pi):
        from morsekit import uncertainty_sweep

        points = uncertainty_sweep(basis_3pi, mu_3pi, psi_values=[0.5, 1.0])
        path = tmp_path / "sweep.csv"
        write_sweep_csv(path, points)
        lines = path.read_text().splitlines()
        assert lines[0] == "psi,mode,var_q,var_p,product"
        assert len(lines) == 5
        first = lines[1].split(",")
        assert first[:2] == ["0.5", "x"]
        assert float(first[4]) == pytest.approx(float(first[2]) * float(first[3]), rel=1e-12)
        assert lines[2].split(",")[:2] == ["0.5", "y"]
        assert lines[3].split(",")[:2] == ["1.0", "x"]
