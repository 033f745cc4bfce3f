"""Command-line interface: golden outputs, determinism, exit codes."""

import json

import pytest

from morsekit import QuadratureAccuracyError
from morsekit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrumCommand:
    def test_summary_line_and_files(self, tmp_path, capsys):
        code, out, err = run(
            capsys, "spectrum", "--p", "3pi", "--out", str(tmp_path)
        )
        assert code == 0
        assert err == ""
        head = out.splitlines()[0]
        assert head.startswith("k=9 ")
        assert "mode=irrational" in head
        assert "xi=54" in head
        assert "levels=55 states=100" in head
        assert (tmp_path / "spectrum.csv").exists()
        assert (tmp_path / "spectrum.json").exists()

    def test_csv_rows_are_ordered_levels(self, tmp_path, capsys):
        code, out, _ = run(capsys, "spectrum", "--p", "3pi", "--out", str(tmp_path))
        assert code == 0
        lines = (tmp_path / "spectrum.csv").read_text().splitlines()
        assert (
            lines[0]
            == "index,n_list,m_list,multiplicity,classification,a,b,shifted_energy,scaled_energy"
        )
        assert len(lines) == 56
        first = lines[1].split(",")
        assert first[:7] == ["0", "0", "0", "1", "singlet", "162", "18"]
        second = lines[2].split(",")
        assert second[0] == "1"
        assert second[1] == "1;0"
        assert second[2] == "0;1"
        assert second[4] == "doublet"

    def test_accidental_row_for_integer_well(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "spectrum", "--p", "9", "--mode", "integer", "--out", str(tmp_path)
        )
        assert code == 0
        rows = (tmp_path / "spectrum.csv").read_text().splitlines()[1:]
        accidental = [r for r in rows if ",accidental," in r]
        assert any(",50," in r and "8;4;2" in r and "2;4;8" in r for r in accidental)

    def test_json_mirror_has_same_levels(self, tmp_path, capsys):
        run(capsys, "spectrum", "--p", "7.5", "--mode", "rational", "--out", str(tmp_path))
        doc = json.loads((tmp_path / "spectrum.json").read_text())
        assert doc["p_text"] == "7.5"
        assert doc["mode"] == "rational"
        assert doc["epsilon_ratio"] == [1, 2]
        assert doc["xi"] == 31
        assert len(doc["levels"]) == 32
        assert doc["levels"][0]["index"] == 0

    def test_format_filter(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "spectrum",
            "--p",
            "3pi",
            "--out",
            str(tmp_path),
            "--format",
            "json",
        )
        assert code == 0
        assert not (tmp_path / "spectrum.csv").exists()
        assert (tmp_path / "spectrum.json").exists()

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, "spectrum", "--p", "3pi", "--out", str(a))
        run(capsys, "spectrum", "--p", "3pi", "--out", str(b))
        assert (a / "spectrum.csv").read_bytes() == (b / "spectrum.csv").read_bytes()
        assert (a / "spectrum.json").read_bytes() == (b / "spectrum.json").read_bytes()


class TestDegeneracyCommand:
    def test_integer_census_line(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "degeneracy", "--p", "28", "--mode", "integer", "--out", str(tmp_path)
        )
        assert code == 0
        assert out.splitlines()[0] == "841 435 360 75"

    def test_irrational_census_line(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "degeneracy",
            "--p",
            "9.42477796076937974",
            "--mode",
            "irrational",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert out.splitlines()[0] == "100 55 55 0"

    def test_accidental_file_only_lists_accidentals(self, tmp_path, capsys):
        run(capsys, "degeneracy", "--p", "9", "--mode", "integer", "--out", str(tmp_path))
        rows = (tmp_path / "accidental_levels.csv").read_text().splitlines()[1:]
        assert len(rows) == 4
        assert all(",accidental," in r for r in rows)

    def test_tiny_well_has_single_level(self, tmp_path, capsys):
        code, out, _ = run(
            capsys, "degeneracy", "--p", "0.5", "--mode", "rational", "--out", str(tmp_path)
        )
        assert code == 0
        assert out.splitlines()[0] == "1 1 1 0"


class TestDensityCommand:
    def test_level_density_outputs(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "18",
            "--grid",
            "64x64",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert out.startswith("state=mu_18 value_max=")
        assert (tmp_path / "density.csv").exists()
        assert (tmp_path / "density.pgm").exists()
        assert (tmp_path / "density_meta.json").exists()
        assert not (tmp_path / "coherent.json").exists()
        csv_lines = (tmp_path / "density.csv").read_text().splitlines()
        assert csv_lines[0] == "x,y,value"
        assert len(csv_lines) == 1 + 64 * 64

    def test_pgm_header(self, tmp_path, capsys):
        run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "0",
            "--grid",
            "32x48",
            "--out",
            str(tmp_path),
        )
        head = (tmp_path / "density.pgm").read_text().splitlines()[:3]
        assert head == ["P2", "32 48", "65535"]

    def test_coherent_density_writes_sidecar(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--psi",
            "0.1",
            "--grid",
            "48x48",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert out.startswith("state=coherent value_max=")
        doc = json.loads((tmp_path / "coherent.json").read_text())
        assert doc["psi"] == {"re": 0.1, "im": 0.0}
        assert doc["xi"] == 54
        assert 0.0 < doc["bg_residual"] < 1e-40
        assert len(doc["coefficient_magnitudes"]) == 55
        assert doc["coefficient_magnitudes"][0] == pytest.approx(1.0, abs=1e-3)

    def test_custom_mixing_recorded_in_meta(self, tmp_path, capsys):
        run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "1",
            "--gamma",
            "1",
            "--delta",
            "0,1",
            "--grid",
            "32x32",
            "--out",
            str(tmp_path),
        )
        doc = json.loads((tmp_path / "density_meta.json").read_text())
        assert doc["state"] == "mu_1"
        assert doc["gamma"]["re"] == pytest.approx(2.0**-0.5)
        assert doc["delta"]["im"] == pytest.approx(2.0**-0.5)

    def test_explicit_ranges(self, tmp_path, capsys):
        code, _, _ = run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "0",
            "--grid",
            "16x16",
            "--xrange=-1:6",
            "--yrange=-1:6",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        doc = json.loads((tmp_path / "density_meta.json").read_text())
        assert doc["grid"]["x_min"] == -1.0
        assert doc["grid"]["x_max"] == 6.0

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        for out_dir in (a, b):
            run(
                capsys,
                "density",
                "--p",
                "3pi",
                "--psi",
                "1.2@0.5",
                "--grid",
                "40x40",
                "--out",
                str(out_dir),
            )
        for name in ("density.csv", "density.pgm", "density_meta.json", "coherent.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestUncertaintyCommand:
    def test_sweep_csv_and_separation(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "uncertainty",
            "--p",
            "3pi",
            "--gamma",
            "0.8660254037844386",
            "--delta",
            "0.5",
            "--psi-start",
            "1.5",
            "--psi-stop",
            "2.0",
            "--psi-step",
            "0.1",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert "separation_psi=1.7" in out
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "psi,mode,var_q,var_p,product"
        assert len(lines) == 1 + 2 * 6  # one x row and one y row per amplitude
        assert lines[1].startswith("1.5,x,")
        assert lines[2].startswith("1.5,y,")

    def test_symmetric_mix_reports_none(self, tmp_path, capsys):
        code, out, _ = run(
            capsys,
            "uncertainty",
            "--p",
            "3pi",
            "--psi-start",
            "0.5",
            "--psi-stop",
            "1.0",
            "--psi-step",
            "0.25",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert "separation_psi=none" in out

    def test_bad_step_rejected(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "uncertainty",
            "--p",
            "3pi",
            "--psi-step",
            "0",
            "--out",
            str(tmp_path),
        )
        assert code == 2
        assert "psi-step" in err


class TestConfigFile:
    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"p": "28", "mode": "integer", "format": "csv"}))
        code, out, _ = run(
            capsys,
            "degeneracy",
            "--config",
            str(cfg),
            "--p",
            "9",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        assert out.splitlines()[0] == "100 55 51 4"
        assert (tmp_path / "accidental_levels.csv").exists()
        assert not (tmp_path / "accidental_levels.json").exists()

    def test_config_supplies_missing_flags(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"p": "28", "mode": "integer"}))
        code, out, _ = run(capsys, "degeneracy", "--config", str(cfg), "--out", str(tmp_path))
        assert code == 0
        assert out.splitlines()[0] == "841 435 360 75"

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"p": "28", "mode": "integer", "colour": "red"}))
        code, _, err = run(capsys, "degeneracy", "--config", str(cfg), "--out", str(tmp_path))
        assert code == 2
        assert "colour" in err


class TestExitCodes:
    def test_unparseable_p(self, tmp_path, capsys):
        code, _, err = run(capsys, "spectrum", "--p", "abc", "--mode", "integer", "--out", str(tmp_path))
        assert code == 2
        assert "error:" in err

    def test_missing_mode(self, tmp_path, capsys):
        code, _, err = run(capsys, "spectrum", "--p", "4.5", "--out", str(tmp_path))
        assert code == 2
        assert "--mode" in err

    def test_pi_value_must_be_irrational(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "spectrum", "--p", "2pi", "--mode", "integer", "--out", str(tmp_path)
        )
        assert code == 2
        assert "irrational" in err

    def test_density_needs_exactly_one_selector(self, tmp_path, capsys):
        code, _, err = run(capsys, "density", "--p", "3pi", "--out", str(tmp_path))
        assert code == 2
        assert "--mu" in err and "--psi" in err
        code, _, err = run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "0",
            "--psi",
            "1",
            "--out",
            str(tmp_path),
        )
        assert code == 2

    def test_density_mu_out_of_range(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "density", "--p", "3pi", "--mu", "99", "--out", str(tmp_path)
        )
        assert code == 2
        assert "0..54" in err

    def test_ordering_ambiguity_exit_code(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "spectrum", "--p", "3.5", "--mode", "irrational", "--out", str(tmp_path)
        )
        assert code == 3
        assert "ordering ambiguity" in err

    def test_quadrature_failure_exit_code(self, tmp_path, capsys, monkeypatch):
        import morsekit.coherent

        def explode(*args, **kwargs):
            raise QuadratureAccuracyError("synthetic failure")

        monkeypatch.setattr(morsekit.coherent, "uncertainty_sweep", explode)
        code, _, err = run(
            capsys,
            "uncertainty",
            "--p",
            "3pi",
            "--psi-stop",
            "0.2",
            "--out",
            str(tmp_path),
        )
        assert code == 4
        assert "quadrature accuracy" in err

    def test_mixing_requires_both_halves(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "density",
            "--p",
            "3pi",
            "--mu",
            "1",
            "--gamma",
            "1",
            "--out",
            str(tmp_path),
        )
        assert code == 2
        assert "--gamma and --delta" in err

    def test_unknown_format_rejected(self, tmp_path, capsys):
        code, _, err = run(
            capsys,
            "spectrum",
            "--p",
            "3pi",
            "--format",
            "yaml",
            "--out",
            str(tmp_path),
        )
        assert code == 2
        assert "yaml" in err
