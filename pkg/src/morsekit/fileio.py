"""Deterministic CSV / JSON / PGM writers for the command-line surface.

Floats are serialized with repr(), the shortest round-trip form, so a given
sequence of computed values always produces byte-identical files.  All text
outputs use ``\n`` line endings regardless of platform.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .coherent import CoherentState, SweepPoint
from .spectrum import OrderedSpectrum, scaled_energy
from .states import MixingCoefficients, ScalarField2D

__all__ = [
    "write_spectrum_csv",
    "write_spectrum_json",
    "write_density_csv",
    "write_density_pgm",
    "write_density_meta",
    "write_sweep_csv",
    "write_coherent_json",
]

_PGM_MAX = 65535
_PGM_LINE_WIDTH = 68


def _fmt(value: float) -> str:
    return repr(float(value))


def _complex_fields(value: complex) -> dict:
    value = complex(value)
    return {"im": value.imag, "re": value.real}


def _join_quanta(values) -> str:
    return ";".join(str(v) for v in values)


def _level_rows(spectrum: OrderedSpectrum):
    k = spectrum.parameter.k
    eps = spectrum.parameter.epsilon
    for i, rec in enumerate(spectrum.levels):
        n0, m0 = rec.members[0]
        yield {
            "index": i,
            "n_list": [n for n, _ in rec.members],
            "m_list": [m for _, m in rec.members],
            "multiplicity": rec.multiplicity,
            "classification": rec.classification,
            "a": rec.key.a,
            "b": rec.key.b,
            "shifted_energy": rec.shifted_energy,
            "scaled_energy": scaled_energy(k, eps, n0, m0),
        }


def write_spectrum_csv(path, spectrum: OrderedSpectrum, only_classification: str | None = None) -> None:
    """Level table, one row per mu index; optionally filtered by classification."""
    lines = ["index,n_list,m_list,multiplicity,classification,a,b,shifted_energy,scaled_energy"]
    for row in _level_rows(spectrum):
        if only_classification is not None and row["classification"] != only_classification:
            continue
        lines.append(
            ",".join(
                [
                    str(row["index"]),
                    _join_quanta(row["n_list"]),
                    _join_quanta(row["m_list"]),
                    str(row["multiplicity"]),
                    row["classification"],
                    str(row["a"]),
                    str(row["b"]),
                    _fmt(row["shifted_energy"]),
                    _fmt(row["scaled_energy"]),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_spectrum_json(path, spectrum: OrderedSpectrum, only_classification: str | None = None) -> None:
    """JSON mirror of the CSV table plus the parameter block."""
    param = spectrum.parameter
    rows = [
        row
        for row in _level_rows(spectrum)
        if only_classification is None or row["classification"] == only_classification
    ]
    doc = {
        "epsilon": param.epsilon,
        "k": param.k,
        "levels": rows,
        "mode": param.mode,
        "p_text": param.p_text,
        "xi": spectrum.xi,
    }
    if param.ratio is not None:
        doc["epsilon_ratio"] = [param.ratio.numerator, param.ratio.denominator]
    _dump_json(path, doc)


def _dump_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")


def write_density_csv(path, field: ScalarField2D) -> None:
    """x, y, value rows; x is the outer loop, y the inner one."""
    xs = field.spec.x_centers()
    ys = field.spec.y_centers()
    lines = ["x,y,value"]
    for i, x in enumerate(xs):
        row = field.values[i]
        for j, y in enumerate(ys):
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(row[j])}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_density_pgm(path, field: ScalarField2D) -> None:
    """ASCII P2 graymap scaled to 0..65535 by the field maximum.

    Raster rows run top to bottom over descending y (so the image is
    oriented like a plot); columns run over ascending x.
    """
    values = field.values
    peak = float(values.max())
    if peak > 0.0:
        pixels = np.rint(values / peak * _PGM_MAX).astype(int)
    else:
        pixels = np.zeros(values.shape, dtype=int)
    lines = ["P2", f"{field.spec.nx} {field.spec.ny}", str(_PGM_MAX)]
    for j in range(field.spec.ny - 1, -1, -1):
        line = ""
        for i in range(field.spec.nx):
            token = str(pixels[i, j])
            if not line:
                line = token
            elif len(line) + 1 + len(token) <= _PGM_LINE_WIDTH:
                line += " " + token
            else:
                lines.append(line)
                line = token
        lines.append(line)
    Path(path).write_text("\n".join(lines) + "\n")


def write_density_meta(
    path,
    field: ScalarField2D,
    p_text: str,
    state_label: str,
    coeffs: MixingCoefficients | None = None,
    psi: complex | None = None,
) -> None:
    """Sidecar describing what the density files contain and how to read them."""
    doc = {
        "grid": {
            "nx": field.spec.nx,
            "ny": field.spec.ny,
            "x_max": field.spec.x_max,
            "x_min": field.spec.x_min,
            "y_max": field.spec.y_max,
            "y_min": field.spec.y_min,
        },
        "p_text": p_text,
        "pgm_orientation": "rows top-to-bottom are descending y; columns are ascending x",
        "riemann_sum": field.riemann_sum(),
        "state": state_label,
        "value_max": float(field.values.max()),
    }
    if coeffs is not None:
        doc["delta"] = _complex_fields(coeffs.delta)
        doc["gamma"] = _complex_fields(coeffs.gamma)
    if psi is not None:
        doc["psi"] = _complex_fields(psi)
    _dump_json(path, doc)


def _fmt_psi(psi: complex) -> str:
    psi = complex(psi)
    if psi.imag == 0.0:
        return _fmt(psi.real)
    return f"{psi.real!r}{psi.imag:+}j"


def write_sweep_csv(path, points: list[SweepPoint]) -> None:
    """Uncertainty sweep table: one x row and one y row per amplitude."""
    lines = ["psi,mode,var_q,var_p,product"]
    for point in points:
        for report in (point.x, point.y):
            lines.append(
                ",".join(
                    [
                        _fmt_psi(point.psi),
                        report.mode,
                        _fmt(report.var_q),
                        _fmt(report.var_p),
                        _fmt(report.product),
                    ]
                )
            )
    Path(path).write_text("\n".join(lines) + "\n")


def write_coherent_json(path, state: CoherentState, bg_residual_value: float) -> None:
    """Coefficient dump: magnitudes and phases plus the truncation residual."""
    basis = state.basis
    doc = {
        "bg_residual": bg_residual_value,
        "coefficient_magnitudes": [float(abs(c)) for c in state.coefficients],
        "coefficient_phases": [float(np.angle(c)) for c in state.coefficients],
        "delta": _complex_fields(basis.coeffs.delta),
        "gamma": _complex_fields(basis.coeffs.gamma),
        "log_normalization": state.log_normalization,
        "p_text": basis.parameter.p_text,
        "psi": _complex_fields(state.psi),
        "xi": state.xi,
    }
    _dump_json(path, doc)
