"""Command-line surface: spectrum, degeneracy, density and uncertainty runs.

All heavy imports happen inside main() so the package-level thread cap (the
MORSEKIT_THREADS environment variable, honored in ``morsekit/__init__``) is
in place before any BLAS library initializes.  Exit codes: 0 success, 2
usage or parameter problem, 3 ordering ambiguity, 4 quadrature accuracy.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

_FORMATS = ("csv", "json", "pgm")

_PI_PATTERN = re.compile(r"^([0-9]*\.?[0-9]*)\s*pi$", re.IGNORECASE)

_CONFIG_KEYS = (
    "p",
    "mode",
    "gamma",
    "delta",
    "psi",
    "mu",
    "grid",
    "xrange",
    "yrange",
    "out",
    "format",
    "psi_start",
    "psi_stop",
    "psi_step",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsekit",
        description="Bound-state spectra, level states and coherent states of the 2D Morse well.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", help="principal parameter as decimal text, or a pi multiple like '3pi'")
        p.add_argument(
            "--mode",
            help="arithmetic declaration: integer | irrational | rational[:R/Q] "
            "(pi-style --p implies irrational)",
        )
        p.add_argument("--out", help="output directory (default '.')")
        p.add_argument("--format", help="comma-separated subset of csv,json,pgm (default all)")
        p.add_argument("--config", help="JSON file with defaults for any flag; flags win")

    def add_state(p: argparse.ArgumentParser) -> None:
        p.add_argument("--gamma", help="doublet coefficient, 're,im' or 'mag@phase' or a real")
        p.add_argument("--delta", help="doublet coefficient, same forms as --gamma")

    def add_grid(p: argparse.ArgumentParser) -> None:
        p.add_argument("--grid", help="grid size NXxNY (default 400x400)")
        p.add_argument("--xrange", help="x interval LO:HI (default: scanned support box)")
        p.add_argument("--yrange", help="y interval LO:HI (default: scanned support box)")

    p_spec = sub.add_parser("spectrum", help="ordered level table")
    add_common(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_deg = sub.add_parser("degeneracy", help="degeneracy census and accidental levels")
    add_common(p_deg)
    p_deg.set_defaults(func=cmd_degeneracy)

    p_den = sub.add_parser("density", help="probability density of a level or coherent state")
    add_common(p_den)
    add_state(p_den)
    add_grid(p_den)
    p_den.add_argument("--mu", help="level index of the state to render")
    p_den.add_argument("--psi", help="coherent amplitude, 're,im' or 'mag@phase' or a real")
    p_den.set_defaults(func=cmd_density)

    p_unc = sub.add_parser("uncertainty", help="position/momentum uncertainty sweep")
    add_common(p_unc)
    add_state(p_unc)
    p_unc.add_argument("--psi-start", help="first amplitude (default 0.1)")
    p_unc.add_argument("--psi-stop", help="last amplitude (default 5.0)")
    p_unc.add_argument("--psi-step", help="amplitude step (default 0.1)")
    p_unc.set_defaults(func=cmd_uncertainty)

    return parser


class UsageError(ValueError):
    """Bad flag or config value; maps to exit code 2."""


def _load_config(args) -> dict:
    if getattr(args, "config", None) is None:
        return {}
    try:
        doc = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {args.config}: {exc}")
    if not isinstance(doc, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = sorted(set(doc) - set(_CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    return doc


def _pick(args, config: dict, key: str, default=None):
    # precedence: explicit flag > config file > built-in default
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config and config[key] is not None:
        return config[key]
    return default


def _parse_principal(p_raw, mode_raw):
    from .spectrum import IRRATIONAL, decompose, pi_multiple_text

    if p_raw is None:
        raise UsageError("--p is required")
    p_text = str(p_raw).strip()
    ratio = None
    mode = None
    if mode_raw is not None:
        mode_text = str(mode_raw).strip().lower()
        parts = re.split(r"[:\s]+", mode_text)
        mode = parts[0]
        if mode == "rational" and len(parts) == 2:
            num, _, den = parts[1].partition("/")
            try:
                ratio = Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"cannot parse rational ratio {parts[1]!r}: {exc}")
        elif len(parts) > 1:
            raise UsageError(f"unexpected mode arguments in {mode_raw!r}")

    match = _PI_PATTERN.match(p_text)
    if match:
        multiple = float(match.group(1)) if match.group(1) else 1.0
        p_text = pi_multiple_text(multiple)
        if mode is None:
            mode = IRRATIONAL
        elif mode != IRRATIONAL:
            raise UsageError("pi-multiple p is irrational; --mode must agree")
    if mode is None:
        raise UsageError("--mode is required (integer | irrational | rational[:R/Q])")
    try:
        return decompose(p_text, mode, ratio)
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_complex(text, flag: str) -> complex:
    text = str(text).strip()
    try:
        if "@" in text:
            mag, _, phase = text.partition("@")
            import cmath

            return float(mag) * cmath.exp(1j * float(phase))
        if "," in text:
            re_part, _, im_part = text.partition(",")
            return complex(float(re_part), float(im_part))
        return complex(float(text), 0.0)
    except ValueError as exc:
        raise UsageError(f"cannot parse {flag} value {text!r}: {exc}")


def _parse_mixing(args, config: dict):
    from .states import MixingCoefficients

    gamma = _pick(args, config, "gamma")
    delta = _pick(args, config, "delta")
    if gamma is None and delta is None:
        return MixingCoefficients.equal_mix()
    if gamma is None or delta is None:
        raise UsageError("--gamma and --delta must be supplied together")
    try:
        return MixingCoefficients.normalized(
            _parse_complex(gamma, "--gamma"), _parse_complex(delta, "--delta")
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_grid(args, config: dict, basis):
    from .states import GridSpec

    grid_text = str(_pick(args, config, "grid", "400x400"))
    match = re.match(r"^(\d+)[xX](\d+)$", grid_text.strip())
    if not match:
        raise UsageError(f"--grid must look like 400x400, got {grid_text!r}")
    nx, ny = int(match.group(1)), int(match.group(2))

    def parse_range(text, flag):
        if text is None:
            return None
        parts = str(text).split(":")
        if len(parts) != 2:
            raise UsageError(f"{flag} must look like LO:HI, got {text!r}")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise UsageError(f"cannot parse {flag} value {text!r}: {exc}")
        if not hi > lo:
            raise UsageError(f"{flag} interval is empty: {text!r}")
        return lo, hi

    x_range = parse_range(_pick(args, config, "xrange"), "--xrange")
    y_range = parse_range(_pick(args, config, "yrange"), "--yrange")
    if x_range is None or y_range is None:
        lo, hi = basis.support_box()
        x_range = x_range or (lo, hi)
        y_range = y_range or (lo, hi)
    try:
        return GridSpec(x_range[0], x_range[1], y_range[0], y_range[1], nx, ny)
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_formats(args, config: dict) -> set[str]:
    text = _pick(args, config, "format")
    if text is None:
        return set(_FORMATS)
    chosen = {part.strip().lower() for part in str(text).split(",") if part.strip()}
    unknown = chosen - set(_FORMATS)
    if unknown:
        raise UsageError(f"unknown formats: {', '.join(sorted(unknown))}")
    if not chosen:
        raise UsageError("--format selected nothing")
    return chosen


def _out_dir(args, config: dict) -> Path:
    out = Path(str(_pick(args, config, "out", ".")))
    out.mkdir(parents=True, exist_ok=True)
    return out


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters: flags merged over config-file values over defaults."""

    param: object
    coeffs: object
    out_dir: Path
    formats: frozenset
    raw: dict

    @classmethod
    def resolve(cls, args, mixing: bool = False) -> "RunConfig":
        config = _load_config(args)
        return cls(
            param=_parse_principal(_pick(args, config, "p"), _pick(args, config, "mode")),
            coeffs=_parse_mixing(args, config) if mixing else None,
            out_dir=_out_dir(args, config),
            formats=frozenset(_parse_formats(args, config)),
            raw=config,
        )


def cmd_spectrum(args) -> int:
    from . import fileio
    from .spectrum import order_spectrum

    run = RunConfig.resolve(args)
    param, formats, out = run.param, run.formats, run.out_dir
    spectrum = order_spectrum(param)
    written = []
    if "csv" in formats:
        path = out / "spectrum.csv"
        fileio.write_spectrum_csv(path, spectrum)
        written.append(path.name)
    if "json" in formats:
        path = out / "spectrum.json"
        fileio.write_spectrum_json(path, spectrum)
        written.append(path.name)
    counts = f"levels={len(spectrum.levels)} states={param.state_count()}"
    print(
        f"k={param.k} epsilon={param.epsilon!r} mode={param.mode} xi={spectrum.xi} {counts}"
    )
    if written:
        print("wrote " + " ".join(written))
    return 0


def cmd_degeneracy(args) -> int:
    from . import fileio
    from .spectrum import count_summary, order_spectrum

    run = RunConfig.resolve(args)
    param, formats, out = run.param, run.formats, run.out_dir
    spectrum = order_spectrum(param)
    census = count_summary(spectrum.levels)
    print(f"{census.total_states} {census.swap_reduced} {census.distinct} {census.accidental}")
    written = []
    if "csv" in formats:
        path = out / "accidental_levels.csv"
        fileio.write_spectrum_csv(path, spectrum, only_classification="accidental")
        written.append(path.name)
    if "json" in formats:
        path = out / "accidental_levels.json"
        fileio.write_spectrum_json(path, spectrum, only_classification="accidental")
        written.append(path.name)
    if written:
        print("wrote " + " ".join(written))
    return 0


def cmd_density(args) -> int:
    from . import fileio
    from .coherent import bg_residual, coherent_coefficients, ladder_f
    from .states import MorseBasis, build_mu_basis, density_grid
    from .spectrum import order_spectrum

    run = RunConfig.resolve(args, mixing=True)
    param, formats, out, config = run.param, run.formats, run.out_dir, run.raw
    mu_raw = _pick(args, config, "mu")
    psi_raw = _pick(args, config, "psi")
    if (mu_raw is None) == (psi_raw is None):
        raise UsageError("pick exactly one of --mu and --psi")
    coeffs = run.coeffs
    spectrum = order_spectrum(param)
    mu_basis = build_mu_basis(spectrum, coeffs)
    basis = MorseBasis(param)
    grid = _parse_grid(args, config, basis)

    psi = None
    if mu_raw is not None:
        try:
            index = int(str(mu_raw))
        except ValueError as exc:
            raise UsageError(f"cannot parse --mu value {mu_raw!r}: {exc}")
        if not 0 <= index <= spectrum.xi:
            raise UsageError(f"--mu must lie in 0..{spectrum.xi}, got {index}")
        state = mu_basis.states[index]
        label = f"mu_{index}"
    else:
        psi = _parse_complex(psi_raw, "--psi")
        ladder = ladder_f(spectrum)
        state = coherent_coefficients(psi, ladder, mu_basis)
        label = "coherent"

    field = density_grid(basis, state, grid)
    written = []
    if "csv" in formats:
        path = out / "density.csv"
        fileio.write_density_csv(path, field)
        written.append(path.name)
    if "pgm" in formats:
        path = out / "density.pgm"
        fileio.write_density_pgm(path, field)
        written.append(path.name)
    if "json" in formats:
        path = out / "density_meta.json"
        fileio.write_density_meta(path, field, param.p_text, label, coeffs, psi)
        written.append(path.name)
        if psi is not None:
            path = out / "coherent.json"
            fileio.write_coherent_json(path, state, bg_residual(state, ladder))
            written.append(path.name)
    print(f"state={label} value_max={float(field.values.max())!r}")
    if written:
        print("wrote " + " ".join(written))
    return 0


def cmd_uncertainty(args) -> int:
    from . import fileio
    from .coherent import first_separation, uncertainty_sweep
    from .states import MorseBasis, build_mu_basis
    from .spectrum import order_spectrum

    run = RunConfig.resolve(args, mixing=True)
    param, formats, out, config = run.param, run.formats, run.out_dir, run.raw
    coeffs = run.coeffs

    def parse_float(key, default):
        raw = _pick(args, config, key, default)
        try:
            return float(raw)
        except ValueError as exc:
            raise UsageError(f"cannot parse --{key.replace('_', '-')} value {raw!r}: {exc}")

    start = parse_float("psi_start", 0.1)
    stop = parse_float("psi_stop", 5.0)
    step = parse_float("psi_step", 0.1)
    if step <= 0 or stop < start:
        raise UsageError("need psi-step > 0 and psi-stop >= psi-start")

    import numpy as np

    count = int(round((stop - start) / step)) + 1
    psis = np.round(start + step * np.arange(count), 12)
    psis = psis[psis <= stop + 1e-12]

    spectrum = order_spectrum(param)
    mu_basis = build_mu_basis(spectrum, coeffs)
    basis = MorseBasis(param)
    points = uncertainty_sweep(basis, mu_basis, psis)
    if "csv" in formats:
        path = out / "sweep.csv"
        fileio.write_sweep_csv(path, points)
        print(f"wrote {path.name}")
    split = first_separation(points)
    if split is None:
        print("separation_psi=none")
    else:
        print(f"separation_psi={split.real!r}")
    return 0


def main(argv=None) -> int:
    from .errors import NoBoundStatesError, OrderingAmbiguityError, QuadratureAccuracyError

    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, NoBoundStatesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrderingAmbiguityError as exc:
        print(f"ordering ambiguity: {exc}", file=sys.stderr)
        return 3
    except QuadratureAccuracyError as exc:
        print(f"quadrature accuracy: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
