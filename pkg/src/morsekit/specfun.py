"""Special-function kernels used by the bound-state machinery.

Everything here is written to survive deep wells (principal parameter of a
few hundred), where Gamma factors and Laguerre values overflow double
precision by thousands of orders of magnitude.  The public entry points are
``log_gamma``, ``laguerre``, ``laguerre_derivative`` and
``laguerre_signed_log``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

__all__ = [
    "log_gamma",
    "laguerre",
    "laguerre_derivative",
    "laguerre_signed_log",
]

# Rescaling guard for the signed-log recurrence.  2**512 is exact in binary
# floating point, so dividing by it never loses mantissa bits.
_RESCALE_THRESHOLD = 1.0e250
_RESCALE_FACTOR = 2.0**-512
_RESCALE_LOG = 512.0 * np.log(2.0)


def _prepare(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def log_gamma(x):
    """ln Gamma(x) for real x > 0, scalar or array.

    Thin wrapper over ``scipy.special.gammaln`` restricted to the positive
    axis, where the result is real and the bound-state formulas live.
    """
    arr, scalar = _prepare(x)
    if np.any(~(arr > 0.0)):
        raise ValueError("log_gamma requires strictly positive arguments")
    out = gammaln(arr)
    return float(out) if scalar else out


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by the stable upward recurrence.

    j L_j = (2j - 1 + alpha - x) L_{j-1} - (j - 1 + alpha) L_{j-2},
    seeded with L_0 = 1 and L_1 = 1 + alpha - x.  Values can overflow for
    large n and x; use ``laguerre_signed_log`` when that matters.
    """
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    if alpha <= -1.0:
        raise ValueError("alpha must exceed -1 for an orthogonal family")
    arr, scalar = _prepare(x)
    prev = np.zeros_like(arr)
    cur = np.ones_like(arr)
    for j in range(1, n + 1):
        prev, cur = cur, ((2.0 * j - 1.0 + alpha - arr) * cur - (j - 1.0 + alpha) * prev) / j
    return float(cur) if scalar else cur


def laguerre_derivative(n: int, alpha: float, x):
    """d/dx L_n^alpha(x) = -L_{n-1}^{alpha+1}(x), with the n = 0 case zero."""
    arr, scalar = _prepare(x)
    if n == 0:
        out = np.zeros_like(arr)
        return float(out) if scalar else out
    out = -laguerre(n - 1, alpha + 1.0, arr)
    return float(out) if scalar else out


def laguerre_signed_log(n: int, alpha: float, x) -> tuple[np.ndarray, np.ndarray]:
    """Sign and log of |L_n^alpha(x)|, immune to overflow.

    Runs the same three-term recurrence as ``laguerre`` but rescales both
    running values by an exact power of two whenever they threaten the top
    of the double range, accumulating the shed magnitude in log space.

    Returns ``(sign, log_abs)`` as float arrays (scalars in, scalars out);
    ``log_abs`` is ``-inf`` where the polynomial vanishes exactly.
    """
    if n < 0:
        raise ValueError("polynomial degree must be non-negative")
    if alpha <= -1.0:
        raise ValueError("alpha must exceed -1 for an orthogonal family")
    arr, scalar = _prepare(x)
    prev = np.zeros_like(arr)
    cur = np.ones_like(arr)
    shift = np.zeros_like(arr)
    for j in range(1, n + 1):
        prev, cur = cur, ((2.0 * j - 1.0 + alpha - arr) * cur - (j - 1.0 + alpha) * prev) / j
        big = np.maximum(np.abs(cur), np.abs(prev)) > _RESCALE_THRESHOLD
        if np.any(big):
            cur = np.where(big, cur * _RESCALE_FACTOR, cur)
            prev = np.where(big, prev * _RESCALE_FACTOR, prev)
            shift = np.where(big, shift + _RESCALE_LOG, shift)
    sign = np.sign(cur)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(cur)) + shift
    if scalar:
        return float(sign), float(log_abs)
    return sign, log_abs
