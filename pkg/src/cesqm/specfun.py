"""Self-contained special-function kernel.

Everything the closed-form layer needs: the confluent hypergeometric function
1F1 and its z-derivative, Hermite and generalized Laguerre polynomials by
three-term recurrence, a signed log-gamma with reflection-formula sign
tracking, and Pochhammer symbols. All evaluators are pure functions and accept
floats, numpy arrays, or :class:`~cesqm.jets.Jet` values wherever an argument
is a coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidParameterError
from .jets import Jet, exp as _exp, value_of

__all__ = [
    "kummer_1f1",
    "kummer_1f1_dz",
    "hermite",
    "laguerre",
    "SignedLogGamma",
    "gamma_signed",
    "gamma_value",
    "pochhammer",
]

# 1F1 series controls: stop once the last term is below RELATIVE_FLOOR times
# the running sum for CONSECUTIVE_BELOW terms in a row. The cap is sized for
# |z| up to ~150 (grid edge x = 12 after the Kummer transform).
MAX_TERMS = 600
RELATIVE_FLOOR = 1e-17
CONSECUTIVE_BELOW = 3

# a counts as a non-positive integer (polynomial case) within this window
INTEGER_TOL = 1e-12


def _polynomial_degree(a: float) -> int | None:
    """Degree of the terminating series if a is a non-positive integer."""
    r = round(a)
    if r <= 0 and abs(a - r) < INTEGER_TOL:
        return -int(r)
    return None


def _series_1f1(a: float, b: float, z):
    """Direct power series with compensated summation; z value parts >= 0."""
    term = 1.0
    total = 0.0 * z + 1.0
    comp = 0.0
    streak = 0
    for k in range(MAX_TERMS):
        term = term * ((a + k) / (b + k)) * z * (1.0 / (k + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if np.all(np.abs(value_of(term)) <= RELATIVE_FLOOR * np.abs(value_of(total))):
            streak += 1
            if streak >= CONSECUTIVE_BELOW:
                return total
        else:
            streak = 0
    raise ConvergenceError(
        f"1F1({a}, {b}, z) did not converge within {MAX_TERMS} terms"
    )


def _finite_sum_1f1(a: float, b: float, z, degree: int):
    """Terminating series for non-positive integer a (exact polynomial)."""
    term = 0.0 * z + 1.0
    total = term
    for k in range(degree):
        term = term * ((a + k) / (b + k)) * z * (1.0 / (k + 1))
        total = total + term
    return total


def _eval_1f1_nonneg(a: float, b: float, z):
    """1F1 summed at non-negative argument, terminating when possible."""
    degree = _polynomial_degree(a)
    if degree is not None:
        return _finite_sum_1f1(a, b, z, degree)
    return _series_1f1(a, b, z)


def kummer_1f1(a: float, b: float, z):
    """Confluent hypergeometric function 1F1(a; b; z).

    For z < 0 the Kummer transform 1F1(a;b;z) = exp(z) 1F1(b-a;b;-z) is
    applied so the series is always summed at non-negative argument, which
    keeps every term of one sign and avoids catastrophic cancellation. A
    non-positive integer a triggers the exact finite polynomial sum.

    z may be a float, a numpy array, or a jet. Mixed-sign arrays are split
    elementwise; jets must carry a uniformly signed value part.
    """
    deg_a = _polynomial_degree(a)
    deg_b = _polynomial_degree(b)
    if deg_b is not None and (deg_a is None or deg_a > deg_b):
        raise InvalidParameterError(
            f"1F1 pole: b={b} is a non-positive integer and a={a} does not "
            "terminate the series first"
        )
    if deg_a is not None:
        return _finite_sum_1f1(a, b, z, deg_a)

    v = np.asarray(value_of(z))
    if np.all(v <= 0.0):
        return _exp(z) * _eval_1f1_nonneg(b - a, b, -z)
    if np.all(v >= 0.0):
        return _series_1f1(a, b, z)

    if isinstance(z, Jet):
        raise InvalidParameterError(
            "jet arguments to kummer_1f1 need a uniformly signed value part"
        )
    zarr = np.asarray(z, dtype=float)
    out = np.empty_like(zarr)
    neg = zarr < 0.0
    out[neg] = np.exp(zarr[neg]) * _eval_1f1_nonneg(b - a, b, -zarr[neg])
    out[~neg] = _series_1f1(a, b, zarr[~neg])
    return out


def kummer_1f1_dz(a: float, b: float, z):
    """d/dz 1F1(a; b; z) via the contiguous identity (a/b) 1F1(a+1; b+1; z)."""
    if _polynomial_degree(a) == 0:
        return 0.0 * z  # constant function
    if abs(b) < INTEGER_TOL:
        raise InvalidParameterError("1F1 derivative undefined for b = 0")
    return (a / b) * kummer_1f1(a + 1.0, b + 1.0, z)


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n by three-term recurrence."""
    if n < 0:
        raise InvalidParameterError("Hermite order must be non-negative")
    h_prev = 0.0 * x + 1.0
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def laguerre(n: int, nu: float, x):
    """Generalized Laguerre polynomial L_n^nu by three-term recurrence."""
    if n < 0:
        raise InvalidParameterError("Laguerre degree must be non-negative")
    l_prev = 0.0 * x + 1.0
    if n == 0:
        return l_prev
    l = 1.0 + nu - x
    for k in range(1, n):
        l_prev, l = l, ((2.0 * k + 1.0 + nu - x) * l - (k + nu) * l_prev) / (k + 1.0)
    return l


# Lanczos approximation, g = 7, 9 coefficients (~15 significant digits)
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class SignedLogGamma:
    """log |Gamma(x)| together with the sign of Gamma(x)."""

    log_abs: float
    sign: int

    @property
    def gamma(self) -> float:
        return self.sign * math.exp(self.log_abs)


def _lanczos_log_gamma(x: float) -> float:
    """log Gamma(x) for x >= 0.5."""
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x - 1.0 + i)
    t = x + 6.5
    return _HALF_LOG_TWO_PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def gamma_signed(x: float) -> SignedLogGamma:
    """Signed log-gamma: Lanczos for x >= 0.5, reflection with explicit sign
    tracking below. Raises at the poles (non-positive integers)."""
    if x >= 0.5:
        return SignedLogGamma(_lanczos_log_gamma(x), 1)
    r = round(x)
    if abs(x - r) < INTEGER_TOL:
        raise InvalidParameterError(f"Gamma pole at non-positive integer x = {x}")
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x). Reduce the sine
    # argument exactly: x = n + frac with n = floor(x), so that
    # |sin(pi x)| = sin(pi frac) and the sign is (-1)**n.
    n = math.floor(x)
    frac = x - n
    sin_mag = math.sin(math.pi * frac)
    log_abs = math.log(math.pi) - math.log(sin_mag) - _lanczos_log_gamma(1.0 - x)
    sign = 1 if n % 2 == 0 else -1
    return SignedLogGamma(log_abs, sign)


def gamma_value(x: float) -> float:
    """Gamma(x) as a plain float (convenience wrapper)."""
    return gamma_signed(x).gamma


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise InvalidParameterError("Pochhammer order must be non-negative")
    out = 1.0
    for k in range(n):
        out *= x + k
    return out
