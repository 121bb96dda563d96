"""Closed-form covariance and correlation kernels for chain graphs.

Every kernel is evaluated through the factors ``f(k) = 1 - exp(-2 k rate)``,
which all lie in (0, 1].  With ``d = |j - i|``, ``lo = min(i, j)``,
``hi = max(i, j)`` and ``base = exp(-rate)``:

* open chain on nodes 1..n::

      covariance(n, i, j)  = base**d * f(n+1-hi) * f(lo)
                             / (sqrt(1 - 4 tau^2) * f(n+1))
      correlation(n, i, j) = base**d * sqrt( f(n+1-hi) f(lo)
                                             / (f(n+1-lo) f(hi)) )
      limit(i, j)          = base**d * sqrt( f(lo) / f(hi) )

* centered chain on nodes -n..n: the correlation equals the open-chain
  correlation of the 2n+1 node path at the shifted indices ``n+1+i``,
  ``n+1+j``; its large-n limit is ``base**d``.

A ratio ``sinh(a)/sinh(b)`` form of the same kernels overflows once the
arguments exceed ~710, whereas every ``f`` factor here is bounded, so these
expressions are valid for any chain length.  Ratios of ``f`` factors are
clamped at 1 so that the chain of bounds

    0 < correlation(n) <= limit <= base**d

holds entry-wise in floating point, with equality only where the factors are
rounding-saturated.  The ``*_relative_error`` functions evaluate the gaps in
log space and therefore keep their exact (strictly negative) sign far beyond
the point where the plain values collide at double precision.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DecayParams, check_tau, decay_params, sqrt_one_minus_4tau2

__all__ = [
    "AsymptoticCoefficients",
    "open_chain_covariance",
    "open_chain_correlation",
    "open_chain_correlation_limit",
    "open_chain_relative_error",
    "open_chain_limit_envelope_error",
    "open_chain_correlation_matrix",
    "centered_chain_correlation",
    "centered_chain_correlation_limit",
    "centered_chain_relative_error",
    "centered_chain_correlation_matrix",
    "rel_error_coefficient_open",
    "rel_error_coefficient_centered",
    "asymptotic_coefficients_open",
    "asymptotic_coefficients_centered",
]

_LN2 = math.log(2.0)

# sinh/exp arguments beyond this overflow float64 (exp(710) is inf)
_EXP_GUARD = 700.0


def _as_index(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    return int(value)


def _check_open(n, i, j) -> tuple[int, int, int]:
    n = _as_index(n, "n")
    i = _as_index(i, "i")
    j = _as_index(j, "j")
    if n < 1:
        raise DomainError(f"chain length must be >= 1, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"indices must lie in 1..{n}, got ({i}, {j})")
    return n, min(i, j), max(i, j)


def _check_positive_pair(i, j) -> tuple[int, int]:
    i = _as_index(i, "i")
    j = _as_index(j, "j")
    if i < 1 or j < 1:
        raise DomainError(f"indices must be >= 1, got ({i}, {j})")
    return min(i, j), max(i, j)


def _check_centered(n, i, j) -> tuple[int, int, int]:
    n = _as_index(n, "n")
    i = _as_index(i, "i")
    j = _as_index(j, "j")
    if n < 1:
        raise DomainError(f"half-width must be >= 1, got {n}")
    if not (-n <= i <= n and -n <= j <= n):
        raise DomainError(f"indices must lie in -{n}..{n}, got ({i}, {j})")
    return n, min(i, j), max(i, j)


def _f(k: int, rate: float) -> float:
    """1 - exp(-2 k rate), with full relative precision for small arguments."""
    return -math.expm1(-2.0 * k * rate)


def _log_f(k: int, rate: float) -> float:
    """log(1 - exp(-2 k rate)); split so both tails keep full precision."""
    x = 2.0 * k * rate
    if x >= _LN2:
        return math.log1p(-math.exp(-x))
    return math.log(-math.expm1(-x))


def _sqrt_ratio(k_small: int, k_large: int, rate: float) -> float:
    """sqrt(f(k_small) / f(k_large)) for k_small <= k_large, clamped to <= 1.

    The true ratio is <= 1; independent rounding of the two factors can push
    the quotient one ulp above 1 when they agree to rounding level, so clamp.
    """
    r = _f(k_small, rate) / _f(k_large, rate)
    return math.sqrt(min(r, 1.0))


def _open_correlation(n: int, lo: int, hi: int, p: DecayParams) -> float:
    if lo == hi:
        return 1.0
    limit = p.base ** (hi - lo) * _sqrt_ratio(lo, hi, p.rate)
    return limit * _sqrt_ratio(n + 1 - hi, n + 1 - lo, p.rate)


def open_chain_covariance(n, i, j, tau: float) -> float:
    """Covariance between nodes i and j of the open chain on 1..n.

    Entry of the inverse precision matrix, in the overflow-safe product form
    shown in the module docstring.
    """
    n, lo, hi = _check_open(n, i, j)
    p = decay_params(tau)
    num = _f(n + 1 - hi, p.rate) * _f(lo, p.rate)
    den = sqrt_one_minus_4tau2(p.tau) * _f(n + 1, p.rate)
    return p.base ** (hi - lo) * num / den


def open_chain_correlation(n, i, j, tau: float) -> float:
    """Correlation between nodes i and j of the open chain on 1..n.

    Indices are symmetrised internally, so the result is exactly symmetric in
    (i, j).  The diagonal returns exactly 1 without evaluating the kernel.
    """
    n, lo, hi = _check_open(n, i, j)
    return _open_correlation(n, lo, hi, decay_params(tau))


def open_chain_correlation_limit(i, j, tau: float) -> float:
    """Infinite-length limit of the open-chain correlation.

    Depends on both indices, not only on their distance: the boundary at node
    0 never recedes.  Strictly below base**|j-i| for i != j.
    """
    lo, hi = _check_positive_pair(i, j)
    if lo == hi:
        return 1.0
    p = decay_params(tau)
    return p.base ** (hi - lo) * _sqrt_ratio(lo, hi, p.rate)


def open_chain_relative_error(n, i, j, tau: float) -> float:
    """correlation(n, i, j) / limit(i, j) - 1, evaluated in log space.

    Strictly negative for i != j; stays exactly signed even where the two
    values are equal at double precision (the log of each factor retains the
    exp(-2 k rate) tail down to the underflow threshold near 2 k rate ~ 745,
    beyond which the gap collapses to zero).
    """
    n, lo, hi = _check_open(n, i, j)
    if lo == hi:
        return 0.0
    p = decay_params(tau)
    gap = _log_f(n + 1 - hi, p.rate) - _log_f(n + 1 - lo, p.rate)
    return math.expm1(0.5 * gap)


def open_chain_limit_envelope_error(i, j, tau: float) -> float:
    """limit(i, j) * exp(|j-i| rate) - 1: gap of the limit below its envelope.

    The envelope base**|j-i| bounds the limit strictly from above for i != j;
    this returns the (strictly negative) relative gap, log-space evaluated.
    """
    lo, hi = _check_positive_pair(i, j)
    if lo == hi:
        return 0.0
    p = decay_params(tau)
    return math.expm1(0.5 * (_log_f(lo, p.rate) - _log_f(hi, p.rate)))


def centered_chain_correlation(n, i, j, tau: float) -> float:
    """Correlation between nodes i and j of the centered chain on -n..n.

    Exactly the open-chain correlation of the 2n+1 node path evaluated at the
    shifted indices n+1+i, n+1+j (the identical code path, so the identity is
    bit-exact).
    """
    n, lo, hi = _check_centered(n, i, j)
    return open_chain_correlation(2 * n + 1, n + 1 + lo, n + 1 + hi, tau)


def centered_chain_correlation_limit(i, j, tau: float) -> float:
    """Infinite-width limit of the centered-chain correlation: base**|j-i|."""
    i = _as_index(i, "i")
    j = _as_index(j, "j")
    p = decay_params(tau)
    return p.base ** abs(j - i)


def centered_chain_relative_error(n, i, j, tau: float) -> float:
    """correlation(n, i, j) * exp(|j-i| rate) - 1, evaluated in log space.

    Strictly negative for i != j.  The two non-positive log differences are
    formed pairwise before adding, so the sign is exact in floating point.
    """
    n, lo, hi = _check_centered(n, i, j)
    if lo == hi:
        return 0.0
    p = decay_params(tau)
    shift_lo, shift_hi = n + 1 + lo, n + 1 + hi
    m = 2 * n + 2
    gap = (_log_f(m - shift_hi, p.rate) - _log_f(m - shift_lo, p.rate)) + (
        _log_f(shift_lo, p.rate) - _log_f(shift_hi, p.rate)
    )
    return math.expm1(0.5 * gap)


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Leading behaviour of the finite-size error at a fixed index pair.

    ``abs_order`` is the decay rate 2 (n+1) rate of the error magnitude;
    ``rel_coeff`` multiplies exp(-2 (n+1) rate) in the relative error and is
    <= 0 whenever the indices differ.
    """

    abs_order: float
    rel_coeff: float


def rel_error_coefficient_centered(i, j, tau: float) -> float:
    """Leading coefficient c of the centered-chain relative error.

    correlation(n) * exp(|j-i| rate) - 1 = c * exp(-2 (n+1) rate) + o(...),
    with c = -(sinh(2 max(i,j) rate) - sinh(2 min(i,j) rate)) taken over the
    signed indices.  Zero when i = j.
    """
    i = _as_index(i, "i")
    j = _as_index(j, "j")
    if i == j:
        return 0.0
    p = decay_params(tau)
    if 2.0 * max(abs(i), abs(j)) * p.rate > _EXP_GUARD:
        raise OverflowError(
            f"sinh argument 2*{max(abs(i), abs(j))}*{p.rate:.6g} exceeds {_EXP_GUARD}"
        )
    lo, hi = min(i, j), max(i, j)
    return -(math.sinh(2.0 * hi * p.rate) - math.sinh(2.0 * lo * p.rate))


def rel_error_coefficient_open(i, j, tau: float) -> float:
    """Leading coefficient of correlation(n)/limit - 1 for the open chain.

    Equals -(exp(2 max(i,j) rate) - exp(2 min(i,j) rate)) / 2; zero on the
    diagonal.
    """
    lo, hi = _check_positive_pair(i, j)
    if lo == hi:
        return 0.0
    p = decay_params(tau)
    if 2.0 * hi * p.rate > _EXP_GUARD:
        raise OverflowError(f"exp argument 2*{hi}*{p.rate:.6g} exceeds {_EXP_GUARD}")
    return -0.5 * (math.exp(2.0 * hi * p.rate) - math.exp(2.0 * lo * p.rate))


def asymptotic_coefficients_centered(i, j, tau: float) -> AsymptoticCoefficients:
    """Error-law bundle for a centered-chain pair: per-n rate and coefficient."""
    p = decay_params(tau)
    return AsymptoticCoefficients(
        abs_order=2.0 * p.rate, rel_coeff=rel_error_coefficient_centered(i, j, tau)
    )


def asymptotic_coefficients_open(i, j, tau: float) -> AsymptoticCoefficients:
    """Error-law bundle for an open-chain pair: per-n rate and coefficient."""
    p = decay_params(tau)
    return AsymptoticCoefficients(
        abs_order=2.0 * p.rate, rel_coeff=rel_error_coefficient_open(i, j, tau)
    )


def open_chain_correlation_matrix(n, tau: float) -> np.ndarray:
    """Dense correlation matrix of the open chain on 1..n.

    tau = 0 yields the identity; otherwise entries come from the scalar
    kernel, so they match :func:`open_chain_correlation` bit for bit.
    """
    n = _as_index(n, "n")
    if n < 1:
        raise DomainError(f"chain length must be >= 1, got {n}")
    tau = check_tau(tau)
    if tau == 0.0:
        return np.eye(n)
    p = decay_params(tau)
    out = np.ones((n, n))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            v = _open_correlation(n, a, b, p)
            out[a - 1, b - 1] = v
            out[b - 1, a - 1] = v
    return out


def centered_chain_correlation_matrix(n, tau: float) -> np.ndarray:
    """Dense correlation matrix of the centered chain on -n..n.

    Rows and columns are ordered by node index; entry (a, b) corresponds to
    nodes a-n and b-n.  Identical to the open-chain matrix of length 2n+1.
    """
    n = _as_index(n, "n")
    if n < 1:
        raise DomainError(f"half-width must be >= 1, got {n}")
    return open_chain_correlation_matrix(2 * n + 1, tau)
