"""Spectral inversion of the cycle model and its large-n limit.

The cycle precision matrix is circulant, so the Fourier basis diagonalises it
with eigenvalues ``mu_k = 1 - 2 tau cos(2 pi k / n)``, all positive for
``tau < 1/2``.  Its inverse is circulant as well; ``n`` times the inverse has
first row

    q_k = sum_j cos(2 pi j k / n) / mu_j,

the real part of the complex exponential sum (the sine part vanishes by the
j <-> n-j symmetry of the eigenvalues and is exposed separately so that the
cancellation can be checked numerically).  Covariances are ``q_k / n`` and
correlations ``q_k / q_0``.

Scaling the sum by the grid step turns it into a left Riemann sum of
``1 / (1 - 2 tau cos x)`` weighted by ``exp(-i k x)`` over one period; the
limiting integral evaluates by residues to ``2 pi base**k / sqrt(1 - 4 tau^2)``
with ``base`` the per-step decay factor, so correlations tend to ``base**k``.

Implementation notes.  Angles are reduced modulo n in integer arithmetic and
looked up in tables built on half the grid and mirrored, which makes the
tables exactly symmetric (cosine) and antisymmetric (sine); eigenvalues and
correlation vectors then inherit their symmetries bit-exactly.  Sums run
through numpy's pairwise reduction.  Each lag is summed independently, so a
caller may split lags across workers without changing any result.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import check_tau, decay_base, sqrt_one_minus_4tau2

__all__ = [
    "CycleCorrelation",
    "precision_eigenvalues",
    "cycle_inverse_sum",
    "cycle_inverse_sum_imag",
    "cycle_correlation_sequence",
    "riemann_sum",
    "limit_integral",
    "cycle_correlation_limit",
]

_TWO_PI = 2.0 * math.pi


def _check_size(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"cycle size must be an integer, got {n!r}")
    n = int(n)
    if n < 3:
        raise DomainError(f"cycle size must be >= 3, got {n}")
    return n


def _check_lag(n: int, k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise DomainError(f"lag must be an integer, got {k!r}")
    k = int(k)
    if not 0 <= k < n:
        raise DomainError(f"lag must lie in 0..{n - 1}, got {k}")
    return k


def _angle_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """cos and sin of 2 pi r / n for r = 0..n-1, mirrored from the half grid.

    Mirroring forces c[n-r] == c[r] and s[n-r] == -s[r] bit-exactly (and
    s[n/2] == 0 for even n), which downstream symmetry arguments rely on.
    """
    half = n // 2
    r = np.arange(half + 1)
    cos_half = np.cos(_TWO_PI * r / n)
    sin_half = np.sin(_TWO_PI * r / n)
    if n % 2 == 0:
        sin_half[half] = 0.0
    c = np.empty(n)
    s = np.empty(n)
    c[: half + 1] = cos_half
    s[: half + 1] = sin_half
    tail = np.arange(half + 1, n)
    c[half + 1 :] = cos_half[n - tail]
    s[half + 1 :] = -sin_half[n - tail]
    return c, s


def precision_eigenvalues(n, tau: float) -> np.ndarray:
    """Eigenvalues 1 - 2 tau cos(2 pi k / n) of the cycle precision matrix.

    Entry 0 is 1 - 2 tau, entries k and n-k coincide bit-exactly, and for even
    n entry n/2 is 1 + 2 tau.  All are positive on the admissible tau range.
    """
    n = _check_size(n)
    tau = check_tau(tau)
    c, _ = _angle_tables(n)
    return 1.0 - 2.0 * tau * c


def cycle_inverse_sum(n, k, tau: float) -> float:
    """Cosine-weighted sum of reciprocal eigenvalues at lag k.

    Equals n times the covariance between cycle nodes k steps apart.  Products
    j * k are reduced modulo n in integer arithmetic before the table lookup,
    so no large trigonometric argument is ever formed.
    """
    n = _check_size(n)
    k = _check_lag(n, k)
    tau = check_tau(tau)
    c, _ = _angle_tables(n)
    eig = 1.0 - 2.0 * tau * c
    idx = (np.arange(n, dtype=np.int64) * k) % n
    return float(np.sum(c[idx] / eig))


def cycle_inverse_sum_imag(n, k, tau: float) -> float:
    """Sine-weighted companion of :func:`cycle_inverse_sum`.

    Analytically zero for every lag; returned unreduced so the cancellation
    that justifies the cosine-only implementation can be measured.
    """
    n = _check_size(n)
    k = _check_lag(n, k)
    tau = check_tau(tau)
    c, s = _angle_tables(n)
    eig = 1.0 - 2.0 * tau * c
    idx = (np.arange(n, dtype=np.int64) * k) % n
    return float(np.sum(s[idx] / eig))


@dataclass(frozen=True, eq=False)
class CycleCorrelation:
    """Full lag-indexed description of the cycle model of size n.

    ``inverse_sums`` holds q_k (n times the covariances), ``covariances``
    q_k / n and ``correlations`` q_k / q_0.  Lags k and n-k coincide
    bit-exactly; correlations start at exactly 1 and stay in (0, 1) for
    nonzero lag when tau > 0.
    """

    n: int
    tau: float
    inverse_sums: np.ndarray
    covariances: np.ndarray
    correlations: np.ndarray


def cycle_correlation_sequence(n, tau: float) -> CycleCorrelation:
    """Covariance and correlation vectors of the cycle model at every lag.

    Lags up to n//2 are summed directly; the upper half is mirrored, which is
    exact by the lag symmetry of the sums.  Work is O(n^2) overall but chunked
    so that intermediate index tables stay small.
    """
    n = _check_size(n)
    tau = check_tau(tau)
    c, _ = _angle_tables(n)
    weights = 1.0 / (1.0 - 2.0 * tau * c)
    half = n // 2
    q = np.empty(n)
    j = np.arange(n, dtype=np.int64)
    chunk = max(1, (1 << 22) // n)
    for start in range(0, half + 1, chunk):
        ks = np.arange(start, min(start + chunk, half + 1), dtype=np.int64)
        idx = (ks[:, None] * j[None, :]) % n
        q[start : start + ks.size] = (c[idx] * weights).sum(axis=1)
    tail = np.arange(half + 1, n)
    q[half + 1 :] = q[n - tail]
    return CycleCorrelation(
        n=n,
        tau=tau,
        inverse_sums=q,
        covariances=q / n,
        correlations=q / q[0],
    )


def riemann_sum(n, k, tau: float) -> float:
    """Left Riemann sum of the lag-k spectral integrand on the n-point grid.

    Equals 2 pi times the lag-k covariance; computed as 2 pi * (q_k / n) so
    that tau = 0 gives exactly 2 pi at lag 0 for every n.  Converges to
    :func:`limit_integral` as the grid refines.
    """
    return _TWO_PI * (cycle_inverse_sum(n, k, tau) / n)


def limit_integral(k, tau: float) -> float:
    """Integral of exp(-i k x) / (1 - 2 tau cos x) over one period.

    Closed form by residues: 2 pi base**k / sqrt(1 - 4 tau^2).  The tau = 0
    limit is returned rather than rejected: 2 pi at lag 0, zero otherwise.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise DomainError(f"lag must be an integer, got {k!r}")
    k = int(k)
    if k < 0:
        raise DomainError(f"lag must be >= 0, got {k}")
    tau = check_tau(tau)
    return _TWO_PI * (decay_base(tau) ** k / sqrt_one_minus_4tau2(tau))


def cycle_correlation_limit(k, tau: float) -> float:
    """Large-n limit of the lag-k cycle correlation: base**k."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise DomainError(f"lag must be an integer, got {k!r}")
    k = int(k)
    if k < 0:
        raise DomainError(f"lag must be >= 0, got {k}")
    tau = check_tau(tau, positive=True)
    return decay_base(tau) ** k
