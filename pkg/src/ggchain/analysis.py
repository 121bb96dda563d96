"""Numerical experiments on the decay laws: sweeps, rate fits, gap tables.

A sweep evaluates one index pair across a range of sizes and records the
exact value, its limit, and three error columns.  Error columns are derived
from the log-space relative-error kernels, so they keep their exact sign and
magnitude well past the point where ``exact`` and ``limit`` become equal
doubles; once the underlying exponentials underflow entirely (around
``2 (n+1) rate > 745``) the columns collapse to zero.

Rate fits regress ``log |abs_err|`` on ``n`` inside a fixed usable window:
errors below 1e-14 are double-precision noise, errors above 1e-2 are outside
the asymptotic regime.  No weighting; the window already equalises
magnitudes.
"""

import math
from dataclasses import dataclass, field

from .chains import (
    centered_chain_correlation,
    centered_chain_correlation_limit,
    centered_chain_relative_error,
    open_chain_correlation,
    open_chain_correlation_limit,
    open_chain_relative_error,
)
from .circulant import limit_integral, riemann_sum
from .errors import DomainError, InsufficientDataError
from .model import GffParams, GraphKind, check_tau, decay_params, gff_decay_rate, tau_from_gff

__all__ = [
    "ConvergenceRecord",
    "ConvergenceSweep",
    "RateFit",
    "GffRow",
    "ERROR_FLOOR",
    "ERROR_CEILING",
    "sweep_centered",
    "sweep_open",
    "fit_abs_error_rate",
    "riemann_gap",
    "gff_table",
]

ERROR_FLOOR = 1e-14
ERROR_CEILING = 1e-2


@dataclass(frozen=True)
class ConvergenceRecord:
    """One size of a sweep.

    ``abs_err = exact - limit`` and ``rel_err = exact / limit - 1`` (both
    strictly negative off the diagonal); ``scaled_rel`` divides the relative
    error by ``exp(-2 (n+1) rate)`` and converges to the leading error
    coefficient of the pair.
    """

    n: int
    exact: float
    limit: float
    abs_err: float
    rel_err: float
    scaled_rel: float


@dataclass(frozen=True)
class ConvergenceSweep:
    """Sweep records plus the context needed to interpret them."""

    kind: GraphKind
    i: int
    j: int
    tau: float
    rate: float
    records: tuple[ConvergenceRecord, ...] = field(repr=False)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def __getitem__(self, item):
        return self.records[item]


@dataclass(frozen=True)
class RateFit:
    """Least-squares slope of log |abs_err| against n."""

    slope: float
    intercept: float
    r_squared: float
    expected_slope: float
    n_points: int

    @property
    def relative_slope_error(self) -> float:
        return abs(self.slope - self.expected_slope) / abs(self.expected_slope)


def _scaled(rel: float, n: int, rate: float) -> float:
    if rel == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(rel)) + 2.0 * (n + 1) * rate), rel)


def _check_window(i: int, j: int, n_min, n_max, lower: int):
    if isinstance(n_min, bool) or not isinstance(n_min, int):
        raise DomainError(f"n_min must be an integer, got {n_min!r}")
    if isinstance(n_max, bool) or not isinstance(n_max, int):
        raise DomainError(f"n_max must be an integer, got {n_max!r}")
    if n_min < lower:
        raise DomainError(f"n_min must be >= {lower} for pair ({i}, {j}), got {n_min}")
    if n_max < n_min:
        raise DomainError(f"n_max must be >= n_min, got {n_max} < {n_min}")


def sweep_centered(i: int, j: int, tau: float, n_min: int, n_max: int) -> ConvergenceSweep:
    """Centered-chain records for half-widths n_min..n_max at one index pair."""
    p = decay_params(tau)
    _check_window(i, j, n_min, n_max, max(abs(i), abs(j)) + 1)
    records = []
    limit = centered_chain_correlation_limit(i, j, tau)
    for n in range(n_min, n_max + 1):
        exact = centered_chain_correlation(n, i, j, tau)
        rel = centered_chain_relative_error(n, i, j, tau)
        records.append(
            ConvergenceRecord(
                n=n,
                exact=exact,
                limit=limit,
                abs_err=limit * rel,
                rel_err=rel,
                scaled_rel=_scaled(rel, n, p.rate),
            )
        )
    return ConvergenceSweep(
        kind=GraphKind.CENTERED_CHAIN, i=i, j=j, tau=p.tau, rate=p.rate, records=tuple(records)
    )


def sweep_open(i: int, j: int, tau: float, n_min: int, n_max: int) -> ConvergenceSweep:
    """Open-chain records for lengths n_min..n_max at one index pair."""
    p = decay_params(tau)
    if i < 1 or j < 1:
        raise DomainError(f"indices must be >= 1, got ({i}, {j})")
    _check_window(i, j, n_min, n_max, max(i, j) + 1)
    records = []
    limit = open_chain_correlation_limit(i, j, tau)
    for n in range(n_min, n_max + 1):
        exact = open_chain_correlation(n, i, j, tau)
        rel = open_chain_relative_error(n, i, j, tau)
        records.append(
            ConvergenceRecord(
                n=n,
                exact=exact,
                limit=limit,
                abs_err=limit * rel,
                rel_err=rel,
                scaled_rel=_scaled(rel, n, p.rate),
            )
        )
    return ConvergenceSweep(
        kind=GraphKind.OPEN_CHAIN, i=i, j=j, tau=p.tau, rate=p.rate, records=tuple(records)
    )


def fit_abs_error_rate(sweep: ConvergenceSweep) -> RateFit:
    """Fit log |abs_err| against n inside the usable error window.

    Requires at least five usable points.  Rejects cycle data outright: the
    cycle model has a limit but no established error law to fit against.
    """
    if sweep.kind is GraphKind.CYCLE:
        raise DomainError("no asymptotic error expansion exists for the cycle graph")
    pts = [
        (r.n, math.log(abs(r.abs_err)))
        for r in sweep.records
        if ERROR_FLOOR <= abs(r.abs_err) <= ERROR_CEILING
    ]
    if len(pts) < 5:
        raise InsufficientDataError(
            f"{len(pts)} usable points inside [{ERROR_FLOOR:g}, {ERROR_CEILING:g}], need 5"
        )
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    count = len(pts)
    x_mean = sum(xs) / count
    y_mean = sum(ys) / count
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    ss_tot = sum((y - y_mean) ** 2 for y in ys)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RateFit(
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        expected_slope=-2.0 * sweep.rate,
        n_points=count,
    )


def riemann_gap(k: int, tau: float, n_list) -> list[tuple[int, float]]:
    """Gaps between the lag-k Riemann sum and its limiting integral.

    One (n, gap) pair per requested grid size; the gap magnitude shrinks as
    the grid refines and is identically zero at tau = 0, lag 0.
    """
    tau = check_tau(tau)
    target = limit_integral(k, tau)
    return [(n, riemann_sum(n, k, tau) - target) for n in n_list]


@dataclass(frozen=True)
class GffRow:
    """One mass of the free-field consistency table."""

    mass: float
    tau: float
    rate: float
    gff_rate: float
    discrepancy: float


def gff_table(masses) -> list[GffRow]:
    """Check the chain decay rate against the free-field rate at each mass.

    Both rates are closed forms of the mass; the discrepancy column must sit
    at rounding level (<= 1e-12) for the identification to hold.
    """
    rows = []
    for mass in masses:
        tau = tau_from_gff(GffParams(beta=1.0, mass=float(mass)))
        rate = decay_params(tau).rate
        gff_rate = gff_decay_rate(mass)
        rows.append(
            GffRow(
                mass=float(mass),
                tau=tau,
                rate=rate,
                gff_rate=gff_rate,
                discrepancy=abs(rate - gff_rate),
            )
        )
    return rows
