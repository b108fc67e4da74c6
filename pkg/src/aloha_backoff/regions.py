"""Stable regions of the retransmission factor ``q`` and configuration classification.

Three regions are computed for a network of ``n`` nodes at aggregate rate
``lambda_hat``:

* ``S_L`` (absolute-stable) -- ``[q_l, q_u]``; the network converges to the
  desired point ``p_L`` and is both throughput- and delay-stable.
* ``S_A`` (quasi-stable) -- the ``q`` for which the undesired point ``p_A``
  still lies in ``[p_S, p_L]``, so the saturated network keeps up with the
  input.
* ``S`` -- the union of the two.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _roots
from .equilibrium import (
    INV_E,
    BackoffConfig,
    _inverse_service_rate,
    check_cutoff,
    equilibrium_points,
    is_unbounded,
    offered_load,
    saturated_throughput,
    undesired_point,
)
from .errors import NoEquilibriumError
from .lambertw import lambert_w

__all__ = [
    "Q_MIN",
    "Q_MAX",
    "Interval",
    "Stability",
    "StabilityReport",
    "q_upper",
    "q_lower",
    "q_lower_approx",
    "max_throughput_approx",
    "absolute_stable_region",
    "quasi_stable_region",
    "complete_stable_region",
    "max_stable_throughput",
    "classify",
    "table_one",
]

Q_MIN = math.nextafter(0.0, 1.0)
Q_MAX = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` of retransmission factors, or the empty set."""

    lo: float = math.nan
    hi: float = math.nan
    empty: bool = False
    note: str = ""

    @classmethod
    def nothing(cls, note=""):
        return cls(empty=True, note=note)

    def __contains__(self, q):
        return not self.empty and self.lo <= q <= self.hi

    def __bool__(self):
        return not self.empty

    def covers(self, other):
        """True if ``other`` is a subset of this interval."""
        if other.empty:
            return True
        return not self.empty and self.lo <= other.lo and other.hi <= self.hi

    @property
    def width(self):
        return 0.0 if self.empty else self.hi - self.lo


class Stability(str, enum.Enum):
    ABSOLUTE_STABLE = "absolute-stable"
    QUASI_STABLE = "quasi-stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityReport:
    classification: Stability
    operating_point: float
    predicted_throughput: float
    S_L: Interval
    S_A: Interval
    S: list
    notes: tuple = field(default_factory=tuple)


def _equilibrium_or_raise(lambda_hat):
    eq = equilibrium_points(lambda_hat)
    if not eq.exists:
        raise NoEquilibriumError(f"no equilibrium points for lambda_hat={lambda_hat!r} > 1/e")
    return eq


def q_upper(n, lambda_hat, clamp=True):
    """Upper bound ``q_u = -W_{-1}(-lambda_hat) / n`` of the absolute-stable region.

    With ``clamp`` (default) values at or above 1 are pulled back to the largest
    float below 1. Raises :class:`NoEquilibriumError` above ``1/e``.
    """
    eq = _equilibrium_or_raise(lambda_hat)
    raw = math.inf if eq.degenerate else -lambert_w(-lambda_hat, -1) / n
    if clamp and raw >= 1.0:
        return Q_MAX
    return raw


def _offered_load_in_q(lam, p, K):
    # rho(q) for q in (0, 1]; q = 1 is a valid end point here.
    def rho(q):
        return lam * _inverse_service_rate(p, q, K)

    return rho


def q_lower(n, lambda_hat, K):
    """Lower bound ``q_l``: the ``q`` at which the offered load at ``p_L`` equals 1.

    Closed forms for ``K = 1`` and unbounded ``K``; bisection on the
    (decreasing) load otherwise.
    """
    K = check_cutoff(K)
    eq = _equilibrium_or_raise(lambda_hat)
    p_L = eq.p_L
    if lambda_hat == 0:
        return 0.0
    if K == 1:
        return lambda_hat * (1 - p_L) / (p_L * (n - lambda_hat))
    if is_unbounded(K):
        return (1 - p_L) / (1 - lambda_hat / n)
    lam = lambda_hat / n
    rho = _offered_load_in_q(lam, p_L, K)
    lo, hi = (1 - p_L) * 1e-6, 1.0
    if rho(hi) > 1.0:
        raise NoEquilibriumError(f"offered load exceeds 1 for every q (n={n}, lambda_hat={lambda_hat})")
    if rho(lo) <= 1.0:
        return lo
    return _roots.bisect(lambda q: rho(q) - 1.0, lo, hi, xtol=1e-16)


def q_lower_approx(n, lambda_hat, K):
    """Large-n approximation ``(1 - p_L) / (n p_L / lambda_hat)**(1/K)`` of ``q_l``."""
    K = check_cutoff(K)
    p_L = _equilibrium_or_raise(lambda_hat).p_L
    if is_unbounded(K):
        return 1 - p_L
    return (1 - p_L) / (n * p_L / lambda_hat) ** (1.0 / K)


def max_throughput_approx(n, K, closed_form=True):
    """Large-n estimate of the absolute-stable maximum throughput.

    ``closed_form=True`` gives ``ln m / m`` with ``m = n**(1 - 1/K)``.
    Otherwise the rate at which :func:`q_lower_approx` meets the exact
    :func:`q_upper` is returned; that keeps the ``lambda_hat**(1/K)`` factor
    the closed form drops and tracks the exact maximum far more closely.
    """
    K = check_cutoff(K)
    if closed_form:
        m = n if is_unbounded(K) else n ** (1.0 - 1.0 / K)
        return math.log(m) / m

    def gap(lh):
        return q_lower_approx(n, lh, K) - q_upper(n, lh, clamp=False)

    hi = INV_E - 1e-12
    if gap(hi) <= 0:
        return INV_E
    return _roots.bisect(gap, 1e-12, hi)


def absolute_stable_region(n, lambda_hat, K):
    """``S_L = [q_l, q_u]``, or empty when the bounds cross or do not exist."""
    K = check_cutoff(K)
    eq = equilibrium_points(lambda_hat)
    if not eq.exists:
        return Interval.nothing("no equilibrium points: lambda_hat > 1/e")
    if eq.degenerate:
        return Interval(Q_MIN, Q_MAX, note="no traffic")
    try:
        lo = q_lower(n, lambda_hat, K)
    except NoEquilibriumError as exc:
        return Interval.nothing(str(exc))
    raw_hi = q_upper(n, lambda_hat, clamp=False)
    hi = min(raw_hi, Q_MAX)
    if lo > hi:
        return Interval.nothing(f"q_l={lo:.6g} exceeds q_u={hi:.6g}")
    return Interval(lo, hi, note="q_u clamped below 1" if raw_hi >= 1.0 else "")


def _q_grid():
    return np.unique(np.concatenate([np.geomspace(1e-6, 0.05, 64), np.linspace(0.05, 1 - 1e-6, 129)]))


def _sandwich_region(n, K, p_lo, p_hi):
    """``{q : p_lo <= p_A(q) <= p_hi}`` by scan over q and bisection of the end points."""
    grid = _q_grid()
    p_A = np.array([undesired_point(n, q, K) for q in grid])
    inside = (p_A >= p_lo) & (p_A <= p_hi)
    if not inside.any():
        return Interval.nothing("p_A never lies between p_S and p_L")
    idx = np.flatnonzero(inside)
    first, last = idx[0], idx[-1]
    note = "" if last - first + 1 == len(idx) else "membership not contiguous; hull reported"

    def crossing(i_out, i_in):
        target = p_hi if p_A[i_out] > p_hi else p_lo
        a, b = sorted((grid[i_out], grid[i_in]))
        return _roots.bisect(lambda q: undesired_point(n, q, K) - target, a, b)

    lo = crossing(first - 1, first) if first > 0 else grid[0]
    hi = crossing(last + 1, last) if last < len(grid) - 1 else grid[-1]
    return Interval(float(lo), float(hi), note=note)


def quasi_stable_region(n, lambda_hat, K, exact=False):
    """``S_A = {q : p_S <= p_A(q) <= p_L}``.

    For an unbounded cutoff the default is the large-n form
    ``[1 - p_L, 1 - p_S]``; ``exact=True`` solves ``p_A(q) = p_L`` and
    ``p_A(q) = p_S`` instead. Geometric retransmission (``K = 1``) has no
    quasi-stable region. Finite ``K > 1`` is always solved numerically.
    """
    K = check_cutoff(K)
    eq = equilibrium_points(lambda_hat)
    if not eq.exists:
        return Interval.nothing("no equilibrium points: lambda_hat > 1/e")
    if K == 1:
        return Interval.nothing("geometric retransmission has no quasi-stable region")
    if is_unbounded(K) and not exact:
        lo, hi = max(1 - eq.p_L, Q_MIN), min(1 - eq.p_S, Q_MAX)
        return Interval(lo, hi, note="large-n form")
    return _sandwich_region(n, K, eq.p_S, eq.p_L)


def complete_stable_region(n, lambda_hat, K, exact=False):
    """``S_L`` united with ``S_A``, as a sorted list of disjoint intervals."""
    parts = [
        r
        for r in (absolute_stable_region(n, lambda_hat, K), quasi_stable_region(n, lambda_hat, K, exact))
        if not r.empty
    ]
    parts.sort(key=lambda r: r.lo)
    merged = []
    for r in parts:
        if merged and r.lo <= merged[-1].hi:
            last = merged.pop()
            r = Interval(last.lo, max(last.hi, r.hi))
        merged.append(r)
    return merged


_REGION_KINDS = {
    "absolute": lambda n, lh, K, exact: [r for r in [absolute_stable_region(n, lh, K)] if r],
    "quasi": lambda n, lh, K, exact: [r for r in [quasi_stable_region(n, lh, K, exact)] if r],
    "complete": complete_stable_region,
}


def max_stable_throughput(n, K, region_kind="absolute", exact=False, tol=1e-10):
    """Largest ``lambda_hat`` in ``(0, 1/e]`` for which the region is non-empty.

    Bisection on ``lambda_hat`` with emptiness as the predicate (the regions
    shrink as the rate grows). Returns ``(lambda_hat_max, q_star)`` where
    ``q_star`` is the upper end point of the surviving region at the maximum;
    this is where the bounds meet when the region collapses to a point.
    """
    try:
        region = _REGION_KINDS[region_kind]
    except KeyError:
        raise ValueError(f"unknown region kind {region_kind!r}") from None
    K = check_cutoff(K)

    def surviving(lh):
        return region(n, lh, K, exact)

    top = surviving(INV_E)
    if top:
        return INV_E, top[-1].hi
    lo, hi = 1e-9, INV_E
    best = surviving(lo)
    if not best:
        return 0.0, math.nan
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        r = surviving(mid)
        if r:
            lo, best = mid, r
        else:
            hi = mid
    return lo, best[-1].hi


def classify(config, exact=False):
    """Classify a configuration as absolute-stable, quasi-stable or unstable."""
    if not isinstance(config, BackoffConfig):
        raise TypeError("classify expects a BackoffConfig")
    n, K, q, lh = config.n, config.K, config.q, config.lambda_hat
    S_L = absolute_stable_region(n, lh, K)
    S_A = quasi_stable_region(n, lh, K, exact)
    S = complete_stable_region(n, lh, K, exact)
    notes = []
    if q in S_L:
        p_L = equilibrium_points(lh).p_L
        if q == S_L.lo or offered_load(config.lam, p_L, q, K) >= 1.0 - 1e-12:
            notes.append("q at the lower bound: offered load 1, throughput-stable only")
        if S_L.note:
            notes.append(S_L.note)
        return StabilityReport(Stability.ABSOLUTE_STABLE, p_L, lh, S_L, S_A, S, tuple(notes))
    p_A = undesired_point(n, q, K)
    if q in S_A:
        notes.append("operates at p_A: throughput-stable, not delay-stable")
        if S_A.note:
            notes.append(S_A.note)
        return StabilityReport(Stability.QUASI_STABLE, p_A, lh, S_L, S_A, S, tuple(notes))
    out = saturated_throughput(p_A)
    if out >= lh:
        notes.append("p_A sustains the input only marginally; throughput capped at lambda_hat")
    return StabilityReport(Stability.UNSTABLE, p_A, min(out, lh), S_L, S_A, S, tuple(notes))


def table_one(n, lambda_hat, exact=False):
    """Region and maximum-throughput cells for K = 1 and unbounded K."""
    rows = []
    for label, K in (("geometric", 1), ("exponential", math.inf)):
        for kind, fn in (
            ("absolute", lambda: [absolute_stable_region(n, lambda_hat, K)]),
            ("quasi", lambda: [quasi_stable_region(n, lambda_hat, K, exact)]),
            ("complete", lambda: complete_stable_region(n, lambda_hat, K, exact)),
        ):
            intervals = [r for r in fn() if r]
            lam_max, q_star = max_stable_throughput(n, K, kind, exact)
            rows.append(
                {
                    "scheme": label,
                    "K": K,
                    "region": kind,
                    "q_lo": intervals[0].lo if intervals else math.nan,
                    "q_hi": intervals[-1].hi if intervals else math.nan,
                    "empty": not intervals,
                    "lambda_hat_max": lam_max,
                    "q_star": q_star,
                }
            )
    return rows
