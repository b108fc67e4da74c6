"""Steady-state analysis of buffered slotted Aloha with K-exponential backoff.

A head-of-line (HOL) packet in phase ``i`` transmits with probability
``q**i``; a collision moves it to phase ``i + 1`` (capped at ``K``). Everything
here is a pure function of ``(p, q, K)`` or of the network parameters
``(n, K, q, lambda)``.

``K`` is an int, or :data:`UNBOUNDED` (``math.inf``) for plain exponential
backoff.
"""

import math
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _roots
from .errors import (
    NoEquilibriumError,
    NoStationaryDistributionError,
    SaturationOnset,
    UnderflowClampWarning,
)
from .lambertw import lambert_w

__all__ = [
    "UNBOUNDED",
    "INV_E",
    "is_unbounded",
    "check_cutoff",
    "BackoffConfig",
    "PhaseDistribution",
    "EquilibriumPoints",
    "phase_distribution",
    "offered_load",
    "equilibrium_points",
    "desired_point_series",
    "success_probability_finite_n",
    "attempt_rate",
    "throughput_of",
    "iterate_unsaturated",
    "saturation_gain",
    "iterate_saturated",
    "undesired_point",
    "saturated_throughput",
]

UNBOUNDED = math.inf
INV_E = math.exp(-1.0)
_BRANCH_TOL = 1e-12


def is_unbounded(K):
    return K == UNBOUNDED


def check_cutoff(K):
    """Validate a cutoff phase and return it as ``int`` or :data:`UNBOUNDED`."""
    if is_unbounded(K):
        return UNBOUNDED
    if isinstance(K, float) and K.is_integer():
        K = int(K)
    if not isinstance(K, (int, np.integer)) or isinstance(K, bool) or K < 1:
        raise ValueError(f"cutoff phase K must be a positive integer or inf, got {K!r}")
    return int(K)


def _check_q(q):
    if not 0.0 < q < 1.0:
        raise ValueError(f"retransmission factor q must lie in (0, 1), got {q!r}")


@dataclass(frozen=True)
class BackoffConfig:
    """One network: ``n`` nodes, cutoff ``K``, factor ``q``, per-node rate ``lam``."""

    n: int
    K: float
    q: float
    lam: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "K", check_cutoff(self.K))
        _check_q(self.q)
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"per-node rate must lie in [0, 1], got {self.lam!r}")

    @classmethod
    def from_aggregate(cls, n, lambda_hat, q, K):
        if not n >= 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        return cls(n=n, K=K, q=q, lam=lambda_hat / n)

    @property
    def lambda_hat(self):
        return self.n * self.lam


@dataclass(frozen=True)
class PhaseDistribution:
    """Limiting distribution ``f_0, f_1, ...`` of the HOL phase chain.

    For finite ``K`` the full vector is in ``probabilities``. For an unbounded
    cutoff the law is geometric, ``f_i = f0 * ratio**i``, and ``probabilities``
    is ``None``; use :meth:`pmf` or :meth:`bucketed`.
    """

    p: float
    q: float
    K: float
    f0: float
    ratio: float
    probabilities: tuple = None

    @property
    def unbounded(self):
        return is_unbounded(self.K)

    def pmf(self, i):
        if i < 0:
            return 0.0
        if self.unbounded:
            return self.f0 * self.ratio**i
        return self.probabilities[i] if i <= self.K else 0.0

    def bucketed(self, cap):
        """Masses of phases ``0..cap`` followed by the mass above ``cap``."""
        if not self.unbounded and cap >= self.K:
            return np.array(self.probabilities + (0.0,) * (cap - self.K + 1))
        head = np.array([self.pmf(i) for i in range(cap + 1)])
        return np.append(head, max(0.0, 1.0 - head.sum()))


def _geometric_sum(x, K):
    """``sum_{i<K} x**i`` without the 0/0 at ``x == 1``."""
    if abs(1.0 - x) < 1e-8:
        return K + 0.5 * K * (K - 1) * (x - 1.0)
    with np.errstate(over="ignore"):
        return float((1.0 - np.float64(x) ** K) / (1.0 - x))


def _inverse_service_rate(p, q, K):
    """``1 / f0``: mean number of slots an HOL packet spends per departure."""
    x = (1.0 - p) / q
    if is_unbounded(K):
        if x >= 1.0:
            raise NoStationaryDistributionError(
                f"unbounded cutoff needs p + q > 1, got p={p!r}, q={q!r}"
            )
        return 1.0 / (1.0 - x)
    with np.errstate(over="ignore"):
        return _geometric_sum(x, K) + float(np.float64(x) ** K) / p


def phase_distribution(p, q, K):
    """Stationary law of the HOL phase for success probability ``p``.

    Raises
    ------
    NoStationaryDistributionError
        For an unbounded cutoff when ``p + q <= 1``.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"success probability must lie in (0, 1], got {p!r}")
    _check_q(q)
    K = check_cutoff(K)
    x = (1.0 - p) / q
    if is_unbounded(K):
        f0 = 1.0 / _inverse_service_rate(p, q, K)
        return PhaseDistribution(p=p, q=q, K=K, f0=f0, ratio=x)
    # Normalise relative weights; scaling by x**-K keeps x > 1 from overflowing.
    i = np.arange(K + 1, dtype=float)
    if x <= 1.0:
        w = x**i
        w[K] /= p
    else:
        w = x ** (i - K)
        w[K] = 1.0 / p
    f = w / w.sum()
    return PhaseDistribution(p=p, q=q, K=K, f0=float(f[0]), ratio=x, probabilities=tuple(f.tolist()))


def offered_load(lam, p, q, K):
    """Per-node utilisation ``rho = lam / f0``.

    Values above 1 mean the queue is overloaded; they are returned, not raised.
    """
    K = check_cutoff(K)
    if lam == 0:
        return 0.0
    if K == 1:
        return lam * (1 - p + p * q) / (p * q)
    if is_unbounded(K):
        if p + q <= 1:
            raise NoStationaryDistributionError(
                f"unbounded cutoff needs p + q > 1, got p={p!r}, q={q!r}"
            )
        return lam * q / (p + q - 1)
    return lam * _inverse_service_rate(p, q, K)


@dataclass(frozen=True)
class EquilibriumPoints:
    """Roots of ``p = exp(-lambda_hat / p)``.

    ``p_L`` is the desired stable point, ``p_S`` the unstable equilibrium.
    ``exists`` is false above ``1/e`` (both are NaN then). ``degenerate`` marks
    ``lambda_hat == 0``, where ``p_L = 1`` and ``p_S`` is reported as 0.
    """

    lambda_hat: float
    exists: bool
    p_L: float
    p_S: float
    degenerate: bool = False


def equilibrium_points(lambda_hat):
    if lambda_hat < 0 or math.isnan(lambda_hat):
        raise ValueError(f"aggregate rate must be >= 0, got {lambda_hat!r}")
    if lambda_hat == 0:
        return EquilibriumPoints(0.0, True, 1.0, 0.0, degenerate=True)
    if lambda_hat > INV_E + _BRANCH_TOL:
        return EquilibriumPoints(lambda_hat, False, math.nan, math.nan)
    p_L = math.exp(lambert_w(-lambda_hat, 0))
    p_S = math.exp(lambert_w(-lambda_hat, -1))
    return EquilibriumPoints(lambda_hat, True, p_L, p_S)


@lru_cache(maxsize=None)
def _desired_point_coefficients(terms):
    # p_L = 1 / sum_k (k+1)**k s**k / (k+1)!, inverted term by term
    a = [Fraction((k + 1) ** k, math.factorial(k + 1)) for k in range(terms)]
    b = [Fraction(1)]
    for k in range(1, terms):
        b.append(-sum((a[j] * b[k - j] for j in range(1, k + 1)), Fraction(0)))
    return tuple(b)


def desired_point_series(lambda_hat, terms=5):
    """Power series of ``p_L`` in ``lambda_hat``, truncated to ``terms`` terms.

    The coefficients are exact: ``1, -1, -1/2, -2/3, -9/8, ...``.
    """
    return sum(float(c) * lambda_hat**k for k, c in enumerate(_desired_point_coefficients(terms)))


def success_probability_finite_n(lam, n):
    """Largest root of ``p = (1 - lam/p)**(n-1)`` on ``(lam, 1]``.

    Raises
    ------
    NoEquilibriumError
        When the scan finds no root on that interval.
    """
    if n < 2:
        raise ValueError(f"need at least two nodes, got n={n!r}")
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"per-node rate must lie in [0, 1), got {lam!r}")
    if lam == 0:
        return 1.0

    def f(p):
        return p - (1.0 - lam / p) ** (n - 1)

    grid = lam + (1.0 - lam) * np.linspace(0.0, 1.0, _roots.SCAN_POINTS + 1)[1:]
    roots, _ = _roots.scan_roots(f, grid)
    if not roots:
        raise NoEquilibriumError(f"no root of p = (1 - lam/p)^(n-1) for lam={lam!r}, n={n!r}")
    return roots[-1]


def attempt_rate(p):
    """Steady-state attempts per slot, ``G = -ln p``."""
    if not p > 0:
        raise ValueError(f"success probability must be positive, got {p!r}")
    return -math.log(p)


def throughput_of(G):
    if G < 0:
        raise ValueError(f"attempt rate must be >= 0, got {G!r}")
    return G * math.exp(-G)


def iterate_unsaturated(p_t, config, mode="asymptotic"):
    """One step of the unsaturated success-probability trajectory.

    ``mode="finite_n"`` uses ``(1 - lam/p_t)**(n-1)``; ``"asymptotic"`` uses
    ``exp(-lambda_hat / p_t)``.
    """
    if not 0.0 < p_t <= 1.0:
        raise ValueError(f"p_t must lie in (0, 1], got {p_t!r}")
    if mode == "asymptotic":
        return math.exp(-config.lambda_hat / p_t)
    if mode == "finite_n":
        if p_t <= config.lam:
            raise SaturationOnset(f"p_t={p_t!r} <= lam={config.lam!r}")
        return (1.0 - config.lam / p_t) ** (config.n - 1)
    raise ValueError(f"unknown mode {mode!r}")


def saturation_gain(p, q, K):
    """``g(p) = p / f0(p)``, the saturated-network gain; accepts arrays.

    Uses ``g = p * sum_{i<K} x**i + x**K`` with ``x = (1-p)/q``, which stays
    finite at ``x == 1``. For an unbounded cutoff ``g = pq / (p + q - 1)``
    when ``p + q > 1`` and ``inf`` otherwise (the finite-K form diverges there).
    """
    p = np.asarray(p, dtype=float)
    x = (1.0 - p) / q
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if is_unbounded(K):
            g = np.where(x < 1.0, p / (1.0 - x), np.inf)
        else:
            near = np.abs(1.0 - x) < 1e-8
            geo = np.where(near, K + 0.5 * K * (K - 1) * (x - 1.0), (1.0 - x**K) / (1.0 - np.where(near, 0.0, x)))
            g = p * geo + x**K
    return g if g.ndim else float(g)


def iterate_saturated(p_t, n, q, K):
    """One step ``p_{t+1} = exp(-n / g(p_t))`` of the saturated trajectory.

    An underflow is clamped to the smallest positive normal float and reported
    with :class:`UnderflowClampWarning`.
    """
    if not 0.0 < p_t < 1.0:
        raise ValueError(f"p_t must lie in (0, 1), got {p_t!r}")
    g = saturation_gain(p_t, q, check_cutoff(K))
    if not g > 0:
        raise ValueError(f"g(p_t) must be positive, got {g!r}")
    value = math.exp(-n / g)
    if value < sys.float_info.min:
        warnings.warn(f"exp(-n/g) underflowed at p_t={p_t!r}; clamped", UnderflowClampWarning)
        value = sys.float_info.min
    return value


@lru_cache(maxsize=65536)
def _undesired_point(n, q, K):
    if is_unbounded(K):
        # root lies in (1 - q, 1): -ln p * g(p) falls from +inf to 0 there
        grid = (1.0 - q) + q * np.geomspace(1e-15, 1.0, _roots.SCAN_POINTS)

        def f(p):
            return -np.log(p) * saturation_gain(p, q, K) - n

        # the residual is steep just above 1 - q, so bisect down to adjacent floats
        return float(_roots.unique_root(f, grid, xtol=0.0, what="undesired point"))

    # In u = -ln p the map u * g(exp(-u)) is increasing; g runs from 1 to q**-K,
    # so the root sits in [n q**K, n].
    lo = max(n * q**K * 0.5, 1e-300)
    hi = 2.0 * n
    grid = np.geomspace(lo, hi, _roots.SCAN_POINTS)

    def h(u):
        return u * saturation_gain(np.exp(-u), q, K) - n

    u = _roots.unique_root(h, grid, xtol=0.0, what="undesired point")
    return math.exp(-float(u))


def undesired_point(n, q, K):
    """Undesired stable point ``p_A``: root of ``p = exp(-n / g(p))`` in (0, 1).

    Raises
    ------
    RootBracketError
        If the sign scan does not bracket exactly one root; the exception
        carries the scanned sign pattern.
    """
    _check_q(q)
    if n < 1:
        raise ValueError(f"n must be positive, got {n!r}")
    return _undesired_point(int(n), float(q), check_cutoff(K))


def saturated_throughput(p_A):
    """Network throughput ``-p_A ln p_A`` at the undesired stable point.

    ``p_A == 0`` (an underflowed root) gives the limit 0.
    """
    if not 0.0 <= p_A <= 1.0:
        raise ValueError(f"p_A must lie in [0, 1], got {p_A!r}")
    if p_A == 0.0:
        return 0.0
    return -p_A * math.log(p_A)
