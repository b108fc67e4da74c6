"""Slot-level simulation of an n-queue, single-channel buffered Aloha network.

Every slot runs three steps in a fixed order:

1. each busy node decides whether its HOL packet transmits (phase ``i`` with
   probability ``q**i``; a fresh packet in phase 0 always transmits);
2. one transmitter means a success: the HOL packet departs and the next one
   (if any) starts in phase 0. Two or more transmitters collide and each
   colliding HOL moves up one phase, capped at ``K``;
3. each node receives a Bernoulli(lam) arrival, which can contend from the
   next slot on.

Random numbers come from SplitMix64 used as a counter-based generator. Node
``i`` gets the key ``mix(seed + GAMMA*(i+1))``. Its ``c``-th uniform is
``mix(key + GAMMA*(c+1))``, with ``c = 2*slot`` for the transmit decision and
``c = 2*slot + 1`` for the arrival. A draw depends only on ``(seed, node,
slot, kind)``, so runs are reproducible in any language.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from numba import njit

from .equilibrium import BackoffConfig, is_unbounded
from .errors import DivergedRunError

__all__ = [
    "SimConfig",
    "SimStats",
    "Trajectory",
    "node_keys",
    "uniform_draw",
    "run",
    "trajectory_probe",
    "empirical_phase_distribution",
]

_MASK64 = (1 << 64) - 1
_GAMMA_INT = 0x9E3779B97F4A7C15

_U = np.uint64
_GAMMA = _U(_GAMMA_INT)
_M1 = _U(0xBF58476D1CE4E5B9)
_M2 = _U(0x94D049BB133111EB)
_S11, _S27, _S30, _S31 = _U(11), _U(27), _U(30), _U(31)
_ONE, _TWO = _U(1), _U(2)
_QPOW_LEN = 1100


def _mix_int(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def node_keys(seed, n):
    """Per-node stream keys derived from ``seed``."""
    return np.array([_mix_int((seed + _GAMMA_INT * (i + 1)) & _MASK64) for i in range(n)], dtype=np.uint64)


def uniform_draw(key, counter):
    """Reference (pure-int) version of the uniform the kernel draws; in (0, 1)."""
    z = _mix_int((int(key) + _GAMMA_INT * (counter + 1)) & _MASK64)
    return ((z >> 11) + 0.5) * 2.0**-53


@njit(cache=True)
def _uniform(key, counter):
    z = key + _GAMMA * (counter + _ONE)
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    z = z ^ (z >> _S31)
    return (float(z >> _S11) + 0.5) * 1.1102230246251565e-16


@njit(cache=True)
def _kernel(n, K, q, lam, total, warmup, keys, queue, phase, hist_cap, traj_window, div_window, stride):
    # K < 0 encodes an unbounded cutoff.
    log_q = math.log(q)
    qpow = np.empty(_QPOW_LEN)
    for i in range(_QPOW_LEN):
        qpow[i] = q**i
    bound = max(n * lam, n * q)

    hist = np.zeros(hist_cap + 2, dtype=np.int64)
    n_windows = total // traj_window if traj_window > 0 else 0
    win_succ = np.zeros(n_windows, dtype=np.int64)
    win_att = np.zeros(n_windows, dtype=np.int64)
    n_samples = total // stride
    backlog_series = np.zeros(n_samples, dtype=np.int64)
    tx_list = np.empty(n, dtype=np.int64)

    backlog = 0
    for i in range(n):
        backlog += queue[i]
    initial_backlog = backlog

    arrivals = 0
    departures = 0
    successes = 0
    attempts = 0
    busy_sum = 0
    g_max = 0.0
    violations = 0
    div_start = total - div_window
    sx = 0.0
    sy = 0.0
    sxy = 0.0
    sxx = 0.0

    for t in range(total):
        measuring = t >= warmup
        tu = _U(t)
        n_tx = 0
        n_backlogged = 0
        g_state = 0.0
        for i in range(n):
            if queue[i] == 0:
                continue
            ph = phase[i]
            if measuring:
                busy_sum += 1
                hist[min(ph, hist_cap + 1)] += 1
            if ph == 0:
                tx_list[n_tx] = i
                n_tx += 1
                continue
            n_backlogged += 1
            if ph < _QPOW_LEN:
                thr = qpow[ph]
                g_state += thr
                transmit = _uniform(keys[i], _TWO * tu) < thr
            else:
                g_state += math.exp(ph * log_q)
                transmit = math.log(_uniform(keys[i], _TWO * tu)) < ph * log_q
            if transmit:
                tx_list[n_tx] = i
                n_tx += 1

        g_state += (n - n_backlogged) * lam
        if g_state > g_max:
            g_max = g_state
        if g_state > bound + 1e-12:
            violations += 1

        if n_tx == 1:
            w = tx_list[0]
            queue[w] -= 1
            phase[w] = 0
            departures += 1
            backlog -= 1
        elif n_tx > 1:
            for j in range(n_tx):
                w = tx_list[j]
                if K < 0 or phase[w] < K:
                    phase[w] += 1

        for i in range(n):
            if _uniform(keys[i], _TWO * tu + _ONE) < lam:
                queue[i] += 1
                arrivals += 1
                backlog += 1

        if measuring:
            attempts += n_tx
            if n_tx == 1:
                successes += 1
        if n_windows > 0:
            wi = t // traj_window
            if wi < n_windows:
                win_att[wi] += n_tx
                if n_tx == 1:
                    win_succ[wi] += 1
        if (t + 1) % stride == 0 and (t + 1) // stride - 1 < n_samples:
            backlog_series[(t + 1) // stride - 1] = backlog
        if t >= div_start:
            x = float(t - div_start)
            y = float(backlog)
            sx += x
            sy += y
            sxy += x * y
            sxx += x * x

    m = float(div_window)
    denom = m * sxx - sx * sx
    slope = (m * sxy - sx * sy) / denom if denom > 0 else 0.0
    return (
        successes,
        attempts,
        busy_sum,
        hist,
        arrivals,
        departures,
        initial_backlog,
        backlog,
        g_max,
        violations,
        slope,
        backlog_series,
        win_succ,
        win_att,
    )


@dataclass(frozen=True)
class SimConfig:
    """A simulation run: network, budget, seed and bookkeeping options.

    ``k_cap_for_unbounded`` only sets how many phase buckets the histogram has
    when ``K`` is unbounded; the dynamics track the exact phase.
    """

    backoff: BackoffConfig
    total_slots: int = 10**6
    warmup_slots: int = 2 * 10**5
    seed: int = 0
    k_cap_for_unbounded: int = 32
    divergence_window: int = 10**5

    def __post_init__(self):
        if self.total_slots < 1:
            raise ValueError("total_slots must be positive")
        if not 0 <= self.warmup_slots < self.total_slots:
            raise ValueError("warmup_slots must satisfy 0 <= warmup < total")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.k_cap_for_unbounded < 1 or self.divergence_window < 2:
            raise ValueError("k_cap_for_unbounded >= 1 and divergence_window >= 2 required")

    @property
    def hist_cap(self):
        K = self.backoff.K
        return self.k_cap_for_unbounded if is_unbounded(K) else int(K)

    @property
    def measured_slots(self):
        return self.total_slots - self.warmup_slots

    @property
    def effective_divergence_window(self):
        return min(self.divergence_window, self.measured_slots)


@dataclass(frozen=True)
class SimStats:
    """Empirical counterparts of the analytic quantities from one seeded run.

    ``phase_histogram`` has buckets ``0..hist_cap`` and one overflow bucket.
    ``backlog_series`` holds the total queue length every ``backlog_stride``
    slots. ``per_state_expected_G_max`` is the largest per-slot value of
    ``(n - n_b) lam + sum_i n_i q**i`` and ``attempt_bound`` is
    ``max(lambda_hat, n q)``, which it may never exceed.
    """

    n: int
    K: float
    q: float
    lam: float
    seed: int
    total_slots: int
    warmup_slots: int
    measured_throughput: float
    measured_p: float
    measured_rho: float
    measured_G: float
    successes: int
    attempts: int
    arrivals_total: int
    departures_total: int
    initial_backlog: int
    final_backlog: int
    hist_cap: int
    phase_histogram: tuple
    backlog_stride: int
    backlog_series: tuple
    per_state_expected_G_max: float
    attempt_bound: float
    bound_violations: int
    divergence_slope: float
    divergence_threshold: float
    diverged: bool

    def to_dict(self):
        d = asdict(self)
        d["K"] = "inf" if is_unbounded(self.K) else int(self.K)
        d["phase_histogram"] = list(self.phase_histogram)
        d["backlog_series"] = list(self.backlog_series)
        return d


@dataclass(frozen=True)
class Trajectory:
    """Windowed success-probability estimates over a whole run (warm-up included)."""

    window: int
    p: np.ndarray = field(repr=False)
    successes: np.ndarray = field(repr=False)
    attempts: np.ndarray = field(repr=False)
    stats: SimStats = field(repr=False)

    @property
    def slot_centres(self):
        return (np.arange(len(self.p)) + 0.5) * self.window


def _node_array(value, n, name):
    arr = np.full(n, value, dtype=np.int64) if np.isscalar(value) else np.asarray(value, dtype=np.int64).copy()
    if arr.shape != (n,) or (arr < 0).any():
        raise ValueError(f"{name} must be a non-negative int or a length-{n} sequence")
    return arr


def _execute(config, initial_backlog=0, initial_phase=0, traj_window=0):
    bc = config.backoff
    n, K = bc.n, bc.K
    queue = _node_array(initial_backlog, n, "initial_backlog")
    phase = _node_array(initial_phase, n, "initial_phase")
    if not is_unbounded(K) and (phase > K).any():
        raise ValueError("initial phase exceeds the cutoff K")
    phase[queue == 0] = 0
    stride = max(1, config.total_slots // 1000)
    out = _kernel(
        n,
        -1 if is_unbounded(K) else int(K),
        float(bc.q),
        float(bc.lam),
        int(config.total_slots),
        int(config.warmup_slots),
        node_keys(config.seed, n),
        queue,
        phase,
        config.hist_cap,
        int(traj_window),
        config.effective_divergence_window,
        stride,
    )
    (successes, attempts, busy_sum, hist, arrivals, departures, init_b, final_b,
     g_max, violations, slope, series, win_succ, win_att) = out

    slots = config.measured_slots
    busy = int(hist.sum())
    threshold = bc.lambda_hat / 10.0
    stats = SimStats(
        n=n,
        K=K,
        q=bc.q,
        lam=bc.lam,
        seed=config.seed,
        total_slots=config.total_slots,
        warmup_slots=config.warmup_slots,
        measured_throughput=successes / slots,
        measured_p=successes / attempts if attempts else math.nan,
        measured_rho=busy_sum / (n * slots),
        measured_G=attempts / slots,
        successes=int(successes),
        attempts=int(attempts),
        arrivals_total=int(arrivals),
        departures_total=int(departures),
        initial_backlog=int(init_b),
        final_backlog=int(final_b),
        hist_cap=config.hist_cap,
        phase_histogram=tuple((hist / busy).tolist()) if busy else tuple([0.0] * len(hist)),
        backlog_stride=stride,
        backlog_series=tuple(int(b) for b in series),
        per_state_expected_G_max=float(g_max),
        attempt_bound=max(bc.lambda_hat, n * bc.q),
        bound_violations=int(violations),
        divergence_slope=float(slope),
        divergence_threshold=threshold,
        diverged=bool(bc.lam > 0 and slope > threshold),
    )
    return stats, win_succ, win_att


def run(config):
    """Run one simulation and return its :class:`SimStats`."""
    stats, _, _ = _execute(config)
    return stats


def trajectory_probe(config, initial_backlog=0, initial_phase=0, window=2000):
    """Windowed empirical ``p`` over time, optionally from a forced initial state.

    ``initial_backlog`` and ``initial_phase`` are ints applied to every node or
    per-node sequences; e.g. a large backlog on every node starts the network
    saturated.
    """
    if window < 1 or window > config.total_slots:
        raise ValueError("window must lie in [1, total_slots]")
    stats, succ, att = _execute(config, initial_backlog, initial_phase, window)
    with np.errstate(invalid="ignore", divide="ignore"):
        p = np.where(att > 0, succ / np.maximum(att, 1), np.nan)
    return Trajectory(window=window, p=p, successes=succ, attempts=att, stats=stats)


def empirical_phase_distribution(stats):
    """Normalised phase occupancy among busy nodes (overflow bucket last).

    Raises
    ------
    DivergedRunError
        If the run was flagged as divergent.
    """
    if stats.diverged:
        raise DivergedRunError("phase occupancy of a divergent run is not a stationary law")
    return np.array(stats.phase_histogram)
