"""Command-line harness: analysis, regions, classification, simulation, sweeps and figure data.

Every command writes rows (CSV with a one-line header, or a JSON array of
objects with the same keys) to stdout or ``--out``. Every row carries
``schema_version``. It also carries ``generated_at``, which is left blank
under ``--reproducible`` so that reruns are byte-identical.

Exit codes: 0 success, 2 usage error, 3 numeric failure (root bracketing).
"""

import argparse
import csv
import datetime
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .equilibrium import (
    BackoffConfig,
    attempt_rate,
    equilibrium_points,
    is_unbounded,
    offered_load,
    phase_distribution,
    throughput_of,
    undesired_point,
)
from .errors import NoStationaryDistributionError, RootBracketError
from .regions import (
    absolute_stable_region,
    classify,
    complete_stable_region,
    max_stable_throughput,
    q_lower,
    q_lower_approx,
    q_upper,
    quasi_stable_region,
    table_one,
)
from .simulator import SimConfig, run

SCHEMA_VERSION = "1"
FIGURE_SEED = 1
FIGURES = (
    "fig6", "fig7", "fig8", "fig11", "fig12", "fig13", "fig14",
    "fig15", "fig16", "fig17", "fig18", "tableI",
)
SWEEP_VARIABLES = ("q", "lambda_hat", "n", "K")
_PHASE_COLUMNS = [f"f_{i}" for i in range(9)]


class UsageError(Exception):
    pass


def parse_cutoff(text):
    """``"inf"`` (any case, also ``"infinity"``) or a positive integer."""
    t = str(text).strip().lower()
    if t in ("inf", "infinity", "unbounded"):
        return math.inf
    try:
        K = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"K must be a positive integer or 'inf', got {text!r}") from None
    if K < 1:
        raise argparse.ArgumentTypeError(f"K must be >= 1, got {K}")
    return K


def _format_k(K):
    return "inf" if is_unbounded(K) else int(K)


def _parse_values(text, variable):
    """Comma list, or ``start:stop:count`` for an evenly spaced grid."""
    conv = parse_cutoff if variable == "K" else (int if variable == "n" else float)
    text = text.strip()
    if text.count(":") == 2 and variable != "K":
        start, stop, count = text.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
        values = [int(round(v)) for v in grid] if variable == "n" else [float(v) for v in grid]
    else:
        values = [conv(v) for v in text.split(",") if v.strip()]
    if not values:
        raise UsageError("sweep grid is empty")
    return values


# -- output -------------------------------------------------------------------


def _cell(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return None
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class RowWriter:
    """Streams rows as they are produced so partial output survives a crash."""

    def __init__(self, stream, fmt, columns, reproducible):
        self.stream = stream
        self.fmt = fmt
        self.columns = ["schema_version", "generated_at"] + [c for c in columns]
        self.stamp = "" if reproducible else datetime.datetime.now(datetime.timezone.utc).isoformat()
        self.count = 0
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\r\n")
            self._csv.writerow(self.columns)
        else:
            stream.write("[")
        stream.flush()

    def write(self, row):
        full = {"schema_version": SCHEMA_VERSION, "generated_at": self.stamp}
        full.update(row)
        if self.fmt == "csv":
            self._csv.writerow([_cell(full.get(c)) for c in self.columns])
        else:
            obj = {c: _json_value(full.get(c)) for c in self.columns}
            self.stream.write(("\n" if self.count == 0 else ",\n") + json.dumps(obj))
        self.count += 1
        self.stream.flush()

    def close(self):
        if self.fmt == "json":
            self.stream.write("\n]\n" if self.count else "]\n")
        self.stream.flush()


def _emit(args, columns, rows):
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = RowWriter(out, args.format, columns, args.reproducible)
        for row in rows:
            writer.write(row)
        writer.close()
    finally:
        if args.out:
            out.close()


# -- row builders -------------------------------------------------------------

_CONFIG_COLUMNS = ["n", "lambda_hat", "lam", "q", "K"]
_ANALYZE_COLUMNS = _CONFIG_COLUMNS + [
    "equilibria_exist", "p_L", "p_S", "p_A", "rho_at_p_L", "G", "throughput_at_p_L",
] + _PHASE_COLUMNS
_REGION_COLUMNS = ["n", "lambda_hat", "K", "p_L", "p_S", "q_l", "q_l_approx", "q_u",
                   "S_L_lo", "S_L_hi", "S_L_empty", "S_A_lo", "S_A_hi", "S_A_empty", "S"]
_CLASSIFY_COLUMNS = _CONFIG_COLUMNS + [
    "p_L", "p_S", "p_A", "q_l", "q_u", "S_L_lo", "S_L_hi", "S_L_empty", "S_A_lo", "S_A_hi", "S_A_empty", "S",
    "classification", "operating_point", "analytic_throughput", "notes",
]
_SIM_COLUMNS = [
    "seed", "slots", "warmup", "measured_p", "measured_throughput", "measured_rho", "measured_G",
    "diverged", "divergence_slope", "per_state_expected_G_max", "attempt_bound", "bound_violations",
    "arrivals_total", "departures_total", "final_backlog",
]


def _config_cells(n, lambda_hat, q, K):
    lam = lambda_hat / n if n else math.nan
    return {"n": n, "lambda_hat": lambda_hat, "lam": lam, "q": q, "K": _format_k(K)}


def _regions_text(intervals):
    return ";".join(f"{r.lo!r}:{r.hi!r}" for r in intervals)


def analyze_row(n, lambda_hat, q, K):
    cfg = BackoffConfig.from_aggregate(n, lambda_hat, q, K)
    row = _config_cells(n, lambda_hat, q, K)
    eq = equilibrium_points(lambda_hat)
    row["equilibria_exist"] = eq.exists
    row["p_A"] = undesired_point(n, q, cfg.K)
    if not eq.exists:
        row.update(p_L="none", p_S="none")
        return row
    row.update(p_L=eq.p_L, p_S=eq.p_S, G=attempt_rate(eq.p_L), throughput_at_p_L=throughput_of(attempt_rate(eq.p_L)))
    try:
        row["rho_at_p_L"] = offered_load(cfg.lam, eq.p_L, q, cfg.K)
        dist = phase_distribution(eq.p_L, q, cfg.K)
        last = 8 if is_unbounded(cfg.K) else min(int(cfg.K), 8)
        for i in range(last + 1):
            row[f"f_{i}"] = dist.pmf(i)
    except NoStationaryDistributionError:
        row["rho_at_p_L"] = "none"
    return row


def region_row(n, lambda_hat, K, exact=False):
    row = {"n": n, "lambda_hat": lambda_hat, "K": _format_k(K)}
    eq = equilibrium_points(lambda_hat)
    row.update(p_L=eq.p_L, p_S=eq.p_S)
    if eq.exists and lambda_hat > 0:
        row["q_u"] = q_upper(n, lambda_hat)
        try:
            row["q_l"] = q_lower(n, lambda_hat, K)
        except ValueError:
            row["q_l"] = "none"
        row["q_l_approx"] = q_lower_approx(n, lambda_hat, K)
    S_L = absolute_stable_region(n, lambda_hat, K)
    S_A = quasi_stable_region(n, lambda_hat, K, exact)
    row.update(
        S_L_lo=S_L.lo, S_L_hi=S_L.hi, S_L_empty=S_L.empty,
        S_A_lo=S_A.lo, S_A_hi=S_A.hi, S_A_empty=S_A.empty,
        S=_regions_text(complete_stable_region(n, lambda_hat, K, exact)),
    )
    return row


def classify_row(n, lambda_hat, q, K, exact=False):
    cfg = BackoffConfig.from_aggregate(n, lambda_hat, q, K)
    rep = classify(cfg, exact)
    eq = equilibrium_points(lambda_hat)
    row = _config_cells(n, lambda_hat, q, K)
    row.update(
        p_L=eq.p_L, p_S=eq.p_S, p_A=undesired_point(n, q, cfg.K),
        S_L_lo=rep.S_L.lo, S_L_hi=rep.S_L.hi, S_L_empty=rep.S_L.empty,
        S_A_lo=rep.S_A.lo, S_A_hi=rep.S_A.hi, S_A_empty=rep.S_A.empty,
        S=_regions_text(rep.S), classification=rep.classification.value,
        operating_point=rep.operating_point, analytic_throughput=rep.predicted_throughput,
        notes="; ".join(rep.notes),
    )
    if eq.exists and lambda_hat > 0:
        row["q_u"] = q_upper(n, lambda_hat)
        try:
            row["q_l"] = q_lower(n, lambda_hat, cfg.K)
        except ValueError:
            row["q_l"] = "none"
    return row


def simulate_row(n, lambda_hat, q, K, slots, warmup, seed):
    cfg = SimConfig(BackoffConfig.from_aggregate(n, lambda_hat, q, K), total_slots=slots,
                    warmup_slots=warmup, seed=seed)
    s = run(cfg)
    row = {
        "seed": seed, "slots": slots, "warmup": warmup,
        "measured_p": s.measured_p, "measured_throughput": s.measured_throughput,
        "measured_rho": s.measured_rho, "measured_G": s.measured_G, "diverged": s.diverged,
        "divergence_slope": s.divergence_slope, "per_state_expected_G_max": s.per_state_expected_G_max,
        "attempt_bound": s.attempt_bound, "bound_violations": s.bound_violations,
        "arrivals_total": s.arrivals_total, "departures_total": s.departures_total,
        "final_backlog": s.final_backlog,
    }
    return row, s


# -- commands -----------------------------------------------------------------


def cmd_analyze(args):
    _emit(args, _ANALYZE_COLUMNS, [analyze_row(args.n, args.rate, args.q, args.K)])


def cmd_region(args):
    _emit(args, _REGION_COLUMNS, [region_row(args.n, args.rate, args.K, args.exact)])


def cmd_classify(args):
    _emit(args, _CLASSIFY_COLUMNS, [classify_row(args.n, args.rate, args.q, args.K, args.exact)])


def cmd_simulate(args):
    row = classify_row(args.n, args.rate, args.q, args.K, args.exact)
    sim, stats = simulate_row(args.n, args.rate, args.q, args.K, args.slots, args.warmup, args.seed)
    row.update(sim)
    _emit(args, _CLASSIFY_COLUMNS + _SIM_COLUMNS, [row])
    if args.stats_out:
        with open(args.stats_out, "w", encoding="utf-8") as fh:
            json.dump({k: _json_value(v) for k, v in stats.to_dict().items()}, fh, indent=2)
            fh.write("\n")


def _sweep_point(task):
    index, params, simulate, slots, warmup, seed, exact = task
    row = {"index": index}
    try:
        if params["q"] is None:
            # region-only sweep
            row.update(region_row(params["n"], params["lambda_hat"], params["K"], exact))
            row["lam"] = params["lambda_hat"] / params["n"]
        else:
            row.update(classify_row(params["n"], params["lambda_hat"], params["q"], params["K"], exact))
        if simulate:
            sim, _ = simulate_row(params["n"], params["lambda_hat"], params["q"], params["K"],
                                  slots, warmup, seed + index)
            row.update(sim)
        row["status"] = "ok"
    except (ValueError, ArithmeticError, RootBracketError) as exc:
        row.update(_config_cells(params["n"], params["lambda_hat"], params["q"], params["K"]))
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    return row


def cmd_sweep(args):
    fixed = {"n": args.n, "lambda_hat": args.rate, "K": args.K}
    missing = [k for k, v in fixed.items() if v is None and k != args.vary]
    if missing:
        raise UsageError(f"sweep needs values for {', '.join(missing)} (flag --rate sets lambda_hat)")
    if args.simulate and args.q is None and args.vary != "q":
        raise UsageError("--simulate needs --q")
    values = _parse_values(args.values, args.vary)
    base = {"n": args.n, "lambda_hat": args.rate, "q": args.q, "K": args.K}
    tasks = []
    for i, v in enumerate(values):
        params = dict(base)
        params[args.vary] = v
        tasks.append((i, params, args.simulate, args.slots, args.warmup, args.seed, args.exact))
    columns = ["index", "sweep_variable"] + _CLASSIFY_COLUMNS + (_SIM_COLUMNS if args.simulate else []) + ["status"]

    def rows():
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = pool.map(_sweep_point, tasks)
                for row in results:
                    row["sweep_variable"] = args.vary
                    yield row
        else:
            for task in tasks:
                row = _sweep_point(task)
                row["sweep_variable"] = args.vary
                yield row

    _emit(args, columns, rows())


# -- figures ------------------------------------------------------------------


def _sim_budget(args):
    return dict(slots=args.slots, warmup=args.warmup)


def _fig_rho(args, Ks, n, lh):
    p_L = equilibrium_points(lh).p_L
    for K in Ks:
        for q in np.linspace(0.01, 0.99, 99):
            try:
                rho = offered_load(lh / n, p_L, float(q), K)
            except NoStationaryDistributionError:
                rho = math.nan
            yield {"figure": args.id, "n": n, "lambda_hat": lh, "K": _format_k(K), "q": float(q),
                   "rho": rho, "source": "analytic"}


def _fig_absolute_region(args, K, ns):
    for n in ns:
        lam_max, q_star = max_stable_throughput(n, K, "absolute")
        for lh in np.linspace(0.005, math.exp(-1), 74):
            r = absolute_stable_region(n, float(lh), K)
            yield {"figure": args.id, "n": n, "K": _format_k(K), "lambda_hat": float(lh),
                   "q_l": r.lo, "q_u": r.hi, "region_empty": r.empty,
                   "lambda_hat_max": lam_max, "q_star": q_star}


def _fig_exp_regions(args, n):
    for lh in np.linspace(0.005, math.exp(-1), 74):
        lh = float(lh)
        S_L = absolute_stable_region(n, lh, math.inf)
        S_A = quasi_stable_region(n, lh, math.inf)
        yield {"figure": args.id, "n": n, "K": "inf", "lambda_hat": lh, "S_L_lo": S_L.lo,
               "S_L_hi": S_L.hi, "S_A_lo": S_A.lo, "S_A_hi": S_A.hi}


def _operating(n, lh, q, K):
    rep = classify(BackoffConfig.from_aggregate(n, lh, q, K))
    return rep


def _fig_vs_q(args, Ks, n, lh, quantity, sim_qs):
    eq = equilibrium_points(lh)
    for K in Ks:
        for q in np.linspace(0.005, 0.995, 199):
            q = float(q)
            rep = _operating(n, lh, q, K)
            row = {"figure": args.id, "n": n, "lambda_hat": lh, "K": _format_k(K), "q": q,
                   "classification": rep.classification.value, "source": "analytic"}
            if quantity == "p":
                row.update(p=rep.operating_point, p_L=eq.p_L, p_S=eq.p_S, p_A=undesired_point(n, q, K))
            else:
                row["throughput"] = rep.predicted_throughput
            yield row
        if args.no_sim:
            continue
        for q in sim_qs.get(K, ()):
            sim, _ = simulate_row(n, lh, q, K, seed=FIGURE_SEED, **_sim_budget(args))
            row = {"figure": args.id, "n": n, "lambda_hat": lh, "K": _format_k(K), "q": q,
                   "source": "simulation", "seed": FIGURE_SEED, "diverged": sim["diverged"]}
            if quantity == "p":
                row["p"] = sim["measured_p"]
            else:
                row["throughput"] = sim["measured_throughput"]
            yield row


def _interior_points(region, count):
    return [float(region.lo + (region.hi - region.lo) * f) for f in np.linspace(0.15, 0.6, count)]


def _fig_within_SL(args, Ks, n, lh, quantities):
    eq = equilibrium_points(lh)
    for K in Ks:
        S_L = absolute_stable_region(n, lh, K)
        if S_L.empty:
            continue
        for q in np.linspace(S_L.lo, S_L.hi, 40):
            q = float(q)
            row = {"figure": args.id, "n": n, "lambda_hat": lh, "K": _format_k(K), "q": q, "source": "analytic"}
            if "rho" in quantities:
                row["rho"] = offered_load(lh / n, eq.p_L, q, K)
            if "p" in quantities:
                row.update(p=eq.p_L, G=attempt_rate(eq.p_L), throughput=lh)
            yield row
        if args.no_sim:
            continue
        for q in _interior_points(S_L, 3):
            sim, _ = simulate_row(n, lh, q, K, seed=FIGURE_SEED, **_sim_budget(args))
            row = {"figure": args.id, "n": n, "lambda_hat": lh, "K": _format_k(K), "q": q,
                   "source": "simulation", "seed": FIGURE_SEED}
            if "rho" in quantities:
                row["rho"] = sim["measured_rho"]
            if "p" in quantities:
                row.update(p=sim["measured_p"], G=sim["measured_G"], throughput=sim["measured_throughput"])
            yield row


_FIG_DEFAULTS = {
    "fig6": (10, 0.1), "fig7": (None, None), "fig8": (None, None), "fig11": (50, 0.3), "fig12": (50, 0.3),
    "fig13": (50, None), "fig14": (50, 0.3), "fig15": (10, 0.1), "fig16": (10, 0.1), "fig17": (50, 0.3),
    "fig18": (50, 0.3), "tableI": (50, 0.3),
}
_SAT_SIM_QS = {1: (0.01, 0.02, 0.05, 0.2), math.inf: (0.2, 0.45, 0.6, 0.75, 0.9)}


def figure_rows(args):
    """Column list and row iterator for one figure or table."""
    n_def, lh_def = _FIG_DEFAULTS[args.id]
    n = args.n if args.n is not None else n_def
    lh = args.rate if args.rate is not None else lh_def
    fid = args.id
    if fid == "fig6":
        return ["figure", "n", "lambda_hat", "K", "q", "rho", "source"], _fig_rho(args, (1, 2, 4, 8, math.inf), n, lh)
    if fid in ("fig7", "fig8"):
        ns = (n,) if n is not None else (10, 20, 50)
        K = 1 if fid == "fig7" else math.inf
        cols = ["figure", "n", "K", "lambda_hat", "q_l", "q_u", "region_empty", "lambda_hat_max", "q_star"]
        return cols, _fig_absolute_region(args, K, ns)
    if fid == "fig13":
        return ["figure", "n", "K", "lambda_hat", "S_L_lo", "S_L_hi", "S_A_lo", "S_A_hi"], _fig_exp_regions(args, n)
    if fid in ("fig11", "fig12", "fig14", "fig17", "fig18"):
        Ks = {"fig11": (1,), "fig12": (1,), "fig14": (math.inf,)}.get(fid, (1, math.inf))
        quantity = "p" if fid in ("fig11", "fig17") else "throughput"
        sims = _SAT_SIM_QS if fid in ("fig17", "fig18") else {}
        ycols = ["p", "p_L", "p_S", "p_A"] if quantity == "p" else ["throughput"]
        cols = ["figure", "n", "lambda_hat", "K", "q"] + ycols + ["classification", "source", "seed", "diverged"]
        return cols, _fig_vs_q(args, Ks, n, lh, quantity, sims)
    if fid == "fig15":
        cols = ["figure", "n", "lambda_hat", "K", "q", "rho", "source", "seed"]
        return cols, _fig_within_SL(args, (1, 2, 4, math.inf), n, lh, ("rho",))
    if fid == "fig16":
        cols = ["figure", "n", "lambda_hat", "K", "q", "p", "G", "throughput", "source", "seed"]
        return cols, _fig_within_SL(args, (1, math.inf), n, lh, ("p",))
    if fid == "tableI":
        cols = ["figure", "n", "lambda_hat", "scheme", "K", "region", "q_lo", "q_hi", "empty",
                "lambda_hat_max", "q_star"]

        def rows():
            for r in table_one(n, lh, args.exact):
                r = dict(r, K=_format_k(r["K"]), figure=fid, n=n, lambda_hat=lh)
                yield r

        return cols, rows()
    raise UsageError(f"unknown figure {fid!r}")


def cmd_figure(args):
    if args.id not in FIGURES:
        raise UsageError(f"unknown figure {args.id!r}; choose from {', '.join(FIGURES)}")
    cols, rows = figure_rows(args)
    _emit(args, cols, rows)


# -- parser -------------------------------------------------------------------


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _add_output(p):
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--reproducible", action="store_true", help="blank the generated_at column")


def _add_network(p, need_q=True, defaults=None):
    d = defaults or {}
    p.add_argument("--n", type=_positive_int, required="n" not in d, default=d.get("n"))
    p.add_argument("--rate", type=float, required="rate" not in d, default=d.get("rate"),
                   help="aggregate input rate lambda_hat (packets/slot)")
    if need_q:
        p.add_argument("--q", type=float, required="q" not in d, default=d.get("q"))
    p.add_argument("--K", type=parse_cutoff, required="K" not in d, default=d.get("K"),
                   help="cutoff phase: positive integer or 'inf'")
    p.add_argument("--exact", action="store_true",
                   help="solve the K=inf quasi-stable region exactly instead of its large-n form")


def _add_sim(p):
    p.add_argument("--slots", type=_positive_int, default=10**6)
    p.add_argument("--warmup", type=int, default=2 * 10**5)
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(prog="aloha-backoff", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="equilibrium summary for one configuration")
    _add_network(p)
    _add_output(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("region", help="absolute, quasi and complete stable regions of q")
    _add_network(p, need_q=False)
    _add_output(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("classify", help="stability class of one configuration")
    _add_network(p)
    _add_output(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="seeded slot-level simulation next to the analytic prediction")
    _add_network(p)
    _add_sim(p)
    _add_output(p)
    p.add_argument("--stats-out", help="also write the full run statistics as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="one row per grid point of a single swept variable")
    p.add_argument("--vary", choices=SWEEP_VARIABLES, required=True)
    p.add_argument("--values", required=True, help="comma list or start:stop:count")
    _add_network(p, defaults={"n": None, "rate": None, "q": None, "K": None})
    _add_sim(p)
    p.add_argument("--simulate", action="store_true", help="add simulated columns (seed = --seed + row index)")
    p.add_argument("--jobs", type=_positive_int, default=1)
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="data behind a figure, or the region/throughput summary table (tableI)")
    p.add_argument("id", help=", ".join(FIGURES))
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--rate", type=float)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--no-sim", action="store_true", help="analytic curves only")
    _add_sim(p)
    _add_output(p)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except RootBracketError as exc:
        print(f"aloha-backoff: numeric failure: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError) as exc:
        print(f"aloha-backoff: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`)
        sys.stderr.close()
        return 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
