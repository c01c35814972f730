"""Command-line entry point: every experiment as a reproducible data file.

    smallgaps gap-constants --d-max 5
    smallgaps verify-identities
    smallgaps als --Q 100 --X 60 --m-max 10
    smallgaps sums --X 100000 --alpha 0 1 --beta 0 1 --scaled
    smallgaps zeros --q 1 --t-max 30
    smallgaps gaps --q-max 50 --mode local
    smallgaps compare-m --Q 40 --X 40 --mu 0.4

Data go to --out (stdout by default); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .als import (
    A_slope,
    A_sum,
    B_sum,
    ComparisonReport,
    als_moebius_corollary,
    delta_diagonal_main,
    g_N_weight,
)
from .arith import UNIT_WEIGHT
from .characters import character_group, lemma1_sweep, lemma2_sweep
from .special import default_weight, gap_constant_table, mu_asymptotic
from .zeros import (
    exact_M,
    exact_M_alpha,
    gap_statistics,
    primitive_count_sum,
    scan_characters,
)

D_MAX_CEILING = 10**6
X_SUMS_CEILING = 10**6
Q_ZERO_CEILING = 1000


# ----------------------------------------------------------------------------
# Output


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)


def fmt(x) -> str:
    """12 significant digits, '.' decimal, no locale."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        if z.imag == 0.0 or abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
            return fmt(z.real)
        return f"{z.real:.12g}{z.imag:+.12g}j"
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def jsonable(x):
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)):
            return jsonable(z.real)
        return {"re": jsonable(z.real), "im": jsonable(z.imag)}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return float(f"{x:.12g}")
    return x


def render(result, config: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        if isinstance(result, Table):
            body = {"columns": result.columns, "rows": [dict(zip(result.columns, r)) for r in result.rows]}
        else:
            body = dict(result)
        doc = {"config": config, **body}
        return json.dumps(jsonable(doc), indent=2, sort_keys=False, allow_nan=False) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(jsonable(config), sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(result, Table):
        writer.writerow(result.columns)
        for r in result.rows:
            writer.writerow([fmt(v) for v in r])
    else:
        writer.writerow(["key", "value"])
        for k, v in _flatten(result):
            writer.writerow([k, fmt(v)])
    return buf.getvalue()


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


def progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _pool_map(fn, items, threads: int):
    """Ordered map; threads = 0 means one worker per CPU."""
    items = list(items)
    n = threads if threads > 0 else (os.cpu_count() or 1)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def _report_row(r: ComparisonReport) -> list:
    params = ";".join(f"{k}={fmt(v)}" for k, v in r.parameters.items())
    return [params, r.exact, r.main_term, r.abs_error, r.rel_error]


# ----------------------------------------------------------------------------
# Subcommands


def cmd_gap_constants(args) -> Table:
    if not 1 <= args.d_max <= D_MAX_CEILING:
        raise ValueError(f"--d-max must be in [1, {D_MAX_CEILING}]")
    tol = args.tol = 1e-10 if args.tol is None else args.tol
    tab = gap_constant_table(args.d_max, tol=tol)
    t = Table(["d", "mu_d", "residual_mu", "lambda_d", "residual_lambda", "mu_asymptotic"])
    for d, mu, mr, lam, lr in zip(tab["d"], tab["mu"], tab["mu_res"], tab["lam"], tab["lam_res"]):
        t.rows.append([int(d), mu, mr, lam, lr, mu_asymptotic(int(d))])
    return t


def cmd_verify_identities(args) -> dict:
    tol = args.tol = 1e-8 if args.tol is None else args.tol
    mn_max = args.mn_max = args.q_max if args.mn_max is None else args.mn_max
    progress(f"primitive orthogonality: q <= {args.q_max}, m, n <= {mn_max}")
    c1, f1 = lemma1_sweep(args.q_max, mn_max, tol)
    progress(f"phi-ratio identity: c, d <= {args.c_max}")
    c2, f2 = lemma2_sweep(args.c_max)
    return {"lemma1": {"cases": c1, "failures": f1}, "lemma2": {"cases": c2, "failures": f2}}


def cmd_als(args) -> Table:
    W = default_weight()
    t = Table(["parameters", "exact", "main_term", "abs_error", "rel_error"])
    reports = _pool_map(lambda m: delta_diagonal_main(m, args.Q, W), range(1, args.m_max + 1), args.threads)
    for r in reports:
        t.rows.append(_report_row(r))
    progress("corollary")
    t.rows.append(_report_row(als_moebius_corollary(args.Q, args.X, W)))
    return t


def _weight(name: str):
    return UNIT_WEIGHT if name == "one" else g_N_weight(1)


def cmd_sums(args) -> Table:
    X = int(args.X)
    if not 4 <= X <= X_SUMS_CEILING:
        raise ValueError(f"--X must be in [4, {X_SUMS_CEILING}]")
    g = _weight(args.weight)
    L = math.log(X)
    unit = 1.0 / L if args.scaled else 1.0
    slope = A_slope(X, g)
    a = A_sum(X, g).real
    t = Table(["kind", "X", "alpha", "beta", "slope", "exact", "main_term", "abs_error", "rel_error"])
    t.rows.append(["A", X, 0.0, 0.0, slope, a, slope * L, abs(a - slope * L), abs(a - slope * L) / abs(slope * L)])
    grid = [(al * unit, be * unit) for al in args.alpha for be in args.beta]

    def one(ab):
        progress(f"B at alpha={ab[0]:.6g}, beta={ab[1]:.6g}")
        return B_sum(X, g, alpha=ab[0], beta=ab[1], slope=slope)

    for (al, be), r in zip(grid, _pool_map(one, grid, args.threads)):
        t.rows.append(["B", X, al, be, slope, r.exact, r.main_term, r.abs_error, r.rel_error])
    return t


def _primitive_chars(q: int, chi_index: int | None):
    if not 1 <= q <= Q_ZERO_CEILING:
        raise ValueError(f"q must be in [1, {Q_ZERO_CEILING}]")
    prim = list(character_group(q).primitive)
    if chi_index is not None:
        prim = [c for c in prim if c.index == chi_index]
        if not prim:
            raise ValueError(f"character {chi_index} mod {q} is not primitive")
    return prim


def cmd_zeros(args) -> dict:
    chars = _primitive_chars(args.q, args.chi)
    ledgers = scan_characters(chars, args.t_min, args.t_max, args.step)
    return {"ledgers": [l.to_dict() for l in ledgers]}


def cmd_gaps(args) -> Table:
    if not 1 <= args.q_max <= Q_ZERO_CEILING:
        raise ValueError(f"--q-max must be in [1, {Q_ZERO_CEILING}]")

    def per_modulus(q):
        return scan_characters(list(character_group(q).primitive), args.t_min, args.t_max, args.step)

    rows = []
    for q, ledgers in zip(range(1, args.q_max + 1), _pool_map(per_modulus, range(1, args.q_max + 1), args.threads)):
        for led in ledgers:
            if led.count < 2:
                continue
            st = gap_statistics(led, args.mode, Q=args.Q)
            for lo, hi, raw, g in zip(st.lower, st.upper, st.raw_gaps, st.gaps):
                rows.append([q, led.chi_index, lo, hi, raw, g])
    t = Table(["q", "chi_index", "gamma_low", "gamma_high", "raw_gap", "normalized_gap", "global_min"])
    if rows:
        k = int(np.argmin([r[5] for r in rows]))
        t.rows = [r + [i == k] for i, r in enumerate(rows)]
    return t


def cmd_compare_m(args) -> dict:
    W = default_weight()
    if args.alpha is None and args.mu is None:
        raise ValueError("give --alpha or --mu")
    alpha = args.alpha = args.alpha if args.alpha is not None else math.pi * args.mu / (args.d * math.log(args.Q))
    progress("M")
    m = exact_M(args.Q, args.X, W)
    progress("M(alpha)")
    ma = exact_M_alpha(args.Q, args.X, alpha, W, step=args.step)
    out = {
        "Q": args.Q,
        "X": args.X,
        "alpha": alpha,
        "mu": alpha * args.d * math.log(args.Q) / math.pi,
        "M_exact": m.exact,
        "M_main": m.main_term,
        "M_ratio": m.exact / m.main_term if args.X > 1 else None,
        "M_alpha_exact": ma,
        "primitive_count_sum": primitive_count_sum(args.Q, W),
        "verdict": bool(ma > m.exact),
    }
    return out


# ----------------------------------------------------------------------------
# Parser


COMMANDS = {
    "gap-constants": (cmd_gap_constants, "csv"),
    "verify-identities": (cmd_verify_identities, "json"),
    "als": (cmd_als, "csv"),
    "sums": (cmd_sums, "csv"),
    "zeros": (cmd_zeros, "json"),
    "gaps": (cmd_gaps, "csv"),
    "compare-m": (cmd_compare_m, "json"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--tol", type=float, default=None, help="solver / comparison tolerance")
    common.add_argument("--threads", type=int, default=1, help="worker threads (0 = one per CPU)")

    p = argparse.ArgumentParser(prog="smallgaps", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gap-constants", parents=[common], help="mu_d and lambda_d table")
    s.add_argument("--d-max", type=int, default=5)

    s = sub.add_parser("verify-identities", parents=[common], help="exhaustive character identity checks")
    s.add_argument("--q-max", type=int, default=150)
    s.add_argument("--mn-max", type=int, default=None, help="range of m, n (default: q-max)")
    s.add_argument("--c-max", type=int, default=300)

    s = sub.add_parser("als", parents=[common], help="large sieve main terms against enumeration")
    s.add_argument("--Q", type=float, default=100.0)
    s.add_argument("--X", type=float, default=60.0)
    s.add_argument("--m-max", type=int, default=10)

    s = sub.add_parser("sums", parents=[common], help="A(X) slope and B(X) against its main term")
    s.add_argument("--X", type=float, default=1e5)
    s.add_argument("--alpha", type=float, nargs="+", default=[0.0, 1.0])
    s.add_argument("--beta", type=float, nargs="+", default=[0.0, 1.0])
    s.add_argument("--scaled", action="store_true", help="alpha, beta in units of 1/log X")
    s.add_argument("--weight", choices=("one", "r"), default="one")

    s = sub.add_parser("zeros", parents=[common], help="zero ledgers of L(s, chi) on the critical line")
    s.add_argument("--q", type=int, default=1)
    s.add_argument("--chi", type=int, default=None, help="character index (default: all primitive)")
    s.add_argument("--t-min", type=float, default=0.0)
    s.add_argument("--t-max", type=float, default=30.0)
    s.add_argument("--step", type=float, default=0.05)

    s = sub.add_parser("gaps", parents=[common], help="normalized consecutive zero gaps")
    s.add_argument("--q-max", type=int, default=20)
    s.add_argument("--t-min", type=float, default=0.0)
    s.add_argument("--t-max", type=float, default=30.0)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--mode", choices=("local", "global"), default="local")
    s.add_argument("--Q", type=float, default=None, help="scale for global mode (default: q)")

    s = sub.add_parser("compare-m", parents=[common], help="M(alpha) against M")
    s.add_argument("--Q", type=float, default=40.0)
    s.add_argument("--X", type=float, default=40.0)
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--mu", type=float, default=None, help="alpha = pi mu / (d log Q)")
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--step", type=float, default=0.01)
    return p


def run_config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("out", "threads")}
    cfg["version"] = __version__
    cfg["deterministic"] = True
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fn, default_format = COMMANDS[args.command]
    args.format = args.format or default_format
    if args.tol is not None and not args.tol > 0:
        print(f"error: invalid --tol {args.tol}", file=sys.stderr)
        return 2
    try:
        result = fn(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(result, run_config(args), args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify-identities":
        return 1 if any(v["failures"] for v in result.values()) else 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
