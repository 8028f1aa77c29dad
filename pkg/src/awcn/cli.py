"""Command-line front end: sweep tables for bounds, BA, GMI, decoding, vector.

Every command emits one delimited table (CSV default, JSON mirror) with a
fixed column schema and all numeric cells formatted to 9 significant digits,
so identical configurations reproduce byte-identical output.  Randomized
commands take an explicit --seed (default 42).  Exit status: 0 success, 2
validation error, 3 numeric non-convergence; failures write a
machine-readable JSON error record to stderr.

--plot renders the table to a PNG next to the --out file; the delimited
table stays the primary artifact and is unaffected by plotting.
"""

import argparse
import json
import sys

import numpy as np

from .blahut_arimoto import BaConvergenceError, ba_capacity_at_power, discretize_awcn
from .bounds import ChannelParams, QuadratureError, bounds_sweep
from .cauchy import RandomStream
from .decoding import EnsembleSpec, ml_two_codeword_mc, nn_error_limit, nn_error_mc
from .gmi import gmi_sweep
from .vector import VectorChannel, best_combiner, vector_cpuc, vector_genie_ub

__all__ = ["main"]

DEFAULT_SEED = 42

COLUMNS = {
    "bounds": ("gamma", "lb_epi", "ub_genie", "ub_cpuc", "mi_antipodal"),
    "ba": ("gamma", "ba_rate", "avg_cost", "iterations", "converged"),
    "gmi": ("snr", "lambda2_over_sigma2", "gmi", "theta_star", "std_error",
            "awgn_capacity"),
    "decode-sim": ("ensemble", "N", "P_over_lambda2", "mc_error", "std_error",
                   "analytic_limit"),
    "vector": ("h", "P_over_lambda2", "lb_selection", "ub_genie_mc",
               "cpuc_slope", "gain_bracket"),
}


class CliError(ValueError):
    """Configuration rejected before any computation ran."""


def _parse_gamma_grid(text: str) -> np.ndarray:
    """Parse lo:hi:points-per-decade into a log-uniform grid (ends included)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(f"--gamma-grid wants lo:hi:points-per-decade, got {text!r}")
    try:
        lo, hi, ppd = float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError as exc:
        raise CliError(f"bad --gamma-grid {text!r}: {exc}") from None
    if not (lo > 0 and hi > lo and ppd > 0):
        raise CliError(f"--gamma-grid needs 0 < lo < hi and points-per-decade > 0, got {text!r}")
    decades = np.log10(hi) - np.log10(lo)
    n = int(round(ppd * decades)) + 1
    return np.logspace(np.log10(lo), np.log10(hi), n)


def _parse_float_list(text: str, flag: str, minimum=None) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise CliError(f"bad {flag} {text!r}: {exc}") from None
    if not vals:
        raise CliError(f"{flag} must list at least one value")
    if minimum is not None and any(v < minimum for v in vals):
        raise CliError(f"{flag} values must be >= {minimum}")
    return vals


def _parse_int_list(text: str, flag: str, minimum: int = 1) -> list[int]:
    try:
        vals = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise CliError(f"bad {flag} {text!r}: {exc}") from None
    if not vals or any(v < minimum for v in vals):
        raise CliError(f"{flag} must list integers >= {minimum}")
    return vals


def _fmt_csv(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.9g}"
    return str(v)


def _fmt_json(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.9g}"
    return json.dumps(str(v))


def _emit(rows: list[dict], columns, fmt: str, out_path) -> None:
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            cells = []
            for c in columns:
                cell = _fmt_csv(row[c])
                if "," in cell or '"' in cell:
                    cell = '"' + cell.replace('"', '""') + '"'
                cells.append(cell)
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
    else:
        recs = []
        for row in rows:
            fields = ", ".join(f"{json.dumps(c)}: {_fmt_json(row[c])}" for c in columns)
            recs.append("  {" + fields + "}")
        text = "[\n" + ",\n".join(recs) + "\n]\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out_path, "w") as f:
                f.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {out_path}: {exc}") from None


def _run_bounds(args) -> list[dict]:
    gammas = _parse_gamma_grid(args.gamma_grid)
    reports = bounds_sweep(gammas, tol=args.tol)
    return [{"gamma": r.gamma, "lb_epi": r.lb_epi, "ub_genie": r.ub_genie,
             "ub_cpuc": r.ub_cpuc, "mi_antipodal": r.mi_antipodal}
            for r in reports]


def _run_ba(args) -> list[dict]:
    gammas = _parse_gamma_grid(args.gamma_grid)
    lam = args.lam
    if lam <= 0:
        raise CliError(f"--lambda must be positive, got {lam}")
    rows = []
    s_hint = None
    g_prev = None
    for g in gammas:
        cp = ChannelParams.from_gamma(float(g), lam)
        ch = discretize_awcn(cp)
        # the matching multiplier scales roughly like 1/gamma along a sweep
        hint = None if s_hint is None else s_hint * (g_prev / float(g))
        sol = ba_capacity_at_power(ch, cp.power, tol=args.tol, s_hint=hint)
        s_hint, g_prev = (sol.multiplier or None), float(g)
        rows.append({"gamma": float(g), "ba_rate": sol.rate, "avg_cost": sol.avg_cost,
                     "iterations": sol.iterations, "converged": sol.converged})
    return rows


def _run_gmi(args) -> list[dict]:
    sigma2 = args.sigma2
    if sigma2 <= 0:
        raise CliError(f"--sigma2 must be positive, got {sigma2}")
    if args.lambda2_list is None:
        lambda2_list = [sigma2 / 9.0, sigma2, 9.0 * sigma2]
    else:
        lambda2_list = _parse_float_list(args.lambda2_list, "--lambda2-list")
    snr_grid = _parse_float_list(args.snr_grid, "--snr-grid", minimum=0.0)
    return gmi_sweep(sigma2, lambda2_list, snr_grid,
                     rs=RandomStream(args.seed),
                     theta_lo=args.theta_lo, quad_nodes=args.quad_nodes,
                     mc_samples=args.mc_samples)


def _run_decode(args) -> list[dict]:
    kinds = ["gaussian", "antipodal"] if args.ensemble == "both" else [args.ensemble]
    block_lens = _parse_int_list(args.block_lens, "--block-lens")
    lam = args.lam
    if lam <= 0:
        raise CliError(f"--lambda must be positive, got {lam}")
    rs = RandomStream(args.seed)
    rows = []
    cell = 0
    for kind in kinds:
        for n in block_lens:
            spec = EnsembleSpec(kind=kind, power=args.power, block_len=n,
                                pairs=args.pairs, rs=rs.substream(cell))
            cell += 1
            if args.metric == "nn":
                est = nn_error_mc(spec, lam, noise_trials=args.noise_trials)
                limit = nn_error_limit(kind, args.power, lam)
            else:
                est = ml_two_codeword_mc(spec, lam, noise_trials=args.noise_trials)
                limit = None  # no closed form for the bent-metric error
            rows.append({"ensemble": kind, "N": n,
                         "P_over_lambda2": args.power / lam**2,
                         "mc_error": est.value, "std_error": est.std_error,
                         "analytic_limit": limit})
    return rows


def _run_vector(args) -> list[dict]:
    gains = _parse_float_list(args.gains, "--gains", minimum=0.0)
    powers = _parse_float_list(args.power, "--power", minimum=0.0)
    lam = args.lam
    if lam <= 0:
        raise CliError(f"--lambda must be positive, got {lam}")
    rs = RandomStream(args.seed)
    h_cell = ";".join(f"{g:.9g}" for g in gains)
    rows = []
    for i, p in enumerate(powers):
        vc = VectorChannel(gains=gains, lam=lam, power=p)
        _, lb = best_combiner(vc)
        ub, _ = vector_genie_ub(vc, mc=args.mc_samples, rs=rs.substream(i))
        rows.append({
            "h": h_cell,
            "P_over_lambda2": p / lam**2,
            "lb_selection": lb,
            "ub_genie_mc": ub,
            "cpuc_slope": vector_cpuc(vc),
            "gain_bracket": f"{vc.h_max_sq:.9g};{vc.h_norm_sq:.9g}",
        })
    return rows


_RUNNERS = {
    "bounds": _run_bounds,
    "ba": _run_ba,
    "gmi": _run_gmi,
    "decode-sim": _run_decode,
    "vector": _run_vector,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="awcn",
        description="Information rates of the additive white Cauchy noise channel: "
                    "bound sweeps, Blahut-Arimoto capacity, GMI, decoding simulations, "
                    "vector receivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format (default csv)")
        p.add_argument("--out", default=None, metavar="PATH",
                       help="output file (default stdout)")
        p.add_argument("--plot", action="store_true",
                       help="also render a PNG next to --out")

    p = sub.add_parser("bounds", help="closed-form bound sweep over gamma")
    p.add_argument("--gamma-grid", default="0.01:1000:25",
                   metavar="LO:HI:PPD", help="log grid lo:hi:points-per-decade")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="genie-bound quadrature tolerance")
    common(p)

    p = sub.add_parser("ba", help="Blahut-Arimoto capacity approximation")
    p.add_argument("--gamma-grid", default="1:100:1", metavar="LO:HI:PPD")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="Cauchy noise scale (default 1)")
    p.add_argument("--tol", type=float, default=1e-4,
                   help="BA duality-gap tolerance per solve")
    common(p)

    p = sub.add_parser("gmi", help="GMI of the Cauchy-metric decoder on AWGN")
    p.add_argument("--sigma2", type=float, default=1.0, help="AWGN noise variance")
    p.add_argument("--lambda2-list", default=None, metavar="A,B,...",
                   help="decoder scale^2 values (default sigma2/9, sigma2, 9*sigma2)")
    p.add_argument("--snr-grid", default="1,2,5,10,20", metavar="A,B,...",
                   help="P/sigma2 values")
    p.add_argument("--theta-lo", type=float, default=-5.0)
    p.add_argument("--quad-nodes", type=int, default=128)
    p.add_argument("--mc-samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p)

    p = sub.add_parser("decode-sim", help="two-codeword decoding error simulation")
    p.add_argument("--ensemble", choices=("gaussian", "antipodal", "both"),
                   default="both")
    p.add_argument("--metric", choices=("nn", "ml"), default="nn",
                   help="nearest-neighbor or Cauchy-ML (bent) metric")
    p.add_argument("--block-lens", default="10,100,1000,10000", metavar="A,B,...")
    p.add_argument("--pairs", type=int, default=2000)
    p.add_argument("--noise-trials", type=int, default=1,
                   help="noise blocks per codeword pair")
    p.add_argument("--power", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p)

    p = sub.add_parser("vector", help="vector-receiver bounds and bracket")
    p.add_argument("--gains", default="1,2,3", metavar="A,B,...",
                   help="branch gains h")
    p.add_argument("--power", default="1,10,100", metavar="A,B,...",
                   help="input power values")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--mc-samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.plot and args.out is None:
            raise CliError("--plot needs --out to place the PNG next to")
        rows = _RUNNERS[args.command](args)
        _emit(rows, COLUMNS[args.command], args.format, args.out)
        if args.plot:
            from . import plots
            stem = args.out.rsplit(".", 1)[0] if "." in args.out.rsplit("/", 1)[-1] \
                else args.out
            plots.render(args.command, rows, stem + ".png")
    except (CliError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": "validation", "message": str(exc)}) + "\n")
        return 2
    except (BaConvergenceError, QuadratureError, FloatingPointError) as exc:
        sys.stderr.write(json.dumps({"error": "non-convergence",
                                     "message": str(exc)}) + "\n")
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
