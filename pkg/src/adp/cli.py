"""Command-line entry point.

Subcommands: experiment (the alpha-sweep reconstruction run), filters
(filter-response export), gradcheck (finite-difference validation of the
analytic gradients), landweber (baseline iteration trace), optimality
(order-optimality condition report).

Every subcommand accepts ``--config FILE`` with plain ``key=value`` lines
mirroring the long flag names (without the leading dashes); explicit flags
override the file.  Exit codes: 0 success, 1 validation error, 2 numerical
failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .deep_prior import DescentConfig, DescentMode
from .filters import FilterFamily, SpectralFilter, check_order_optimality, default_sigma_grid
from .harness import (
    ExperimentConfig,
    format_float,
    gradcheck,
    export_filter_response,
    run_experiment,
    write_csv,
)
from .linalg import SvdConvergenceError, svd
from .operators import make_integration
from .solvers import default_step_size, landweber


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def _load_config_flags(path: str) -> list[str]:
    """Turn key=value lines into the equivalent '--key=value' flags."""
    flags = []
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.rstrip()!r}")
                key, value = line.split("=", 1)
                flags.append(f"--{key.strip()}={value.strip()}")
    except OSError as exc:
        raise ValueError(f"cannot read config file {path!r}: {exc}") from exc
    return flags


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file flags in front of the explicit ones (which win)."""
    if not argv:
        return argv
    out = [argv[0]]
    rest = argv[1:]
    config_path = None
    cleaned = []
    i = 0
    while i < len(rest):
        tok = rest[i]
        if tok == "--config":
            if i + 1 >= len(rest):
                raise ValueError("--config needs a file argument")
            config_path = rest[i + 1]
            i += 2
        elif tok.startswith("--config="):
            config_path = tok.split("=", 1)[1]
            i += 1
        else:
            cleaned.append(tok)
            i += 1
    if config_path is not None:
        out.extend(_load_config_flags(config_path))
    out.extend(cleaned)
    return out


def _add_config_flag(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value file mirroring the flags; flags override it")


def build_parser() -> _Parser:
    parser = _Parser(prog="adp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("experiment", help="run the alpha-sweep reconstruction experiment")
    p_exp.add_argument("--n", type=int, default=200)
    p_exp.add_argument("--alphas", type=_float_list, default=[1e-3, 1e-2])
    noise = p_exp.add_mutually_exclusive_group()
    noise.add_argument("--delta", type=float, default=0.05)
    noise.add_argument("--target-snr-db", type=float, default=None)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--iters", type=int, default=1000)
    p_exp.add_argument("--mode", choices=["exact", "unroll"], default="exact")
    p_exp.add_argument("--L", type=int, default=10, help="unroll depth per update")
    p_exp.add_argument("--lr", type=float, default=0.05)
    p_exp.add_argument("--z-scale", type=float, default=1e-3)
    p_exp.add_argument("--b0-noise", type=float, default=0.0,
                       help="std of Gaussian noise added to the starting operator")
    p_exp.add_argument("--index", type=int, default=4,
                       help="which singular vector is the true solution (0-based)")
    p_exp.add_argument("--x-dagger-file", default=None,
                       help="load the true solution from a text file instead")
    p_exp.add_argument("--out", required=True, help="output directory")
    _add_config_flag(p_exp)

    p_fil = sub.add_parser("filters", help="export filter responses over a sigma grid")
    p_fil.add_argument("--alphas", type=_float_list, default=[1e-3, 1e-2])
    p_fil.add_argument("--sigma-min", type=float, default=1e-6)
    p_fil.add_argument("--sigma-max", type=float, default=10.0)
    p_fil.add_argument("--points", type=int, default=2000)
    p_fil.add_argument("--out", required=True)
    _add_config_flag(p_fil)

    p_grad = sub.add_parser("gradcheck", help="finite-difference check of the gradients")
    p_grad.add_argument("--n", type=int, default=8)
    p_grad.add_argument("--seed", type=int, default=0)
    p_grad.add_argument("--tol", type=float, default=1e-5)
    _add_config_flag(p_grad)

    p_land = sub.add_parser("landweber", help="Landweber iteration on the integration problem")
    p_land.add_argument("--n", type=int, default=200)
    p_land.add_argument("--eta", type=float, default=None, help="default: 1/mu")
    p_land.add_argument("--iters", type=int, default=100)
    p_land.add_argument("--seed", type=int, default=0)
    p_land.add_argument("--delta", type=float, default=0.0)
    p_land.add_argument("--index", type=int, default=4)
    p_land.add_argument("--out", required=True)
    _add_config_flag(p_land)

    p_opt = sub.add_parser("optimality", help="order-optimality condition report")
    p_opt.add_argument("--alpha", type=float, required=True)
    p_opt.add_argument("--nu", type=_float_list, default=[0.5, 1.0, 2.0])
    p_opt.add_argument("--sigma-min", type=float, default=1e-6)
    p_opt.add_argument("--sigma-max", type=float, default=10.0)
    p_opt.add_argument("--points", type=int, default=2000)
    p_opt.add_argument("--out", required=True)
    _add_config_flag(p_opt)

    return parser


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        n=args.n,
        alpha_list=args.alphas,
        delta=args.delta if args.target_snr_db is None else 0.0,
        seed=args.seed,
        x_dagger_index=args.index,
        x_dagger_file=args.x_dagger_file,
        target_snr_db=args.target_snr_db,
        descent=DescentConfig(
            iters=args.iters,
            eta=args.lr,
            layers=args.L,
            mode=DescentMode.EXACT_GRADIENT if args.mode == "exact" else DescentMode.TRUNCATED_UNROLL,
            seed=args.seed,
            z_scale=args.z_scale,
            b0_noise_scale=args.b0_noise,
        ),
    )
    paths = run_experiment(cfg, args.out)
    written = sum(len(v) for v in paths.values())
    print(f"wrote {written} tables to {args.out}")
    return 0


def _cmd_filters(args) -> int:
    grid = default_sigma_grid(args.sigma_min, args.sigma_max, args.points)
    export_filter_response(args.alphas, grid, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_gradcheck(args) -> int:
    report = gradcheck(args.n, args.seed, args.tol)
    status = "PASS" if report.passed else "FAIL"
    print(
        f"{status} gradcheck n={report.n} seed={report.seed}: "
        f"general {report.max_rel_err_general:.3e}, at-A {report.max_rel_err_at_a:.3e} "
        f"(tol {report.tol:.1e})"
    )
    return 0 if report.passed else 2


def _cmd_landweber(args) -> int:
    from .harness import ExperimentConfig, make_problem

    cfg = ExperimentConfig(
        n=args.n,
        alpha_list=[1.0],  # unused by the baseline, config just carries n/seed
        delta=args.delta,
        seed=args.seed,
        x_dagger_index=args.index,
    )
    problem = make_problem(cfg)
    eta = args.eta if args.eta is not None else default_step_size(problem.a)
    x = np.zeros(args.n)
    rows = []
    for k in range(args.iters + 1):
        residual = float(np.linalg.norm(problem.a @ x - problem.y_delta))
        err = float(np.linalg.norm(x - problem.x_dagger))
        rows.append((k, residual, err))
        if k < args.iters:
            x, _ = landweber(problem.a, problem.y_delta, x, eta, 1)
    write_csv(args.out, ["iter", "residual", "true_error"], rows)
    print(f"wrote {args.out}")
    return 0


def _cmd_optimality(args) -> int:
    grid = default_sigma_grid(args.sigma_min, args.sigma_max, args.points)
    header = [
        "family", "nu", "alpha", "gamma", "c1", "c2", "c3",
        "sup1", "bound1", "ok1", "worst_sigma1",
        "sup2", "bound2", "ok2", "worst_sigma2",
        "sup3", "bound3", "ok3", "worst_sigma3",
    ]
    rows = []
    for family in (FilterFamily.TIKHONOV, FilterFamily.TSVD, FilterFamily.SOFT_TSVD):
        f = SpectralFilter(family, args.alpha)
        for nu in args.nu:
            r = check_order_optimality(f, nu, grid)
            rows.append((
                family.value, nu, args.alpha, r.gamma, r.c1, r.c2, r.c3,
                r.sup1, r.c1 * args.alpha ** (-r.gamma), int(r.cond1_ok), r.worst_sigma1,
                r.sup2, r.c2 * args.alpha ** (r.gamma * r.nu), int(r.cond2_ok), r.worst_sigma2,
                r.sup3, r.c3, int(r.cond3_ok), r.worst_sigma3,
            ))
    write_csv(args.out, header, rows)
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "experiment": _cmd_experiment,
    "filters": _cmd_filters,
    "gradcheck": _cmd_gradcheck,
    "landweber": _cmd_landweber,
    "optimality": _cmd_optimality,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
    except ValueError as exc:
        print(f"adp: error: {exc}", file=sys.stderr)
        return 1
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"adp: error: {exc}", file=sys.stderr)
        return 1
    except (SvdConvergenceError, RuntimeError) as exc:
        print(f"adp: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
