"""Experiment drivers: problem generation, the alpha sweep, CSV persistence.

All randomness flows through the package generator, so a config plus a seed
reproduces every output file byte for byte.  CSV files are comma separated
with a header row and 17-significant-digit values (lossless float64
round-trip); the only non-finite value ever written is the literal ``inf``
in the SNR column of a noise-free run.

Files written by run_experiment, per alpha (alpha formatted with %g):

* ``trace_<alpha>.csv``   -- iter, true_error, objective, frob_sq
* ``recon_<alpha>.csv``   -- t, x_dagger, x_tikhonov, x_bopt
* ``b_opt_<alpha>.csv``   -- the final operator, one header row c0..c{n-1}
* ``data_<alpha>.csv``    -- t, ax_dagger, y_delta
* ``summary.csv``         -- alpha, final_true_error, tikhonov_true_error, snr_db
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .deep_prior import (
    DeepPriorProblem,
    DescentConfig,
    grad_f,
    grad_f_at_a,
    objective_f,
    descend_b,
    tikhonov_solve,
)
from .filters import FilterFamily, SpectralFilter, default_sigma_grid, filter_value
from .linalg import Svd, as_vector, svd
from .operators import grid_midpoints, make_integration
from .rng import SplitMix64
from .solvers import default_step_size


@dataclass
class ExperimentConfig:
    """Settings for the reconstruction experiment.

    The true solution is a singular vector of the integration operator
    (x_dagger_index counts from 0 in descending singular-value order) unless
    x_dagger_file names a whitespace/newline-separated vector of length n.
    Noise is delta times a seeded standard-normal vector; when target_snr_db
    is set, delta is calibrated by bisection so the measured SNR matches it
    and the delta field is ignored.
    """

    n: int = 200
    alpha_list: list[float] = field(default_factory=lambda: [1e-3, 1e-2])
    delta: float = 0.0
    seed: int = 0
    x_dagger_index: int = 4
    x_dagger_file: str | None = None
    target_snr_db: float | None = None
    descent: DescentConfig = field(default_factory=lambda: DescentConfig(iters=1000))

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"experiment needs n >= 2, got {self.n}")
        if not self.alpha_list:
            raise ValueError("alpha_list must be nonempty")
        if any(a <= 0.0 for a in self.alpha_list):
            raise ValueError(f"all alphas must be positive, got {self.alpha_list}")
        if self.delta < 0.0:
            raise ValueError(f"noise scale must be nonnegative, got {self.delta}")


class ProblemData(NamedTuple):
    a: np.ndarray
    x_dagger: np.ndarray
    y_delta: np.ndarray
    snr_db: float


def measured_snr_db(ax_dagger: np.ndarray, noise: np.ndarray) -> float:
    """SNR in decibels, 10 log10(||A x||^2 / ||noise||^2); inf for zero noise."""
    p_noise = float(noise @ noise)
    if p_noise == 0.0:
        return math.inf
    return 10.0 * math.log10(float(ax_dagger @ ax_dagger) / p_noise)


def calibrate_delta(ax_dagger: np.ndarray, tau: np.ndarray, target_db: float) -> float:
    """Bisect the noise scale so that measured_snr_db(A x, delta tau) hits
    target_db.  The measured SNR is strictly decreasing in delta, so the
    bracket is expanded upward and then halved to convergence.
    """
    if float(tau @ tau) == 0.0:
        raise ValueError("cannot calibrate noise scale against a zero noise draw")
    lo, hi = 0.0, 1.0
    while measured_snr_db(ax_dagger, hi * tau) > target_db:
        hi *= 2.0
        if hi > 1e12:
            raise ValueError(f"SNR target {target_db} dB unreachable")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if measured_snr_db(ax_dagger, mid * tau) > target_db:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def make_problem(cfg: ExperimentConfig, svd_a: Svd | None = None) -> ProblemData:
    """Build (A, x_dagger, y_delta, snr_db) for the integration operator.

    y_delta = A x_dagger + delta * tau with tau a seeded standard-normal
    draw.  Pass a precomputed svd_a to skip the decomposition (the sweep
    driver reuses one across alphas).
    """
    a = make_integration(cfg.n).matrix
    if cfg.x_dagger_file is not None:
        try:
            x_dagger = as_vector(np.loadtxt(cfg.x_dagger_file))
        except OSError as exc:
            raise ValueError(f"cannot read x_dagger file {cfg.x_dagger_file!r}: {exc}") from exc
        if x_dagger.shape[0] != cfg.n:
            raise ValueError(
                f"x_dagger file has length {x_dagger.shape[0]}, expected n = {cfg.n}"
            )
    else:
        if not 0 <= cfg.x_dagger_index < cfg.n:
            raise ValueError(
                f"singular-vector index {cfg.x_dagger_index} out of range for n = {cfg.n}"
            )
        if svd_a is None:
            svd_a = svd(a)
        x_dagger = svd_a.u[:, cfg.x_dagger_index].copy()

    ax = a @ x_dagger
    tau = SplitMix64(cfg.seed).normals(cfg.n)
    delta = cfg.delta
    if cfg.target_snr_db is not None:
        delta = calibrate_delta(ax, tau, cfg.target_snr_db)
    noise = delta * tau
    return ProblemData(a=a, x_dagger=x_dagger, y_delta=ax + noise, snr_db=measured_snr_db(ax, noise))


def format_float(x: float) -> str:
    """Canonical CSV cell: 17 significant digits, '.' decimal, inf spelled out."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def write_csv(path: str, header: list[str], rows) -> None:
    """Write a rectangular table; every cell is formatted via format_float
    unless it is already a string (or an int, written as-is).
    """
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [
                c if isinstance(c, str) else (str(c) if isinstance(c, (int, np.integer)) else format_float(float(c)))
                for c in row
            ]
            fh.write(",".join(cells) + "\n")


def _alpha_tag(alpha: float) -> str:
    return f"{alpha:g}"


def run_experiment(cfg: ExperimentConfig, outdir: str) -> dict[str, list[str]]:
    """Run the descent for every alpha in cfg and persist traces to outdir.

    Each alpha entry uses seeds derived as base seed + entry index (both for
    the noise draw and the network input), so entries are independent and
    the whole sweep is reproducible.  Returns the written paths keyed by
    table kind; raises RuntimeError if any descent diverges.
    """
    os.makedirs(outdir, exist_ok=True)
    a = make_integration(cfg.n).matrix
    svd_a = svd(a) if cfg.x_dagger_file is None else None
    lam = default_step_size(a)
    t = grid_midpoints(cfg.n)

    paths: dict[str, list[str]] = {"trace": [], "recon": [], "b_opt": [], "data": [], "summary": []}
    summary_rows = []
    diverged = []
    for i, alpha in enumerate(cfg.alpha_list):
        cfg_i = replace(cfg, seed=cfg.seed + i)
        problem = make_problem(cfg_i, svd_a=svd_a)
        descent_i = replace(cfg.descent, seed=cfg.descent.seed + i)
        p = DeepPriorProblem(a=problem.a, y=problem.y_delta, alpha=alpha, lam=lam)

        x_tik = tikhonov_solve(problem.a, problem.y_delta, alpha)
        tik_err = float(np.linalg.norm(x_tik - problem.x_dagger))

        trace = descend_b(p, descent_i, x_true=problem.x_dagger)
        if trace.diverged:
            diverged.append(alpha)
        final_err = float(np.linalg.norm(trace.x_opt - problem.x_dagger))

        tag = _alpha_tag(alpha)
        trace_path = os.path.join(outdir, f"trace_{tag}.csv")
        write_csv(
            trace_path,
            ["iter", "true_error", "objective", "frob_sq"],
            (
                (k + 1, trace.true_error[k], trace.objective[k], trace.frob_sq[k])
                for k in range(len(trace.objective))
            ),
        )
        recon_path = os.path.join(outdir, f"recon_{tag}.csv")
        write_csv(
            recon_path,
            ["t", "x_dagger", "x_tikhonov", "x_bopt"],
            zip(t, problem.x_dagger, x_tik, trace.x_opt),
        )
        bopt_path = os.path.join(outdir, f"b_opt_{tag}.csv")
        write_csv(bopt_path, [f"c{j}" for j in range(cfg.n)], trace.b_opt)
        data_path = os.path.join(outdir, f"data_{tag}.csv")
        write_csv(
            data_path,
            ["t", "ax_dagger", "y_delta"],
            zip(t, problem.a @ problem.x_dagger, problem.y_delta),
        )
        paths["trace"].append(trace_path)
        paths["recon"].append(recon_path)
        paths["b_opt"].append(bopt_path)
        paths["data"].append(data_path)
        summary_rows.append((alpha, final_err, tik_err, problem.snr_db))

    summary_path = os.path.join(outdir, "summary.csv")
    write_csv(
        summary_path,
        ["alpha", "final_true_error", "tikhonov_true_error", "snr_db"],
        summary_rows,
    )
    paths["summary"].append(summary_path)
    if diverged:
        raise RuntimeError(
            f"descent diverged for alpha in {diverged}; partial traces were written"
        )
    return paths


def export_filter_response(alphas: list[float], sigma_grid, outpath: str) -> None:
    """Write filter responses over the grid: a sigma column plus, per alpha,
    columns tikhonov_<a>, tsvd_<a>, soft_tsvd_<a>.
    """
    grid = as_vector(sigma_grid)
    if grid.size == 0:
        raise ValueError("sigma grid must be nonempty")
    header = ["sigma"]
    columns = [grid]
    for alpha in alphas:
        tag = _alpha_tag(alpha)
        for family in (FilterFamily.TIKHONOV, FilterFamily.TSVD, FilterFamily.SOFT_TSVD):
            header.append(f"{family.value}_{tag}")
            columns.append(filter_value(SpectralFilter(family, alpha), grid))
    write_csv(outpath, header, zip(*columns))


def fd_gradient(func, b0: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar function of a matrix."""
    g = np.zeros_like(b0)
    for i in range(b0.shape[0]):
        for j in range(b0.shape[1]):
            bp = b0.copy()
            bp[i, j] += step
            bm = b0.copy()
            bm[i, j] -= step
            g[i, j] = (func(bp) - func(bm)) / (2.0 * step)
    return g


def max_relative_error(g: np.ndarray, ref: np.ndarray) -> float:
    """max |g - ref| / max(1e-30, ||ref||_max), a scale-aware comparison."""
    scale = max(float(np.max(np.abs(ref))), 1e-30)
    return float(np.max(np.abs(g - ref))) / scale


@dataclass(frozen=True)
class GradcheckReport:
    n: int
    seed: int
    tol: float
    max_rel_err_general: float
    max_rel_err_at_a: float

    @property
    def passed(self) -> bool:
        return self.max_rel_err_general <= self.tol and self.max_rel_err_at_a <= self.tol


def gradcheck(n: int, seed: int, tol: float, step: float = 1e-5) -> GradcheckReport:
    """Compare both analytic gradients against central finite differences on
    a seeded random instance (n <= 16 keeps the finite differencing cheap).
    """
    if n > 16:
        raise ValueError(f"gradcheck is limited to n <= 16, got {n}")
    gen = SplitMix64(seed)
    a = gen.normals(n * n).reshape(n, n)
    b = gen.normals(n * n).reshape(n, n)
    y = gen.normals(n)
    alpha = 10.0 ** (-3.0 + 3.0 * gen.uniform())  # alpha in [1e-3, 1]
    p = DeepPriorProblem(a=a, y=y, alpha=alpha)

    err_general = max_relative_error(
        grad_f(p, b), fd_gradient(lambda m: objective_f(p, m), b, step)
    )
    err_at_a = max_relative_error(
        grad_f_at_a(p), fd_gradient(lambda m: objective_f(p, m), a.copy(), step)
    )
    return GradcheckReport(
        n=n, seed=seed, tol=tol, max_rel_err_general=err_general, max_rel_err_at_a=err_at_a
    )
