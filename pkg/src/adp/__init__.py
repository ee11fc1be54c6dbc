"""Analytic deep prior: operator-optimized Tikhonov regularization for
linear ill-posed inverse problems, with classical spectral-filter baselines
and a reproducible experiment harness.
"""

import os as _os

# The package works on small dense matrices (n up to a few hundred), where
# threaded BLAS pools cost more in synchronization than they save; worse,
# numpy and scipy can ship separate OpenBLAS pools whose spin-waiting stalls
# alternating calls on low-core machines.  Default to single-threaded
# kernels; honored only if set before the first numpy/scipy import, and
# setdefault keeps any explicit user configuration.
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    _os.environ.setdefault(_var, "1")
del _os, _var

from .linalg import (
    Svd,
    SvdConvergenceError,
    dominant_eigenvalue,
    matmul,
    solve_spd,
    svd,
)
from .operators import IntegrationOperator, adjoint, grid_midpoints, make_integration, rank_one_update
from .prox import ProxKind, prox_apply, prox_derivative
from .filters import (
    FilterFamily,
    OptimalityReport,
    SpectralFilter,
    check_order_optimality,
    default_sigma_grid,
    filter_value,
    filtered_pseudoinverse,
)
from .solvers import (
    IstaConfig,
    IstaResult,
    default_step_size,
    ista,
    landweber,
    trivial_network_descent,
    unrolled_forward,
)
from .deep_prior import (
    BetaIterationResult,
    DeepPriorProblem,
    DescentConfig,
    DescentMode,
    DescentTrace,
    Stability,
    beta_fixed_points,
    beta_iteration,
    beta_limit_reconstruction,
    beta_update,
    descend_b,
    grad_f,
    grad_f_at_a,
    objective_f,
    optimal_b,
    tikhonov_solve,
)
from .harness import (
    ExperimentConfig,
    GradcheckReport,
    ProblemData,
    export_filter_response,
    gradcheck,
    make_problem,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "Svd",
    "SvdConvergenceError",
    "dominant_eigenvalue",
    "matmul",
    "solve_spd",
    "svd",
    "IntegrationOperator",
    "adjoint",
    "grid_midpoints",
    "make_integration",
    "rank_one_update",
    "ProxKind",
    "prox_apply",
    "prox_derivative",
    "FilterFamily",
    "OptimalityReport",
    "SpectralFilter",
    "check_order_optimality",
    "default_sigma_grid",
    "filter_value",
    "filtered_pseudoinverse",
    "IstaConfig",
    "IstaResult",
    "default_step_size",
    "ista",
    "landweber",
    "trivial_network_descent",
    "unrolled_forward",
    "BetaIterationResult",
    "DeepPriorProblem",
    "DescentConfig",
    "DescentMode",
    "DescentTrace",
    "Stability",
    "beta_fixed_points",
    "beta_iteration",
    "beta_limit_reconstruction",
    "beta_update",
    "descend_b",
    "grad_f",
    "grad_f_at_a",
    "objective_f",
    "optimal_b",
    "tikhonov_solve",
    "ExperimentConfig",
    "GradcheckReport",
    "ProblemData",
    "export_filter_response",
    "gradcheck",
    "make_problem",
    "run_experiment",
    "__version__",
]
