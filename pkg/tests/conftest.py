import os

# Keep BLAS single threaded (must precede the first numpy import; see
# adp/__init__ for the rationale).
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import pytest

import adp


@pytest.fixture(scope="session")
def a200_svd():
    """Integration operator at the experiment size with its decomposition,
    shared across modules because the Jacobi sweep takes a few seconds."""
    a = adp.make_integration(200).matrix
    return a, adp.svd(a)
