"""An L-layer shared-weight network computes L proximal-gradient steps.

Each layer applies x -> prox(x - lam * B^T (B x - y)); running many layers
converges to the penalized least-squares minimizer, so the "network output"
is a Tikhonov-type reconstruction and the layer count is an iteration count.
"""

import numpy as np

import adp
from adp.prox import ProxKind
from adp.solvers import IstaConfig

n = 40
a = adp.make_integration(n).matrix
rng = adp.rng.SplitMix64(3)
y = a @ adp.svd(a).u[:, 3] + 5e-4 * rng.normals(n)

alpha = 1e-2
lam = adp.default_step_size(a)
z = 1e-3 * rng.normals(n)  # arbitrary network input

closed = adp.tikhonov_solve(a, y, alpha)
for layers in (1, 10, 100, 1000, 10_000):
    out = adp.unrolled_forward(a, y, z, layers, lam, alpha, ProxKind.HALF_SQUARED_L2)
    print(f"L = {layers:6d}: ||network - closed form|| = {np.linalg.norm(out - closed):.3e}")

# the network *is* ISTA: same arithmetic, bit for bit
cfg = IstaConfig(lam=lam, alpha=alpha, prox=ProxKind.HALF_SQUARED_L2, max_iters=100, tol=0.0)
res = adp.ista(a, y, z, cfg)
out = adp.unrolled_forward(a, y, z, 100, lam, alpha, ProxKind.HALF_SQUARED_L2)
print("bitwise identical to ISTA at L = 100:", np.array_equal(out, res.x))

# other activations are proximal mappings of other penalties
sparse = adp.unrolled_forward(a, y, z, 5000, lam, 1e-4, ProxKind.L1)
print("soft-shrinkage activation (L1 penalty), nonzeros:", int(np.sum(sparse != 0.0)), "of", n)
