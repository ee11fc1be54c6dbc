"""The optimized operator induces the soft-TSVD spectral filter.

Restricting B to share A's singular system, the outer functional has a
closed-form global minimizer whose singular values depend only on alpha.
Solving with that operator damps components below 2 sqrt(alpha) linearly and
keeps the rest untouched: softer than hard truncation, less damping than
Tikhonov, and order optimal for every smoothness order nu > 0.
"""

import numpy as np

import adp
from adp.filters import FilterFamily, SpectralFilter, default_sigma_grid

alpha = 0.01
knee = 2.0 * np.sqrt(alpha)
print(f"alpha = {alpha}, knee at 2 sqrt(alpha) = {knee}")
print(f"{'sigma':>8} {'tikhonov':>9} {'tsvd':>6} {'soft':>6}")
for sigma in (0.02, 0.05, 0.1, knee, 0.3, 0.8):
    row = [adp.filter_value(SpectralFilter(fam, alpha), sigma)
           for fam in (FilterFamily.TIKHONOV, FilterFamily.TSVD, FilterFamily.SOFT_TSVD)]
    print(f"{sigma:8.3f} {row[0]:9.4f} {row[1]:6.1f} {row[2]:6.3f}")

# equivalence: Tikhonov solve with the optimal operator == filtered inverse
n = 50
a = adp.make_integration(n).matrix
s = adp.svd(a)
b_alpha = adp.optimal_b(s, alpha)
rng = adp.rng.SplitMix64(11)
y = rng.normals(n)
x_op = adp.tikhonov_solve(b_alpha, y, alpha)
x_filter = adp.filtered_pseudoinverse(s, SpectralFilter(FilterFamily.SOFT_TSVD, alpha), y)
print("\n||operator solve - filtered inverse|| =", np.linalg.norm(x_op - x_filter))

# order-optimality conditions over a log grid
grid = default_sigma_grid()
print(f"\n{'family':>10} {'nu':>4}  cond1 cond2 cond3")
for fam in (FilterFamily.TIKHONOV, FilterFamily.TSVD, FilterFamily.SOFT_TSVD):
    for nu in (0.5, 1.0, 3.0):
        r = adp.check_order_optimality(SpectralFilter(fam, 1e-3), nu, grid)
        print(f"{fam.value:>10} {nu:4.1f}  {int(r.cond1_ok):5d} {int(r.cond2_ok):5d} {int(r.cond3_ok):5d}")
print("(Tikhonov loses condition 2 beyond nu = 2; the soft variant never does)")
