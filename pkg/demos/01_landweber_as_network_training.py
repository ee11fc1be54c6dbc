"""Training the trivial one-parameter network is Landweber iteration.

The simplest possible "network" ignores its input and outputs its parameter
vector.  Fitting it to measured data by gradient descent is, line for line,
the classical Landweber iteration in solution space -- the entry point for
reading network training as regularization.
"""

import numpy as np

import adp

n = 50
op = adp.make_integration(n)
a = op.matrix
svd_a = adp.svd(a)

# true solution: a mid-frequency singular vector, data with a little noise
x_true = svd_a.u[:, 4]
rng = adp.rng.SplitMix64(7)
y = a @ x_true + 1e-4 * rng.normals(n)

eta = 1.0 / adp.dominant_eigenvalue(a.T @ a)
x0 = np.zeros(n)

x_land, trace_land = adp.landweber(a, y, x0, eta, iters=200)
theta, trace_net = adp.trivial_network_descent(a, y, x0, eta, iters=200)

print("max |landweber - network| over 200 iterates:",
      np.max(np.abs(trace_land - trace_net)))

errors = np.linalg.norm(trace_land - x_true, axis=1)
print("true error after   1 step :", errors[1])
print("true error after  50 steps:", errors[50])
print("true error after 200 steps:", errors[200])
print("(slowly converging, which is why stopping rules matter)")
