"""
Estimating the extremal index from block maxima
================================================

Walks through the estimator one stage at a time on a moving maxima
series whose extremal index is 0.5, then runs the averaged version.
"""

import numpy as np

from exind import core, sim
from exind.rng import replicate_rng

x = sim.simulate(sim.MM(), 5000, rng=2020)
print("true theta:", sim.theoretical_theta(sim.MM()))

###############################################################################
# Put the data on the standard Frechet scale through its ranks, then draw an
# independent Frechet sequence and form the auxiliary pairs.

xf = core.to_frechet(x)
x_hat = core.sample_frechet(x.size, replicate_rng(0, 0))
pairs = core.build_pairs(xf, x_hat)
print(pairs[:3])

###############################################################################
# Block maxima of the pairs, then the stable tail dependence estimate at
# (1, 1), the tail dependence coefficient and finally theta.

maxima = core.block_maxima(pairs, r=20)
l11 = core.estimate_stdf11(maxima)
lam = core.lambda_from_stdf(l11)
print(f"{maxima.shape[0]} block maxima, l(1,1)={l11:.3f}, lambda={lam:.3f}, theta={core.theta_from_lambda(lam):.3f}")

###############################################################################
# A single auxiliary draw is noisy; averaging over M of them is the estimator.

single = [core.estimate_theta_single(x, 20, replicate_rng(0, s)).theta for s in range(10)]
print("ten single draws:", np.round(single, 3))

est = core.estimate_theta(x, core.EstimatorConfig(r=20, M=1000, seed=0))
print(f"averaged over M=1000: {est.theta:.3f} (replicate sd {est.per_replicate.std():.3f})")

###############################################################################
# The result depends on the data only through ranks.

est_exp = core.estimate_theta(np.log(x), core.EstimatorConfig(r=20, M=1000, seed=0))
print("log-transformed data gives the same value:", est_exp.theta == est.theta)

###############################################################################
# Block length is the one tuning parameter.

for r in (10, 20, 30, 40, 50, 70):
    print(r, round(core.estimate_theta(x, core.EstimatorConfig(r=r, M=200, seed=1)).theta, 3))
