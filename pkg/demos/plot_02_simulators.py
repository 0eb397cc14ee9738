"""
Benchmark processes
===================

The six stationary processes with known extremal index, their marginals
and a first look at how each estimator does on one sample.
"""

import numpy as np
from scipy import stats

from exind import BlockConfig, EstimatorConfig, estimate_theta, ferro_segers_at_level, northrop, sim

reference_cdfs = {
    "ARCau": stats.cauchy.cdf,
    "ARUnif": stats.uniform.cdf,
    "MM": lambda v: np.exp(-1 / v),
    "MAR": lambda v: np.exp(-1 / v),
    "MC": stats.gumbel_r.cdf,
}

for spec in sim.PAPER_MODELS:
    x = sim.simulate(spec, 5000, rng=1)
    ks = stats.kstest(x, reference_cdfs[spec.name]).statistic if spec.name in reference_cdfs else float("nan")
    new = estimate_theta(x, EstimatorConfig(r=20, M=200, seed=2)).theta
    nor = northrop(x, BlockConfig(b=20))
    fs = ferro_segers_at_level(x, 0.95)
    print(f"{spec.name:7s} theta={sim.theoretical_theta(spec):.3f}  KS={ks:.4f}  "
          f"new={new:.3f}  northrop={nor:.3f}  ferro_segers={fs:.3f}")

###############################################################################
# Parameters other than the defaults are passed to the dataclasses; closed
# forms cover every model except the logistic chain and ARCH, which are only
# tabulated at the defaults.

print(sim.theoretical_theta(sim.ARCau(rho=-0.3)), sim.theoretical_theta(sim.MAR(phi=0.8)))
