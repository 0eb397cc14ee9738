"""
Log-return pipeline on an ARCH(1) stand-in
==========================================

The exchange-rate data is not distributed with the package, so an ARCH(1)
path with the fitted parameters (lam=0.5, beta=1.9e-5, theta=0.835) stands
in for the log-returns.  The same steps run on real data through the CLI::

    exind logreturns --input prices.csv --output returns.csv
    exind estimate --input returns.csv --method ferro_segers --output sweep.csv
    exind estimate --input returns.csv --method new --M 1000 --seed 1 --output new.csv
    exind estimate --input returns.csv --method northrop --output northrop.csv
"""

import numpy as np

from exind import BlockConfig, EstimatorConfig, estimate_theta, ferro_segers_at_level, northrop
from exind.bench import BLOCK_LENGTHS
from exind.cli import FIGURE_QUANTILES
from exind.io import log_returns
from exind.sim import ARCH, simulate

returns = simulate(ARCH(lam=0.5, beta=1.9e-5), 4000, rng=1996)

###############################################################################
# Prices built from the returns round-trip through the log-return step.

prices = 100 * np.exp(np.cumsum(np.r_[0.0, returns]))
assert np.allclose(log_returns(prices), returns)

###############################################################################
# Threshold sweep for the intervals estimator.

sweep = [(p, ferro_segers_at_level(returns, p)) for p in FIGURE_QUANTILES]
for p, est in sweep[::10] + [sweep[-1]]:
    print(f"q={p:.2f}  {est:.3f}")

###############################################################################
# Block-length grid for the two blocks estimators.

print("r     new  northrop")
for r in BLOCK_LENGTHS:
    new = estimate_theta(returns, EstimatorConfig(r=r, M=500, seed=1)).theta
    print(f"{r:<4} {new:.3f}  {northrop(returns, BlockConfig(r)):.3f}")
