"""
Comparator estimators
=====================

The intervals estimator needs a threshold, the sliding blocks estimator a
block length.  Both are shown on an ARCau series (theta = 0.64).
"""

import numpy as np

from exind import sim
from exind.comparators import BlockConfig, empirical_quantile, exceedances, ferro_segers, northrop

x = sim.simulate(sim.ARCau(), 5000, rng=3)

###############################################################################
# Interexceedance times above the 95% empirical quantile.

u = empirical_quantile(x, 0.95)
rec = exceedances(x, u)
print(f"{rec.count} exceedances, gap counts:", np.bincount(rec.interexceedance_times)[:6])
print("intervals estimate:", round(ferro_segers(x, u), 3))

###############################################################################
# Threshold sweep over the 40%..99% quantiles.

for p in (0.4, 0.6, 0.8, 0.9, 0.95, 0.99):
    print(p, round(ferro_segers(x, empirical_quantile(x, p)), 3))

###############################################################################
# Sliding vs disjoint blocks.

for b in (10, 20, 40, 70):
    print(b, round(northrop(x, BlockConfig(b, "sliding")), 3), round(northrop(x, BlockConfig(b, "disjoint")), 3))
