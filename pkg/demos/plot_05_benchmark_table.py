"""
A small Monte Carlo comparison
==============================

rmse and absolute bias over K replicates for a slice of the comparison
grid.  The full grids ship as ``configs/table1.json`` (n=1000) and
``configs/table2.json`` (n=5000)::

    exind bench --config configs/table2.json --output summary.csv --raw raw.csv --table
"""

from exind import bench, sim

cells = bench.table_grid(
    n=1000, K=30, M=50, master_seed=7,
    models=(sim.MM(), sim.ARUnif()),
    block_lengths=(20, 40),
    quantiles=(0.9, 0.95),
)
results = bench.run_study(cells)
print(bench.format_table(results, "rmse"))
print()
print(bench.format_table(results, "abias"))

###############################################################################
# Each result keeps its replicate estimates, so summaries can be recomputed.

res = results[0]
print(res.cell.label, res.estimates[:5].round(3), bench.error_summary(res.estimates, res.theta))
