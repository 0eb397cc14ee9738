"""Monte Carlo harness comparing extremal index estimators on simulated data.

A :class:`BenchCell` fixes a model, an estimator with its tuning value, the
sample size ``n`` and the number of replicates ``K``.  Replicate ``k`` of a
cell simulates its series from the stream ``(master_seed, k, 0)`` and, for the
averaged estimator, uses ``derive_seed(master_seed, k, 1)`` as the inner
seed.  Cells sharing a master seed therefore see the same simulated series
(common random numbers), results never depend on cell order or on the
number of worker processes, and growing ``K`` keeps earlier replicates fixed.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from exind.comparators import BlockConfig, ferro_segers_at_level, northrop
from exind.core import EstimatorConfig, estimate_theta
from exind.errors import InvalidInputError
from exind.rng import derive_seed, replicate_rng
from exind.sim import PAPER_MODELS, simulate, theoretical_theta

__all__ = [
    "ESTIMATORS",
    "BLOCK_LENGTHS",
    "QUANTILE_LEVELS",
    "BenchCell",
    "BenchResult",
    "error_summary",
    "run_cell",
    "run_study",
    "table_grid",
    "format_table",
    "write_summary_csv",
    "write_raw_csv",
    "SUMMARY_COLUMNS",
    "RAW_COLUMNS",
]

logger = logging.getLogger(__name__)

ESTIMATORS = ("new", "northrop", "ferro_segers")
BLOCK_LENGTHS = (10, 20, 30, 40, 50, 70)
QUANTILE_LEVELS = (0.90, 0.95, 0.99)

SUMMARY_COLUMNS = ("model", "estimator", "tuning", "n", "K", "M", "rmse", "abias", "K_requested", "error")
RAW_COLUMNS = ("model", "estimator", "tuning", "n", "replicate", "estimate", "error")


@dataclass(frozen=True)
class BenchCell:
    """One (model, estimator, tuning) configuration of the study.

    ``tuning`` is the block length ``r`` for ``"new"``, the block length ``b``
    for ``"northrop"`` (sliding blocks) and the quantile level for
    ``"ferro_segers"``.  ``M`` is only used by ``"new"``.
    """

    model: object
    estimator: str
    tuning: float
    n: int
    K: int = 100
    M: int = 100
    master_seed: int = 0

    def validate(self):
        if self.estimator not in ESTIMATORS:
            raise InvalidInputError(f"unknown estimator {self.estimator!r}; choose from {ESTIMATORS}")
        if self.K < 2:
            raise InvalidInputError(f"K must be at least 2, got {self.K}")
        if self.n < 1:
            raise InvalidInputError(f"n must be positive, got {self.n}")
        if self.estimator == "ferro_segers":
            if not 0.0 < self.tuning <= 1.0:
                raise InvalidInputError(f"quantile level must lie in (0, 1], got {self.tuning!r}")
        elif int(self.tuning) != self.tuning or self.tuning < 1:
            raise InvalidInputError(f"{self.estimator} needs an integer block length, got {self.tuning!r}")
        if self.estimator == "new" and self.M < 1:
            raise InvalidInputError(f"M must be positive, got {self.M}")

    @property
    def label(self):
        return f"{self.model.name}/{self.estimator}/{self.tuning}"


@dataclass
class BenchResult:
    """Outcome of one cell; missing replicates are ``nan`` in ``estimates``."""

    cell: BenchCell
    estimates: np.ndarray
    rmse: float
    abias: float
    theta: float
    replicate_errors: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def effective_K(self):
        return int(np.isfinite(self.estimates).sum())


def error_summary(estimates, theta):
    """Return ``(rmse, abias)`` of the finite entries of ``estimates`` about ``theta``."""
    e = np.asarray(estimates, dtype=np.float64)
    e = e[np.isfinite(e)]
    return float(np.sqrt(np.mean((e - theta) ** 2))), float(abs(np.mean(e) - theta))


def _estimate_one(cell, series, k):
    if cell.estimator == "new":
        config = EstimatorConfig(r=int(cell.tuning), M=cell.M, seed=derive_seed(cell.master_seed, k, 1))
        return estimate_theta(series, config).theta
    if cell.estimator == "northrop":
        return northrop(series, BlockConfig(b=int(cell.tuning)))
    return ferro_segers_at_level(series, cell.tuning)


def run_cell(cell):
    """Run the ``K`` replicates of ``cell`` and summarise them.

    Replicates whose estimator fails (too few exceedances, too few blocks)
    are stored as ``nan`` and listed in ``replicate_errors``.

    Raises
    ------
    InvalidInputError
        If the cell is malformed or fewer than 2 replicates succeed.
    """
    cell.validate()
    theta = theoretical_theta(cell.model)
    estimates = np.full(cell.K, np.nan)
    failures = {}
    for k in range(cell.K):
        series = simulate(cell.model, cell.n, replicate_rng(cell.master_seed, k, 0))
        try:
            estimates[k] = _estimate_one(cell, series, k)
        except InvalidInputError as exc:
            failures[k] = str(exc)
    ok = cell.K - len(failures)
    if failures:
        logger.info("%s: %d of %d replicates failed", cell.label, len(failures), cell.K)
    if ok < 2:
        raise InvalidInputError(f"{cell.label}: only {ok} of {cell.K} replicates succeeded")
    rmse, abias = error_summary(estimates, theta)
    return BenchResult(cell, estimates, rmse, abias, theta, failures)


def _run_cell_safe(cell):
    try:
        return run_cell(cell)
    except Exception as exc:  # collected per cell, never fatal to the study
        logger.warning("cell %s failed: %s", getattr(cell, "label", cell), exc)
        return BenchResult(cell, np.full(max(int(cell.K), 0), np.nan), np.nan, np.nan, np.nan, error=str(exc))


def run_study(cells, workers=None):
    """Run every cell and return results in input order.

    Parameters
    ----------
    cells : list of BenchCell
    workers : int, optional
        Number of worker processes; ``None`` or 1 runs serially.  Output is
        bit-identical either way.
    """
    cells = list(cells)
    if not cells:
        raise InvalidInputError("the study has no cells")
    if workers is None or workers <= 1:
        return [_run_cell_safe(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell_safe, cells))


def table_grid(n, K=100, M=100, master_seed=0, models=PAPER_MODELS,
               block_lengths=BLOCK_LENGTHS, quantiles=QUANTILE_LEVELS):
    """Cells of the comparison table: every model crossed with every tuning."""
    cells: List[BenchCell] = []
    for model in models:
        cells += [BenchCell(model, "new", r, n, K, M, master_seed) for r in block_lengths]
        cells += [BenchCell(model, "northrop", b, n, K, M, master_seed) for b in block_lengths]
        cells += [BenchCell(model, "ferro_segers", q, n, K, M, master_seed) for q in quantiles]
    return cells


def _tuning_text(cell):
    if cell.estimator == "ferro_segers":
        return f"q{cell.tuning:.2f}"
    return f"r={int(cell.tuning)}"


def format_table(results, metric="rmse"):
    """Render results as a text table: one row per estimator/tuning, one column per model."""
    models = list(dict.fromkeys(r.cell.model.name for r in results))
    rows = {}
    for res in results:
        key = (res.cell.estimator, _tuning_text(res.cell))
        rows.setdefault(key, {})[res.cell.model.name] = getattr(res, metric)
    head = f"{metric:<24}" + "".join(f"{m:>8}" for m in models)
    lines = [head, "-" * len(head)]
    for (est, tun), vals in rows.items():
        cells = "".join(f"{vals.get(m, np.nan):8.3f}" for m in models)
        lines.append(f"{est + ' (' + tun + ')':<24}{cells}")
    return "\n".join(lines)


def _fmt(v):
    return "" if v is None or not np.isfinite(v) else repr(float(v))


def _tuning_value(cell):
    t = cell.tuning
    return repr(float(t)) if cell.estimator == "ferro_segers" else str(int(t))


def write_summary_csv(results, fh):
    """Write one row per cell with columns :data:`SUMMARY_COLUMNS` to a text file object."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for res in results:
        c = res.cell
        w.writerow([
            c.model.name, c.estimator, _tuning_value(c), c.n, res.effective_K,
            c.M if c.estimator == "new" else "", _fmt(res.rmse), _fmt(res.abias), c.K, res.error or "",
        ])


def write_raw_csv(results, fh):
    """Write one row per replicate with columns :data:`RAW_COLUMNS` to a text file object."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(RAW_COLUMNS)
    for res in results:
        c = res.cell
        for k, est in enumerate(res.estimates):
            msg = res.replicate_errors.get(k, res.error or "")
            w.writerow([c.model.name, c.estimator, _tuning_value(c), c.n, k, _fmt(est), msg])
