"""Extremal index estimation through the tail dependence of block maxima.

The main entry point is :func:`estimate_theta`; :mod:`exind.comparators`
holds the intervals and sliding-blocks competitors, :mod:`exind.sim` the
benchmark processes and :mod:`exind.bench` the Monte Carlo harness.
"""

from exind.comparators import BlockConfig, exceedances, ferro_segers, ferro_segers_at_level, northrop
from exind.core import (
    EstimatorConfig,
    ThetaEstimate,
    block_maxima,
    build_pairs,
    estimate_stdf11,
    estimate_theta,
    estimate_theta_single,
    lambda_from_stdf,
    theta_from_lambda,
    to_frechet,
)
from exind.errors import InsufficientExceedancesError, InvalidInputError, UnsupportedModelError
from exind.sim import make_model, simulate, theoretical_theta

__version__ = "0.1.0"
