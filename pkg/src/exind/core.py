"""Blocks estimator of the extremal index through a tail dependence coefficient.

A stationary series ``X`` with extremal index ``theta`` is paired with an
independent standard Frechet sequence ``Xh`` as ``(Xh_i, max(Xh_i, X_i) / 2)``.
Component-wise block maxima of those pairs are asymptotically distributed
with the extreme value copula ``C(u, v) = min(u * v**(theta / (1 + theta)), v)``
whose tail dependence coefficient is ``lambda = 1 / (1 + theta)``.  Estimating
``lambda`` nonparametrically from the block maxima and inverting gives
``theta``; averaging over many auxiliary sequences removes most of the noise
injected by ``Xh``.

Series are plain 1-d float arrays and pair samples are ``(m, 2)`` arrays
(column 0 holds the auxiliary coordinate).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import rankdata

from exind.errors import InvalidInputError
from exind.rng import as_generator, replicate_rng

__all__ = [
    "EstimatorConfig",
    "ThetaEstimate",
    "as_series",
    "modified_empirical_cdf",
    "to_frechet",
    "frechet_from_uniform",
    "sample_frechet",
    "build_pairs",
    "block_maxima",
    "estimate_stdf11",
    "lambda_from_stdf",
    "theta_from_lambda",
    "lambda_from_theta",
    "estimate_theta_single",
    "estimate_theta",
    "bev_copula",
]

# Rows of auxiliary sequences materialised at once inside estimate_theta.
_CHUNK_ROWS = 128


@dataclass(frozen=True)
class EstimatorConfig:
    """Tuning of the averaged estimator.

    Parameters
    ----------
    r : int
        Block length used for the component-wise maxima.
    M : int
        Number of auxiliary Frechet sequences averaged over.
    seed : int
        Master seed; replicate ``s`` draws from the stream keyed ``(seed, s)``.
    """

    r: int
    M: int = 100
    seed: int = 0

    def validate(self, n):
        if int(self.r) != self.r or self.r < 1:
            raise InvalidInputError(f"block length r must be a positive integer, got {self.r!r}")
        if int(self.M) != self.M or self.M < 1:
            raise InvalidInputError(f"replicate count M must be a positive integer, got {self.M!r}")
        if self.r > n:
            raise InvalidInputError(f"block length r={self.r} exceeds series length n={n}")
        if n // self.r < 2:
            raise InvalidInputError(
                f"n={n}, r={self.r} yields {n // self.r} block(s); at least 2 are needed"
            )


@dataclass
class ThetaEstimate:
    """Result of the estimator.

    ``lambda_`` is the unclamped tail dependence estimate.  For an averaged
    estimate it is the mean of the per-replicate values, and the individual
    replicates are kept in ``per_replicate`` / ``per_replicate_lambda``.
    """

    theta: float
    lambda_: float
    per_replicate: Optional[np.ndarray] = None
    per_replicate_lambda: Optional[np.ndarray] = None


def as_series(values, name="series"):
    """Validate and return ``values`` as a 1-d float64 array of finite reals."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise InvalidInputError(f"{name} is empty")
    bad = np.flatnonzero(~np.isfinite(x))
    if bad.size:
        raise InvalidInputError(f"{name} has a non-finite value at index {bad[0]}")
    return x


def modified_empirical_cdf(sample, x):
    """Empirical df with denominator ``n + 1``.

    Parameters
    ----------
    sample : array_like
        Finite reference sample of size ``n``.
    x : float or array_like
        Evaluation points.

    Returns
    -------
    float or ndarray
        ``#{l : sample[l] <= x} / (n + 1)``, always strictly below 1.
    """
    s = np.sort(as_series(sample, "sample"))
    counts = np.searchsorted(s, x, side="right")
    out = counts / (s.size + 1.0)
    return float(out) if np.ndim(out) == 0 else out


def _max_ranks(values, axis=-1):
    # Rank = #{l : v_l <= v_i}; ties share the top rank of their group.
    return rankdata(values, method="max", axis=axis)


def to_frechet(series):
    """Map a series to the standard Frechet scale through its ranks.

    Each value becomes ``-1 / log(F(x_i))`` with ``F`` the modified empirical
    df of the whole series, so the output depends on the data only through
    the within-sample ranks.  Tied inputs share the largest rank of their group.
    """
    x = as_series(series)
    ranks = _max_ranks(x)
    return -1.0 / np.log(ranks / (x.size + 1.0))


def frechet_from_uniform(u):
    """Inverse-transform uniforms to standard Frechet: ``-1 / log(u)``."""
    u = np.asarray(u, dtype=np.float64)
    # rng.random() can return exactly 0.0, which would map to 0.
    u = np.where(u > 0.0, u, np.finfo(np.float64).tiny)
    return -1.0 / np.log(u)


def sample_frechet(n, rng=None):
    """Draw ``n`` iid standard Frechet variates (df ``exp(-1/x)``)."""
    if int(n) != n or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    return frechet_from_uniform(as_generator(rng).random(int(n)))


def build_pairs(x, x_hat):
    """Pair ``x_hat[i]`` with ``max(x_hat[i] / 2, x[i] / 2)``.

    Returns an ``(n, 2)`` array.
    """
    x = np.asarray(x, dtype=np.float64)
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x.shape != x_hat.shape:
        raise InvalidInputError(f"length mismatch: x has shape {x.shape}, x_hat has shape {x_hat.shape}")
    return np.stack((x_hat, 0.5 * np.maximum(x_hat, x)), axis=-1)


def block_maxima(pairs, r):
    """Component-wise maxima over consecutive disjoint blocks of length ``r``.

    The trailing ``len(pairs) % r`` rows are discarded.  Leading axes are
    treated as a batch, so ``pairs`` may have shape ``(..., n, 2)``.
    """
    pairs = np.asarray(pairs, dtype=np.float64)
    if int(r) != r or r < 1:
        raise InvalidInputError(f"block length must be a positive integer, got {r!r}")
    r = int(r)
    n = pairs.shape[-2]
    m = n // r
    if m < 2:
        raise InvalidInputError(f"{n} pairs with r={r} give {m} complete block(s); at least 2 are needed")
    head = pairs[..., : m * r, :]
    return head.reshape(*pairs.shape[:-2], m, r, pairs.shape[-1]).max(axis=-2)


def _stdf11_rows(z1, z2):
    # Works on (..., m) arrays; integer rank sums keep the comonotone case exact.
    m = z1.shape[-1]
    top = np.maximum(_max_ranks(z1), _max_ranks(z2)).sum(axis=-1)
    mean = top / (m * (m + 1.0))
    return 1.0 / (1.0 - mean) - 1.0


def estimate_stdf11(pairs):
    """Plug-in estimate of the stable tail dependence function at ``(1, 1)``.

    ``1 / (1 - mean_i max(G1(Z_i1), G2(Z_i2))) - 1`` where ``G1``, ``G2`` are
    the modified empirical dfs of the two coordinates.
    """
    pairs = np.asarray(pairs, dtype=np.float64)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise InvalidInputError(f"pairs must have shape (m, 2), got {pairs.shape}")
    if pairs.shape[0] < 2:
        raise InvalidInputError("at least 2 pairs are needed")
    return float(_stdf11_rows(pairs[:, 0], pairs[:, 1]))


def lambda_from_stdf(l):
    """Tail dependence coefficient ``2 - l(1, 1)``."""
    return 2.0 - l


def theta_from_lambda(lam):
    """Invert ``lambda = 1 / (1 + theta)`` after clamping ``lambda`` to ``[1/2, 1]``."""
    out = 1.0 / np.clip(lam, 0.5, 1.0) - 1.0
    return float(out) if np.ndim(out) == 0 else out


def lambda_from_theta(theta):
    """Tail dependence coefficient ``1 - theta / (1 + theta)`` of the limiting copula."""
    return 1.0 - theta / (1.0 + theta)


def _estimate_rows(x_frechet, x_hat, r):
    """Return (theta, lambda) arrays for a batch of auxiliary sequences."""
    maxima = block_maxima(build_pairs(np.broadcast_to(x_frechet, x_hat.shape), x_hat), r)
    lam = lambda_from_stdf(_stdf11_rows(maxima[..., 0], maxima[..., 1]))
    return theta_from_lambda(lam), lam


def estimate_theta_single(series, r, rng=None, x_hat=None):
    """One draw of the estimator (no averaging).

    Parameters
    ----------
    series : array_like
        The observed stationary series.
    r : int
        Block length.
    rng : Generator, int or None
        Source of the auxiliary Frechet sequence.
    x_hat : array_like, optional
        Use this auxiliary sequence instead of drawing one from ``rng``.

    Returns
    -------
    ThetaEstimate
    """
    x = to_frechet(series)
    EstimatorConfig(r=r, M=1).validate(x.size)
    if x_hat is None:
        x_hat = sample_frechet(x.size, rng)
    else:
        x_hat = np.asarray(x_hat, dtype=np.float64)
        if x_hat.shape != x.shape:
            raise InvalidInputError(f"x_hat has shape {x_hat.shape}, expected {x.shape}")
    theta, lam = _estimate_rows(x, x_hat[None, :], r)
    return ThetaEstimate(theta=float(theta[0]), lambda_=float(lam[0]))


def estimate_theta(series, config):
    """Averaged estimator of the extremal index.

    The rank transform is computed once; each of the ``config.M`` replicates
    then draws its own auxiliary sequence from the stream keyed by
    ``(config.seed, s)`` and the ``M`` single estimates are averaged.

    Examples
    --------
    >>> import numpy as np
    >>> x = np.random.default_rng(1).standard_normal(2000)
    >>> est = estimate_theta(x, EstimatorConfig(r=20, M=50, seed=7))
    >>> 0.0 <= est.theta <= 1.0
    True
    """
    x = to_frechet(series)
    n = x.size
    config.validate(n)
    thetas = np.empty(config.M)
    lams = np.empty(config.M)
    for start in range(0, config.M, _CHUNK_ROWS):
        stop = min(start + _CHUNK_ROWS, config.M)
        x_hat = np.stack([sample_frechet(n, replicate_rng(config.seed, s)) for s in range(start, stop)])
        thetas[start:stop], lams[start:stop] = _estimate_rows(x, x_hat, config.r)
    return ThetaEstimate(
        theta=float(thetas.mean()),
        lambda_=float(lams.mean()),
        per_replicate=thetas,
        per_replicate_lambda=lams,
    )


def bev_copula(u, v, theta):
    """Limiting copula ``min(u * v**(theta / (1 + theta)), v)`` of the pair maxima."""
    return np.minimum(u * np.power(v, theta / (1.0 + theta)), v)
