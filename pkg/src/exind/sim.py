"""Stationary processes with known extremal index.

Each model is a small frozen dataclass whose defaults are the
parameterisations used in the benchmark study; :func:`simulate` draws a
series and :func:`theoretical_theta` returns the catalogued extremal index.

==========  ====================================================  ========
model       recurrence                                            theta
==========  ====================================================  ========
ARCau       X_t = rho X_{t-1} + (1 - |rho|) e_t, e_t Cauchy       1 - rho^2 (rho < 0), 1 - rho (rho > 0)
ARUnif      X_t = -X_{t-1} / r + e_t, e_t on {1/r, ..., 1}          1 - 1/r^2
MM          X_t = max_j alpha_j Z_{t-j}, Z Frechet                max alpha_j
MAR         X_t = max(phi X_{t-1}, (1 - phi) Z_t), Z Frechet      1 - phi
MCLogistic  Gumbel Markov chain, logistic pair df                 0.328 (alpha = 0.5)
ARCH        X_t = (beta + lam X_{t-1}^2)^(1/2) W_t, W Gaussian    0.835 (lam = 0.5)
==========  ====================================================  ========
"""

import math
from dataclasses import dataclass, fields
from typing import ClassVar, Tuple

import numba
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import lfilter

from exind.core import frechet_from_uniform
from exind.errors import InvalidInputError, UnsupportedModelError
from exind.rng import as_generator

__all__ = [
    "ARCau",
    "ARUnif",
    "MM",
    "MAR",
    "MCLogistic",
    "ARCH",
    "MODELS",
    "PAPER_MODELS",
    "make_model",
    "model_params",
    "simulate",
    "theoretical_theta",
    "moving_maxima",
    "logistic_conditional_cdf",
]

DEFAULT_BURN_IN = 1000


@dataclass(frozen=True)
class ARCau:
    """AR(1) with standard Cauchy marginals."""

    name: ClassVar[str] = "ARCau"
    rho: float = -0.6
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if not (-1.0 < self.rho < 1.0) or self.rho == 0.0:
            raise InvalidInputError(f"ARCau needs rho in (-1, 0) or (0, 1), got {self.rho!r}")
        _check_burn_in(self)


@dataclass(frozen=True)
class ARUnif:
    """Negatively correlated AR(1) with uniform(0, 1) marginals."""

    name: ClassVar[str] = "ARUnif"
    r: int = 2
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 2:
            raise InvalidInputError(f"ARUnif needs an integer r >= 2, got {self.r!r}")
        _check_burn_in(self)


@dataclass(frozen=True)
class MM:
    """Moving maxima of iid standard Frechet variables."""

    name: ClassVar[str] = "MM"
    alphas: Tuple[float, ...] = (2 / 6, 1 / 6, 3 / 6)
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=np.float64)
        if a.ndim != 1 or a.size == 0 or np.any(a < 0) or abs(a.sum() - 1.0) > 1e-12:
            raise InvalidInputError(f"MM alphas must be nonnegative and sum to 1, got {self.alphas!r}")
        object.__setattr__(self, "alphas", tuple(float(v) for v in a))
        _check_burn_in(self)


@dataclass(frozen=True)
class MAR:
    """Max-autoregressive process with standard Frechet marginals."""

    name: ClassVar[str] = "MAR"
    phi: float = 0.5
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if not 0.0 < self.phi < 1.0:
            raise InvalidInputError(f"MAR needs phi in (0, 1), got {self.phi!r}")
        _check_burn_in(self)


@dataclass(frozen=True)
class MCLogistic:
    """Markov chain with Gumbel marginals and logistic bivariate transitions."""

    name: ClassVar[str] = "MC"
    alpha: float = 0.5
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidInputError(f"MC needs alpha in (0, 1], got {self.alpha!r}")
        _check_burn_in(self)


@dataclass(frozen=True)
class ARCH:
    """ARCH(1) with Gaussian innovations."""

    name: ClassVar[str] = "ARCH"
    lam: float = 0.5
    beta: float = 1.9e-5
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise InvalidInputError(f"ARCH needs lam in (0, 1), got {self.lam!r}")
        if not self.beta > 0.0:
            raise InvalidInputError(f"ARCH needs beta > 0, got {self.beta!r}")
        _check_burn_in(self)


def _check_burn_in(spec):
    if int(spec.burn_in) != spec.burn_in or spec.burn_in < 0:
        raise InvalidInputError(f"burn_in must be a nonnegative integer, got {spec.burn_in!r}")


MODELS = {cls.name: cls for cls in (ARCau, ARUnif, MM, MAR, MCLogistic, ARCH)}
MODELS["MCLogistic"] = MCLogistic

# Benchmark column order.
PAPER_MODELS = (MAR(), MM(), ARUnif(), ARCau(), ARCH(), MCLogistic())


def make_model(name, **params):
    """Build a model spec from its short name (``"ARCau"``, ``"MC"``, ...)."""
    try:
        cls = MODELS[name]
    except KeyError:
        raise InvalidInputError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
    known = {f.name for f in fields(cls)}
    extra = set(params) - known
    if extra:
        raise InvalidInputError(f"unknown parameter(s) {sorted(extra)} for {name}; expected {sorted(known)}")
    if "alphas" in params:
        params["alphas"] = tuple(params["alphas"])
    return cls(**params)


def model_params(spec):
    """Parameters of ``spec`` as a plain dict (burn-in included)."""
    return {f.name: getattr(spec, f.name) for f in fields(spec)}


def moving_maxima(z, alphas):
    """``X_t = max_j alphas[j] * z[t - j]`` for every full window of ``z``.

    Returns ``len(z) - len(alphas) + 1`` values; the first uses
    ``z[0 .. q]`` with ``q = len(alphas) - 1``.
    """
    z = np.asarray(z, dtype=np.float64)
    a = np.asarray(alphas, dtype=np.float64)
    # window k holds z[k .. k+q]; reversed alphas line up alpha_j with z[t - j]
    return (sliding_window_view(z, a.size) * a[::-1]).max(axis=1)


@numba.njit(cache=True)
def _mar_path(x0, phi, innov):
    out = np.empty(innov.size)
    prev = x0
    for t in range(innov.size):
        prev = max(phi * prev, innov[t])
        out[t] = prev
    return out


@numba.njit(cache=True)
def _arch_path(lam, beta, w):
    out = np.empty(w.size)
    prev = 0.0
    for t in range(w.size):
        prev = math.sqrt(beta + lam * prev * prev) * w[t]
        out[t] = prev
    return out


@numba.njit(cache=True)
def _logistic_log_cond(y, x, alpha):
    # log P(Y <= y | X = x) for the logistic pair df with Gumbel margins
    s = math.exp(-x / alpha)
    t = math.exp(-y / alpha)
    st = s + t
    return -(st ** alpha) + s ** alpha + (alpha - 1.0) * math.log(st) + (1.0 - alpha) * math.log(s)


@numba.njit(cache=True)
def _logistic_inverse(q, x, alpha, tol):
    lo = -50.0
    hi = 60.0
    logq = math.log(q)
    while _logistic_log_cond(lo, x, alpha) > logq:
        lo -= 50.0
    while _logistic_log_cond(hi, x, alpha) < logq:
        hi += 50.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _logistic_log_cond(mid, x, alpha) < logq:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@numba.njit(cache=True)
def _mc_logistic_path(x0, alpha, q, tol):
    out = np.empty(q.size)
    prev = x0
    for t in range(q.size):
        prev = _logistic_inverse(q[t], prev, alpha, tol)
        out[t] = prev
    return out


def logistic_conditional_cdf(y, x, alpha):
    """``P(Y <= y | X = x)`` under ``G(x, y) = exp(-(e^{-x/a} + e^{-y/a})^a)``."""
    return math.exp(_logistic_log_cond(float(y), float(x), float(alpha)))


def _open_uniform(rng, size):
    u = rng.random(size)
    return np.where(u > 0.0, u, np.finfo(np.float64).tiny)


def simulate(spec, n, rng=None):
    """Draw ``n`` consecutive observations of the process ``spec``.

    Recursive models start from the initial value described on their class,
    run ``spec.burn_in`` steps and discard them.  The moving maxima process is
    exactly stationary and ignores ``burn_in``.

    Parameters
    ----------
    spec : ARCau, ARUnif, MM, MAR, MCLogistic or ARCH
    n : int
    rng : Generator, int or None

    Returns
    -------
    ndarray of shape (n,)
    """
    if int(n) != n or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    rng = as_generator(rng)
    total = n + spec.burn_in

    if isinstance(spec, ARCau):
        x0 = rng.standard_cauchy()
        eps = (1.0 - abs(spec.rho)) * rng.standard_cauchy(total)
        path, _ = lfilter([1.0], [1.0, -spec.rho], eps, zi=[spec.rho * x0])
    elif isinstance(spec, ARUnif):
        x0 = rng.random()
        eps = rng.integers(1, spec.r + 1, size=total) / spec.r
        path, _ = lfilter([1.0], [1.0, 1.0 / spec.r], eps, zi=[-x0 / spec.r])
    elif isinstance(spec, MM):
        z = frechet_from_uniform(rng.random(n + len(spec.alphas) - 1))
        return moving_maxima(z, spec.alphas)
    elif isinstance(spec, MAR):
        x0 = frechet_from_uniform(rng.random())
        innov = (1.0 - spec.phi) * frechet_from_uniform(rng.random(total))
        path = _mar_path(float(x0), spec.phi, innov)
    elif isinstance(spec, MCLogistic):
        x0 = -math.log(-math.log(_open_uniform(rng, 1)[0]))
        q = _open_uniform(rng, total)
        path = _mc_logistic_path(x0, spec.alpha, q, 1e-10)
    elif isinstance(spec, ARCH):
        w = rng.standard_normal(total)
        path = _arch_path(spec.lam, spec.beta, w)
    else:
        raise InvalidInputError(f"not a model spec: {spec!r}")
    return np.ascontiguousarray(path[spec.burn_in:])


_TABULATED = {
    ("MC", "alpha", 0.5): 0.328,
    ("ARCH", "lam", 0.5): 0.835,
}


def theoretical_theta(spec):
    """Extremal index of ``spec`` where a closed form or table value is known.

    Raises
    ------
    UnsupportedModelError
        For the logistic chain and ARCH(1) at parameters other than the
        tabulated ``alpha = 0.5`` and ``lam = 0.5``.
    """
    if isinstance(spec, ARCau):
        return 1.0 - spec.rho ** 2 if spec.rho < 0 else 1.0 - spec.rho
    if isinstance(spec, ARUnif):
        return 1.0 - 1.0 / spec.r ** 2
    if isinstance(spec, MM):
        return max(spec.alphas)
    if isinstance(spec, MAR):
        return 1.0 - spec.phi
    if isinstance(spec, MCLogistic):
        key = ("MC", "alpha", spec.alpha)
    elif isinstance(spec, ARCH):
        key = ("ARCH", "lam", spec.lam)
    else:
        raise InvalidInputError(f"not a model spec: {spec!r}")
    if key not in _TABULATED:
        raise UnsupportedModelError(f"no catalogued extremal index for {spec!r}")
    return _TABULATED[key]
