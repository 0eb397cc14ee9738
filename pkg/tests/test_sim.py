import math

import numpy as np
import pytest
from numpy.testing import assert_array_equal
from scipy import stats

from exind import sim
from exind.errors import InvalidInputError, UnsupportedModelError
from exind.sim import ARCH, MAR, MM, ARCau, ARUnif, MCLogistic, simulate, theoretical_theta


def test_mm_window_example():
    assert sim.moving_maxima([6.0, 6.0, 6.0], MM().alphas)[0] == pytest.approx(3.0)


def test_mm_alignment():
    # alpha_0 multiplies the newest value z_t, alpha_2 the oldest z_{t-2}
    out = sim.moving_maxima([1.0, 0.0, 0.0, 0.0], (0.2, 0.3, 0.5))
    assert out.tolist() == [0.5, 0.0]
    out = sim.moving_maxima([0.0, 0.0, 1.0, 0.0], (0.2, 0.3, 0.5))
    assert out.tolist() == [0.2, 0.3]


def test_mar_lower_bound():
    x = simulate(MAR(), 5000, 1)
    assert np.all(x[1:] >= 0.5 * x[:-1])


@pytest.mark.parametrize("spec", sim.PAPER_MODELS, ids=lambda s: s.name)
def test_deterministic_per_seed(spec):
    a = simulate(spec, 300, 42)
    assert a.shape == (300,)
    assert np.all(np.isfinite(a))
    assert_array_equal(a, simulate(spec, 300, 42))
    assert not np.array_equal(a, simulate(spec, 300, 43))


def test_arcau_cdf_at_one():
    x = simulate(ARCau(), 100_000, 3)
    assert abs(np.mean(x <= 1.0) - 0.75) < 0.01


KS_CASES = [
    (ARCau(), stats.cauchy.cdf),
    (ARUnif(), stats.uniform.cdf),
    (MM(), lambda x: np.exp(-1.0 / np.maximum(x, 1e-300))),
    (MAR(), lambda x: np.exp(-1.0 / np.maximum(x, 1e-300))),
    (MCLogistic(), stats.gumbel_r.cdf),
]


@pytest.mark.parametrize("spec, cdf", KS_CASES, ids=lambda v: getattr(v, "name", ""))
def test_marginals_ks(spec, cdf):
    x = simulate(spec, 100_000, 11)
    assert stats.kstest(x, cdf).statistic < 0.01


def test_arunif_lag_one_correlation():
    x = simulate(ARUnif(), 100_000, 5)
    assert abs(np.corrcoef(x[:-1], x[1:])[0, 1] + 0.5) < 0.01


def test_arch_variance():
    x = simulate(ARCH(), 200_000, 5)
    assert np.var(x) == pytest.approx(1.9e-5 / 0.5, rel=0.05)


def test_logistic_conditional_cdf_finite_difference():
    a = 0.5

    def G(x, y):
        return math.exp(-((math.exp(-x / a) + math.exp(-y / a)) ** a))

    h = 1e-6
    for x, y in [(0.0, 0.0), (1.5, -0.3), (-1.0, 2.0), (3.0, 3.5)]:
        dGdx = (G(x + h, y) - G(x - h, y)) / (2 * h)
        gx = math.exp(-math.exp(-x)) * math.exp(-x)
        assert sim.logistic_conditional_cdf(y, x, a) == pytest.approx(dGdx / gx, abs=1e-7)


def test_mc_logistic_pair_distribution():
    x = simulate(MCLogistic(), 200_000, 9)
    a = 0.5
    for s, t in [(0.0, 0.0), (1.0, 2.0), (2.0, 2.0), (-0.5, 1.0)]:
        expected = math.exp(-((math.exp(-s / a) + math.exp(-t / a)) ** a))
        assert np.mean((x[:-1] <= s) & (x[1:] <= t)) == pytest.approx(expected, abs=0.005)


def test_mm_stationarity_two_sample():
    x = simulate(MM(), 200_000, 21)
    first, second = x[: 100_000], x[100_000:]
    for stat in (lambda v: np.maximum(v[:-1], v[1:]), lambda v: v[1:] / v[:-1]):
        assert stats.ks_2samp(stat(first), stat(second)).pvalue > 1e-3


@pytest.mark.parametrize(
    "spec, theta",
    [(ARCau(), 0.64), (ARUnif(), 0.75), (MM(), 0.5), (MAR(), 0.5), (MCLogistic(), 0.328), (ARCH(), 0.835)],
    ids=lambda v: getattr(v, "name", str(v)),
)
def test_theoretical_theta_paper_values(spec, theta):
    assert theoretical_theta(spec) == pytest.approx(theta, abs=1e-15)


def test_theoretical_theta_closed_forms():
    assert theoretical_theta(ARCau(rho=0.3)) == pytest.approx(0.7)
    assert theoretical_theta(ARUnif(r=3)) == pytest.approx(8 / 9)
    assert theoretical_theta(MM(alphas=(0.7, 0.3))) == 0.7
    assert theoretical_theta(MAR(phi=0.2)) == pytest.approx(0.8)


@pytest.mark.parametrize("spec", [MCLogistic(alpha=0.7), ARCH(lam=0.3)])
def test_theoretical_theta_unsupported(spec):
    with pytest.raises(UnsupportedModelError):
        theoretical_theta(spec)


@pytest.mark.parametrize(
    "ctor",
    [
        lambda: ARCau(rho=0.0),
        lambda: ARCau(rho=-1.0),
        lambda: ARUnif(r=1),
        lambda: MM(alphas=(0.5, 0.4)),
        lambda: MM(alphas=(1.2, -0.2)),
        lambda: MAR(phi=1.0),
        lambda: MCLogistic(alpha=0.0),
        lambda: ARCH(lam=0.5, beta=0.0),
        lambda: MAR(burn_in=-1),
    ],
)
def test_invalid_specs(ctor):
    with pytest.raises(InvalidInputError):
        ctor()


def test_make_model():
    assert sim.make_model("MC") == MCLogistic()
    assert sim.make_model("ARCau", rho=-0.3).rho == -0.3
    assert sim.make_model("MM", alphas=[0.5, 0.5]).alphas == (0.5, 0.5)
    with pytest.raises(InvalidInputError):
        sim.make_model("AR2")
    with pytest.raises(InvalidInputError):
        sim.make_model("MAR", rho=0.1)


def test_burn_in_discarded():
    spec = ARCH(burn_in=0)
    w = np.random.default_rng(3).standard_normal(5)
    x = simulate(spec, 5, 3)
    assert x[0] == pytest.approx(math.sqrt(1.9e-5) * w[0])
