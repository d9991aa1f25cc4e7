import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipgo import Estimator, MethodConfig
from lipgo.core import EstimateViolated
from lipgo.linear import (
    characteristic,
    estimate_global,
    estimate_local_tuning,
    estimates,
    eval_lower_bound,
    place_trial,
    rate_H,
    tent,
)


@pytest.mark.parametrize(
    "x, z, expected", [((0, 1), (0, 3), 3.0), ((0, 2), (1, 1), 0.0), ((0.4, 0.5), (0.4, 0.3), 1.0)]
)
def test_rate_H(x, z, expected):
    assert rate_H(x[0], x[1], z[0], z[1]) == pytest.approx(expected)


def test_estimate_global():
    assert estimate_global([0.0], 1.1, 1e-8) == pytest.approx(1.1e-8)
    assert estimate_global([1.0, 0.1], 1.1, 1e-8) == pytest.approx(1.1)
    assert estimate_global([1e-8, 1e-9], 1.1, 1e-8) == pytest.approx(1.1e-8)


def test_local_tuning_single_interval():
    assert estimate_local_tuning([0.7], [2.0], 1.1, 1e-8) == pytest.approx([0.77])


def test_local_tuning_worked_example():
    xs = np.array([0.0, 0.4, 0.5, 1.0])
    zs = np.array([0.0, 0.4, 0.3, 0.35])
    rates = rate_H(xs[:-1], xs[1:], zs[:-1], zs[1:])
    np.testing.assert_allclose(rates, [1.0, 1.0, 0.1])
    ls = estimate_local_tuning(rates, np.diff(xs), 1.1, 1e-8)
    assert ls[2] == pytest.approx(1.1)
    # middle interval: neighbours give 1.0, width term 1.0*0.1/0.5
    assert ls[1] == pytest.approx(1.1)


@settings(max_examples=100)
@given(st.lists(st.tuples(st.floats(1e-3, 1.0), st.floats(0.0, 10.0)), min_size=1, max_size=20))
def test_local_tuning_properties(data):
    widths = np.array([w for w, _ in data])
    rates = np.array([h for _, h in data])
    r, xi = 1.3, 1e-8
    ls = estimate_local_tuning(rates, widths, r, xi)
    assert np.all(ls >= r * rates * (1 - 1e-12))
    assert np.all(ls <= estimate_global(rates, r, xi) * (1 + 1e-12))
    widest = np.argmax(widths)
    assert ls[widest] >= r * max(rates.max(), xi) * (1 - 1e-12)


def test_estimates_dispatch():
    rates, widths = np.array([1.0, 2.0]), np.array([1.0, 1.0])
    known = MethodConfig(estimator=Estimator.KNOWN_CONSTANT)
    np.testing.assert_array_equal(estimates(rates, widths, known, 5.0), [5.0, 5.0])
    ge = MethodConfig(estimator=Estimator.GLOBAL_ESTIMATE, r=1.5)
    np.testing.assert_allclose(estimates(rates, widths, ge, None), [3.0, 3.0])


def test_characteristic_examples():
    assert characteristic(0, 1, 0, 0, 2) == pytest.approx(-1.0)
    assert characteristic(0, 1, 1, 3, 4) == pytest.approx(0.0)


def test_place_trial_examples():
    assert place_trial(0.0, 1.0, 2.0, 2.0, 3.0) == 0.5
    assert place_trial(0.0, 1.0, 1.0, 0.0, 2.0) == pytest.approx(0.75)
    with pytest.raises(EstimateViolated):
        place_trial(0.0, 1.0, 1.0, 0.0, 1.0)


interval = st.tuples(
    st.floats(-10, 10), st.floats(1e-3, 5), st.floats(-10, 10), st.floats(-10, 10), st.floats(1.01, 3)
)


@settings(max_examples=200)
@given(interval)
def test_characteristic_is_tent_minimum(data):
    x0, width, z0, z1, factor = data
    x1 = x0 + width
    l = factor * rate_H(x0, x1, z0, z1) + 1e-3
    R = characteristic(x0, x1, z0, z1, l)
    grid = np.linspace(x0, x1, 2001)
    sampled = tent(grid, x0, x1, z0, z1, l).min()
    assert R <= sampled + 1e-9
    assert sampled - R <= l * width / 2000 + 1e-9
    x = place_trial(x0, x1, z0, z1, l)
    assert tent(x, x0, x1, z0, z1, l) == pytest.approx(R, abs=1e-9 * (1 + abs(R)))


def test_lower_bound_anchors_and_minorant():
    f = lambda x: np.sin(3 * x) + 0.2 * x
    xs = np.array([0.0, 0.7, 1.3, 2.0, 3.0])
    zs = f(xs)
    L = 3.2
    ls = np.full(4, L)
    for x, z in zip(xs, zs):
        assert eval_lower_bound(xs, zs, ls, x) == pytest.approx(z)
    grid = np.linspace(0, 3, 10_001)
    assert np.all(eval_lower_bound(xs, zs, ls, grid) <= f(grid) + 1e-12)
    t = 1
    x_new = place_trial(xs[t], xs[t + 1], zs[t], zs[t + 1], L)
    R = characteristic(xs[t], xs[t + 1], zs[t], zs[t + 1], L)
    assert eval_lower_bound(xs, zs, ls, x_new) == pytest.approx(R)
