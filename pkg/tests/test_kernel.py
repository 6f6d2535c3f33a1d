import math

import numpy as np
import pytest

from kbeam.kernel import (
    KernelParams,
    greens_dx_matrix,
    greens_matrix,
    kernel,
    kernel_dx,
    stable_sinh_ratio,
)

P11 = KernelParams(a=1.0, l=1.0)


def test_params_validation():
    for a, l in ((0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)):
        with pytest.raises(ValueError):
            KernelParams(a=a, l=l)


def test_range_validation():
    with pytest.raises(ValueError):
        kernel(-0.1, 0.5, P11)
    with pytest.raises(ValueError):
        kernel(0.5, 1.2, P11)
    with pytest.raises(ValueError):
        kernel_dx(2.0, 0.5, P11)


def test_boundary_vanishing():
    xi = np.linspace(0.0, 1.0, 17)
    assert np.abs(kernel(0.0, xi, P11)).max() <= 1e-14
    assert np.abs(kernel(1.0, xi, P11)).max() <= 1e-14


def test_symmetry_is_exact():
    rng = np.random.default_rng(7)
    params = KernelParams(a=2.3, l=1.7)
    for _ in range(50):
        x, xi = rng.uniform(0.0, 1.7, size=2)
        assert kernel(x, xi, params) == kernel(xi, x, params)


def test_center_value_closed_form():
    # direct evaluation of the xi <= x branch, independent of the scaled path
    expected = 0.25 - math.sinh(0.5) ** 2 / math.sinh(1.0)
    value = float(kernel(0.5, 0.5, P11))
    assert abs(value - expected) < 1e-15
    assert abs(value - 0.018941) < 1e-6


def test_positivity_on_interior():
    x = np.linspace(0.05, 0.95, 19)
    for a in (0.5, 1.0, 10.0, 1e3):
        vals = kernel(x[:, None], x[None, :], KernelParams(a=a, l=1.0))
        assert np.all(vals > 0.0)


def test_small_a_limit_reaches_beam_kernel():
    value = float(kernel(0.5, 0.5, KernelParams(a=1e-6, l=1.0)))
    assert abs(value - 1.0 / 48.0) < 1e-5


def test_large_a_is_finite():
    for a in (1e6, 1e8):  # sqrt(a) l up to 1e4
        params = KernelParams(a=a, l=1.0)
        value = float(kernel(0.5, 0.5, params))
        assert np.isfinite(value) and value > 0.0
        assert np.isfinite(float(kernel_dx(0.25, 0.75, params)))


def test_kernel_dx_matches_central_difference():
    params = KernelParams(a=1.3, l=1.0)
    eps = 1e-5
    for x, xi in ((0.3, 0.7), (0.8, 0.2), (0.55, 0.54), (0.12, 0.93)):
        fd = (kernel(x + eps, xi, params) - kernel(x - eps, xi, params)) / (2 * eps)
        assert abs(float(kernel_dx(x, xi, params)) - fd) < 1e-8


def test_kernel_dx_reflection_antisymmetry():
    params = KernelParams(a=2.0, l=1.0)
    rng = np.random.default_rng(3)
    for _ in range(25):
        x, xi = rng.uniform(0.0, 1.0, size=2)
        left = float(kernel_dx(x, xi, params))
        right = -float(kernel_dx(1.0 - x, 1.0 - xi, params))
        assert abs(left - right) < 1e-12


def test_kernel_dx_zero_slope_at_midspan_under_uniform_load():
    # symmetric load gives zero slope at the middle of the beam
    n = 50
    x = np.linspace(0.0, 1.0, n + 1)
    w = np.full(n + 1, 1.0 / n)
    w[0] = w[-1] = 0.5 / n
    slope = float(np.sum(w * kernel_dx(0.5, x, P11)))
    assert abs(slope) < 1e-14


def test_stable_sinh_ratio_zero():
    assert stable_sinh_ratio(0.0, 0.0, 1.0) == 0.0


def test_stable_sinh_ratio_matches_naive_for_small_arguments():
    rng = np.random.default_rng(11)
    for _ in range(100):
        s = rng.uniform(0.1, 1.0)
        p = rng.uniform(0.0, s)
        q = rng.uniform(0.0, s - p)
        naive = math.sinh(p) * math.sinh(q) / math.sinh(s)
        if naive == 0.0:
            continue
        assert abs(float(stable_sinh_ratio(p, q, s)) - naive) / abs(naive) < 1e-14


def test_stable_sinh_ratio_sign_handling():
    assert float(stable_sinh_ratio(-0.3, 0.2, 1.0)) == pytest.approx(
        math.sinh(-0.3) * math.sinh(0.2) / math.sinh(1.0), rel=1e-14
    )
    assert float(stable_sinh_ratio(-0.3, -0.2, 1.0)) == pytest.approx(
        math.sinh(-0.3) * math.sinh(-0.2) / math.sinh(1.0), rel=1e-14
    )


def test_stable_sinh_ratio_no_overflow_at_extreme_scale():
    value = float(stable_sinh_ratio(500.0, 500.0, 1000.0))
    assert np.isfinite(value)
    assert abs(value - 0.5) < 1e-15


def test_greens_matrix_is_symmetric():
    nodes = np.linspace(0.0, 1.0, 21)
    m = greens_matrix(nodes, P11)
    assert m.shape == (21, 21)
    assert np.array_equal(m, m.T)


def test_greens_dx_matrix_shape():
    nodes = np.linspace(0.0, 1.0, 11)
    assert greens_dx_matrix(nodes, P11).shape == (11, 11)
