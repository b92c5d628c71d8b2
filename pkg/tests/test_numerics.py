import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diffusion_capacity.numerics import (
    EULER_GAMMA,
    BracketError,
    ConvergenceError,
    E1UnderflowError,
    Tolerance,
    _e1_cf_scaled,
    _e1_series,
    e1,
    e1_diff,
    e1_from_log,
    find_root,
    log_e1,
)

from conftest import e1_quad


# Frozen from e1_quad and the alternating series, which agree to 1e-14.
@pytest.mark.parametrize("x, expected", [(1.0, 0.21938393439552), (0.5, 0.55977359477616)])
def test_e1_reference_values(x, expected):
    assert e1(x) == pytest.approx(expected, abs=1e-12)
    assert e1_quad(x) == pytest.approx(expected, abs=1e-12)


def test_e1_halving_increases():
    for x in [1e-5, 0.3, 1.0, 7.0, 120.0]:
        assert e1(x) < e1(x / 2)


def test_e1_monotone_on_log_grid():
    xs = np.logspace(-6, np.log10(500), 1000)
    values = [e1(x) for x in xs]
    assert all(v > 0 for v in values)
    assert all(a > b for a, b in zip(values, values[1:]))


def test_branches_agree_at_switch():
    x = 1.0
    series = _e1_series(x)
    cf = math.exp(-x) * _e1_cf_scaled(x)
    assert abs(series - cf) / series <= 1e-12


@pytest.mark.parametrize("x", [1e-8, 1e-5, 1e-3, 0.01])
def test_small_x_identity(x):
    assert abs(e1(x) + math.log(x) + EULER_GAMMA - x) <= 2 * x * x


@pytest.mark.parametrize("x", [1e-4, 1e-3, 0.01])
def test_small_x_identity_ten_digit_gamma(x):
    # A 10-digit gamma is off by ~1.5e-11, which the 2x^2 bound absorbs here.
    assert abs(e1(x) + math.log(x) + 0.5772156649 - x) <= 2 * x * x


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_e1_domain(x):
    with pytest.raises(ValueError):
        e1(x)
    with pytest.raises(ValueError):
        log_e1(x)


def test_e1_underflow_points_to_log():
    with pytest.raises(E1UnderflowError, match="log_e1"):
        e1(701.0)


def test_log_e1_at_one():
    assert log_e1(1.0) == pytest.approx(math.log(0.21938393439552), abs=1e-10)
    assert log_e1(1.0) == pytest.approx(-1.51693, abs=1e-5)


def test_log_e1_far_tail():
    x = 700.0
    asymptotic = -x - math.log(x) + math.log1p(-1 / x + 2 / x**2 - 6 / x**3)
    assert log_e1(x) == pytest.approx(asymptotic, abs=1e-9)
    assert math.isfinite(log_e1(1e5))


def test_log_e1_consistent_with_e1():
    for x in np.logspace(-6, np.log10(500), 200):
        assert math.exp(log_e1(x)) == pytest.approx(e1(x), rel=1e-10)


def test_e1_from_log_matches_direct():
    for y in [-30.0, -2.0, 0.5]:
        assert e1_from_log(y) == pytest.approx(e1(math.exp(y)), rel=1e-14)
    # Past exp underflow only the -gamma - ln x part survives.
    assert e1_from_log(-2000.0) == pytest.approx(2000.0 - EULER_GAMMA, rel=1e-15)


@pytest.mark.parametrize("u, v", [(1e-6, 1.5e-6), (0.3, 0.31), (2.0, 3.9), (40.0, 40.5), (0.1, 5.0)])
def test_e1_diff(u, v):
    expected = e1_quad(u) - e1_quad(v)
    assert e1_diff(u, v) == pytest.approx(expected, rel=1e-11)
    assert e1_diff(v, u) == pytest.approx(-expected, rel=1e-11)


def test_e1_diff_near_coincident_keeps_precision():
    u = 1e-5
    v = u * (1 + 1e-9)
    # int_u^v exp(-y)/y dy ~ exp(-u) * ln(v/u)
    assert e1_diff(u, v) == pytest.approx(math.exp(-u) * math.log1p(1e-9), rel=1e-6)


def test_find_root_sqrt2():
    assert find_root(lambda x: x * x - 2, 1.0, 2.0) == pytest.approx(math.sqrt(2), abs=1e-8)


def test_find_root_odd():
    assert find_root(lambda x: x, -1.0, 1.0) == 0.0


def test_find_root_e1_level():
    root = find_root(lambda x: e1(x) - 0.5128205, 0.1, 2.0)
    assert root == pytest.approx(0.5411, abs=1e-4)
    assert e1_quad(root) == pytest.approx(0.5128205, rel=1e-9)


def test_find_root_huge_positive_bracket():
    root = find_root(lambda x: math.log(x) - 100.0, 1e-300, 1e300, Tolerance(rel=1e-14))
    assert root == pytest.approx(math.exp(100.0), rel=1e-12)


def test_find_root_no_sign_change():
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, -1.0, 1.0)


def test_find_root_iteration_cap():
    with pytest.raises(ConvergenceError):
        find_root(lambda x: math.exp(x) - 1.3, 0.0, 1.0, Tolerance(rel=1e-15, abs=0.0, max_iter=2))


@pytest.mark.parametrize("kwargs", [dict(rel=0.0), dict(abs=-1.0), dict(max_iter=0)])
def test_tolerance_validation(kwargs):
    with pytest.raises(ValueError):
        Tolerance(**kwargs)


def test_find_root_deterministic():
    f = lambda x: math.cos(x) - x  # noqa: E731
    assert find_root(f, 0.0, 1.0) == find_root(f, 0.0, 1.0)


@settings(max_examples=200, deadline=None)
@given(
    root=st.floats(-5, 5),
    left=st.floats(0.01, 100),
    right=st.floats(0.01, 100),
    widen_left=st.floats(0, 1000),
    widen_right=st.floats(0, 1000),
)
def test_find_root_invariant_under_widening(root, left, right, widen_left, widen_right):
    f = lambda x: math.atan(x - root)  # noqa: E731
    tol = Tolerance()
    narrow = find_root(f, root - left, root + right, tol)
    wide = find_root(f, root - left - widen_left, root + right + widen_right, tol)
    slack = 2 * max(tol.abs, tol.rel * abs(root)) + 1e-12
    assert abs(narrow - root) <= slack
    assert abs(wide - narrow) <= 2 * slack
