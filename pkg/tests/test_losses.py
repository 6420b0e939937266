"""Tests for the check, GMQ, expectile and kth power losses."""

from __future__ import annotations

import math

import numpy as np
import pytest

from gmq.errors import LossDomainError, ParameterError
from gmq.losses import (
    LossSpec,
    asymptote_gaps,
    check_loss,
    create_loss,
    expectile_grad,
    expectile_hess,
    expectile_loss,
    gmq_grad,
    gmq_hess,
    gmq_loss,
    kth_power_grad,
    kth_power_hess,
    kth_power_loss,
    smooth_als_grad,
    smooth_als_hess,
    smooth_als_loss,
    smooth_expectile_grad,
    smooth_expectile_hess,
    smooth_expectile_loss,
    smooth_kth_power_grad,
    smooth_kth_power_hess,
    smooth_kth_power_loss,
    smoothing_gap,
    smoothing_gap_bound,
)

TAUS = (0.1, 0.5, 0.9)
SHAPES = (1e-3, 1e-2, 1e-1, 1.0)
# Residuals for derivative checks; the offset keeps them away from 0.
FD_POINTS = np.linspace(-3.0, 3.0, 61) + 0.013


def central_difference(f, u: np.ndarray) -> np.ndarray:
    step = 1e-6 * np.maximum(1.0, np.abs(u))
    return (f(u + step) - f(u - step)) / (2.0 * step)


@pytest.mark.parametrize(
    "u, tau, expected", [(-2.0, 0.9, 0.2), (0.0, 0.3, 0.0), (1.0, 0.9, 0.9)]
)
def test_check_loss(u: float, tau: float, expected: float):
    assert check_loss(u, tau) == pytest.approx(expected)


def test_check_loss_nonnegative():
    u = np.linspace(-5, 5, 101)
    for tau in TAUS:
        values = check_loss(u, tau)
        assert np.all(values >= 0.0)
        assert np.all((values == 0.0) == (u == 0.0))


def test_gmq_loss_examples():
    for tau in TAUS:
        assert gmq_loss(0.0, tau, 0.1) == pytest.approx(0.05)
    assert gmq_loss(-2.0, 0.9, 0.0) == pytest.approx(0.2)
    assert gmq_loss(1.0, 0.9, 0.1) == pytest.approx(0.4 + math.sqrt(1.01) / 2, rel=1e-12)
    assert gmq_loss(1.0, 0.9, 0.1) == pytest.approx(0.9024937810560445, rel=1e-12)


def test_gmq_loss_reduces_to_check_loss():
    u = np.linspace(-50, 50, 1001)
    for tau in TAUS:
        np.testing.assert_allclose(gmq_loss(u, tau, 0.0), check_loss(u, tau), rtol=1e-14)


def test_gmq_loss_symmetric_at_median():
    u = np.linspace(-10, 10, 201)
    np.testing.assert_array_equal(gmq_loss(u, 0.5, 0.3), gmq_loss(-u, 0.5, 0.3))


def test_gmq_loss_handles_huge_residuals():
    value = gmq_loss(1e200, 0.7, 0.1)
    assert np.isfinite(value)
    assert value == pytest.approx(0.7e200)


def test_gmq_grad_examples():
    assert gmq_grad(0.0, 0.9, 0.1) == pytest.approx(0.4)
    assert gmq_grad(0.1, 0.5, 0.1) == pytest.approx(0.1 / (2 * math.sqrt(0.02)), rel=1e-12)
    assert gmq_grad(0.1, 0.5, 0.1) == pytest.approx(0.35355339059327373, rel=1e-12)
    assert gmq_grad(1e12, 0.3, 0.1) == pytest.approx(0.3)
    assert gmq_grad(-1e12, 0.3, 0.1) == pytest.approx(-0.7)


def test_gmq_grad_bounded_and_increasing():
    u = np.linspace(-20, 20, 4001)
    for tau in TAUS:
        grad = gmq_grad(u, tau, 0.5)
        assert np.all(grad > tau - 1.0)
        assert np.all(grad < tau)
        assert np.all(np.diff(grad) > 0.0)


def test_gmq_grad_undefined_at_kink():
    with pytest.raises(LossDomainError):
        gmq_grad(0.0, 0.5, 0.0)
    with pytest.raises(LossDomainError):
        gmq_grad(np.array([1.0, 0.0]), 0.5, 0.0)
    assert gmq_grad(-1.0, 0.3, 0.0) == pytest.approx(-0.7)


def test_gmq_hess_examples():
    assert gmq_hess(0.0, 0.5, 0.1) == pytest.approx(5.0)
    assert 0.004 <= gmq_hess(10.0, 0.5, 0.1) * 10.0**3 <= 0.006
    u = np.linspace(-5, 5, 101)
    np.testing.assert_array_equal(gmq_hess(u, 0.1, 0.2), gmq_hess(u, 0.9, 0.2))
    with pytest.raises(LossDomainError):
        gmq_hess(1.0, 0.5, 0.0)


def test_gmq_hess_peaks_at_zero():
    u = np.linspace(-3, 3, 601)
    hess = gmq_hess(u, 0.5, 0.2)
    assert np.all(hess > 0.0)
    assert hess.max() == pytest.approx(1.0 / (2 * 0.2))
    assert u[np.argmax(hess)] == pytest.approx(0.0, abs=1e-12)


def test_smoothing_gap_bound_examples():
    assert smoothing_gap_bound(0.0, 0.1) == pytest.approx(0.05)
    assert gmq_loss(0.0, 0.3, 0.1) - check_loss(0.0, 0.3) == pytest.approx(0.05)
    assert smoothing_gap_bound(0.1, 0.1) == pytest.approx(0.05)
    assert smoothing_gap_bound(0.1 + 1e-12, 0.1) == pytest.approx(0.05)
    gap = gmq_loss(1.0, 0.5, 0.1) - check_loss(1.0, 0.5)
    assert gap == pytest.approx((math.sqrt(1.01) - 1) / 2, rel=1e-9)
    assert gap <= smoothing_gap_bound(1.0, 0.1)
    with pytest.raises(ParameterError):
        smoothing_gap_bound(1.0, 0.0)


@pytest.mark.parametrize("c", SHAPES)
@pytest.mark.parametrize("tau", TAUS)
def test_smoothing_gap_within_bound(tau: float, c: float):
    u = np.linspace(-50, 50, 10_000)
    gap = gmq_loss(u, tau, c) - check_loss(u, tau)
    bound = smoothing_gap_bound(u, c)
    # Subtracting two numbers of size |u| loses about |u| * eps.
    slack = 1e-13 * np.maximum(1.0, np.abs(u))
    assert np.all(gap >= -slack)
    assert np.all(gap <= bound + slack)
    exact = smoothing_gap(u, c)
    assert np.all(exact >= 0.0)
    assert np.all(exact <= bound * (1 + 1e-14))
    assert smoothing_gap(0.0, c) == pytest.approx(smoothing_gap_bound(0.0, c))


@pytest.mark.parametrize("c", SHAPES)
def test_smoothing_gap_decreases_away_from_kink(c: float):
    u = np.linspace(c, 50, 5000)
    assert np.all(np.diff(smoothing_gap(u, c)) <= 0.0)
    assert np.all(np.diff(smoothing_gap(-u, c)) <= 0.0)


@pytest.mark.parametrize("c", SHAPES)
@pytest.mark.parametrize("tau", TAUS)
def test_hyperbola_identity(tau: float, c: float):
    u = np.linspace(-50, 50, 10_000)
    to_upper, to_lower = asymptote_gaps(u, c)
    np.testing.assert_allclose(to_upper * to_lower, c**2 / 4, rtol=1e-10)
    # The gaps are the distances of the GMQ curve to tau u and (tau - 1) u.
    loss = gmq_loss(u, tau, c)
    np.testing.assert_allclose(to_upper, loss - tau * u, atol=1e-12 * 50)
    np.testing.assert_allclose(to_lower, loss - (tau - 1) * u, atol=1e-12 * 50)


def test_expectile_loss():
    assert expectile_loss(2.0, 0.9) == pytest.approx(3.6)
    assert expectile_loss(-2.0, 0.9) == pytest.approx(0.4)
    assert expectile_grad(-2.0, 0.9) == pytest.approx(-0.4)
    assert expectile_hess(1.0, 0.9) == pytest.approx(1.8)


def test_smooth_expectile_examples():
    for tau in TAUS:
        for c in SHAPES:
            assert smooth_expectile_loss(0.0, tau, c) == 0.0
    expected = (math.sqrt(1.0001) + 1e-4 * math.asinh(100.0)) / 2
    assert smooth_expectile_loss(1.0, 0.5, 0.01) == pytest.approx(expected, rel=1e-12)
    assert smooth_expectile_loss(1.0, 0.5, 0.01) == pytest.approx(0.500289916, rel=1e-8)
    expected = expectile_loss(1.0, 0.5)
    assert smooth_expectile_loss(1.0, 0.5, 0.01) == pytest.approx(expected, abs=1e-3)


def test_smooth_expectile_grad_is_twice_gmq_loss():
    u = np.linspace(-5, 5, 100)
    for tau in TAUS:
        np.testing.assert_allclose(
            smooth_expectile_grad(u, tau, 0.2), 2 * gmq_loss(u, tau, 0.2), rtol=1e-15
        )
        np.testing.assert_allclose(
            smooth_expectile_hess(u, tau, 0.2), 2 * gmq_grad(u, tau, 0.2), rtol=1e-15
        )


def test_smooth_expectile_matches_logarithmic_form():
    u = np.linspace(-4, 4, 41)
    tau, c = 0.3, 0.5
    radius = np.sqrt(c**2 + u**2)
    expected = (
        (2 * tau - 1) * u**2 / 2
        + (u * radius + c**2 * np.log(np.abs(u + radius))) / 2
        - c**2 * np.log(c) / 2
    )
    np.testing.assert_allclose(smooth_expectile_loss(u, tau, c), expected, rtol=1e-12, atol=1e-14)


def test_smooth_als_reduces_to_expectile():
    u = np.array([-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0])
    for tau in TAUS:
        np.testing.assert_allclose(smooth_als_loss(u, tau, 0.0), expectile_loss(u, tau), rtol=1e-14)
        np.testing.assert_allclose(
            smooth_als_loss(u, tau, 1e-6), expectile_loss(u, tau), rtol=1e-10, atol=1e-10
        )


def test_kth_power_examples():
    for tau in TAUS:
        assert smooth_kth_power_loss(0.0, tau, 0.1, 1.5) == pytest.approx(0.05)
    assert kth_power_loss(-2.0, 0.9, 1.5) == pytest.approx(0.1 * 2**1.5)
    u = np.array([-2.0, -1.0, 1.0, 2.0])
    for tau in TAUS:
        np.testing.assert_allclose(
            smooth_kth_power_loss(u, tau, 0.0, 1.5), kth_power_loss(u, tau, 1.5), rtol=1e-14
        )
        np.testing.assert_allclose(
            smooth_kth_power_loss(u, tau, 1e-8, 1.5), kth_power_loss(u, tau, 1.5), rtol=1e-10
        )
    expected = (0.8 * 2**1.5 + math.sqrt(0.01 + 8.0)) / 2
    assert smooth_kth_power_loss(2.0, 0.9, 0.1, 1.5) == pytest.approx(expected, rel=1e-12)
    assert smooth_kth_power_loss(2.0, 0.9, 0.1, 1.5) == pytest.approx(2.546468, rel=1e-6)


@pytest.mark.parametrize("k", [1.0, 2.5, float("nan")])
def test_kth_power_rejects_power(k: float):
    with pytest.raises(ParameterError):
        kth_power_loss(1.0, 0.5, k)
    with pytest.raises(ParameterError):
        smooth_kth_power_loss(1.0, 0.5, 0.1, k)


def test_smooth_kth_power_hess_undefined_at_zero():
    with pytest.raises(LossDomainError):
        smooth_kth_power_hess(0.0, 0.7, 0.1, 1.5)
    with pytest.raises(LossDomainError):
        smooth_kth_power_hess(1.0, 0.7, 0.0, 1.5)
    with pytest.raises(LossDomainError):
        kth_power_hess(0.0, 0.7, 1.5)


@pytest.mark.parametrize("tau", TAUS)
@pytest.mark.parametrize(
    "loss, grad, hess",
    [
        (
            lambda u, t: gmq_loss(u, t, 0.1),
            lambda u, t: gmq_grad(u, t, 0.1),
            lambda u, t: gmq_hess(u, t, 0.1),
        ),
        (
            lambda u, t: smooth_expectile_loss(u, t, 0.2),
            lambda u, t: smooth_expectile_grad(u, t, 0.2),
            lambda u, t: smooth_expectile_hess(u, t, 0.2),
        ),
        (
            lambda u, t: smooth_als_loss(u, t, 0.2),
            lambda u, t: smooth_als_grad(u, t, 0.2),
            lambda u, t: smooth_als_hess(u, t, 0.2),
        ),
        (
            lambda u, t: smooth_kth_power_loss(u, t, 0.1, 1.5),
            lambda u, t: smooth_kth_power_grad(u, t, 0.1, 1.5),
            lambda u, t: smooth_kth_power_hess(u, t, 0.1, 1.5),
        ),
        (
            lambda u, t: kth_power_loss(u, t, 4 / 3),
            lambda u, t: kth_power_grad(u, t, 4 / 3),
            lambda u, t: kth_power_hess(u, t, 4 / 3),
        ),
    ],
    ids=["gmq", "smooth_expectile", "smooth_als", "smooth_kth_power", "kth_power"],
)
def test_derivatives_match_finite_differences(loss, grad, hess, tau: float):
    u = FD_POINTS
    np.testing.assert_allclose(
        central_difference(lambda x: loss(x, tau), u), grad(u, tau), rtol=1e-6, atol=1e-9
    )
    np.testing.assert_allclose(
        central_difference(lambda x: grad(x, tau), u), hess(u, tau), rtol=1e-6, atol=1e-9
    )


@pytest.mark.parametrize("tau", TAUS)
def test_second_derivatives_positive(tau: float):
    u = np.random.default_rng(0).uniform(-100, 100, 10_000)
    assert np.all(gmq_hess(u, tau, 0.1) > 0.0)
    assert np.all(gmq_hess(u, tau, 1e-3) > 0.0)
    assert np.all(smooth_als_hess(u, tau, 0.1) > 0.0)
    assert np.all(expectile_hess(u, tau) > 0.0)
    assert np.all(kth_power_hess(u, tau, 1.5) > 0.0)
    # The smoothed kth power loss is convex where |u|^k >= c.
    outer = u[np.abs(u) ** 1.5 >= 0.1]
    assert np.all(smooth_kth_power_hess(outer, tau, 0.1, 1.5) > 0.0)


def test_create_loss_binds_parameters():
    functions = create_loss(LossSpec(family="gmq", tau=0.9, shape=0.1))
    assert functions.loss(1.0) == pytest.approx(gmq_loss(1.0, 0.9, 0.1))
    assert functions.grad(0.0) == pytest.approx(0.4)
    assert functions.hess(0.0) == pytest.approx(5.0)

    check = create_loss(LossSpec(family="check", tau=0.3))
    assert check.grad is None and check.hess is None

    als = create_loss(LossSpec(family="smooth_expectile", tau=0.3, shape=0.1))
    assert als.loss(-1.0) == pytest.approx(smooth_als_loss(-1.0, 0.3, 0.1))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"tau": 0.0},
        {"tau": 1.0},
        {"tau": float("nan")},
        {"shape": -0.1},
        {"shape": float("inf")},
        {"family": "huber"},
        {"family": "kth_power", "k": 3.0},
    ],
)
def test_loss_spec_validation(kwargs: dict):
    with pytest.raises(ParameterError):
        LossSpec(**kwargs)


def test_loss_spec_differentiability():
    assert not LossSpec(family="check").is_differentiable
    assert not LossSpec(family="gmq", shape=0.0).is_differentiable
    assert LossSpec(family="gmq", shape=0.1).is_differentiable
    assert LossSpec(family="expectile").is_differentiable
    assert LossSpec(family="kth_power", k=1.5).is_differentiable
    assert not LossSpec(family="conquer_gaussian").is_differentiable
    spec = LossSpec(family="smooth_kth_power", tau=0.2, shape=0.3, k=5 / 3)
    assert LossSpec.from_dict(spec.to_dict()) == spec
