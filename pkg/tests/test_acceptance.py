"""End-to-end checks of GMQ fits against exact solutions, Monte Carlo rates and conquer.

The loss-level property suites (gap bound, hyperbola identity, derivative
agreement and loss identities) live in test_losses.py and test_regression.py.
"""

from __future__ import annotations

import numpy as np
import pytest

from gmq.benchmarks import (
    BenchGrid,
    bench_derivatives,
    bench_regression,
    records_to_frame,
    rmse_scan,
)
from gmq.losses import LossSpec
from gmq.models import Dataset, empirical_risk, fit
from gmq.optimize import OptimizerConfig
from gmq.oracle import bias_estimate, exact_qr, loglog_slope
from gmq.simulation import ERROR_DISTS, SimSpec, generate

ORACLE_SHAPE = 1e-4
ORACLE_CONFIG = OptimizerConfig(tol_delta=1e-9, max_iter=20000)


def oracle_instance(index: int) -> tuple[Dataset, float]:
    """Seeded homoskedastic instance with odd n <= 39 and at most 4 coefficients."""
    n = (21, 25, 31, 35, 39)[index % 5]
    p = 1 + index % 3
    tau = (0.1, 0.5, 0.9)[(index // 5) % 3]
    spec = SimSpec(n=n, p=p, tau=tau, error_dist=ERROR_DISTS[index % 2], seed=1000 + index)
    dataset, _ = generate(spec)
    return dataset.with_intercept(index % 4 < 2), tau


@pytest.mark.parametrize("index", range(100))
def test_fit_agrees_with_exact_solution(index: int):
    dataset, tau = oracle_instance(index)
    oracle = exact_qr(dataset, tau)
    result = fit(dataset, LossSpec(family="gmq", tau=tau, shape=ORACLE_SHAPE), ORACLE_CONFIG)

    assert np.linalg.norm(result.beta_hat - oracle.beta_exact) <= 1e-2
    check = LossSpec(family="check", tau=tau)
    gap = empirical_risk(dataset, result.beta_hat, check) - oracle.objective
    assert gap <= ORACLE_SHAPE / 2 + 1e-6


@pytest.mark.slow
def test_error_decays_at_root_n_rate():
    template = SimSpec(p=5, tau=0.7, seed=0)
    table = rmse_scan(template, [1000, 4000, 16000], reps=50)
    slope = loglog_slope(table["n"], table["mean_error"])
    assert -0.65 <= slope <= -0.35


@pytest.mark.slow
def test_smoothing_bias_grows_with_shape():
    template = SimSpec(p=5, tau=0.7, seed=0)
    table = bias_estimate(template, [0.02, 0.1, 0.5], n_large=100_000, replications=10)
    shift = table["shift"].to_numpy()
    assert shift[0] == 0.0
    assert np.all(np.diff(shift) > 0.0)
    assert shift[2] >= 3.0 * shift[1]


@pytest.mark.slow
def test_gmq_gradient_is_faster_than_gaussian_kernel():
    table = bench_derivatives([10**6, 10**7], reps=5)
    times = table.pivot(index="size", columns="method", values="median_seconds")
    assert (times["gmq"] < times["conquer-gaussian"]).all()


@pytest.mark.slow
def test_error_matches_conquer():
    grid = BenchGrid(
        n_list=(2000,),
        p=100,
        dists=ERROR_DISTS,
        methods=("gmq", "conquer-gaussian"),
        reps=20,
    )
    frame = records_to_frame(bench_regression(grid))
    assert frame["converged"].all()
    means = frame.groupby(["error_dist", "method"])["error_l2"].mean()
    for dist in ERROR_DISTS:
        assert abs(means[dist, "gmq"] - means[dist, "conquer-gaussian"]) <= 0.15
