"""Tests for the dataset container and the covariate standardizer."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from gmq.errors import DataError
from gmq.models import Dataset, Standardizer
from gmq.simulation import make_rng


def test_dataset_shapes():
    dataset = Dataset(X=np.arange(6.0).reshape(3, 2), y=[1.0, 2.0, 3.0])
    assert (dataset.n, dataset.p, dataset.num_coefficients) == (3, 2, 2)
    assert dataset.column_names == ["x1", "x2"]
    np.testing.assert_array_equal(dataset.design_matrix, dataset.X)

    with_intercept = dataset.with_intercept()
    assert with_intercept.num_coefficients == 3
    np.testing.assert_array_equal(with_intercept.design_matrix[:, 0], np.ones(3))
    np.testing.assert_array_equal(with_intercept.design_matrix[:, 1:], dataset.X)


def test_dataset_accepts_vector_covariate():
    dataset = Dataset(X=[1.0, 2.0], y=[3.0, 4.0])
    assert dataset.X.shape == (2, 1)


@pytest.mark.parametrize(
    "X, y",
    [
        (np.ones((3, 2)), np.ones(2)),
        (np.array([[1.0, np.nan]]), np.ones(1)),
        (np.ones((2, 1)), np.array([1.0, np.inf])),
        (np.ones((0, 2)), np.ones(0)),
        (np.ones((2, 2, 2)), np.ones(2)),
    ],
)
def test_dataset_validation(X: np.ndarray, y: np.ndarray):
    with pytest.raises(DataError):
        Dataset(X=X, y=y)


def test_standardizer_with_intercept():
    rng = make_rng(3)
    X = rng.normal(loc=[2.0, -1.0], scale=[3.0, 0.5], size=(200, 2))
    design = np.column_stack([np.ones(200), X])
    standardizer = Standardizer.fit(design)
    assert standardizer.intercept_index == 0

    transformed = standardizer.transform(design)
    np.testing.assert_array_equal(transformed[:, 0], np.ones(200))
    np.testing.assert_allclose(transformed[:, 1:].mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(transformed[:, 1:].std(axis=0), 1.0, rtol=1e-12)
    np.testing.assert_allclose(
        standardizer.inverse_transform(transformed), design, rtol=1e-12, atol=1e-12
    )


def test_standardizer_without_intercept_only_scales():
    X = make_rng(4).normal(loc=5.0, size=(100, 3))
    standardizer = Standardizer.fit(X)
    assert standardizer.intercept_index is None
    np.testing.assert_array_equal(standardizer.means, np.zeros(3))
    np.testing.assert_allclose(standardizer.transform(X) * X.std(axis=0), X, rtol=1e-12)


def test_coefficients_round_trip():
    rng = make_rng(5)
    design = np.column_stack([np.ones(50), rng.normal(3.0, 2.0, size=(50, 2))])
    standardizer = Standardizer.fit(design)
    beta = np.array([0.5, -1.0, 2.0])
    beta_std = standardizer.coef_to_standardized(beta)
    # Both parametrizations give the same linear predictor.
    np.testing.assert_allclose(
        standardizer.transform(design) @ beta_std, design @ beta, rtol=1e-10, atol=1e-12
    )
    np.testing.assert_allclose(standardizer.coef_to_original(beta_std), beta, rtol=1e-10)


def test_standardizer_rejects_constant_column():
    design = np.column_stack([np.ones(4), [1.0, 2.0, 3.0, 4.0], np.full(4, 2.0)])
    with pytest.raises(DataError):
        Standardizer.fit(design)


def test_standardizer_rejects_two_intercepts():
    with pytest.raises(DataError):
        Standardizer.fit(np.column_stack([np.ones(3), np.ones(3), [1.0, 2.0, 3.0]]))


def test_standardizer_rejects_nonpositive_sd():
    with pytest.raises(DataError):
        Standardizer(means=np.zeros(2), sds=np.array([1.0, 0.0]))


def test_identity_standardizer():
    design = make_rng(6).standard_normal((10, 2))
    standardizer = Standardizer.identity(2)
    np.testing.assert_array_equal(standardizer.transform(design), design)
    beta = np.array([1.5, -0.5])
    np.testing.assert_array_equal(standardizer.coef_to_original(beta), beta)


def test_standardizer_inverse_sd_is_derived():
    fields = {field.name: field for field in dataclasses.fields(Standardizer)}
    assert not fields["sd_inv"].init
    standardizer = Standardizer(means=[0.0, 1.0], sds=[2.0, 0.5])
    np.testing.assert_array_equal(standardizer.sd_inv, [0.5, 2.0])
    assert "sd_inv" not in repr(standardizer)
