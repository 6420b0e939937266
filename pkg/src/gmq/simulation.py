"""Contains seeded synthetic data for the three simulation models.

All models draw covariates x_i ~ N(0, I_p) and errors eps_i from the chosen law,
centred so that the tau-quantile of the noise term is zero:

    homoskedastic:    y_i = x_i^T beta* + (eps_i - F^-1(tau))
    linear_scale:     y_i = beta0* + x_i^T beta* + (0.5 x_ip + 1) (eps_i - F^-1(tau))
    quadratic_scale:  y_i = beta0* + x_i^T beta* + 0.5 ((x_ip + 1)^2 + 1) (eps_i - F^-1(tau))

Random numbers come from numpy's Philox 4x64 counter-based generator, seeded
through a SeedSequence. The global numpy random state is never used.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Any, Literal

import numpy as np
from scipy import special

from gmq.errors import ParameterError
from gmq.losses.params import validate_tau
from gmq.models import Dataset

ModelKind = Literal["homoskedastic", "linear_scale", "quadratic_scale"]
ErrorDist = Literal["normal", "t2"]

MODELS: tuple[ModelKind, ...] = ("homoskedastic", "linear_scale", "quadratic_scale")
# normal is N(0, 4), t2 is Student's t with 2 degrees of freedom.
ERROR_DISTS: tuple[ErrorDist, ...] = ("normal", "t2")

_NORMAL_SCALE = 2.0
_MAX_SEED = 2**64


@dataclasses.dataclass(frozen=True)
class SimSpec:
    """Parameters of a synthetic dataset."""

    model: ModelKind = "homoskedastic"
    n: int = 1000
    p: int = 5
    tau: float = 0.5
    error_dist: ErrorDist = "normal"
    # Slope coefficients. None means all ones.
    beta_star: tuple[float, ...] | None = None
    # Intercept of the linear_scale and quadratic_scale models.
    beta0_star: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        """Validate the specification."""
        if self.model not in MODELS:
            raise ParameterError(f"model must be one of {MODELS}, got {self.model!r}.")
        if self.error_dist not in ERROR_DISTS:
            raise ParameterError(
                f"error_dist must be one of {ERROR_DISTS}, got {self.error_dist!r}."
            )
        for name in ("n", "p", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ParameterError(f"{name} must be an integer, got {value!r}.")
            object.__setattr__(self, name, int(value))
        if self.n < 1:
            raise ParameterError(f"n must be at least 1, got {self.n}.")
        if self.p < 1:
            raise ParameterError(f"p must be at least 1, got {self.p}.")
        validate_tau(self.tau)
        if not (0 <= self.seed < _MAX_SEED):
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}.")
        if not math.isfinite(self.beta0_star):
            raise ParameterError(f"beta0_star must be finite, got {self.beta0_star}.")
        if self.beta_star is not None:
            beta_star = tuple(float(value) for value in self.beta_star)
            if len(beta_star) != self.p:
                raise ParameterError(
                    f"beta_star must have p={self.p} entries, got {len(beta_star)}."
                )
            if not all(math.isfinite(value) for value in beta_star):
                raise ParameterError("beta_star must be finite.")
            object.__setattr__(self, "beta_star", beta_star)

    @property
    def has_intercept(self) -> bool:
        """Whether the model has the intercept beta0*."""
        return self.model != "homoskedastic"

    @property
    def slopes(self) -> np.ndarray:
        """The slope coefficients beta*."""
        if self.beta_star is None:
            return np.ones(self.p)
        return np.asarray(self.beta_star, dtype=float)

    def truth(self) -> np.ndarray:
        """Coefficients of the tau-th conditional quantile, intercept first when present.

        For linear_scale this is a pseudo-truth: the scale factor is negative
        for x_ip < -2, where the true conditional quantile bends.
        """
        if self.has_intercept:
            return np.concatenate([[self.beta0_star], self.slopes])
        return self.slopes

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON friendly dictionary."""
        data = dataclasses.asdict(self)
        if self.beta_star is not None:
            data["beta_star"] = list(self.beta_star)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SimSpec:
        """Create a SimSpec from a dictionary produced by to_dict."""
        known = {field.name for field in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParameterError(f"Unknown SimSpec fields: {unknown}.")
        data = dict(data)
        if data.get("beta_star") is not None:
            data["beta_star"] = tuple(data["beta_star"])
        return cls(**data)


def make_rng(seed: int) -> np.random.Generator:
    """Create a Philox generator from a seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def replication_rng(seed: int, rep: int, *stream: int) -> np.random.Generator:
    """Create the independent generator of replication rep of a seeded experiment.

    Extra stream keys separate the cells of a grid that share seed and rep.
    rep and the stream keys form the spawn key, where trailing zeros still count.
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(rep, *stream))
    return np.random.Generator(np.random.Philox(sequence))


def error_quantile(dist: ErrorDist, tau: float) -> float:
    """Return the tau-quantile of an error law.

    normal: 2 Phi^-1(tau). t2: (2 tau - 1) / sqrt(2 tau (1 - tau)), the inverse of
    the t2 CDF 1/2 + x / (2 sqrt(2 + x^2)).
    """
    validate_tau(tau)
    if dist == "normal":
        return float(_NORMAL_SCALE * special.ndtri(tau))
    elif dist == "t2":
        return (2.0 * tau - 1.0) / math.sqrt(2.0 * tau * (1.0 - tau))
    raise ParameterError(f"error_dist must be one of {ERROR_DISTS}, got {dist!r}.")


def sample_errors(rng: np.random.Generator, dist: ErrorDist, size: int) -> np.ndarray:
    """Draw size errors from an error law.

    t2 variates are Z0 / sqrt((Z1^2 + Z2^2) / 2) for independent standard normals.
    """
    if dist == "normal":
        return _NORMAL_SCALE * rng.standard_normal(size)
    elif dist == "t2":
        z = rng.standard_normal((3, size))
        return z[0] / np.sqrt((z[1] ** 2 + z[2] ** 2) / 2.0)
    raise ParameterError(f"error_dist must be one of {ERROR_DISTS}, got {dist!r}.")


def scale_factor(model: ModelKind, x_last: np.ndarray) -> np.ndarray:
    """Return the heteroskedastic factor multiplying the centred errors."""
    x_last = np.asarray(x_last, dtype=float)
    if model == "homoskedastic":
        return np.ones_like(x_last)
    elif model == "linear_scale":
        return 0.5 * x_last + 1.0
    elif model == "quadratic_scale":
        return 0.5 * ((x_last + 1.0) ** 2 + 1.0)
    raise ParameterError(f"model must be one of {MODELS}, got {model!r}.")


def compute_response(spec: SimSpec, X: np.ndarray, errors: np.ndarray) -> np.ndarray:
    """Compute responses from covariates and raw (uncentred) errors."""
    centred = errors - error_quantile(spec.error_dist, spec.tau)
    y = X @ spec.slopes + scale_factor(spec.model, X[:, -1]) * centred
    if spec.has_intercept:
        y = y + spec.beta0_star
    return y


def generate(
    spec: SimSpec, rng: np.random.Generator | None = None
) -> tuple[Dataset, np.ndarray]:
    """Draw a dataset and return it with its true coefficients.

    Args:
        spec: The simulation parameters.
        rng: Generator to draw from. Defaults to make_rng(spec.seed), so equal
            specs give bit-identical datasets.

    Returns:
        The dataset (with has_intercept set for the scale models) and spec.truth().
    """
    rng = make_rng(spec.seed) if rng is None else rng
    X = rng.standard_normal((spec.n, spec.p))
    errors = sample_errors(rng, spec.error_dist, spec.n)
    y = compute_response(spec, X, errors)
    return Dataset(X=X, y=y, has_intercept=spec.has_intercept), spec.truth()
