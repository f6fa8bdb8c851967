"""Shifted geometric and shifted negative binomial distributions.

A count is the number of cases observed until the first nonconforming one,
bounded below by a known shift (usually 0 or 1).  Sums of independent
shifted geometric counts follow the shifted negative binomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GeometricModel",
    "NegBinModel",
    "geom_pmf",
    "geom_moments",
    "nbinom_pmf",
    "counts_from_uniforms",
    "sample_geometric",
]


@dataclass(frozen=True)
class GeometricModel:
    """Success probability and known minimum possible count."""

    p: float
    shift: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p must be in (0, 1], got {self.p}")
        if self.shift < 0 or self.shift != int(self.shift):
            raise ValueError(f"shift must be a non-negative integer, got {self.shift}")

    @property
    def mean(self) -> float:
        return (1.0 - self.p) / self.p + self.shift

    @property
    def variance(self) -> float:
        return (1.0 - self.p) / self.p**2


@dataclass(frozen=True)
class NegBinModel:
    """Sum of n independent counts drawn from the same geometric model."""

    n: int
    base: GeometricModel

    def __post_init__(self) -> None:
        if self.n < 1 or self.n != int(self.n):
            raise ValueError(f"n must be a positive integer, got {self.n}")


def geom_pmf(model: GeometricModel, y: int) -> float:
    """P(Y = y) = p (1-p)^(y - shift); zero below the support."""
    k = y - model.shift
    if k < 0:
        return 0.0
    if model.p == 1.0:
        return 1.0 if k == 0 else 0.0
    return model.p * (1.0 - model.p) ** k


def geom_moments(model: GeometricModel) -> tuple[float, float]:
    return model.mean, model.variance


def nbinom_pmf(model: NegBinModel, t: int) -> float:
    """P(T = t) = C(t - n*shift + n - 1, n - 1) p^n (1-p)^(t - n*shift).

    The binomial coefficient is evaluated through log-gamma so the pmf
    stays finite for large t and n.
    """
    n, p, shift = model.n, model.base.p, model.base.shift
    k = t - n * shift
    if k < 0:
        return 0.0
    if p == 1.0:
        return 1.0 if k == 0 else 0.0
    log_coeff = math.lgamma(k + n) - math.lgamma(n) - math.lgamma(k + 1)
    return math.exp(log_coeff + n * math.log(p) + k * math.log1p(-p))


def counts_from_uniforms(u, model: GeometricModel):
    """Inverse-transform draws: one uniform in [0, 1) becomes one count.

    Uses shift + floor(ln(v) / ln(1-p)) with v = 1 - u in (0, 1] so the
    logarithm is always finite.  Results are returned as float64; counts
    this size are represented exactly.
    """
    u = np.asarray(u, dtype=np.float64)
    if model.p == 1.0:
        return np.full(u.shape, float(model.shift))
    return model.shift + np.floor(np.log(1.0 - u) / math.log1p(-model.p))


def sample_geometric(model: GeometricModel, rng: np.random.Generator, size=None):
    """Draw from the shifted geometric distribution.

    Every draw consumes exactly one uniform from rng, so substream
    accounting stays trivial under any chunked or parallel layout.
    Returns an int for size=None, otherwise an int64 array.
    """
    u = rng.random(size)
    counts = counts_from_uniforms(u, model)
    if size is None:
        return int(counts)
    return counts.astype(np.int64)
