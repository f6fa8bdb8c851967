"""Point estimators of the process parameters from unbalanced subgroup data.

Three estimators of the Bernoulli probability p are provided:

* ``p_ml``  -- maximum likelihood, 1 / (grand mean - shift + 1); biased high.
* ``p_b``   -- the (N-1)/N-scaled ML estimator in widespread use; biased low.
* ``p_mvu`` -- the minimum variance unbiased estimator,
  (N-1) / (total - N*shift + N - 1).

All three depend on the data only through (N, total, shift), so the
subgroup layout never changes an estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "ESTIMATOR_NAMES",
    "StudyData",
    "EstimateReport",
    "p_ml",
    "p_b",
    "p_mvu",
    "rao_blackwell_eta",
    "mu_hat",
    "sigma2_ml",
    "sigma2_mvu",
    "estimate_report",
]

# Canonical reporting order, low to high (the strict ordering on
# nondegenerate data).
ESTIMATOR_NAMES = ("p_b", "p_mvu", "p_ml")

MVU_SINGLE_OBS = "MVU requires at least two observations"


@dataclass(frozen=True)
class StudyData:
    """Event counts grouped into subgroups of unequal sizes.

    Each count is the number of cases until the first nonconforming one in
    one sampling slot; every count must be >= shift.
    """

    subgroups: tuple[tuple[int, ...], ...]
    shift: int = 0

    def __post_init__(self) -> None:
        if self.shift < 0 or self.shift != int(self.shift):
            raise ValueError(f"shift must be a non-negative integer, got {self.shift}")
        groups = []
        for i, subgroup in enumerate(self.subgroups):
            counts = []
            for j, raw in enumerate(subgroup):
                if raw != int(raw):
                    raise ValueError(
                        f"count {raw!r} is not an integer (subgroup {i}, index {j})"
                    )
                x = int(raw)
                if x < self.shift:
                    raise ValueError(
                        f"count {x} below shift {self.shift} (subgroup {i}, index {j})"
                    )
                counts.append(x)
            if not counts:
                raise ValueError(f"subgroup {i} is empty")
            groups.append(tuple(counts))
        if not groups:
            raise ValueError("at least one subgroup is required")
        object.__setattr__(self, "subgroups", tuple(groups))

    @classmethod
    def from_counts(cls, subgroups: Sequence[Sequence[int]], shift: int = 0) -> "StudyData":
        return cls(tuple(tuple(sub) for sub in subgroups), shift)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(sub) for sub in self.subgroups)

    @property
    def m(self) -> int:
        return len(self.subgroups)

    @property
    def n_total(self) -> int:
        return sum(self.sizes)

    @property
    def total(self) -> int:
        return sum(sum(sub) for sub in self.subgroups)

    @property
    def grand_mean(self) -> float:
        return self.total / self.n_total


def _denominator(data: StudyData) -> int:
    # N * (grand mean - shift + 1) as an exact integer, so the estimates are
    # single correctly-rounded divisions and exactly shift/grouping invariant.
    return data.total - data.n_total * data.shift + data.n_total


def p_ml(data: StudyData) -> float:
    """Maximum likelihood estimate of p; equals 1 iff every count is at the shift."""
    return data.n_total / _denominator(data)


def p_b(data: StudyData) -> float:
    """The (N-1)/N-scaled ML estimate; not unbiased despite its common billing."""
    return (data.n_total - 1) / _denominator(data)


def p_mvu(data: StudyData) -> float:
    """Minimum variance unbiased estimate of p."""
    n = data.n_total
    if n < 2:
        raise ValueError(MVU_SINGLE_OBS)
    return (n - 1) / (_denominator(data) - 1)


def rao_blackwell_eta(n: int, t: int, shift: int = 0) -> float:
    """Conditional probability that one designated count sits at the shift,
    given that n counts sum to t.

    Equals (n-1)/(t - n*shift + n - 1) and is free of p, which is what makes
    the estimator built from it unbiased.
    """
    if n < 2 or n != int(n):
        raise ValueError(f"n must be an integer >= 2, got {n}")
    if t < n * shift:
        raise ValueError(f"total {t} below the support minimum {n * shift}")
    return (n - 1) / (t - n * shift + n - 1)


def mu_hat(data: StudyData) -> float:
    """Estimate of the per-count mean: the grand mean, optimal on both the
    unbiasedness and the likelihood route."""
    return data.grand_mean


def sigma2_ml(data: StudyData) -> float:
    """ML estimate of the per-count variance: (mean - shift)(mean - shift + 1)."""
    centered = data.grand_mean - data.shift
    return centered * (centered + 1.0)


def sigma2_mvu(data: StudyData) -> float:
    """Unbiased estimate of the per-count variance: N/(N+1) times the ML one."""
    n = data.n_total
    return sigma2_ml(data) * n / (n + 1.0)


@dataclass(frozen=True)
class EstimateReport:
    """All point estimates for one dataset.  ``p_mvu`` is None when N = 1."""

    p_ml: float
    p_b: float
    p_mvu: Optional[float]
    mu_hat: float
    sigma2_ml: float
    sigma2_mvu: float
    N: int

    @property
    def ordering_strict(self) -> bool:
        """Whether p_b < p_mvu < p_ml held strictly (it must whenever the
        data are nondegenerate)."""
        if self.p_mvu is None:
            return False
        return self.p_b < self.p_mvu < self.p_ml

    def to_dict(self) -> dict:
        out = {
            "N": self.N,
            "p_b": self.p_b,
            "p_mvu": self.p_mvu,
            "p_ml": self.p_ml,
            "mu_hat": self.mu_hat,
            "sigma2_ml": self.sigma2_ml,
            "sigma2_mvu": self.sigma2_mvu,
            "ordering_strict": self.ordering_strict,
        }
        if self.p_mvu is None:
            out["p_mvu_reason"] = MVU_SINGLE_OBS
        return out


def estimate_report(data: StudyData) -> EstimateReport:
    n = data.n_total
    return EstimateReport(
        p_ml=p_ml(data),
        p_b=p_b(data),
        p_mvu=p_mvu(data) if n >= 2 else None,
        mu_hat=mu_hat(data),
        sigma2_ml=sigma2_ml(data),
        sigma2_mvu=sigma2_mvu(data),
        N=n,
    )
