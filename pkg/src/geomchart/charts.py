"""Construction of g and h control charts with per-subgroup limits.

The h chart monitors the average count per subgroup, the g chart the total
count per subgroup; with unequal subgroup sizes the limits vary with each
subgroup's size.  Center lines come from the grand mean; widths come from
the ML or the unbiased variance estimate, or from a fully known model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .estimators import StudyData, p_mvu, sigma2_ml
from .geom import GeometricModel

__all__ = [
    "AMERICAN_STANDARD",
    "BRITISH_STANDARD",
    "ChartConfig",
    "SubgroupLimits",
    "ChartLimits",
    "ChartPoint",
    "ChartReport",
    "limits_known",
    "h_limits",
    "g_limits",
    "classify",
]

# Conventional sigma multipliers: 3 targets a 0.27% false alarm rate,
# 3.09 targets 0.20%.
AMERICAN_STANDARD = 3.0
BRITISH_STANDARD = 3.09

KINDS = ("h", "g")
# plug_mvu plugs the unbiased p estimate into the known-parameter formulas;
# the resulting limits are NOT unbiased-based and exist for study only.
BASES = ("ml", "mvu", "known", "plug_mvu")

_STATISTIC = {"h": "subgroup_mean", "g": "subgroup_total"}

DEGENERATE_WARNING = "all counts equal the shift; control limits have zero width"


@dataclass(frozen=True)
class ChartConfig:
    kind: str
    basis: str = "ml"
    multiplier: float = AMERICAN_STANDARD
    known_model: Optional[GeometricModel] = None
    clamp_lcl: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {self.basis!r}")
        if self.multiplier <= 0:
            raise ValueError(f"multiplier must be positive, got {self.multiplier}")
        if (self.known_model is not None) != (self.basis == "known"):
            raise ValueError("known_model must be supplied exactly when basis='known'")


@dataclass(frozen=True)
class SubgroupLimits:
    index: int  # 1-based position of the subgroup
    n: int
    ucl: float
    cl: float
    lcl: float
    half_width: float


@dataclass(frozen=True)
class ChartLimits:
    kind: str
    basis: str
    multiplier: float
    statistic: str
    entries: tuple[SubgroupLimits, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "basis": self.basis,
            "multiplier": self.multiplier,
            "statistic": self.statistic,
            "warnings": list(self.warnings),
            "subgroups": [
                {"index": e.index, "n": e.n, "ucl": e.ucl, "cl": e.cl, "lcl": e.lcl}
                for e in self.entries
            ],
        }


@dataclass(frozen=True)
class ChartPoint:
    index: int
    n: int
    value: float
    ucl: float
    cl: float
    lcl: float
    status: str  # in_control | above_ucl | below_lcl


@dataclass(frozen=True)
class ChartReport:
    kind: str
    basis: str
    multiplier: float
    statistic: str
    points: tuple[ChartPoint, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "basis": self.basis,
            "multiplier": self.multiplier,
            "statistic": self.statistic,
            "warnings": list(self.warnings),
            "subgroups": [
                {
                    "index": pt.index,
                    "n": pt.n,
                    "value": pt.value,
                    "ucl": pt.ucl,
                    "cl": pt.cl,
                    "lcl": pt.lcl,
                    "status": pt.status,
                }
                for pt in self.points
            ],
        }


def _limit_parts(
    kind: str,
    mean: float,
    variance: float,
    shift: int,
    n_k: int,
    multiplier: float,
    clamp_lcl: bool,
    width_scale: float = 1.0,
) -> tuple[float, float, float, float]:
    """(ucl, cl, lcl, half_width) for one subgroup.

    width_scale multiplies the finished half-width, so an exact ratio
    between two bases survives floating point.
    """
    if kind == "h":
        cl = mean
        half = multiplier * math.sqrt(variance / n_k)
        floor = float(shift)
    else:
        cl = n_k * mean
        half = multiplier * math.sqrt(n_k * variance)
        floor = float(n_k * shift)
    half *= width_scale
    lcl = cl - half
    if clamp_lcl:
        lcl = max(lcl, floor)
    return cl + half, cl, lcl, half


def limits_known(
    model: GeometricModel,
    n_k: int,
    config: ChartConfig,
    allow_degenerate: bool = False,
) -> tuple[float, float, float]:
    """Limits from a fully known model, as an (ucl, cl, lcl) triple."""
    if n_k < 1 or n_k != int(n_k):
        raise ValueError(f"subgroup size must be a positive integer, got {n_k}")
    if model.p == 1.0 and not allow_degenerate:
        raise ValueError(
            "p=1 gives zero-width limits; pass allow_degenerate=True to accept them"
        )
    ucl, cl, lcl, _ = _limit_parts(
        config.kind,
        model.mean,
        model.variance,
        model.shift,
        int(n_k),
        config.multiplier,
        config.clamp_lcl,
    )
    return ucl, cl, lcl


def _estimated_limits(data: StudyData, config: ChartConfig, kind: str) -> ChartLimits:
    if config.kind != kind:
        raise ValueError(f"config.kind is {config.kind!r} but {kind!r} limits were requested")

    warnings: tuple[str, ...] = ()
    width_scale = 1.0
    n = data.n_total

    if config.basis == "known":
        model = config.known_model
        mean, variance, shift = model.mean, model.variance, model.shift
        if model.p == 1.0:
            warnings = (DEGENERATE_WARNING,)
    elif config.basis == "plug_mvu":
        p_hat = p_mvu(data)
        mean = (1.0 - p_hat) / p_hat + data.shift
        variance = (1.0 - p_hat) / p_hat**2
        shift = data.shift
        if variance == 0.0:
            warnings = (DEGENERATE_WARNING,)
    else:
        mean = data.grand_mean
        variance = sigma2_ml(data)
        shift = data.shift
        if config.basis == "mvu":
            # exact half-width ratio to the ML basis: sqrt(N/(N+1))
            width_scale = math.sqrt(n / (n + 1.0))
        if variance == 0.0:
            warnings = (DEGENERATE_WARNING,)

    entries = []
    for k, n_k in enumerate(data.sizes, start=1):
        ucl, cl, lcl, half = _limit_parts(
            kind, mean, variance, shift, n_k, config.multiplier,
            config.clamp_lcl, width_scale,
        )
        entries.append(
            SubgroupLimits(index=k, n=n_k, ucl=ucl, cl=cl, lcl=lcl, half_width=half)
        )
    return ChartLimits(
        kind=kind,
        basis=config.basis,
        multiplier=config.multiplier,
        statistic=_STATISTIC[kind],
        entries=tuple(entries),
        warnings=warnings,
    )


def h_limits(data: StudyData, config: ChartConfig) -> ChartLimits:
    """Per-subgroup limits for the chart of subgroup means."""
    return _estimated_limits(data, config, "h")


def g_limits(data: StudyData, config: ChartConfig) -> ChartLimits:
    """Per-subgroup limits for the chart of subgroup totals."""
    return _estimated_limits(data, config, "g")


def classify(data: StudyData, limits: ChartLimits) -> ChartReport:
    """Plot each subgroup's statistic against its limits.

    A point exactly on a limit is in control; only strict exceedance
    signals.
    """
    if data.sizes != tuple(e.n for e in limits.entries):
        raise ValueError(
            f"limits computed for subgroup sizes {tuple(e.n for e in limits.entries)} "
            f"do not match data sizes {data.sizes}"
        )
    points = []
    for subgroup, entry in zip(data.subgroups, limits.entries):
        value = sum(subgroup) / len(subgroup)
        if limits.kind == "g":
            value = float(sum(subgroup))
        if value > entry.ucl:
            status = "above_ucl"
        elif value < entry.lcl:
            status = "below_lcl"
        else:
            status = "in_control"
        points.append(
            ChartPoint(
                index=entry.index,
                n=entry.n,
                value=value,
                ucl=entry.ucl,
                cl=entry.cl,
                lcl=entry.lcl,
                status=status,
            )
        )
    return ChartReport(
        kind=limits.kind,
        basis=limits.basis,
        multiplier=limits.multiplier,
        statistic=limits.statistic,
        points=tuple(points),
        warnings=limits.warnings,
    )
