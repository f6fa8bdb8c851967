"""Exact theoretical moments, biases, variances and MSEs of the three
estimators as functions of the pooled sample size N and the true p.

Each first moment has two independent routes: a hypergeometric closed form
and a direct bias series.  ``moment_report`` evaluates both and refuses to
return numbers that disagree, so a regression in either route is caught at
the point of use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .estimators import ESTIMATOR_NAMES
from .series import DEFAULT_CONTROL, SeriesControl, hyp2f1, hyp3f2, sum_ratio_series

__all__ = [
    "MomentCheckError",
    "EstimatorMoments",
    "MomentReport",
    "mean_p_ml",
    "mean_p_b",
    "bias_p_ml",
    "bias_p_b",
    "m2_p_ml",
    "m2_p_b",
    "m2_p_mvu",
    "var_p_mvu",
    "moment_report",
    "theory_curves",
]

# Absolute tolerance for agreement between the hypergeometric route and the
# direct series route of the same quantity.
DUAL_ROUTE_TOL = 1e-9


class MomentCheckError(ArithmeticError):
    """An internal cross-check between two routes to the same moment failed."""


def _check_args(n_obs: int, p: float, minimum: int = 1) -> None:
    if n_obs < minimum or n_obs != int(n_obs):
        raise ValueError(f"N must be an integer >= {minimum}, got {n_obs}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be strictly inside (0, 1), got {p}")


def mean_p_ml(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """E(p_ml) = p^N 2F1(N, N; N+1; 1-p)."""
    _check_args(n_obs, p)
    return p**n_obs * hyp2f1(n_obs, n_obs, n_obs + 1, 1.0 - p, ctrl)


def mean_p_b(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """E(p_b) = (N-1)/N * E(p_ml)."""
    return (n_obs - 1) / n_obs * mean_p_ml(n_obs, p, ctrl)


def bias_p_ml(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Bias of p_ml as the direct series sum_{n>=1} p (1-p)^n / C(N+n, n).

    All terms are positive and decay at least geometrically, so the series
    route is an independent check on the hypergeometric route.
    """
    _check_args(n_obs, p)
    q = 1.0 - p
    value, _ = sum_ratio_series(
        p * q / (n_obs + 1),
        lambda n: q * (n + 2) / (n_obs + n + 2),
        ctrl,
        name=f"bias_p_ml(N={n_obs}, p={p})",
        ratio_sup=q,
    )
    return value


def bias_p_b(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Bias of p_b: -p/N + (N-1)/N times the bias of p_ml."""
    return -p / n_obs + (n_obs - 1) / n_obs * bias_p_ml(n_obs, p, ctrl)


def m2_p_ml(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """E(p_ml^2) = p^N 3F2(N, N, N; N+1, N+1; 1-p)."""
    _check_args(n_obs, p)
    return p**n_obs * hyp3f2(n_obs, n_obs, n_obs, n_obs + 1, n_obs + 1, 1.0 - p, ctrl)


def m2_p_b(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """E(p_b^2) = ((N-1)/N)^2 * E(p_ml^2)."""
    return ((n_obs - 1) / n_obs) ** 2 * m2_p_ml(n_obs, p, ctrl)


def m2_p_mvu(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """E(p_mvu^2) = p^N 2F1(N-1, N-1; N; 1-p); needs N >= 2."""
    _check_args(n_obs, p, minimum=2)
    return p**n_obs * hyp2f1(n_obs - 1, n_obs - 1, n_obs, 1.0 - p, ctrl)


def var_p_mvu(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Var(p_mvu) as the series p^2 sum_{n>=1} (1-p)^n / C(N-1+n, n).

    The sum runs to convergence; truncating it at n = N would not reconcile
    with E(p_mvu^2) - p^2.
    """
    _check_args(n_obs, p, minimum=2)
    q = 1.0 - p
    value, _ = sum_ratio_series(
        q / n_obs,
        lambda n: q * (n + 2) / (n_obs + n + 1),
        ctrl,
        name=f"var_p_mvu(N={n_obs}, p={p})",
        ratio_sup=q,
    )
    return p * p * value


@dataclass(frozen=True)
class EstimatorMoments:
    mean: float
    bias: float
    second_moment: float
    variance: float
    mse: float


@dataclass(frozen=True)
class MomentReport:
    """Exact moments of all three estimators at one (N, p) point."""

    N: int
    p: float
    estimators: dict[str, EstimatorMoments]

    def __getitem__(self, name: str) -> EstimatorMoments:
        return self.estimators[name]


def _cross_check(label: str, a: float, b: float, n_obs: int, p: float) -> None:
    if abs(a - b) > DUAL_ROUTE_TOL:
        raise MomentCheckError(
            f"{label} routes disagree at N={n_obs}, p={p}: {a!r} vs {b!r}"
        )


def moment_report(n_obs: int, p: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> MomentReport:
    """Assemble means, biases, second moments, variances and MSEs, enforcing
    the dual-route and nonnegativity checks before returning."""
    _check_args(n_obs, p, minimum=2)

    mean_ml = mean_p_ml(n_obs, p, ctrl)
    _cross_check("E(p_ml)", mean_ml - p, bias_p_ml(n_obs, p, ctrl), n_obs, p)
    mean_b = (n_obs - 1) / n_obs * mean_ml
    _cross_check("E(p_b)", mean_b - p, bias_p_b(n_obs, p, ctrl), n_obs, p)

    second_ml = m2_p_ml(n_obs, p, ctrl)
    second_b = ((n_obs - 1) / n_obs) ** 2 * second_ml
    second_mvu = m2_p_mvu(n_obs, p, ctrl)
    _cross_check("Var(p_mvu)", second_mvu - p * p, var_p_mvu(n_obs, p, ctrl), n_obs, p)

    out: dict[str, EstimatorMoments] = {}
    for name, mean, second in (
        ("p_b", mean_b, second_b),
        ("p_mvu", p, second_mvu),
        ("p_ml", mean_ml, second_ml),
    ):
        bias = 0.0 if name == "p_mvu" else mean - p
        variance = second - mean * mean
        if variance < 0.0:
            raise MomentCheckError(
                f"negative variance for {name} at N={n_obs}, p={p}: {variance!r}"
            )
        out[name] = EstimatorMoments(
            mean=mean,
            bias=bias,
            second_moment=second,
            variance=variance,
            mse=variance + bias * bias,
        )
    return MomentReport(N=n_obs, p=p, estimators=out)


def theory_curves(
    n_list, p_grid, ctrl: SeriesControl = DEFAULT_CONTROL
) -> list[dict]:
    """Tabulate bias and MSE per estimator over a grid, as rows with keys
    (N, p, estimator, bias, mse) ordered by N then p then estimator."""
    p_grid = list(p_grid)
    for p in p_grid:
        if not 0.0 < p < 1.0:
            raise ValueError(f"p grid must lie strictly inside (0, 1), got {p}")
    rows = []
    for n_obs in n_list:
        for p in p_grid:
            report = moment_report(n_obs, p, ctrl)
            for name in ESTIMATOR_NAMES:
                est = report[name]
                rows.append(
                    {
                        "N": int(n_obs),
                        "p": float(p),
                        "estimator": name,
                        "bias": est.bias,
                        "mse": est.mse,
                    }
                )
    return rows
