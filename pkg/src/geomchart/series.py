"""Series evaluation of hypergeometric functions and the incomplete beta
function.

Everything here is evaluated by direct summation of the defining power
series with a multiplicative term recurrence.  That converges for argument
z in [0, 1), which is the only regime this package needs (z = 1 - p for a
Bernoulli probability p).  Convergence slows as z -> 1, i.e. p -> 0; the
truncation policy is explicit via SeriesControl and a failure to converge
raises NonConvergenceError instead of returning a silent partial sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "NonConvergenceError",
    "pochhammer",
    "hyp2f1",
    "hyp2f1_terms",
    "hyp3f2",
    "hyp3f2_terms",
    "inc_beta",
    "sum_ratio_series",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy: stop once the geometric bound on the remaining
    tail is negligible relative to the running sum, give up after
    max_terms."""

    rel_tol: float = 1e-14
    max_terms: int = 1_000_000

    def __post_init__(self) -> None:
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must be in (0, 1), got {self.rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_CONTROL = SeriesControl()


class NonConvergenceError(ArithmeticError):
    """A series did not meet its tolerance within the allowed term budget."""

    def __init__(self, name: str, terms_used: int, last_term: float):
        super().__init__(
            f"{name} did not converge within {terms_used} terms "
            f"(last term {last_term:.3e})"
        )
        self.terms_used = terms_used
        self.last_term = last_term


def pochhammer(x: float, n: int) -> float:
    """Rising factorial x(x+1)...(x+n-1), with the empty product equal to 1."""
    if n < 0 or n != int(n):
        raise ValueError(f"pochhammer order must be a non-negative integer, got {n}")
    result = 1.0
    for k in range(int(n)):
        result *= x + k
    return result


def sum_ratio_series(
    first_term: float,
    ratio: Callable[[int], float],
    ctrl: SeriesControl = DEFAULT_CONTROL,
    name: str = "series",
    ratio_sup: float = 0.0,
) -> tuple[float, int]:
    """Sum a series given its first term and the term ratio t(n+1)/t(n).

    Returns (value, terms_used).  The multiplicative recurrence keeps each
    step O(1) and avoids the overflow a pochhammer-quotient evaluation
    would hit for large parameters.

    Stopping is tail-aware: with rho bounding every later term ratio
    (max of the current ratio and ratio_sup, the caller-supplied limiting
    ratio), the remaining tail is at most |term| * rho / (1 - rho), and
    summation stops once that bound drops below rel_tol of the running
    sum.  Truncating on the bare term size instead would lose a factor
    1/(1 - rho) of accuracy as the argument approaches 1.
    """
    term = float(first_term)
    total = term
    terms_used = 1
    for n in range(ctrl.max_terms - 1):
        r = ratio(n)
        term *= r
        total += term
        terms_used += 1
        rho = max(abs(r), ratio_sup)
        if rho < 1.0 and abs(term) * rho / (1.0 - rho) <= ctrl.rel_tol * abs(total):
            return total, terms_used
    raise NonConvergenceError(name, terms_used, term)


def _check_z(z: float, name: str) -> None:
    if not 0.0 <= z < 1.0:
        raise ValueError(f"{name} requires 0 <= z < 1, got z={z}")


def _check_lower(value: float, label: str, name: str) -> None:
    # A non-positive integer lower parameter hits a zero denominator.
    if value <= 0 and value == int(value):
        raise ValueError(
            f"{name}: lower parameter {label}={value} is a non-positive integer"
        )


def hyp2f1_terms(
    a: float, b: float, c: float, z: float, ctrl: SeriesControl = DEFAULT_CONTROL
) -> tuple[float, int]:
    """Gauss hypergeometric series; returns (value, terms_used)."""
    _check_z(z, "hyp2f1")
    _check_lower(c, "c", "hyp2f1")
    return sum_ratio_series(
        1.0,
        lambda n: (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z,
        ctrl,
        name=f"hyp2f1({a}, {b}; {c}; {z})",
        ratio_sup=z,
    )


def hyp2f1(
    a: float, b: float, c: float, z: float, ctrl: SeriesControl = DEFAULT_CONTROL
) -> float:
    return hyp2f1_terms(a, b, c, z, ctrl)[0]


def hyp3f2_terms(
    a1: float,
    a2: float,
    a3: float,
    b1: float,
    b2: float,
    z: float,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> tuple[float, int]:
    """Generalized 3F2 series; returns (value, terms_used)."""
    _check_z(z, "hyp3f2")
    _check_lower(b1, "b1", "hyp3f2")
    _check_lower(b2, "b2", "hyp3f2")
    return sum_ratio_series(
        1.0,
        lambda n: (a1 + n) * (a2 + n) * (a3 + n)
        / ((b1 + n) * (b2 + n) * (1.0 + n))
        * z,
        ctrl,
        name=f"hyp3f2({a1}, {a2}, {a3}; {b1}, {b2}; {z})",
        ratio_sup=z,
    )


def hyp3f2(
    a1: float,
    a2: float,
    a3: float,
    b1: float,
    b2: float,
    z: float,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    return hyp3f2_terms(a1, a2, a3, b1, b2, z, ctrl)[0]


def inc_beta(x: float, a: float, b: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Incomplete beta integral of y^(a-1) (1-y)^(b-1) from 0 to x.

    Evaluated as (x^a / a) * 2F1(a, 1-b; a+1; x), which stays valid for
    b <= 0 where the complete beta function does not exist.
    """
    if a <= 0:
        raise ValueError(f"inc_beta requires a > 0, got a={a}")
    if not 0.0 <= x < 1.0:
        raise ValueError(f"inc_beta requires 0 <= x < 1, got x={x}")
    if x == 0.0:
        return 0.0
    return (x**a / a) * hyp2f1(a, 1.0 - b, a + 1.0, x, ctrl)
