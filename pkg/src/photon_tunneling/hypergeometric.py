"""Pochhammer-series evaluation of 1F1 and 2F1.

Only the plain power series is used; there are no transformation formulas,
so 2F1 is restricted to |z| < 1 and convergence near z = 1 is bought with
more terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

# partial sums are rescaled once they pass this magnitude
_RESCALE_AT = 1e280
_STOP_RUN = 3


class SeriesConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation policy for hypergeometric series."""

    rel_tol: float = 1e-13
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_POLICY = SeriesPolicy()


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def pochhammer_series(
    upper: Sequence[float],
    lower: Sequence[float],
    z: float,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> tuple[float, float]:
    """Sum ``sum_k prod (a_i)_k / prod (b_j)_k * z^k / k!``.

    Returns ``(mantissa, log_scale)`` with the series equal to
    ``mantissa * exp(log_scale)``, so sums beyond double range survive.
    Summation stops once three consecutive terms each have an estimated
    geometric remainder ``|term| / (1 - |ratio|)`` below ``rel_tol * |partial sum|``.
    """
    for b in lower:
        if _is_nonpositive_integer(b):
            raise ValueError(f"lower parameter {b} is a non-positive integer (pole)")

    total = 1.0
    term = 1.0
    log_scale = 0.0
    small_run = 0
    for k in range(policy.max_terms):
        ratio = z / (k + 1)
        for a in upper:
            ratio *= a + k
        for b in lower:
            ratio /= b + k
        term *= ratio
        total += term
        if abs(total) > _RESCALE_AT:
            log_scale += math.log(abs(total))
            scale = abs(total)
            term /= scale
            total /= scale
        # a geometric tail with this ratio sums to |term| / (1 - |ratio|)
        tail = abs(term) / (1.0 - abs(ratio)) if abs(ratio) < 1.0 else math.inf
        if tail <= policy.rel_tol * abs(total) or term == 0.0:
            small_run += 1
            if small_run >= _STOP_RUN:
                return total, log_scale
        else:
            small_run = 0
    raise SeriesConvergenceError(
        f"series with upper={tuple(upper)}, lower={tuple(lower)}, z={z!r} did not converge "
        f"within max_terms={policy.max_terms}"
    )


def hyp1f1(a: float, b: float, z: float, policy: SeriesPolicy = DEFAULT_POLICY, *, exp_shift: float = 0.0) -> float:
    """Confluent hypergeometric function 1F1(a; b; z), times ``exp(-exp_shift)``.

    ``exp_shift`` lets callers form products like ``exp(-x) 1F1(a; b; x)``
    for large ``x`` without overflowing the intermediate value.
    """
    mantissa, log_scale = pochhammer_series((a,), (b,), z, policy)
    return mantissa * math.exp(log_scale - exp_shift)


def hyp2f1(a: float, b: float, c: float, z: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; z) for |z| < 1."""
    if not abs(z) < 1:
        raise ValueError(f"2F1 series needs |z| < 1, got z={z!r}")
    try:
        mantissa, log_scale = pochhammer_series((a, b), (c,), z, policy)
    except SeriesConvergenceError as exc:
        raise SeriesConvergenceError(
            f"{exc}; z={z!r} is close to 1 - use a smaller mean photon number or a larger max_terms"
        ) from None
    return mantissa * math.exp(log_scale)
