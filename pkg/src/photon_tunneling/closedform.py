"""Closed-form tunneling probabilities as functions of the base probability P.

Notation: ``n2`` photons start in waveguide A, waveguide B holds either a
Fock state with ``n`` photons, a coherent state with mean ``nbar`` or a
squeezed vacuum with mean ``nbar = sinh^2 r``.  Each function returns the
probability that all ``n2`` photons end up in B.
"""
from __future__ import annotations

import math

from scipy.special import gammaln, xlogy

from .hypergeometric import DEFAULT_POLICY, SeriesPolicy, hyp2f1, pochhammer_series

__all__ = [
    "log_binomial",
    "prob_one_photon",
    "prob_multi",
    "peak_multi",
    "prob_coherent",
    "prob_coherent_single",
    "prob_coherent_single_max",
    "prob_squeezed",
]


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"base probability must lie in [0, 1], got {p!r}")


def _check_counts(n2: int, n: int) -> None:
    if n2 < 1:
        raise ValueError(f"n2 must be a positive integer, got {n2}")
    if n < 0:
        raise ValueError(f"background photon number must be >= 0, got {n}")


def log_binomial(n: int, k: int) -> float:
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def prob_one_photon(n: int, p: float) -> float:
    """One photon tunneling into a waveguide holding ``n`` photons: (n+1)(1-P)^n P."""
    _check_counts(1, n)
    _check_p(p)
    return (n + 1) * (1.0 - p) ** n * p


def prob_multi(n2: int, n: int, p: float) -> float:
    """``n2`` photons tunneling onto ``n`` photons: C(n+n2, n2) (1-P)^n P^n2."""
    _check_counts(n2, n)
    _check_p(p)
    if n2 == 1:
        return prob_one_photon(n, p)
    log_val = log_binomial(n + n2, n2) + xlogy(n, 1.0 - p) + xlogy(n2, p)
    return math.exp(log_val)


def peak_multi(n2: int, n: int) -> tuple[float, float]:
    """Maximizer and maximum of :func:`prob_multi` over P.

    The maximum sits at ``P = n2 / (n + n2)``.
    """
    _check_counts(n2, n)
    total = n + n2
    p_star = n2 / total
    log_val = log_binomial(total, n2) + xlogy(n2, n2) + xlogy(n, n) - total * math.log(total)
    return p_star, math.exp(log_val)


def prob_coherent(n2: int, nbar: float, p: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Coherent field in B: exp(-nbar) 1F1(1+n2; 1; nbar(1-P)) P^n2."""
    _check_counts(n2, 0)
    _check_p(p)
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if p == 0.0:
        return 0.0
    mantissa, log_scale = pochhammer_series((1.0 + n2,), (1.0,), nbar * (1.0 - p), policy)
    shift = log_scale - nbar
    if abs(shift) < 700.0:
        return mantissa * math.exp(shift) * p**n2
    return mantissa * math.exp(shift + n2 * math.log(p))


def prob_coherent_single(nbar: float, p: float) -> float:
    """Single-photon coherent result in elementary form: exp(-nbar P)(1 + nbar(1-P)) P."""
    _check_p(p)
    return math.exp(-nbar * p) * (1.0 + nbar * (1.0 - p)) * p


def prob_coherent_single_max(nbar: float) -> tuple[float, float]:
    """Maximizer and maximum over P of the single-photon coherent probability.

    Below ``nbar = 1/2`` the stationary point lies beyond P = 1 and the
    maximum on [0, 1] is the endpoint P = 1.
    """
    if not nbar > 0:
        raise ValueError(f"nbar must be positive, got {nbar}")
    root = math.sqrt(nbar * nbar + 2.0 * nbar + 5.0)
    p_star = (nbar * nbar + 3.0 * nbar - nbar * root) / (2.0 * nbar * nbar)
    if p_star >= 1.0:
        return 1.0, math.exp(-nbar)
    value = (root - 2.0) / nbar * math.exp(0.5 * (root - nbar - 3.0))
    return p_star, value


def prob_squeezed(n2: int, nbar: float, p: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Squeezed vacuum in B: P^n2 2F1((1+n2)/2, (2+n2)/2; 1; (1-P)^2 nbar/(1+nbar)) / sqrt(1+nbar)."""
    _check_counts(n2, 0)
    _check_p(p)
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if p == 0.0:
        return 0.0
    z = (1.0 - p) ** 2 * nbar / (1.0 + nbar)
    f = hyp2f1((1.0 + n2) / 2.0, (2.0 + n2) / 2.0, 1.0, z, policy)
    return p**n2 * f / math.sqrt(1.0 + nbar)
