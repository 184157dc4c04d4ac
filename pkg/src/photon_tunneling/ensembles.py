"""Photon-number distributions for the field in waveguide B.

A distribution is averaged against the Fock-state result,
``sum_l w_l C(l+n2, n2) (1-P)^l P^n2``, which gives the tunneling
probability for a field that is not in a number state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln, xlogy

DEFAULT_TRUNC_TOL = 1e-12
_CHUNK = 256


@dataclass(frozen=True)
class PhotonNumberDistribution:
    """Truncated photon-number pmf.

    ``ns`` and ``weights`` are parallel arrays; ``mean`` is the nominal mean
    photon number of the untruncated state.
    """

    ns: np.ndarray
    weights: np.ndarray
    mean: float
    kind: str

    def __post_init__(self):
        if self.kind not in ("fock", "coherent", "squeezed"):
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        for arr in (self.ns, self.weights):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return len(self.ns)

    @property
    def total_weight(self) -> float:
        return float(math.fsum(self.weights))

    @property
    def empirical_mean(self) -> float:
        return float(math.fsum(self.ns * self.weights))


def _truncate(log_w_fn, trunc_tol: float, support: Optional[int]):
    """Grow the support in chunks until the cumulative weight reaches 1 - trunc_tol."""
    if support is not None:
        idx = np.arange(support)
        return idx, np.exp(log_w_fn(idx))
    weights = np.empty(0)
    start = 0
    while True:
        idx = np.arange(start, start + _CHUNK)
        weights = np.concatenate([weights, np.exp(log_w_fn(idx))])
        cum = np.cumsum(weights)
        hit = np.nonzero(cum >= 1.0 - trunc_tol)[0]
        if hit.size:
            size = int(hit[0]) + 1
            return np.arange(size), weights[:size]
        if weights.max() > 0 and weights[-_CHUNK:].max() < 1e-300:
            # tail already underflowed; rounding kept the sum just short of the target
            return np.arange(weights.size), weights
        start += _CHUNK


def fock_pmf(n: int) -> PhotonNumberDistribution:
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    return PhotonNumberDistribution(np.array([n]), np.array([1.0]), float(n), "fock")


def coherent_pmf(
    nbar: float, trunc_tol: float = DEFAULT_TRUNC_TOL, *, support: Optional[int] = None
) -> PhotonNumberDistribution:
    """Poisson weights ``exp(-nbar) nbar^n / n!`` of a coherent state with ``|beta|^2 = nbar``.

    ``support`` forces the number of retained terms instead of the
    cumulative-weight rule.
    """
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0 and support is None:
        return PhotonNumberDistribution(np.array([0]), np.array([1.0]), 0.0, "coherent")
    ns, w = _truncate(lambda n: -nbar + xlogy(n, nbar) - gammaln(n + 1), trunc_tol, support)
    return PhotonNumberDistribution(ns, w, float(nbar), "coherent")


def squeezed_pmf(
    nbar: float, trunc_tol: float = DEFAULT_TRUNC_TOL, *, support: Optional[int] = None
) -> PhotonNumberDistribution:
    """Even-photon weights of a squeezed vacuum with ``sinh^2 r = nbar``.

    ``w_{2l} = tanh(r)^{2l} (2l)! / (cosh(r) (l!)^2 4^l)``; the squeezing phase
    only enters the amplitudes, never the weights.  ``support`` counts the
    retained even terms.
    """
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0 and support is None:
        return PhotonNumberDistribution(np.array([0]), np.array([1.0]), 0.0, "squeezed")
    tanh2 = nbar / (1.0 + nbar)
    log_cosh = 0.5 * math.log1p(nbar)

    def log_w(l):
        return xlogy(l, tanh2) + gammaln(2 * l + 1) - 2 * gammaln(l + 1) - l * math.log(4.0) - log_cosh

    ls, w = _truncate(log_w, trunc_tol, support)
    return PhotonNumberDistribution(2 * ls, w, float(nbar), "squeezed")


def weighted_sum(dist: PhotonNumberDistribution, n2: int, p: float) -> float:
    """Ensemble-averaged probability that ``n2`` photons tunnel into the field ``dist``."""
    if n2 < 1:
        raise ValueError(f"n2 must be a positive integer, got {n2}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"base probability must lie in [0, 1], got {p!r}")
    ns = dist.ns
    log_terms = (
        gammaln(ns + n2 + 1) - gammaln(ns + 1) - gammaln(n2 + 1) + xlogy(ns, 1.0 - p) + xlogy(n2, p)
    )
    return float(math.fsum(dist.weights * np.exp(log_terms)))
