"""Brute-force evolution in a fixed photon-number sector.

The coupler Hamiltonian (in units of hbar J)

    H / (hbar J) = gamma (a^dag a - b^dag b) + (a^dag b + b^dag a)

conserves the total photon number N.  On the basis ``|k, N-k>`` it is a real
symmetric tridiagonal matrix, which is diagonalized directly and
exponentiated.  Nothing in here uses the transfer matrix or any of the
closed-form probabilities; the module is the independent check on them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .core import DEFAULT_SECTOR_CAP, TwoModeFockState, check_sector


class EigensolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class SectorHamiltonian:
    total_photons: int
    gamma: float
    diagonal: np.ndarray
    off_diagonal: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )

    def energy(self, state: TwoModeFockState) -> float:
        psi = state.amplitudes
        return float(np.vdot(psi, self.matrix @ psi).real)


def build_sector(N: int, gamma: float, cap: int = DEFAULT_SECTOR_CAP) -> SectorHamiltonian:
    check_sector(N, cap)
    k = np.arange(N + 1, dtype=float)
    diagonal = gamma * (2.0 * k - N)
    off = np.sqrt((k[:-1] + 1.0) * (N - k[:-1]))
    diagonal.setflags(write=False)
    off.setflags(write=False)
    return SectorHamiltonian(N, float(gamma), diagonal, off)


@lru_cache(maxsize=512)
def _eigensystem(N: int, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    h = build_sector(N, gamma, cap=max(N, DEFAULT_SECTOR_CAP))
    if N == 0:
        w, V = np.zeros(1), np.ones((1, 1))
    else:
        try:
            w, V = eigh_tridiagonal(h.diagonal, h.off_diagonal)
        except LinAlgError as exc:
            raise EigensolverError(f"eigendecomposition failed for N={N}, gamma={gamma}: {exc}") from exc
    w.setflags(write=False)
    V.setflags(write=False)
    return w, V


def propagator(h: SectorHamiltonian, tau: float) -> np.ndarray:
    """``exp(-i h tau)`` on the sector, assembled from the eigendecomposition."""
    w, V = _eigensystem(h.total_photons, h.gamma)
    return (V * np.exp(-1j * w * tau)) @ V.T


def evolve_oracle(h: SectorHamiltonian, initial: TwoModeFockState, tau: float) -> TwoModeFockState:
    if initial.total_photons != h.total_photons:
        raise ValueError(
            f"state has N={initial.total_photons} photons but the Hamiltonian acts on N={h.total_photons}"
        )
    if not math.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    return TwoModeFockState(h.total_photons, propagator(h, tau) @ initial.amplitudes)


def oracle_distribution(h: SectorHamiltonian, initial: TwoModeFockState, tau: float) -> list[tuple[int, float]]:
    """Outcome pmf ``[(k, |<k, N-k|psi(tau)>|^2), ...]`` for k = 0..N."""
    probs = evolve_oracle(h, initial, tau).probabilities()
    return [(k, float(pk)) for k, pk in enumerate(probs)]
