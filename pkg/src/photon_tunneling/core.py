"""Two-mode bosonic tunneling: parameters, transfer matrix and Fock-state evolution.

Everything here works in dimensionless units: ``gamma = Delta / J`` and the
scaled time ``tau = J t``.  The evolution of a Fock state is obtained from the
2x2 mode-transfer matrix

    a^dag(-t) = u a^dag + v b^dag
    b^dag(-t) = v a^dag + conj(u) b^dag

with ``u = cos(Q tau) - i (gamma/Q) sin(Q tau)`` and ``v = -i sin(Q tau) / Q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

DEFAULT_SECTOR_CAP = 60


class SectorCapError(ValueError):
    """Raised when a photon-number sector exceeds the configured cap."""


def check_sector(total_photons: int, cap: int = DEFAULT_SECTOR_CAP) -> None:
    if total_photons < 0:
        raise ValueError(f"total photon number must be >= 0, got {total_photons}")
    if total_photons > cap:
        raise SectorCapError(
            f"sector N={total_photons} exceeds the cap of {cap} photons; "
            "raise the cap explicitly if you accept the precision risk"
        )


@dataclass(frozen=True)
class TunnelingConfig:
    """Dimensionless coupler parameters.

    Parameters
    ----------
    gamma : float
        Detuning over coupling, ``Delta / J``.
    tau : float
        Scaled time ``J t`` (for waveguides: coupling times propagation length).
    """

    gamma: float
    tau: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"gamma must be finite, got {self.gamma}")
        if not math.isfinite(self.tau) or self.tau < 0:
            raise ValueError(f"tau must be finite and >= 0, got {self.tau}")

    @property
    def Q(self) -> float:
        return math.sqrt(1.0 + self.gamma * self.gamma)

    @property
    def P0(self) -> float:
        """Largest reachable single-photon tunneling probability, ``1/Q^2``."""
        return 1.0 / (1.0 + self.gamma * self.gamma)

    @property
    def period(self) -> float:
        """Period of the base probability in ``tau``."""
        return math.pi / self.Q

    @classmethod
    def from_physical(cls, J: float, delta: float, t: float) -> "TunnelingConfig":
        """Build from a coupling ``J``, detuning ``delta`` and time/length ``t``.

        ``J`` and ``delta`` must share units that are inverse to those of ``t``
        (e.g. mm^-1 and mm).
        """
        if not J > 0:
            raise ValueError(f"coupling J must be positive, got {J}")
        if t < 0:
            raise ValueError(f"propagation time/length must be >= 0, got {t}")
        return cls(gamma=delta / J, tau=J * t)


@dataclass(frozen=True)
class TransferMatrix:
    """The unitary ``[[u, v], [v, conj(u)]]`` acting on the creation operators."""

    u: complex
    v: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.u, self.v], [self.v, self.u.conjugate()]], dtype=complex)

    @property
    def probability(self) -> float:
        return abs(self.v) ** 2

    def unitarity_defect(self) -> float:
        return abs(abs(self.u) ** 2 + abs(self.v) ** 2 - 1.0)

    def inverse(self) -> "TransferMatrix":
        """Matrix for the reversed evolution ``-tau`` (equal to the adjoint)."""
        return TransferMatrix(self.u.conjugate(), -self.v)


@dataclass(frozen=True)
class TwoModeFockState:
    """State in the fixed-N sector; ``amplitudes[k]`` multiplies ``|k, N-k>``."""

    total_photons: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.shape[0] != self.total_photons + 1:
            raise ValueError(
                f"expected {self.total_photons + 1} amplitudes for N={self.total_photons}, "
                f"got shape {amps.shape}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n_a: int, n_b: int) -> "TwoModeFockState":
        """The Fock state ``|n_a, n_b>``."""
        if n_a < 0 or n_b < 0:
            raise ValueError("photon numbers must be non-negative")
        amps = np.zeros(n_a + n_b + 1, dtype=complex)
        amps[n_a] = 1.0
        return cls(n_a + n_b, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex], normalize: bool = False) -> "TwoModeFockState":
        amps = np.asarray(amplitudes, dtype=complex)
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(amps.shape[0] - 1, amps)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def transfer_matrix(config: TunnelingConfig) -> TransferMatrix:
    Q = config.Q
    phase = Q * config.tau
    s = math.sin(phase)
    u = complex(math.cos(phase), -config.gamma / Q * s)
    v = complex(0.0, -s / Q)
    return TransferMatrix(u, v)


def base_probability(config: TunnelingConfig) -> float:
    """Single-photon tunneling probability ``P0 sin^2(Q tau)``."""
    return config.P0 * math.sin(config.Q * config.tau) ** 2


def sector_matrix(total_photons: int, m: TransferMatrix, cap: int = DEFAULT_SECTOR_CAP) -> np.ndarray:
    """Representation of the coupler evolution on the N-photon sector.

    Column ``n`` holds the amplitudes of ``U |n, N-n>``.  Column 0 is the
    binomial expansion of ``(v a^dag + conj(u) b^dag)^N |0,0> / sqrt(N!)``;
    later columns follow from ``|n+1, N-n-1> ∝ a^dag b |n, N-n>`` with both
    operators carried through the transfer matrix.  Each step maps unit
    vectors to unit vectors, so no large terms cancel.
    """
    check_sector(total_photons, cap)
    N = total_photons
    u, v = complex(m.u), complex(m.v)
    uc, vc = u.conjugate(), v.conjugate()
    k = np.arange(N + 1)
    D = np.empty((N + 1, N + 1), dtype=complex)

    log_binom = 0.5 * (gammaln(N + 1) - gammaln(k + 1) - gammaln(N - k + 1))
    # 0**0 == 1 for complex powers, which covers u == 0 or v == 0
    D[:, 0] = np.exp(log_binom) * np.array([v**i * uc ** (N - i) for i in k])
    if N == 0:
        return D

    j = np.arange(N)  # photons in A within the (N-1)-sector
    up = np.sqrt(j + 1.0)
    down_b = np.sqrt(N - j, dtype=float)
    for n in range(N):
        col = D[:, n]
        # evolved annihilator of B: b(-t) = conj(v) a + u b
        lowered = vc * up * col[1:] + u * down_b * col[:-1]
        # evolved creator of A: a^dag(-t) = u a^dag + v b^dag
        nxt = np.zeros(N + 1, dtype=complex)
        nxt[1:] += u * up * lowered
        nxt[:-1] += v * down_b * lowered
        D[:, n + 1] = nxt / math.sqrt((n + 1) * (N - n))
    return D


def evolve_fock(state: TwoModeFockState, m: TransferMatrix, cap: int = DEFAULT_SECTOR_CAP) -> TwoModeFockState:
    if m.unitarity_defect() > 1e-10:
        raise ValueError(f"transfer matrix is not unitary (defect {m.unitarity_defect():.3g})")
    D = sector_matrix(state.total_photons, m, cap)
    return TwoModeFockState(state.total_photons, D @ state.amplitudes)


def outcome_distribution(initial: TwoModeFockState, m: TransferMatrix, cap: int = DEFAULT_SECTOR_CAP) -> np.ndarray:
    """Probabilities of ``|k, N-k>`` for k = 0..N after the evolution."""
    return evolve_fock(initial, m, cap).probabilities()


def outcome_probability(
    initial: TwoModeFockState, m: TransferMatrix, k_final: int, cap: int = DEFAULT_SECTOR_CAP
) -> float:
    """Probability of finding ``k_final`` photons in A (and N - k_final in B).

    ``k_final = 0`` with ``initial = |n2, n>`` is the probability that all
    ``n2`` photons tunneled; other values give back-tunneling outcomes.
    """
    N = initial.total_photons
    if not 0 <= k_final <= N:
        raise IndexError(f"k_final={k_final} outside the sector 0..{N}")
    return float(outcome_distribution(initial, m, cap)[k_final])
