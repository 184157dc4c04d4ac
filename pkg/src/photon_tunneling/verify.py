"""Cross-path verification suite.

Each check compares two independent routes to the same number (closed form
vs. Fock-space evolution vs. eigendecomposition vs. ensemble sums) and
records the largest deviation seen.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import closedform, core, ensembles, hypergeometric, oracle

GAMMAS = (0.0, 0.5, 1.0, 2.0, math.sqrt(50.0))
TAU_POINTS = 20


@dataclass
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float
    seconds: float = 0.0
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.max_deviation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.error:
            return f"{status}  {self.name:<34} error: {self.error}"
        return (
            f"{status}  {self.name:<34} max_dev={self.max_deviation:.3e}  "
            f"tol={self.tolerance:.1e}  ({self.seconds:.2f}s)"
        )


def _taus(gamma: float, points: int = TAU_POINTS) -> np.ndarray:
    Q = math.sqrt(1.0 + gamma * gamma)
    return np.arange(points) * (math.pi / Q) / points


def check_unitarity() -> float:
    dev = 0.0
    for g in np.linspace(-10, 10, 41):
        for tau in np.linspace(0, 20, 201):
            dev = max(dev, core.transfer_matrix(core.TunnelingConfig(float(g), float(tau))).unitarity_defect())
    return dev


def check_core_vs_oracle(max_n: int = 40) -> float:
    """Elementwise outcome probabilities, every basis input, N <= max_n."""
    dev = 0.0
    for g in GAMMAS:
        for tau in _taus(g):
            m = core.transfer_matrix(core.TunnelingConfig(g, float(tau)))
            for N in range(max_n + 1):
                D = core.sector_matrix(N, m)
                E = oracle.propagator(oracle.build_sector(N, g), float(tau))
                dev = max(dev, float(np.max(np.abs(np.abs(D) ** 2 - np.abs(E) ** 2))))
    return dev


def _closed_vs_oracle(fn: Callable[[int, int, float], float], n2_values, n_max: int) -> float:
    dev = 0.0
    for g in GAMMAS:
        for tau in _taus(g):
            p = core.base_probability(core.TunnelingConfig(g, float(tau)))
            p = min(max(p, 0.0), 1.0)
            for n2 in n2_values:
                for n in range(n_max + 1):
                    E = oracle.propagator(oracle.build_sector(n + n2, g), float(tau))
                    # column n2 is the input |n2, n>, row 0 the output |0, n + n2>
                    measured = abs(E[0, n2]) ** 2
                    dev = max(dev, abs(fn(n2, n, p) - measured))
    return dev


def check_one_photon_vs_oracle() -> float:
    return _closed_vs_oracle(lambda n2, n, p: closedform.prob_one_photon(n, p), (1,), 50)


def check_multi_vs_oracle() -> float:
    return _closed_vs_oracle(closedform.prob_multi, range(1, 6), 10)


def check_peak_multi() -> float:
    grid = np.linspace(0.0, 1.0, 10_001)
    dev = 0.0
    for n2 in range(1, 11):
        for n in range(0, 51):
            p_star, value = closedform.peak_multi(n2, n)
            scan = float(np.max(math.comb(n + n2, n2) * (1.0 - grid) ** n * grid**n2))
            # the peak must dominate the scan and agree with prob_multi at p_star
            dev = max(dev, scan - value, abs(closedform.prob_multi(n2, n, p_star) - value))
    return max(dev, 0.0)


def check_coherent_closure() -> float:
    dev = 0.0
    grid = np.linspace(0.0, 1.0, 101)
    for nbar in (0.1, 1.0, 10.0, 50.0):
        dist = ensembles.coherent_pmf(nbar)
        for n2 in (1, 2, 5, 10):
            for p in grid:
                dev = max(dev, abs(ensembles.weighted_sum(dist, n2, float(p)) - closedform.prob_coherent(n2, nbar, float(p))))
    return dev


def check_coherent_single_identity() -> float:
    dev = 0.0
    for nbar in np.linspace(0.0, 100.0, 51):
        for p in np.linspace(0.0, 1.0, 101):
            a = closedform.prob_coherent(1, float(nbar), float(p))
            b = closedform.prob_coherent_single(float(nbar), float(p))
            dev = max(dev, abs(a - b))
    return dev


def check_coherent_max() -> float:
    grid = np.linspace(0.0, 1.0, 1_000_001)
    dev = 0.0
    for nbar in (0.25, 1.0, 10.0, 100.0):
        _, value = closedform.prob_coherent_single_max(nbar)
        scan = np.max(np.exp(-nbar * grid) * (1.0 + nbar * (1.0 - grid)) * grid)
        dev = max(dev, abs(scan - value))
    return dev


def check_squeezed_closure() -> float:
    dev = 0.0
    grid = np.linspace(0.0, 1.0, 101)
    for nbar in (0.1, 1.0, 10.0):
        dist = ensembles.squeezed_pmf(nbar)
        for n2 in (1, 2, 5, 10):
            for p in grid:
                dev = max(dev, abs(ensembles.weighted_sum(dist, n2, float(p)) - closedform.prob_squeezed(n2, nbar, float(p))))
    return dev


def check_series_identities() -> float:
    dev = 0.0
    for z in np.linspace(0.0, 30.0, 61):
        dev = max(dev, abs(hypergeometric.hyp1f1(1, 1, float(z)) / math.exp(z) - 1.0))
        dev = max(dev, abs(hypergeometric.hyp1f1(2, 1, float(z)) / ((1 + z) * math.exp(z)) - 1.0))
    for z in np.linspace(0.0, 0.95, 39):
        dev = max(dev, abs(hypergeometric.hyp2f1(1, 1, 1, float(z)) * (1 - z) - 1.0))
        dev = max(dev, abs(hypergeometric.hyp2f1(0.5, 1, 1, float(z)) * math.sqrt(1 - z) - 1.0))
    return dev


def check_interference() -> float:
    hom = core.TwoModeFockState.basis(1, 1)
    m = core.transfer_matrix(core.TunnelingConfig(0.0, math.pi / 4))
    a_core = abs(core.evolve_fock(hom, m).amplitudes[1])
    a_oracle = abs(oracle.evolve_oracle(oracle.build_sector(2, 0.0), hom, math.pi / 4).amplitudes[1])
    full = abs(closedform.prob_one_photon(1, 1.0))
    return max(a_core, a_oracle, full)


CHECKS: list[tuple[str, Callable[[], float], float]] = [
    ("transfer-matrix unitarity", check_unitarity, 1e-12),
    ("core vs oracle (N<=40)", check_core_vs_oracle, 1e-9),
    ("one-photon formula vs oracle", check_one_photon_vs_oracle, 1e-9),
    ("multi-photon formula vs oracle", check_multi_vs_oracle, 1e-9),
    ("peak formula vs grid scan", check_peak_multi, 1e-10),
    ("coherent closed form vs pmf sum", check_coherent_closure, 1e-10),
    ("coherent n2=1 elementary identity", check_coherent_single_identity, 1e-12),
    ("coherent maximum vs grid scan", check_coherent_max, 1e-6),
    ("squeezed closed form vs pmf sum", check_squeezed_closure, 1e-8),
    ("hypergeometric series identities", check_series_identities, 1e-12),
    ("two-photon interference zeros", check_interference, 1e-10),
]


def run_checks(tolerance: Optional[float] = None) -> list[CheckResult]:
    """Run every check; ``tolerance`` overrides each check's own bound."""
    results = []
    for name, fn, tol in CHECKS:
        start = time.perf_counter()
        try:
            dev = float(fn())
            err = None
        except Exception as exc:  # report, keep going
            dev, err = math.inf, f"{type(exc).__name__}: {exc}"
        results.append(
            CheckResult(name, dev, tol if tolerance is None else tolerance, time.perf_counter() - start, err)
        )
    return results
