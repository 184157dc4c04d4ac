"""Parameter sweeps, figure data and the CSV format they are written in.

CSV layout::

    # key=<json value>        one metadata line per run parameter
    x_label,series_1,series_2
    0.0,0.0,0.0
    ...

Floats are written with ``repr`` (shortest round-trip form), so reading a
file back reproduces every value bit for bit.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, TextIO

import numpy as np

from . import __version__
from .closedform import prob_coherent, prob_multi, prob_squeezed
from .core import TunnelingConfig, base_probability
from .hypergeometric import DEFAULT_POLICY, SeriesPolicy

DEFAULT_P_STEPS = 501
DEFAULT_STEPS_PER_PERIOD = 1000


@dataclass(frozen=True)
class Background:
    """Field initially in waveguide B: ``kind`` is fock, coherent or squeezed."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in ("fock", "coherent", "squeezed"):
            raise ValueError(f"unknown background kind {self.kind!r}")
        if self.value < 0:
            raise ValueError(f"{self.kind} background needs a value >= 0, got {self.value}")
        if self.kind == "fock" and not float(self.value).is_integer():
            raise ValueError(f"Fock background needs an integer photon number, got {self.value}")

    @property
    def label(self) -> str:
        if self.kind == "fock":
            return f"fock_n={int(self.value)}"
        return f"{self.kind}_nbar={self.value:g}"

    def probability(self, n2: int, p: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
        if self.kind == "fock":
            return prob_multi(n2, int(self.value), p)
        if self.kind == "coherent":
            return prob_coherent(n2, self.value, p, policy)
        return prob_squeezed(n2, self.value, p, policy)


@dataclass
class SweepResult:
    x_label: str
    x: np.ndarray
    series: dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        for name, values in list(self.series.items()):
            values = np.asarray(values, dtype=float)
            if values.shape != self.x.shape:
                raise ValueError(f"series {name!r} has {values.shape[0]} rows, expected {self.x.shape[0]}")
            self.series[name] = values
        if np.any(np.diff(self.x) < 0):
            raise ValueError("rows must be sorted ascending in x")

    @property
    def columns(self) -> list[str]:
        return [self.x_label, *self.series]

    def rows(self) -> Iterator[tuple[float, dict[str, float]]]:
        for i, xi in enumerate(self.x):
            yield float(xi), {name: float(vals[i]) for name, vals in self.series.items()}

    def write_csv(self, fh: TextIO, extra_meta: Optional[dict] = None) -> None:
        for key, value in {**self.meta, **(extra_meta or {})}.items():
            fh.write(f"# {key}={json.dumps(value, sort_keys=True)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(self.columns)
        cols = [self.x, *self.series.values()]
        for i in range(self.x.shape[0]):
            writer.writerow([repr(float(c[i])) for c in cols])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def read_csv(fh: TextIO) -> SweepResult:
    meta = {}
    lines = []
    for line in fh:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key.strip()] = json.loads(value)
        elif line.strip():
            lines.append(line)
    reader = csv.reader(lines)
    header = next(reader)
    data = np.array([[float(v) for v in row] for row in reader], dtype=float).reshape(-1, len(header))
    series = {name: data[:, i + 1] for i, name in enumerate(header[1:])}
    return SweepResult(header[0], data[:, 0], series, meta)


def p_grid(p_min: float = 0.0, p_max: float = 1.0, steps: int = DEFAULT_P_STEPS) -> np.ndarray:
    if not (0.0 <= p_min < p_max <= 1.0):
        raise ValueError(f"need 0 <= p_min < p_max <= 1, got p_min={p_min}, p_max={p_max}")
    if steps < 2:
        raise ValueError(f"need at least 2 grid steps, got {steps}")
    return np.linspace(p_min, p_max, steps)


def _policy_meta(policy: SeriesPolicy) -> dict:
    return {"rel_tol": policy.rel_tol, "max_terms": policy.max_terms}


def sweep_p(
    n2: int,
    backgrounds: Sequence[Background],
    grid: np.ndarray,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> SweepResult:
    """Tunneling probabilities versus the base probability P.

    One series per background plus the empty-waveguide baseline ``P^n2``.
    """
    if n2 < 1:
        raise ValueError(f"n2 must be a positive integer, got {n2}")
    series = {f"baseline_n2={n2}": np.array([p**n2 for p in grid])}
    for bg in backgrounds:
        series[f"{bg.label}_n2={n2}"] = np.array([bg.probability(n2, float(p), policy) for p in grid])
    meta = {
        "command": "sweep-p",
        "n2": n2,
        "backgrounds": [[bg.kind, bg.value] for bg in backgrounds],
        "p_min": float(grid[0]),
        "p_max": float(grid[-1]),
        "steps": int(grid.shape[0]),
        **_policy_meta(policy),
        "version": __version__,
    }
    return SweepResult("P", grid, series, meta)


def sweep_time(
    gamma: float,
    n2: int,
    backgrounds: Sequence[Background],
    periods: float = 2.0,
    steps: Optional[int] = None,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> SweepResult:
    """Tunneling probabilities versus the scaled time ``Q tau / pi``.

    ``periods`` is the largest ``Q tau / pi``; the default grid has 1000
    points per period of the base probability.
    """
    if n2 < 1:
        raise ValueError(f"n2 must be a positive integer, got {n2}")
    if not periods > 0:
        raise ValueError(f"tau range must be positive, got {periods}")
    if steps is None:
        steps = int(math.ceil(DEFAULT_STEPS_PER_PERIOD * periods)) + 1
    if steps < 2:
        raise ValueError(f"need at least 2 grid steps, got {steps}")
    Q = math.sqrt(1.0 + gamma * gamma)
    x = np.linspace(0.0, periods, steps)
    taus = x * math.pi / Q
    ps = np.array([base_probability(TunnelingConfig(gamma, float(t))) for t in taus])
    # P0 sin^2 can exceed 1 by an ulp at gamma = 0
    ps = np.clip(ps, 0.0, 1.0)
    series = {"tau": taus, "P": ps, f"baseline_n2={n2}": ps**n2}
    for bg in backgrounds:
        series[f"{bg.label}_n2={n2}"] = np.array([bg.probability(n2, float(p), policy) for p in ps])
    meta = {
        "command": "sweep-time",
        "gamma": gamma,
        "n2": n2,
        "backgrounds": [[bg.kind, bg.value] for bg in backgrounds],
        "x_max": periods,
        "steps": steps,
        **_policy_meta(policy),
        "version": __version__,
    }
    return SweepResult("Qtau_over_pi", x, series, meta)


def _fock(*ns: int) -> list[Background]:
    return [Background("fock", n) for n in ns]


def _tag(result: SweepResult, panel: str) -> SweepResult:
    result.meta = {"panel": panel, **result.meta}
    return result


def figure_panels(
    name: str,
    gammas: Optional[Sequence[float]] = None,
    ns: Optional[Sequence[int]] = None,
    squeezed: Optional[float] = None,
    p_steps: int = DEFAULT_P_STEPS,
    policy: SeriesPolicy = DEFAULT_POLICY,
) -> dict[str, SweepResult]:
    """Data for the four figures, keyed by panel name (``fig1a``, ``fig1b``, ...).

    ``gammas`` replaces the detunings of the time-dependent panels, ``ns``
    the background photon numbers, ``squeezed`` the squeezed-vacuum mean.
    """
    grid = p_grid(0.0, 1.0, p_steps)
    panels: dict[str, SweepResult] = {}
    if name == "fig1":
        gs = list(gammas) if gammas else [2.0, 1.0, 0.5]
        n = ns[0] if ns else 1
        panels["fig1a"] = _tag(sweep_p(1, _fock(n), grid, policy), "fig1a")
        for letter, g in zip("bcd", gs):
            panels[f"fig1{letter}"] = _tag(sweep_time(g, 1, _fock(n), policy=policy), f"fig1{letter}")
    elif name == "fig2":
        gs = list(gammas) if gammas else [math.sqrt(50.0), 5.0, 0.5]
        n_list = list(ns) if ns else [5, 10, 50]
        panels["fig2a"] = _tag(sweep_p(1, _fock(*n_list), grid, policy), "fig2a")
        for letter, g in zip("bcd", gs):
            panels[f"fig2{letter}"] = _tag(sweep_time(g, 1, _fock(max(n_list)), policy=policy), f"fig2{letter}")
    elif name == "fig3":
        n = ns[0] if ns else 10
        parts = [sweep_p(n2, _fock(n), grid, policy) for n2 in (2, 3, 5, 10)]
        series = {}
        for part in parts:
            series.update(part.series)
        meta = {**parts[0].meta, "n2": [2, 3, 5, 10]}
        panels["fig3"] = _tag(SweepResult("P", grid, series, meta), "fig3")
    elif name == "fig4":
        n_list = list(ns) if ns else [10, 50]
        sq = 10.0 if squeezed is None else squeezed
        bgs_a = [b for n in n_list for b in (Background("coherent", n), Background("fock", n))]
        bgs_a.append(Background("squeezed", sq))
        panels["fig4a"] = _tag(sweep_p(1, bgs_a, grid, policy), "fig4a")
        n_b = n_list[0]
        bgs_b = [Background("coherent", n_b), Background("fock", n_b), Background("squeezed", sq)]
        panels["fig4b"] = _tag(sweep_p(10, bgs_b, grid, policy), "fig4b")
    else:
        raise ValueError(f"unknown figure {name!r}; choose fig1, fig2, fig3 or fig4")
    return panels


def physical_config(J_per_mm: float, delta_per_mm: float, length_mm: float) -> TunnelingConfig:
    """Dimensionless configuration for a coupler of given length.

    Propagation distance plays the role of time, so ``tau = J * length``.
    """
    return TunnelingConfig.from_physical(J_per_mm, delta_per_mm, length_mm)
