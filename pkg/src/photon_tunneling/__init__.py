"""Exact tunneling probabilities of photons between two coupled bosonic modes."""

__version__ = "0.1.0"

from .closedform import (
    peak_multi,
    prob_coherent,
    prob_coherent_single,
    prob_coherent_single_max,
    prob_multi,
    prob_one_photon,
    prob_squeezed,
)
from .core import (
    DEFAULT_SECTOR_CAP,
    SectorCapError,
    TransferMatrix,
    TunnelingConfig,
    TwoModeFockState,
    base_probability,
    evolve_fock,
    outcome_probability,
    transfer_matrix,
)
from .ensembles import PhotonNumberDistribution, coherent_pmf, fock_pmf, squeezed_pmf, weighted_sum
from .hypergeometric import SeriesConvergenceError, SeriesPolicy, hyp1f1, hyp2f1
from .oracle import SectorHamiltonian, build_sector, evolve_oracle, oracle_distribution
