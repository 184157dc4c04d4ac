import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photon_tunneling.closedform import (
    peak_multi,
    prob_coherent,
    prob_coherent_single,
    prob_coherent_single_max,
    prob_multi,
    prob_one_photon,
    prob_squeezed,
)
from photon_tunneling.core import TunnelingConfig, TwoModeFockState, base_probability, transfer_matrix
from photon_tunneling.oracle import build_sector, evolve_oracle

probs = st.floats(0, 1)


def oracle_multi(n2, n, gamma, tau):
    out = evolve_oracle(build_sector(n + n2, gamma), TwoModeFockState.basis(n2, n), tau)
    return out.probabilities()[0]


class TestOnePhoton:
    @given(probs)
    def test_empty_waveguide(self, p):
        assert prob_one_photon(0, p) == p

    def test_one_photon_background(self):
        assert prob_one_photon(1, 1 / 3) == pytest.approx(4 / 9, abs=1e-15)
        assert prob_one_photon(1, 1 / 3) - 1 / 3 == pytest.approx(1 / 9, abs=1e-15)
        assert prob_one_photon(1, 1.0) == 0.0

    @given(probs)
    def test_pat_pit_regions(self, p):
        diff = prob_one_photon(1, p) - p
        if 0 < p < 0.5:
            assert diff > 0
        elif p > 0.5:
            assert diff < 0

    def test_plateau_value(self):
        assert prob_one_photon(50, 1 / 51) == pytest.approx((50 / 51) ** 50, rel=1e-14)
        assert 0.3715 <= prob_one_photon(50, 1 / 51) <= 0.3717

    @pytest.mark.parametrize("n", [0, 1, 5, 20])
    def test_against_oracle(self, n):
        for gamma in (0.0, 2.0):
            for tau in np.linspace(0.05, 3, 7):
                p = base_probability(TunnelingConfig(gamma, float(tau)))
                assert prob_one_photon(n, p) == pytest.approx(oracle_multi(1, n, gamma, float(tau)), abs=1e-11)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            prob_one_photon(1, 1.5)


class TestMulti:
    def test_empty_reduction(self):
        assert prob_multi(10, 0, 0.5) == pytest.approx(0.5**10, rel=1e-14)

    def test_hand_value(self):
        assert prob_multi(2, 1, 0.5) == pytest.approx(3 / 8, rel=1e-14)
        # gamma = 0, Q tau = pi/4 gives P = 1/2
        assert oracle_multi(2, 1, 0.0, math.pi / 4) == pytest.approx(3 / 8, abs=1e-13)

    def test_plateau(self):
        assert prob_multi(1, 50, 1 / 51) == pytest.approx(0.3716, abs=1e-4)

    @given(st.integers(0, 80), probs)
    def test_reduces_to_one_photon_exactly(self, n, p):
        assert prob_multi(1, n, p) == prob_one_photon(n, p)

    @given(st.integers(1, 30), st.integers(0, 30), probs)
    def test_bounds_and_direct_formula(self, n2, n, p):
        val = prob_multi(n2, n, p)
        assert 0.0 <= val <= 1.0
        direct = math.comb(n + n2, n2) * (1 - p) ** n * p**n2
        assert val == pytest.approx(direct, rel=1e-12, abs=1e-300)

    @pytest.mark.parametrize("n2,n", [(2, 3), (3, 5), (5, 10), (4, 0)])
    def test_against_oracle(self, n2, n):
        for gamma in (0.0, 0.5, math.sqrt(50)):
            for tau in np.linspace(0.1, 2.5, 5):
                p = base_probability(TunnelingConfig(gamma, float(tau)))
                assert prob_multi(n2, n, p) == pytest.approx(oracle_multi(n2, n, gamma, float(tau)), abs=1e-11)


class TestPeak:
    def test_one_and_one(self):
        # the probability peaks at P = 1/2; P = 1/3 only maximizes its excess over P
        p_star, value = peak_multi(1, 1)
        assert p_star == pytest.approx(1 / 2)
        assert value == pytest.approx(1 / 2, rel=1e-14)
        assert prob_one_photon(1, 1 / 3) == pytest.approx(4 / 9, rel=1e-14)

    def test_large_n_limit(self):
        assert peak_multi(1, 10_000)[1] == pytest.approx(1 / math.e, abs=1e-4)
        limit10 = (10 / math.e) ** 10 / math.factorial(10)
        assert peak_multi(10, 100_000)[1] == pytest.approx(limit10, abs=1e-4)
        assert limit10 == pytest.approx(0.125, abs=0.005)

    def test_empty_background(self):
        assert peak_multi(3, 0) == (1.0, 1.0)

    @pytest.mark.parametrize("n2", [1, 2, 5, 10])
    @pytest.mark.parametrize("n", [0, 1, 7, 50])
    def test_dominates_grid(self, n2, n):
        p_star, value = peak_multi(n2, n)
        assert prob_multi(n2, n, p_star) == pytest.approx(value, abs=1e-12)
        grid = np.linspace(0, 1, 10_001)
        scan = math.comb(n + n2, n2) * (1 - grid) ** n * grid**n2
        assert scan.max() <= value + 1e-12
        assert abs(grid[scan.argmax()] - p_star) <= 1e-4 + 1e-12

    def test_peaks_decrease_with_n2(self):
        peaks = [peak_multi(n2, 10)[1] for n2 in (2, 3, 5, 10)]
        assert all(a > b for a, b in zip(peaks, peaks[1:]))


class TestCoherent:
    @given(st.integers(1, 10), probs)
    def test_vacuum(self, n2, p):
        assert prob_coherent(n2, 0.0, p) == pytest.approx(p**n2, rel=1e-14, abs=1e-300)

    @settings(max_examples=60)
    @given(st.floats(0, 100), probs)
    def test_single_photon_identity(self, nbar, p):
        assert prob_coherent(1, nbar, p) == pytest.approx(prob_coherent_single(nbar, p), abs=1e-12)

    @settings(max_examples=60)
    @given(st.integers(1, 10), st.floats(0, 60), probs)
    def test_bounds(self, n2, nbar, p):
        assert 0.0 <= prob_coherent(n2, nbar, p) <= 1.0 + 1e-12

    def test_maximum_nbar10(self):
        p_star, value = prob_coherent_single_max(10.0)
        assert prob_coherent(1, 10.0, p_star) == pytest.approx(value, abs=1e-10)
        grid = np.linspace(0, 1, 1_000_001)
        scan = np.exp(-10 * grid) * (1 + 10 * (1 - grid)) * grid
        assert scan.max() == pytest.approx(value, abs=1e-6)
        assert grid[scan.argmax()] == pytest.approx(p_star, abs=2e-6)

    def test_maximum_large_nbar(self):
        p_star, value = prob_coherent_single_max(1e4)
        assert value == pytest.approx(1 / math.e, abs=1e-3)
        assert prob_coherent(1, 1e4, p_star) == pytest.approx(value, abs=1e-10)

    def test_maximum_small_nbar(self):
        p_star, value = prob_coherent_single_max(1e-6)
        assert p_star == 1.0
        assert value == pytest.approx(1.0, abs=1e-5)
        # just above the switch point the stationary point is interior
        p_star, value = prob_coherent_single_max(0.6)
        assert p_star < 1.0
        grid = np.linspace(0, 1, 100_001)
        assert value == pytest.approx(np.max(np.exp(-0.6 * grid) * (1 + 0.6 * (1 - grid)) * grid), abs=1e-9)


class TestSqueezed:
    @given(st.integers(1, 10), probs)
    def test_vacuum(self, n2, p):
        assert prob_squeezed(n2, 0.0, p) == pytest.approx(p**n2, rel=1e-14, abs=1e-300)

    def test_full_base_probability(self):
        assert prob_squeezed(1, 10.0, 1.0) == pytest.approx(1 / math.sqrt(11), rel=1e-15)

    def test_single_photon_closed_form(self):
        # 2F1(1, 3/2; 1; z) = (1 - z)^(-3/2)
        for p in np.linspace(0.01, 1, 23):
            z = (1 - p) ** 2 * 10 / 11
            expected = p * (1 - z) ** -1.5 / math.sqrt(11)
            assert prob_squeezed(1, 10.0, float(p)) == pytest.approx(expected, rel=1e-12)

    @settings(max_examples=60)
    @given(st.integers(1, 10), st.floats(0, 50), probs)
    def test_bounds(self, n2, nbar, p):
        assert 0.0 <= prob_squeezed(n2, nbar, p) <= 1.0 + 1e-12

    def test_plateau_differs_from_coherent(self):
        grid = np.linspace(0, 1, 2001)

        def central_variation(values):
            idx = np.nonzero(values >= values.max() / 2)[0]
            lo, hi = grid[idx[0]], grid[idx[-1]]
            width = hi - lo
            mask = (grid >= lo + width / 4) & (grid <= hi - width / 4)
            return (values[mask].max() - values[mask].min()) / values[mask].max()

        sq = np.array([prob_squeezed(1, 10.0, float(p)) for p in grid])
        coh = np.array([prob_coherent(1, 10.0, float(p)) for p in grid])
        assert central_variation(sq) < 0.25
        assert central_variation(coh) > 0.25


def test_consistency_chain():
    for n2 in (1, 3, 10):
        for p in np.linspace(0, 1, 11):
            p = float(p)
            ref = p**n2
            for val in (prob_coherent(n2, 0, p), prob_squeezed(n2, 0, p), prob_multi(n2, 0, p)):
                assert val == pytest.approx(ref, abs=1e-14)


def test_transfer_matrix_and_formula_share_p():
    cfg = TunnelingConfig(2.0, 0.4)
    assert transfer_matrix(cfg).probability == pytest.approx(base_probability(cfg), abs=1e-15)
