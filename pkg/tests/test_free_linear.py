"""Linear-coupling closed forms against oracles, explicit 1D results and the
published limit behaviours."""

import math

import pytest

from udw.free_linear import (
    DetectorSpec,
    i_minus,
    m_minus,
    prob_one_linear,
    prob_one_running,
    prob_two_linear,
)
from udw.oracle import OracleConfig, oracle_i_minus
from udw.scan import argmax_scan, local_maxima
from udw.wavepacket import TwoParticleSpec, WavepacketSpec, normalization_N

CFG = OracleConfig()


def explicit_1d_probability(k0: float, sigma: float, omega: float) -> float:
    """Cutoff-regulated one-dimensional closed form, written out directly."""
    return (
        math.sqrt(math.pi)
        / (sigma * omega)
        * math.exp(-((k0 + omega) ** 2) / sigma**2)
        * (math.exp(2.0 * k0 * omega / sigma**2) + 1.0) ** 2
    )


class TestIMinus:
    def test_resonant_constant_in_two_dimensions(self):
        # P / lam-tilde^2 -> 1 as sigma -> 0 at resonance for n = 2
        wp = WavepacketSpec(2, 1.0, 1e-4)
        det = DetectorSpec(omega=1.0)
        p = i_minus(wp, det) ** 2 / 1.0 ** (2 - 3)
        assert p == pytest.approx(1.0, rel=1e-4)

    def test_against_oracle_n3(self):
        wp = WavepacketSpec(3, 1.0, 0.5)
        det = DetectorSpec(omega=5.0)
        assert i_minus(wp, det) == pytest.approx(oracle_i_minus(wp, det, CFG), rel=1e-8)

    def test_one_dimensional_explicit_form(self):
        k0, sigma, omega = 1.0, 0.1, 1.0
        wp = WavepacketSpec(1, k0, sigma)
        det = DetectorSpec(omega=omega)
        assert i_minus(wp, det) ** 2 == pytest.approx(
            explicit_1d_probability(k0, sigma, omega), rel=1e-12
        )

    def test_ir_guard(self):
        wp = WavepacketSpec(1, 1.0, 0.1, ir_cutoff=0.5)
        with pytest.raises(ValueError):
            i_minus(wp, DetectorSpec(omega=0.3))


class TestProbOneLinear:
    def test_resonant_scaling_example(self):
        wp = WavepacketSpec(3, 1.0, 1e-3)
        det = DetectorSpec(omega=1.0)
        p = prob_one_linear(wp, det).value
        assert p == pytest.approx(1e-3 / math.sqrt(math.pi), rel=5e-3)
        assert p == pytest.approx(5.642e-4, rel=5e-3)

    def test_zero_smearing_is_pointlike(self):
        wp = WavepacketSpec(3, 1.0, 0.4)
        p0 = prob_one_linear(wp, DetectorSpec(omega=1.2)).value
        p_sm = prob_one_linear(wp, DetectorSpec(omega=1.2, smearing_delta=0.0)).value
        assert p0 == p_sm

    def test_smearing_factor(self):
        wp = WavepacketSpec(3, 1.0, 0.4)
        omega, delta = 1.2, 0.7
        p0 = prob_one_linear(wp, DetectorSpec(omega=omega)).value
        p = prob_one_linear(wp, DetectorSpec(omega=omega, smearing_delta=delta)).value
        assert p == pytest.approx(p0 * math.exp(-0.5 * delta**2 * omega**2), rel=1e-13)

    def test_against_oracle_n4(self):
        wp = WavepacketSpec(4, 1.0, 0.3)
        det = DetectorSpec(omega=1.0)
        p = prob_one_linear(wp, det, dimensionless=False).value
        assert p == pytest.approx(oracle_i_minus(wp, det, CFG) ** 2, rel=1e-8)

    def test_oracle_grid(self):
        for n in (1, 2, 3, 4):
            for sigma in (0.2, 0.5, 1.0):
                for omega in (0.5, 1.0, 2.0):
                    wp = WavepacketSpec(n, 1.0, sigma)
                    det = DetectorSpec(omega=omega)
                    closed = prob_one_linear(wp, det, dimensionless=False).value
                    target = oracle_i_minus(wp, det, CFG) ** 2
                    assert closed == pytest.approx(target, rel=1e-7), (n, sigma, omega)

    def test_requires_linear_coupling(self):
        wp = WavepacketSpec(3, 1.0, 0.4)
        with pytest.raises(ValueError):
            prob_one_linear(wp, DetectorSpec(omega=1.0, coupling="quadratic"))

    def test_resonant_sharpening(self):
        # off-resonant response decays faster than resonant as sigma shrinks
        for n in (1, 2, 3, 4):
            ratios = []
            for sigma in (0.5, 0.2, 0.1):
                wp = WavepacketSpec(n, 1.0, sigma)
                p_off = prob_one_linear(wp, DetectorSpec(omega=1.5)).value
                p_res = prob_one_linear(wp, DetectorSpec(omega=1.0)).value
                ratios.append(p_off / p_res)
            assert ratios[0] > ratios[1] > ratios[2]

    def test_dimension_trichotomy(self):
        resonant = {
            n: [
                prob_one_linear(WavepacketSpec(n, 1.0, s), DetectorSpec(omega=1.0)).value
                for s in (0.5, 0.25, 0.1)
            ]
            for n in (1, 2, 3, 4)
        }
        assert resonant[1][0] < resonant[1][1] < resonant[1][2]
        assert resonant[2][-1] == pytest.approx(1.0, rel=0.05)
        for n in (3, 4):
            assert resonant[n][0] > resonant[n][1] > resonant[n][2]

    def test_argmax_drift_towards_resonance(self):
        for n in (1, 2, 3, 4):
            drifts = []
            for sigma in (0.5, 0.2, 0.1):
                wp = WavepacketSpec(n, 1.0, sigma)
                f = lambda w: prob_one_linear(wp, DetectorSpec(omega=w)).value
                x, _ = argmax_scan(f, 0.3, 2.6, sigma / 10.0, tol=1e-12)
                drifts.append(abs(x - 1.0))
            assert drifts[0] > drifts[1] > drifts[2], (n, drifts)

    def test_matched_smearing_decays_faster(self):
        # Delta = 1/sigma: smeared resonant probability falls faster than pointlike
        ratios = []
        for sigma in (0.5, 0.3, 0.15):
            wp = WavepacketSpec(3, 1.0, sigma)
            point = prob_one_linear(wp, DetectorSpec(omega=1.0)).value
            smeared = prob_one_linear(
                wp, DetectorSpec(omega=1.0, smearing_delta=1.0 / sigma)
            ).value
            ratios.append(smeared / point)
        assert ratios[0] > ratios[1] > ratios[2]


class TestProbOneRunning:
    def test_resonant_transparency_in_one_dimension(self):
        values = [
            prob_one_running(WavepacketSpec(1, 1.0, s), 1.0, omega=1.0).value
            for s in (1e-3, 1e-4, 1e-5)
        ]
        assert values[0] < 1e-2
        assert values[0] > values[1] > values[2]

    def test_reduces_to_fixed_coupling_in_three_dimensions(self):
        wp = WavepacketSpec(3, 1.0, 0.4)
        det = DetectorSpec(omega=1.3, lam=1.0)
        assert prob_one_running(wp, 1.0, omega=1.3).value == pytest.approx(
            prob_one_linear(wp, det, dimensionless=False).value, rel=1e-13
        )

    def test_two_dimensional_sigma_dependence(self):
        # analytic sigma-dependence checked with 50-digit arithmetic
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 50
        k0 = omega = 1.0

        def reference(sigma):
            s = mp.mpf(sigma)
            return (
                2
                * mp.pi
                * omega
                / s
                * mp.exp(-(k0**2 + omega**2) / s**2)
                * mp.besseli(0, k0 * omega / s**2) ** 2
            )

        for sigma in (0.8, 0.4):
            ratio = prob_one_running(
                WavepacketSpec(2, k0, sigma / 2), 1.0, omega
            ).value / prob_one_running(WavepacketSpec(2, k0, sigma), 1.0, omega).value
            expected = float(reference(sigma / 2) / reference(sigma))
            assert ratio == pytest.approx(expected, rel=1e-10)


class TestTwoParticle:
    def test_same_mode_amplitude(self):
        spec = TwoParticleSpec(3, 1.0, 1.0, 0.3)
        det = DetectorSpec(omega=1.1)
        expected = i_minus(WavepacketSpec(3, 1.0, 0.3), det) / math.sqrt(2.0)
        assert m_minus(spec, "eta1", det) == pytest.approx(expected, rel=1e-14)

    def test_one_dimensional_explicit_form(self):
        spec = TwoParticleSpec(1, 1.0, 2.0, 0.1)
        det = DetectorSpec(omega=1.0)
        norm = normalization_N(spec)
        eta, sigma, omega = 1.0, 0.1, 1.0
        expected = (
            norm
            * math.pi**0.25
            * (
                math.exp(-((omega - eta) ** 2) / (2 * sigma**2))
                + math.exp(-((omega + eta) ** 2) / (2 * sigma**2))
            )
            / math.sqrt(omega * sigma)
        )
        assert m_minus(spec, "eta1", det) == pytest.approx(expected, rel=1e-12)

    def test_decoupled_peaks_reduce_to_one_particle(self):
        spec = TwoParticleSpec(3, 1.0, 9.0, 0.2)
        det = DetectorSpec(omega=1.0)
        single = i_minus(WavepacketSpec(3, 1.0, 0.2), det)
        assert m_minus(spec, "eta1", det) == pytest.approx(single, rel=1e-12)

    def test_same_mode_total_reduction(self):
        spec = TwoParticleSpec(3, 1.4, 1.4, 0.35)
        det = DetectorSpec(omega=1.0)
        p2 = prob_two_linear(spec, det, dimensionless=False).value
        p1 = prob_one_linear(WavepacketSpec(3, 1.4, 0.35), det, dimensionless=False).value
        assert p2 == pytest.approx(2.0 * p1, rel=1e-12)

    def test_two_resonant_peaks(self):
        spec = TwoParticleSpec(3, 1.0, 2.0, 0.25)
        det = lambda w: DetectorSpec(omega=w)
        grid = [0.3 + 0.025 * i for i in range(109)]
        values = [prob_two_linear(spec, det(w)).value for w in grid]
        peaks = local_maxima(grid, values)
        assert len(peaks) == 2
        lo, hi = grid[peaks[0]], grid[peaks[1]]
        assert abs(lo - 1.0) < 0.1 and abs(hi - 2.0) < 0.1
        assert values[peaks[0]] > values[peaks[1]]  # higher-frequency peak smaller

    def test_gaussian_suppression_far_above(self):
        spec = TwoParticleSpec(3, 1.0, 2.0, 0.25)
        assert prob_two_linear(spec, DetectorSpec(omega=12.0)).value < 1e-200

    def test_components_sum(self):
        spec = TwoParticleSpec(3, 1.0, 1.6, 0.35)
        res = prob_two_linear(spec, DetectorSpec(omega=1.2))
        assert res.value == pytest.approx(sum(res.components.values()), rel=1e-14)
        assert set(res.components) == {"eta1", "eta2", "cross"}
