"""Wavepacket model: overlaps, normalization, energy content, density scaling."""

import math

import pytest

from udw.oracle import OracleConfig, oracle_energy_expectation, oracle_norm
from udw.quadrature import integrate_semi_infinite
from udw.wavepacket import (
    TwoParticleSpec,
    WavepacketSpec,
    energy_density_origin,
    energy_expectation,
    energy_expectation_continued,
    normalization_N,
    overlap_C,
)

CFG = OracleConfig()


class TestSpecs:
    def test_validation(self):
        with pytest.raises(ValueError):
            WavepacketSpec(0, 1.0, 0.1)
        with pytest.raises(ValueError):
            WavepacketSpec(3, 1.0, -0.1)
        with pytest.raises(ValueError):
            WavepacketSpec(1, 1.0, 0.1, ir_cutoff=2.0)  # k0 below cutoff
        with pytest.raises(ValueError):
            TwoParticleSpec(3, 0.0, 1.0, 0.1)

    def test_default_cutoff_scales(self):
        wp = WavepacketSpec(1, 1.0, 0.5)
        assert wp.effective_ir_cutoff() == pytest.approx(1e-6 * 0.5)
        assert wp.effective_ir_cutoff(omega=0.2) == pytest.approx(1e-6 * 0.2)
        assert WavepacketSpec(3, 1.0, 0.5).effective_ir_cutoff() == 0.0


class TestOverlap:
    def test_equal_peaks(self):
        assert overlap_C(TwoParticleSpec(3, 1.0, 1.0, 0.3)) == 1.0

    def test_two_sigma_separation(self):
        spec = TwoParticleSpec(3, 1.0, 1.0 + 2 * 0.3, 0.3)
        assert overlap_C(spec) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_direct_substitution(self):
        spec = TwoParticleSpec(2, 1.0, 3.0, 0.5)
        assert overlap_C(spec) == pytest.approx(math.exp(-4.0), rel=1e-14)


class TestNormalization:
    def test_same_mode(self):
        assert normalization_N(TwoParticleSpec(3, 2.0, 2.0, 0.1)) == pytest.approx(
            1.0 / math.sqrt(2.0), rel=1e-15
        )

    def test_orthogonal_limit(self):
        assert normalization_N(TwoParticleSpec(3, 1.0, 10.0, 0.05)) == pytest.approx(
            1.0, abs=1e-15
        )

    def test_substitution(self):
        spec = TwoParticleSpec(2, 1.0, 3.0, 0.5)
        assert normalization_N(spec) == pytest.approx(
            1.0 / math.sqrt(1.0 + math.exp(-8.0)), rel=1e-15
        )

    def test_ranges_and_identity(self):
        for eta2 in (1.0, 1.2, 2.0, 7.0):
            spec = TwoParticleSpec(3, 1.0, eta2, 0.4)
            n = normalization_N(spec)
            c = overlap_C(spec)
            # upper end closes to 1.0 in double once the peaks decouple
            assert 1.0 / math.sqrt(2.0) <= n <= 1.0
            assert n * n * (1.0 + c * c) == pytest.approx(1.0, rel=1e-15)


class TestEnergyExpectation:
    def test_monochromatic_limit(self):
        for n in (1, 2, 3, 4):
            wp = WavepacketSpec(n, 1.0, 1e-3)
            assert energy_expectation(wp) == pytest.approx(1.0, rel=1e-5)

    def test_n1_zero_momentum(self):
        wp = WavepacketSpec(1, 0.0, 1.0, ir_cutoff=0.0)
        assert energy_expectation(wp) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
        # brute-force radial quadrature of |k| |f|^2 as an independent oracle
        f2 = lambda k: math.sqrt(1.0 / math.pi) * math.exp(-k * k)
        direct = integrate_semi_infinite(lambda k: 2.0 * k * f2(k), 0.0, 1e-12).value
        assert energy_expectation(wp) == pytest.approx(direct, rel=1e-10)

    def test_against_quadrature_oracle(self):
        wp = WavepacketSpec(2, 1.0, 1.0)
        assert energy_expectation(wp) == pytest.approx(
            oracle_energy_expectation(wp, CFG), rel=1e-8
        )

    def test_oracle_grid(self):
        for n in (1, 2, 3, 4):
            for k0, sigma in [(1.0, 0.5), (2.0, 1.0), (1.0, 2.0)]:
                wp = WavepacketSpec(n, k0, sigma, ir_cutoff=1e-9 if n == 1 else None)
                assert energy_expectation(wp) == pytest.approx(
                    oracle_energy_expectation(wp, CFG), rel=1e-7
                ), (n, k0, sigma)

    def test_monotone_decrease_towards_k0(self):
        # empirical property of the confluent-hypergeometric form on a grid
        # with k0/sigma > 1 (n = 1 goes through its erf expression instead,
        # which approaches k0 from below)
        for n in (2, 3, 4):
            values = [
                energy_expectation(WavepacketSpec(n, 1.0, s))
                for s in (0.8, 0.5, 0.3, 0.15)
            ]
            assert all(a > b for a, b in zip(values, values[1:]))
            assert values[-1] > 1.0

    def test_continuation_to_one_dimension(self):
        for k0, sigma in [(1.0, 0.7), (2.0, 0.4), (0.5, 1.1)]:
            explicit = energy_expectation(WavepacketSpec(1, k0, sigma, ir_cutoff=0.0))
            continued = energy_expectation_continued(WavepacketSpec(1, k0, sigma, ir_cutoff=0.0))
            assert continued == pytest.approx(explicit, rel=1e-10)

    def test_cutoff_independence(self):
        wp = WavepacketSpec(1, 1.0, 0.5)
        base = energy_expectation(wp)
        doubled = energy_expectation(WavepacketSpec(1, 1.0, 0.5, ir_cutoff=2e-6 * 0.5))
        assert abs(doubled - base) / base < 1e-8


class TestNorm:
    def test_unit_norm_all_dimensions(self):
        for n in (1, 2, 3, 4):
            for k0, sigma in [(1.0, 0.3), (1.0, 1.0), (2.5, 0.8)]:
                wp = WavepacketSpec(n, k0, sigma)
                assert oracle_norm(wp, CFG) == pytest.approx(1.0, rel=1e-9), (n, k0, sigma)


class TestEnergyDensity:
    def test_monochromatic_scaling(self):
        for n in (1, 3):
            wp = WavepacketSpec(n, 1.0, 0.01)
            scaled = energy_density_origin(wp) / 0.01**n
            assert scaled == pytest.approx(1.0 / math.pi ** (n / 2.0), rel=1e-2)

    def test_zero_momentum_finite(self):
        wp = WavepacketSpec(1, 0.0, 1.0, ir_cutoff=0.0)
        rho = energy_density_origin(wp)
        assert rho > 0.0 and math.isfinite(rho)
        # direct quadrature of the defining square: rho = A^2 with
        # A = int dk sqrt|k| f(k) / sqrt(4 pi) (the directional part vanishes)
        f = lambda k: math.pi**-0.25 * math.exp(-0.5 * k * k)
        a = integrate_semi_infinite(
            lambda k: 2.0 * math.sqrt(k) * f(k) / math.sqrt(4.0 * math.pi), 0.0, 1e-12
        ).value
        assert rho == pytest.approx(a * a, rel=1e-9)
