"""Brute-force cross-checks for every closed form, with no special functions.

Each oracle follows the raw momentum-space definition: the radial integral is
collapsed analytically by the switching delta, the solid-angle factor

    int dOmega_{n-1} e^{c cos theta}
        = (2 pi^{(n-1)/2} / Gamma((n-1)/2)) int_0^pi (sin theta)^{n-2} e^{c cos theta} dtheta

is evaluated by a Gauss-Legendre rule whose order is doubled until
self-agreement, and any remaining radial integral is done by the adaptive
quadrature module.  Nothing here touches Bessel/hypergeometric code, which is
the point: agreement with the closed forms validates both sides.

Oracles favour transparency over speed and are meant for validation grids and
spot checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cavity import CavitySpec, discrete_normalization, default_mode_cap
from .free_linear import DetectorSpec
from .quadrature import integrate_finite, integrate_semi_infinite
from .wavepacket import TwoParticleSpec, WavepacketSpec, normalization_N

__all__ = [
    "OracleConfig",
    "oracle_i_minus",
    "oracle_j_minus",
    "oracle_r_minus",
    "oracle_s_minus",
    "oracle_lattice_norm",
    "oracle_norm",
    "oracle_energy_expectation",
]

ANGULAR_SELF_AGREEMENT = 1e-12


@dataclass(frozen=True)
class OracleConfig:
    rel_tol: float = 1e-8
    angular_points: int = 64
    ir_cutoff: float = 1e-8

    def __post_init__(self):
        if self.angular_points < 32:
            raise ValueError(f"angular_points must be >= 32, got {self.angular_points}")
        if self.rel_tol > 1e-7:
            raise ValueError(f"rel_tol must be <= 1e-7, got {self.rel_tol}")


@lru_cache(maxsize=32)
def _leggauss(order: int):
    return np.polynomial.legendre.leggauss(order)


def _angular_scaled(n: int, c: float, base_order: int) -> float:
    """e^{-c} * int dOmega_{n-1} e^{c cos theta}, order-doubled Gauss rule.

    The e^{-c} scaling keeps every sampled value in [0, 1] so large momentum
    gradients (small bandwidths) cannot overflow.
    """
    if n < 2:
        raise ValueError("solid-angle reduction needs n >= 2")
    mu = 2.0 * math.pi ** (0.5 * (n - 1)) / math.gamma(0.5 * (n - 1))

    def rule(order: int) -> float:
        nodes, weights = _leggauss(order)
        theta = 0.5 * math.pi * (nodes + 1.0)
        vals = np.sin(theta) ** (n - 2) * np.exp(c * (np.cos(theta) - 1.0))
        return 0.5 * math.pi * float(np.sum(weights * vals))

    order = base_order
    prev = rule(order)
    for _ in range(8):
        order *= 2
        cur = rule(order)
        if abs(cur - prev) <= ANGULAR_SELF_AGREEMENT * max(abs(cur), 1e-300):
            return mu * cur
        prev = cur
    raise RuntimeError(
        f"angular Gauss rule failed to self-agree at order {order} (n={n}, c={c:.3e})"
    )


def _log_radial_spectrum(wp_n: int, k0: float, sigma: float, k: float) -> float:
    """log of the radial part (pi sigma^2)^{-n/4} e^{-(k^2+k0^2)/(2 sigma^2)}."""
    s2 = sigma * sigma
    return -0.25 * wp_n * math.log(math.pi * s2) - (k * k + k0 * k0) / (2.0 * s2)


def _spectrum_1d(k0: float, sigma: float, k: float) -> float:
    return (math.pi * sigma * sigma) ** -0.25 * math.exp(
        -((k - k0) ** 2) / (2.0 * sigma * sigma)
    )


def _collapsed_amplitude(
    n: int, k0: float, sigma: float, k: float, cfg: OracleConfig
) -> float:
    """Momentum-shell amplitude int dOmega f(k kcap) k^{n-3/2} / sqrt(2 (2pi)^n).

    This is the common building block once the switching delta has picked the
    shell |k| = k.
    """
    log_pref = (n - 1.5) * math.log(k) - 0.5 * (math.log(2.0) + n * math.log(2.0 * math.pi))
    if n == 1:
        return math.exp(log_pref) * (
            _spectrum_1d(k0, sigma, k) + _spectrum_1d(k0, sigma, -k)
        )
    c = k * k0 / (sigma * sigma)
    angular = _angular_scaled(n, c, cfg.angular_points)
    log_val = log_pref + _log_radial_spectrum(n, k0, sigma, k) + c + math.log(angular)
    return math.exp(log_val)


def oracle_i_minus(wp: WavepacketSpec, det: DetectorSpec, cfg: OracleConfig) -> float:
    """Co-rotating linear amplitude from the defining shell integral.

    The long-time delta collapses the radial integral at |k| = Omega, leaving
    the 2 pi times the solid-angle average of the spectrum on that shell; in
    n = 1 the shell is the two points k = +-Omega, valid above the cutoff.
    """
    omega = det.omega
    if wp.n == 1:
        if omega <= cfg.ir_cutoff or wp.k0 <= cfg.ir_cutoff:
            raise ValueError(
                f"n=1 oracle needs omega and k0 above the cutoff {cfg.ir_cutoff}"
            )
    return 2.0 * math.pi * _collapsed_amplitude(wp.n, wp.k0, wp.sigma, omega, cfg)


def oracle_j_minus(
    wp: WavepacketSpec, det: DetectorSpec, k1: float, cfg: OracleConfig
) -> float:
    """Quadratic-coupling kernel from its shell integral: delta at |k| = Omega + k1."""
    if k1 < 0.0:
        raise ValueError(f"k1 must be >= 0, got {k1}")
    shell = det.omega + k1
    if wp.n == 1 and (shell <= cfg.ir_cutoff or wp.k0 <= cfg.ir_cutoff):
        raise ValueError(f"n=1 oracle needs scales above the cutoff {cfg.ir_cutoff}")
    return _collapsed_amplitude(wp.n, wp.k0, wp.sigma, shell, cfg)


def _pair_kernel(
    spec: TwoParticleSpec,
    eta_a: float,
    eta_b: float,
    omega: float,
    k: float,
    shell: float,
    cfg: OracleConfig,
) -> float:
    """Integrand of the two-spectra shell integrals at |k| = k, |k'| = shell."""
    n = spec.n
    sigma = spec.sigma
    if k <= 0.0 or shell <= 0.0:
        return 0.0
    log_pref = (
        (n - 1.5) * (math.log(k) + math.log(shell))
        - math.log(2.0)
        - n * math.log(2.0 * math.pi)
    )
    c_a = k * eta_a / (sigma * sigma)
    c_b = shell * eta_b / (sigma * sigma)
    ang_a = _angular_scaled(n, c_a, cfg.angular_points)
    ang_b = _angular_scaled(n, c_b, cfg.angular_points)
    log_val = (
        log_pref
        + _log_radial_spectrum(n, eta_a, sigma, k)
        + _log_radial_spectrum(n, eta_b, sigma, shell)
        + c_a
        + c_b
        + math.log(ang_a)
        + math.log(ang_b)
    )
    return math.exp(log_val)


def oracle_r_minus(spec: TwoParticleSpec, det: DetectorSpec, cfg: OracleConfig) -> float:
    """Sum-frequency kernel by nested quadrature: delta at |k| + |k'| = Omega.

    Spot-check oracle for n >= 2 (the outer radial integral runs over
    (0, Omega); each evaluation performs two solid-angle quadratures).
    """
    if spec.n < 2:
        raise ValueError("oracle_r_minus supports n >= 2 spot checks only")
    omega = det.omega
    norm = normalization_N(spec)

    def integrand(k: float) -> float:
        return _pair_kernel(spec, spec.eta1, spec.eta2, omega, k, omega - k, cfg)

    peak = min(max(omega / 2.0, 1e-3 * omega), omega)
    result = integrate_finite(
        integrand, 0.0, omega, cfg.rel_tol, points=[peak, spec.eta1, omega - spec.eta2]
    )
    return 2.0 * math.pi * norm * result.value


def oracle_s_minus(
    spec: TwoParticleSpec,
    det: DetectorSpec,
    ordered: tuple[str, str],
    cfg: OracleConfig,
) -> float:
    """Difference-frequency kernel by nested quadrature: delta at |k'| - |k| = Omega."""
    if spec.n < 2:
        raise ValueError("oracle_s_minus supports n >= 2 spot checks only")
    eta = {"eta1": spec.eta1, "eta2": spec.eta2}
    eta_a, eta_b = eta[ordered[0]], eta[ordered[1]]
    omega = det.omega
    norm = normalization_N(spec)

    def integrand(k: float) -> float:
        return _pair_kernel(spec, eta_a, eta_b, omega, k, omega + k, cfg)

    guess = max(0.5 * (eta_a + eta_b - omega), 0.1 * spec.sigma)
    result = integrate_semi_infinite(
        integrand, 0.0, cfg.rel_tol, points=[guess, guess + 4 * spec.sigma]
    )
    return 2.0 * math.pi * norm * result.value


def oracle_lattice_norm(cav: CavitySpec, k0_index: Sequence[int], sigma: float) -> float:
    """Direct lattice sum of |N_sigma f(k_I)|^2; equals 1 when truncation holds."""
    cap = cav.mode_cap if cav.mode_cap is not None else default_mode_cap(cav, k0_index, sigma)
    norm = discrete_normalization(cav, k0_index, sigma)
    axes = [np.arange(1, cap + 1, dtype=float) for _ in range(cav.n)]
    grids = np.meshgrid(*axes, indexing="ij")
    dk2 = sum((g - float(j0)) ** 2 for g, j0 in zip(grids, k0_index)) * (
        math.pi / cav.L
    ) ** 2
    weights = norm * np.exp(-dk2 / (2.0 * sigma * sigma))
    return float(np.sum(weights * weights))


def _radial_density_integral(
    wp: WavepacketSpec, power: float, cfg: OracleConfig, lower: float
) -> float:
    """int_lower^inf dk k^{n-1+power} |f|^2-shell with the doubled-peak kernel."""
    n, k0, sigma = wp.n, wp.k0, wp.sigma
    s2 = sigma * sigma

    def integrand(k: float) -> float:
        if k <= 0.0:
            return 0.0
        if n == 1:
            return k**power * (
                _spectrum_1d(k0, sigma, k) ** 2 + _spectrum_1d(k0, sigma, -k) ** 2
            )
        c = 2.0 * k * k0 / s2
        ang = _angular_scaled(n, c, cfg.angular_points)
        log_val = (
            (n - 1 + power) * math.log(k)
            - 0.5 * n * math.log(math.pi * s2)
            - (k * k + k0 * k0) / s2
            + c
            + math.log(ang)
        )
        return math.exp(log_val)

    points = [max(k0 - 8 * sigma, lower), k0, k0 + 8 * sigma] if k0 > 0 else []
    return integrate_semi_infinite(
        integrand, lower, cfg.rel_tol, points=[p for p in points if p > lower]
    ).value


def oracle_norm(wp: WavepacketSpec, cfg: OracleConfig) -> float:
    """Quadrature of |f|^2 over momentum space; must give 1."""
    return _radial_density_integral(wp, 0.0, cfg, 0.0)


def oracle_energy_expectation(wp: WavepacketSpec, cfg: OracleConfig) -> float:
    """Quadrature of |k| |f|^2: the wavepacket energy, from the cutoff in n = 1."""
    lower = wp.effective_ir_cutoff() if wp.n == 1 else 0.0
    return _radial_density_integral(wp, 1.0, cfg, lower)
