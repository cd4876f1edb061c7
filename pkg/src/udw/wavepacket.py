"""Gaussian Fock-wavepacket model: specs, overlaps, energy content.

The one-particle spectrum is the unit-L2-norm isotropic Gaussian

    f(k) = (pi sigma^2)^{-n/4} exp(-(k - k0)^2 / (2 sigma^2)),

peaked at momentum k0 with bandwidth sigma in n spatial dimensions.  In n = 1
a strictly positive infrared cutoff regulates the massless-field divergence;
results quoted for n = 1 hold once every physical scale sits above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quadrature import DEFAULT_REL_TOL, integrate_semi_infinite
from .specfun import erf, hyp0f1_reg, hyp1f1_reg

__all__ = [
    "WavepacketSpec",
    "TwoParticleSpec",
    "overlap_C",
    "normalization_N",
    "energy_expectation",
    "energy_expectation_continued",
    "energy_density_origin",
    "log_angular_kernel",
    "log_angular_kernel_cos",
]

# fallback IR cutoff scale factor in n = 1 when the spec leaves it unset
IR_CUTOFF_SCALE = 1e-6


@dataclass(frozen=True)
class WavepacketSpec:
    """One-particle Gaussian wavepacket in n spatial dimensions.

    k0 is the peak momentum magnitude, sigma the bandwidth (both inverse
    length).  ir_cutoff is consulted only for n = 1; leaving it None selects
    IR_CUTOFF_SCALE * min(k0, sigma, detector gap) at the point of use.
    """

    n: int
    k0: float
    sigma: float
    ir_cutoff: float | None = None

    def __post_init__(self):
        if self.n < 1 or self.n != int(self.n):
            raise ValueError(f"spatial dimension must be a positive integer, got {self.n}")
        if self.k0 < 0.0:
            raise ValueError(f"peak momentum must be >= 0, got {self.k0}")
        if self.sigma <= 0.0:
            raise ValueError(f"bandwidth must be > 0, got {self.sigma}")
        if self.ir_cutoff is not None:
            if self.ir_cutoff < 0.0:
                raise ValueError(f"ir_cutoff must be >= 0, got {self.ir_cutoff}")
            if self.n == 1 and self.k0 > 0.0 and self.k0 <= self.ir_cutoff:
                raise ValueError(
                    f"n=1 requires k0 > ir_cutoff, got k0={self.k0}, "
                    f"ir_cutoff={self.ir_cutoff}"
                )

    def effective_ir_cutoff(self, omega: float | None = None) -> float:
        """IR cutoff actually used; only meaningful for n = 1."""
        if self.n != 1:
            return 0.0
        if self.ir_cutoff is not None:
            return self.ir_cutoff
        scales = [s for s in (self.k0, self.sigma, omega) if s is not None and s > 0.0]
        return IR_CUTOFF_SCALE * min(scales) if scales else 0.0


@dataclass(frozen=True)
class TwoParticleSpec:
    """Two-particle Gaussian wavepacket with peaks at magnitudes eta1, eta2.

    The two peak momenta are modelled as collinear vectors, so the spectral
    overlap depends on the magnitudes alone:
    C = exp(-(eta1 - eta2)^2 / (4 sigma^2)).
    """

    n: int
    eta1: float
    eta2: float
    sigma: float
    ir_cutoff: float | None = None

    def __post_init__(self):
        if self.n < 1 or self.n != int(self.n):
            raise ValueError(f"spatial dimension must be a positive integer, got {self.n}")
        if self.eta1 <= 0.0 or self.eta2 <= 0.0:
            raise ValueError(
                f"peak momenta must be > 0, got eta1={self.eta1}, eta2={self.eta2}"
            )
        if self.sigma <= 0.0:
            raise ValueError(f"bandwidth must be > 0, got {self.sigma}")

    def effective_ir_cutoff(self, omega: float | None = None) -> float:
        if self.n != 1:
            return 0.0
        if self.ir_cutoff is not None:
            return self.ir_cutoff
        scales = [s for s in (self.eta1, self.eta2, self.sigma, omega) if s and s > 0.0]
        return IR_CUTOFF_SCALE * min(scales) if scales else 0.0

    def single(self, which: str) -> WavepacketSpec:
        """The one-particle spec for the selected peak ('eta1' or 'eta2')."""
        if which not in ("eta1", "eta2"):
            raise ValueError(f"which must be 'eta1' or 'eta2', got {which!r}")
        k0 = self.eta1 if which == "eta1" else self.eta2
        return WavepacketSpec(self.n, k0, self.sigma, self.ir_cutoff)


def overlap_C(spec: TwoParticleSpec) -> float:
    """Spectral overlap of the two collinear Gaussian peaks, in (0, 1]."""
    d = spec.eta1 - spec.eta2
    return math.exp(-d * d / (4.0 * spec.sigma * spec.sigma))


def normalization_N(spec: TwoParticleSpec) -> float:
    """Two-particle normalization 1/sqrt(1 + C^2), in [1/sqrt(2), 1)."""
    c = overlap_C(spec)
    return 1.0 / math.sqrt(1.0 + c * c)


# ---------------------------------------------------------------------------
# angular kernels (closed form of the solid-angle integrals)
# ---------------------------------------------------------------------------


def log_angular_kernel(n: int, c: float) -> float:
    """log of int dOmega_{n-1} e^{c cos theta} = 2 pi^{n/2} 0F~1(n/2; c^2/4).

    Valid for all n >= 1 by continuation (n = 1 reduces to the two-point sum
    e^c + e^{-c}).
    """
    return (
        math.log(2.0)
        + 0.5 * n * math.log(math.pi)
        + hyp0f1_reg(0.5 * n, 0.25 * c * c).log
    )


def log_angular_kernel_cos(n: int, c: float) -> float:
    """log of int dOmega_{n-1} cos(theta) e^{c cos theta} for c > 0.

    Differentiating the plain kernel in c gives pi^{n/2} c 0F~1(n/2 + 1; c^2/4).
    """
    if c <= 0.0:
        raise ValueError(f"requires c > 0, got {c}")
    return (
        0.5 * n * math.log(math.pi)
        + math.log(c)
        + hyp0f1_reg(0.5 * n + 1.0, 0.25 * c * c).log
    )


# ---------------------------------------------------------------------------
# energy content
# ---------------------------------------------------------------------------


def energy_expectation(spec: WavepacketSpec) -> float:
    """Field-energy expectation of the one-particle wavepacket.

    n >= 2: sigma Gamma((n+1)/2) 1F~1(-1/2; n/2; -k0^2/sigma^2); approaches k0
    in the monochromatic limit.  n = 1 uses the explicit erf form with the IR
    cutoff Lambda retained.
    """
    k0, sigma = spec.k0, spec.sigma
    if spec.n >= 2:
        value = hyp1f1_reg(-0.5, 0.5 * spec.n, -(k0 * k0) / (sigma * sigma)).value
        return sigma * math.gamma(0.5 * (spec.n + 1)) * value
    lam = spec.effective_ir_cutoff()
    gauss = math.exp(-((lam - k0) / sigma) ** 2) + math.exp(-((lam + k0) / sigma) ** 2)
    erf_part = math.sqrt(math.pi) * k0 * (erf((lam + k0) / sigma) - erf((lam - k0) / sigma))
    return (erf_part + sigma * gauss) / (2.0 * math.sqrt(math.pi))


def energy_expectation_continued(spec: WavepacketSpec) -> float:
    """The n >= 2 closed form evaluated at the spec's n, whatever it is.

    Exposed so the n -> 1 continuation can be checked against the explicit
    cutoff-free n = 1 expression.
    """
    value = hyp1f1_reg(-0.5, 0.5 * spec.n, -(spec.k0 / spec.sigma) ** 2).value
    return spec.sigma * math.gamma(0.5 * (spec.n + 1)) * value


def energy_density_origin(spec: WavepacketSpec, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Normal-ordered energy density of the wavepacket at x = 0, t = 0.

    Equals A^2 + B^2 with A the sqrt|k|-weighted spectral integral and B the
    magnitude of the vector k/sqrt|k| one; both reduce to single radial
    integrals against the angular kernels.  Scales like sigma^n k0 / pi^{n/2}
    in the monochromatic limit.
    """
    n, k0, sigma = spec.n, spec.k0, spec.sigma
    s2 = sigma * sigma
    log_pref = -0.25 * n * math.log(math.pi * s2) - 0.5 * (
        math.log(2.0) + n * math.log(2.0 * math.pi)
    )

    def integrand_a(k: float) -> float:
        if k <= 0.0:
            return 0.0
        log_f = (
            log_pref
            + (n - 0.5) * math.log(k)
            - (k * k + k0 * k0) / (2.0 * s2)
            + log_angular_kernel(n, k * k0 / s2)
        )
        return math.exp(log_f)

    def integrand_b(k: float) -> float:
        if k <= 0.0:
            return 0.0
        log_f = (
            log_pref
            + (n - 0.5) * math.log(k)
            - (k * k + k0 * k0) / (2.0 * s2)
            + log_angular_kernel_cos(n, k * k0 / s2)
        )
        return math.exp(log_f)

    points = [max(k0 - 8.0 * sigma, 0.0), k0, k0 + 8.0 * sigma] if k0 > 0 else []
    a = integrate_semi_infinite(integrand_a, 0.0, rel_tol, points=points).value
    if k0 == 0.0:
        return a * a
    b = integrate_semi_infinite(integrand_b, 0.0, rel_tol, points=points).value
    return a * a + b * b
