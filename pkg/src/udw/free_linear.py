"""Closed-form transition probabilities for linear coupling in free space.

All expressions are long-time (adiabatic) limits for a pointlike ground-state
detector, where only the co-rotating spectral term survives.  The central
object is

    I_minus = sqrt(2 pi^{(4-n)/2} Omega^{n-1} / (k0^{n-2} sigma^{4-n}))
              * exp(-(k0^2 + Omega^2) / (2 sigma^2)) * I_{(n-2)/2}(k0 Omega / sigma^2),

assembled in log space through the scaled Bessel function so the
monochromatic limit sigma -> 0 never overflows: the exponential and the
Bessel growth combine into exp(-(k0 - Omega)^2 / (2 sigma^2)).

The same closed form evaluated at n = 1 reproduces the explicit
infrared-regulated one-dimensional result, provided the gap and the peak
momentum sit above the cutoff; a guard enforces that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .specfun import bessel_i_scaled
from .wavepacket import TwoParticleSpec, WavepacketSpec, normalization_N, overlap_C

__all__ = [
    "DetectorSpec",
    "ProbabilityResult",
    "lambda_tilde",
    "i_minus",
    "prob_one_linear",
    "prob_one_running",
    "m_minus",
    "prob_two_linear",
]


@dataclass(frozen=True)
class DetectorSpec:
    """Gap, coupling constant/kind and Gaussian smearing width of the detector."""

    omega: float
    lam: float = 1.0
    coupling: str = "linear"
    smearing_delta: float = 0.0

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError(f"energy gap must be > 0, got {self.omega}")
        if self.lam <= 0.0:
            raise ValueError(f"coupling constant must be > 0, got {self.lam}")
        if self.coupling not in ("linear", "quadratic"):
            raise ValueError(f"coupling must be 'linear' or 'quadratic', got {self.coupling!r}")
        if self.smearing_delta < 0.0:
            raise ValueError(f"smearing width must be >= 0, got {self.smearing_delta}")


@dataclass(frozen=True)
class ProbabilityResult:
    """Probability value with a numerical error estimate and named parts."""

    value: float
    error_estimate: float = 0.0
    components: dict[str, float] = field(default_factory=dict)


def lambda_tilde(lam: float, n: int, k_ref: float, coupling: str = "linear") -> float:
    """Dimensionless coupling: lam * k_ref^{(n-3)/2} (linear), lam * k_ref^{n-2} (quadratic)."""
    if coupling == "linear":
        return lam * k_ref ** ((n - 3) / 2.0)
    return lam * k_ref ** (n - 2)


def _guard_ir(wp: WavepacketSpec | TwoParticleSpec, omega: float, k_values) -> None:
    if wp.n != 1:
        return
    lam = wp.effective_ir_cutoff(omega)
    if omega <= lam:
        raise ValueError(f"n=1 requires gap above the IR cutoff: omega={omega} <= {lam}")
    for k in k_values:
        if k <= lam:
            raise ValueError(f"n=1 requires momenta above the IR cutoff: {k} <= {lam}")


def log_i_minus(n: int, k0: float, sigma: float, omega: float) -> float:
    """log of the co-rotating spectral amplitude I_minus."""
    s2 = sigma * sigma
    nu = 0.5 * (n - 2)
    log_pref = 0.5 * (
        math.log(2.0)
        + 0.5 * (4 - n) * math.log(math.pi)
        + (n - 1) * math.log(omega)
        - (n - 2) * math.log(k0)
        - (4 - n) * math.log(sigma)
    )
    return (
        log_pref
        - (k0 - omega) ** 2 / (2.0 * s2)
        + bessel_i_scaled(nu, k0 * omega / s2).log
    )


def i_minus(wp: WavepacketSpec, det: DetectorSpec) -> float:
    """Co-rotating amplitude for a pointlike detector; P = lam^2 * i_minus^2."""
    if wp.k0 <= 0.0:
        raise ValueError("i_minus requires k0 > 0")
    _guard_ir(wp, det.omega, [wp.k0])
    return math.exp(log_i_minus(wp.n, wp.k0, wp.sigma, det.omega))


def prob_one_linear(
    wp: WavepacketSpec, det: DetectorSpec, dimensionless: bool = True
) -> ProbabilityResult:
    """Excitation probability for the one-particle wavepacket, linear coupling.

    Gaussian smearing of width Delta multiplies the pointlike result by
    exp(-Delta^2 Omega^2 / 2).  With ``dimensionless`` the value is reported
    per lambda-tilde squared (lambda k0^{(n-3)/2}), matching the figure axes;
    otherwise the raw coupling from the detector spec is used.
    """
    if det.coupling != "linear":
        raise ValueError("prob_one_linear requires a linearly coupled detector")
    if wp.k0 <= 0.0:
        raise ValueError("prob_one_linear requires k0 > 0")
    _guard_ir(wp, det.omega, [wp.k0])
    log_p = 2.0 * log_i_minus(wp.n, wp.k0, wp.sigma, det.omega)
    log_p -= 0.5 * (det.smearing_delta * det.omega) ** 2
    if dimensionless:
        log_p -= (wp.n - 3) * math.log(wp.k0)
    else:
        log_p += 2.0 * math.log(det.lam)
    return ProbabilityResult(math.exp(log_p))


def prob_one_running(wp: WavepacketSpec, gamma: float, omega: float) -> ProbabilityResult:
    """Probability with the coupling run against the bandwidth: gamma = lam sigma^{(n-3)/2}.

    P = gamma^2 (2 pi^{(4-n)/2} / k0^{n-2}) (Omega^{n-1} / sigma) e^{-(k0^2+Omega^2)/sigma^2}
        I^2_{(n-2)/2}(k0 Omega / sigma^2),
    which vanishes at resonance as sigma -> 0 in every dimension.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    if wp.k0 <= 0.0:
        raise ValueError("prob_one_running requires k0 > 0")
    _guard_ir(wp, omega, [wp.k0])
    log_p = (
        2.0 * math.log(gamma)
        + 2.0 * log_i_minus(wp.n, wp.k0, wp.sigma, omega)
        + (3 - wp.n) * math.log(wp.sigma)
    )
    return ProbabilityResult(math.exp(log_p))


def m_minus(spec: TwoParticleSpec, which: str, det: DetectorSpec) -> float:
    """Two-particle co-rotating amplitude: N(spec) * i_minus with the selected peak."""
    if det.coupling != "linear":
        raise ValueError("m_minus requires a linearly coupled detector")
    _guard_ir(spec, det.omega, [spec.eta1, spec.eta2])
    wp = spec.single(which)
    return normalization_N(spec) * math.exp(
        log_i_minus(spec.n, wp.k0, wp.sigma, det.omega)
    )


def prob_two_linear(
    spec: TwoParticleSpec, det: DetectorSpec, dimensionless: bool = True
) -> ProbabilityResult:
    """Excitation probability for the two-particle wavepacket, linear coupling.

    P = lam^2 [M^2(eta1) + M^2(eta2) + 2 C M(eta1) M(eta2)]; the three terms
    are reported as components 'eta1', 'eta2' and 'cross'.  Dimensionless
    normalization uses lambda-tilde built on eta1.
    """
    if det.coupling != "linear":
        raise ValueError("prob_two_linear requires a linearly coupled detector")
    m1 = m_minus(spec, "eta1", det)
    m2 = m_minus(spec, "eta2", det)
    c = overlap_C(spec)
    if dimensionless:
        coupling_sq = lambda_tilde(det.lam, spec.n, spec.eta1) ** 2 / det.lam**2
    else:
        coupling_sq = det.lam**2
    parts = {
        "eta1": coupling_sq * m1 * m1,
        "eta2": coupling_sq * m2 * m2,
        "cross": coupling_sq * 2.0 * c * m1 * m2,
    }
    return ProbabilityResult(sum(parts.values()), components=parts)
