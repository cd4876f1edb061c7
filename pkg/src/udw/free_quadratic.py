"""Quadratic-coupling transition probabilities in free space.

One-particle response integrates the squared kernel

    J_minus(k1) = 2 pi^{n/2} (k1+Omega)^{n-3/2} / (sqrt(2 (2pi)^n) (pi sigma^2)^{n/4})
                  * exp(-(k0^2 + (k1+Omega)^2) / (2 sigma^2))
                  * 0F~1(n/2; k0^2 (k1+Omega)^2 / (4 sigma^4))

over the leftover radial momentum.  The two-particle response splits into a
non-resonant piece (Q), a sum-frequency piece (R, resonant near eta1 + eta2)
and a difference-frequency piece (S, resonant near |eta1 - eta2|).  All
kernels are assembled in log space: the hypergeometric growth exp(2 sqrt z)
cancels the Gaussian factors into exp(-(shell - eta)^2 / (2 sigma^2)).

The same expressions hold at n = 1 by continuation once all scales exceed the
infrared cutoff, which also regulates the k -> 0 end of the Q integral there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .free_linear import DetectorSpec, ProbabilityResult, lambda_tilde
from .quadrature import DEFAULT_REL_TOL, QuadratureResult, integrate_finite, integrate_semi_infinite
from .specfun import hyp0f1_reg
from .wavepacket import TwoParticleSpec, WavepacketSpec, normalization_N, overlap_C

__all__ = [
    "QuadraticComponents",
    "j_minus",
    "prob_one_quadratic",
    "q_minus",
    "r_minus",
    "s_minus",
    "prob_two_quadratic",
]


@dataclass(frozen=True)
class QuadraticComponents:
    """Two-particle quadratic response split into its three pieces."""

    p_q: float
    p_r: float
    p_s: float
    total: float
    error_estimate: float


def _sphere_area(n: int) -> float:
    """Surface area of the unit (n-1)-sphere; the n = 1 'sphere' is two points."""
    return 2.0 * math.pi ** (0.5 * n) / math.gamma(0.5 * n)


def _guard_ir_quadratic(n: int, ir: float, omega: float, peaks) -> None:
    if n != 1:
        return
    if omega <= ir:
        raise ValueError(f"n=1 requires gap above the IR cutoff: {omega} <= {ir}")
    for k in peaks:
        if k <= ir:
            raise ValueError(f"n=1 requires peak momenta above the IR cutoff: {k} <= {ir}")


def log_j_kernel(n: int, k0: float, sigma: float, shell: float) -> float:
    """log of the J_minus closed form at radial shell momentum |k| = shell."""
    s2 = sigma * sigma
    log_pref = (
        math.log(2.0)
        + 0.5 * n * math.log(math.pi)
        + (n - 1.5) * math.log(shell)
        - 0.5 * (math.log(2.0) + n * math.log(2.0 * math.pi))
        - 0.25 * n * math.log(math.pi * s2)
    )
    z = (k0 * shell / (2.0 * s2)) ** 2
    return log_pref - (k0 * k0 + shell * shell) / (2.0 * s2) + hyp0f1_reg(0.5 * n, z).log


def j_minus(wp: WavepacketSpec, det: DetectorSpec, k1: float) -> float:
    """One-particle quadratic kernel at leftover momentum k1 >= 0."""
    if k1 < 0.0:
        raise ValueError(f"k1 must be >= 0, got {k1}")
    if wp.k0 <= 0.0:
        raise ValueError("j_minus requires k0 > 0")
    _guard_ir_quadratic(wp.n, wp.effective_ir_cutoff(det.omega), det.omega, [wp.k0])
    return math.exp(log_j_kernel(wp.n, wp.k0, wp.sigma, det.omega + k1))


def _outer_points(k_peak: float, sigma: float, lower: float) -> list[float]:
    pts = [k_peak - 8.0 * sigma, k_peak, k_peak + 8.0 * sigma]
    return [p for p in pts if p > lower]


def prob_one_quadratic(
    wp: WavepacketSpec,
    det: DetectorSpec,
    rel_tol: float = DEFAULT_REL_TOL,
    dimensionless: bool = True,
) -> ProbabilityResult:
    """One-particle excitation probability for quadratic coupling.

    P = (4 lam^2 (2 pi)^2 / (2 (2 pi)^n)) S_{n-1}
        int_Lambda^inf dk k^{n-2} J_minus(k)^2,
    with Lambda the IR cutoff for n = 1 and zero otherwise.  Reported per
    lambda-tilde squared (lam k0^{n-2}) unless ``dimensionless`` is off.
    """
    if det.coupling != "quadratic":
        raise ValueError("prob_one_quadratic requires a quadratically coupled detector")
    if wp.k0 <= 0.0:
        raise ValueError("prob_one_quadratic requires k0 > 0")
    n, k0, sigma, omega = wp.n, wp.k0, wp.sigma, det.omega
    lam_ir = wp.effective_ir_cutoff(omega)
    _guard_ir_quadratic(n, lam_ir, omega, [k0])
    lower = lam_ir if n == 1 else 0.0

    def integrand(k: float) -> float:
        if k <= 0.0:
            return 0.0
        return math.exp((n - 2) * math.log(k) + 2.0 * log_j_kernel(n, k0, sigma, omega + k))

    quad = integrate_semi_infinite(
        integrand, lower, rel_tol, points=_outer_points(k0 - omega, sigma, lower)
    )
    prefactor = 4.0 * (2.0 * math.pi) ** 2 / (2.0 * (2.0 * math.pi) ** n) * _sphere_area(n)
    if dimensionless:
        coupling_sq = 1.0 / lambda_tilde(1.0, n, k0, "quadratic") ** 2
    else:
        coupling_sq = det.lam**2
    scale = prefactor * coupling_sq
    return ProbabilityResult(scale * quad.value, scale * quad.error_estimate)


def q_minus(spec: TwoParticleSpec, det: DetectorSpec, which: str, k1: float) -> float:
    """Two-particle non-resonant kernel: N(spec) times J_minus with the chosen peak."""
    if det.coupling != "quadratic":
        raise ValueError("q_minus requires a quadratically coupled detector")
    if k1 < 0.0:
        raise ValueError(f"k1 must be >= 0, got {k1}")
    _guard_ir_quadratic(
        spec.n, spec.effective_ir_cutoff(det.omega), det.omega, [spec.eta1, spec.eta2]
    )
    eta = spec.eta1 if which == "eta1" else spec.eta2
    return normalization_N(spec) * math.exp(
        log_j_kernel(spec.n, eta, spec.sigma, det.omega + k1)
    )


def _log_pair_pref(spec: TwoParticleSpec) -> float:
    n = spec.n
    return (
        math.log(normalization_N(spec))
        - (n - 2) * math.log(2.0)
        - (0.5 * n - 1.0) * math.log(math.pi)
        - n * math.log(spec.sigma)
    )


def _log_pair_integrand(
    spec: TwoParticleSpec, k: float, shell: float
) -> float:
    """log integrand shared by the R and S kernels at (|k|, |k'|) = (k, shell)."""
    n = spec.n
    s2 = spec.sigma * spec.sigma
    z1 = (spec.eta1 * k / (2.0 * s2)) ** 2
    z2 = (spec.eta2 * shell / (2.0 * s2)) ** 2
    return (
        (n - 1.5) * (math.log(k) + math.log(shell))
        - (k * k + shell * shell + spec.eta1**2 + spec.eta2**2) / (2.0 * s2)
        + hyp0f1_reg(0.5 * n, z1).log
        + hyp0f1_reg(0.5 * n, z2).log
    )


def r_minus(
    spec: TwoParticleSpec, det: DetectorSpec, rel_tol: float = DEFAULT_REL_TOL
) -> float:
    """Sum-frequency kernel: finite integral over the shells |k| + |k'| = Omega.

    Squared and scaled by 4 lam^2 it peaks for gaps near eta1 + eta2.
    """
    if det.coupling != "quadratic":
        raise ValueError("r_minus requires a quadratically coupled detector")
    omega = det.omega
    log_pref = _log_pair_pref(spec)

    def integrand(k: float) -> float:
        if k <= 0.0 or k >= omega:
            return 0.0
        return math.exp(log_pref + _log_pair_integrand(spec, k, omega - k))

    # the combined exponent peaks at k = (eta1 + Omega - eta2)/2
    peak = 0.5 * (spec.eta1 + omega - spec.eta2)
    pts = [p for p in (peak - 4 * spec.sigma, peak, peak + 4 * spec.sigma) if 0 < p < omega]
    return integrate_finite(integrand, 0.0, omega, rel_tol, points=pts).value


def s_minus(
    spec: TwoParticleSpec,
    det: DetectorSpec,
    ordered: tuple[str, str] = ("eta1", "eta2"),
    rel_tol: float = DEFAULT_REL_TOL,
) -> float:
    """Difference-frequency kernel: semi-infinite integral over |k'| = Omega + |k|.

    Not symmetric in its peak arguments: the first rides the free shell, the
    second the shifted one.
    """
    if det.coupling != "quadratic":
        raise ValueError("s_minus requires a quadratically coupled detector")
    eta = {"eta1": spec.eta1, "eta2": spec.eta2}
    eta_a, eta_b = eta[ordered[0]], eta[ordered[1]]
    omega = det.omega
    n = spec.n
    s2 = spec.sigma * spec.sigma
    log_pref = _log_pair_pref(spec)

    def integrand(k: float) -> float:
        if k <= 0.0:
            return 0.0
        shell = omega + k
        z_a = (eta_a * k / (2.0 * s2)) ** 2
        z_b = (eta_b * shell / (2.0 * s2)) ** 2
        log_val = (
            log_pref
            + (n - 1.5) * (math.log(k) + math.log(shell))
            - (k * k + shell * shell + eta_a * eta_a + eta_b * eta_b) / (2.0 * s2)
            + hyp0f1_reg(0.5 * n, z_a).log
            + hyp0f1_reg(0.5 * n, z_b).log
        )
        return math.exp(log_val)

    peak = max(0.5 * (eta_a + eta_b - omega), 0.0)
    pts = [p for p in (peak - 4 * spec.sigma, peak, peak + 4 * spec.sigma) if p > 0]
    return integrate_semi_infinite(integrand, 0.0, rel_tol, points=pts).value


def prob_two_quadratic(
    spec: TwoParticleSpec,
    det: DetectorSpec,
    rel_tol: float = DEFAULT_REL_TOL,
    dimensionless: bool = True,
) -> QuadraticComponents:
    """Full two-particle quadratic response, component by component.

    p_q = (4 lam^2 (2 pi)^2 / (2 (2 pi)^n)) S_{n-1} int dk k^{n-2}
          [q(eta1)^2 + q(eta2)^2 + 2 C q(eta1) q(eta2)],
    p_r = 4 lam^2 r_minus^2,
    p_s = 4 lam^2 [s(eta1,eta2)^2 + s(eta2,eta1)^2 + 2 s(eta1,eta1) s(eta2,eta2)],
    total their sum.  Dimensionless normalization uses lam eta1^{n-2}.
    """
    if det.coupling != "quadratic":
        raise ValueError("prob_two_quadratic requires a quadratically coupled detector")
    n, sigma, omega = spec.n, spec.sigma, det.omega
    lam_ir = spec.effective_ir_cutoff(omega)
    _guard_ir_quadratic(n, lam_ir, omega, [spec.eta1, spec.eta2])
    lower = lam_ir if n == 1 else 0.0
    norm = normalization_N(spec)
    c = overlap_C(spec)

    def q_bracket(k: float) -> float:
        if k <= 0.0:
            return 0.0
        q1 = math.exp(log_j_kernel(n, spec.eta1, sigma, omega + k))
        q2 = math.exp(log_j_kernel(n, spec.eta2, sigma, omega + k))
        bracket = q1 * q1 + q2 * q2 + 2.0 * c * q1 * q2
        return math.exp((n - 2) * math.log(k)) * norm * norm * bracket

    pts = _outer_points(spec.eta1 - omega, sigma, lower) + _outer_points(
        spec.eta2 - omega, sigma, lower
    )
    quad_q = integrate_semi_infinite(q_bracket, lower, rel_tol, points=pts)
    pref_q = 4.0 * (2.0 * math.pi) ** 2 / (2.0 * (2.0 * math.pi) ** n) * _sphere_area(n)

    r_val = r_minus(spec, det, rel_tol)
    s12 = s_minus(spec, det, ("eta1", "eta2"), rel_tol)
    s21 = s_minus(spec, det, ("eta2", "eta1"), rel_tol)
    s11 = s_minus(spec, det, ("eta1", "eta1"), rel_tol)
    s22 = s_minus(spec, det, ("eta2", "eta2"), rel_tol)

    if dimensionless:
        coupling_sq = 1.0 / lambda_tilde(1.0, n, spec.eta1, "quadratic") ** 2
    else:
        coupling_sq = det.lam**2

    p_q = coupling_sq * pref_q * quad_q.value
    p_r = coupling_sq * 4.0 * r_val * r_val
    p_s = coupling_sq * 4.0 * (s12 * s12 + s21 * s21 + 2.0 * s11 * s22)
    err = coupling_sq * pref_q * quad_q.error_estimate
    # kernel quadratures enter squared; propagate first order in their rel_tol
    err += 2.0 * rel_tol * (p_r + p_s)
    return QuadraticComponents(p_q, p_r, p_s, p_q + p_r + p_s, err)
