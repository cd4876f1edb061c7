"""Numerically stable special functions used by the closed-form detector formulas.

Everything here is real-valued and scaled so that callers can assemble products
of enormous hypergeometric factors with tiny Gaussian factors in log space:
each result carries both the direct ``value`` and ``log_scaled`` (the natural
log of its magnitude), and the workhorse ``bessel_i_scaled`` returns
e^{-x} I_nu(x), which is bounded for nu >= 0.

Evaluation strategy (kept deliberately simple and testable):

* series summation below the switchover argument ``30 * (1 + |order|)``,
  asymptotic expansion above it; both branches agree to ~1e-11 in the
  overlap window,
* half-integer Bessel orders go through the exact hyperbolic forms
  (I_{+-1/2} plus upward recurrence) whenever the recurrence is stable,
* 0F~1 delegates to the scaled Bessel for large argument via
  I_{b-1}(2 sqrt z) = z^{(b-1)/2} 0F~1(b; z),
* 1F~1(a; b; z<=0) is computed through the Kummer transform
  e^z 1F1(b-a; b; -z) so the series has positive terms only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SpecFunResult",
    "bessel_i_scaled",
    "hyp0f1_reg",
    "hyp1f1_reg",
    "theta3_nome",
    "erf",
    "gamma",
]

# Series/asymptotic switchover: x_switch = SWITCH_FACTOR * (1 + |order|).
SWITCH_FACTOR = 30.0

# Below this log-magnitude the linear-space series would underflow; fall back
# to streamed log-space summation.
_LOG_TINY = -700.0
_LOG_HUGE = 690.0


@dataclass(frozen=True)
class SpecFunResult:
    """A positive special-function value together with its log magnitude.

    ``value`` is the directly representable result (may round to 0.0 or inf
    when the true magnitude leaves double range); ``log_scaled`` is always
    usable: value == exp(log_scaled) up to double rounding whenever that is
    representable.
    """

    value: float
    log_scaled: float | None = None

    @property
    def log(self) -> float:
        if self.log_scaled is not None:
            return self.log_scaled
        return math.log(self.value) if self.value > 0.0 else -math.inf


def _from_log(log_value: float) -> SpecFunResult:
    if log_value == -math.inf:
        return SpecFunResult(0.0, -math.inf)
    if log_value > _LOG_HUGE:
        return SpecFunResult(math.inf, log_value)
    return SpecFunResult(math.exp(log_value), log_value)


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def _series_log(log_t0: float, ratio_log) -> float:
    """Sum a positive series entirely in log space.

    ``ratio_log(m)`` returns log(t_{m+1}/t_m).  Used only when the leading
    term underflows double precision.
    """
    log_term = log_t0
    log_sum = log_t0
    for m in range(100_000):
        log_term += ratio_log(m)
        log_sum = _logaddexp(log_sum, log_term)
        if log_term < log_sum - 40.0:
            return log_sum
    raise RuntimeError("log-space series failed to converge")


# ---------------------------------------------------------------------------
# scaled modified Bessel function of the first kind
# ---------------------------------------------------------------------------


def _bessel_series_scaled_log(nu: float, x: float) -> float:
    """log of e^{-x} I_nu(x) by the ascending series with e^{-x} folded in.

    Terms are positive and each is bounded by the total (<= ~1 for nu >= 0),
    so linear-space accumulation is overflow-free; only a deeply underflowing
    leading term forces the log-space path.
    """
    log_t0 = nu * math.log(x / 2.0) - math.lgamma(nu + 1.0) - x
    q = 0.25 * x * x
    if log_t0 > _LOG_TINY:
        term = math.exp(log_t0)
        total = term
        m = 0
        while True:
            m += 1
            term *= q / (m * (nu + m))
            total += term
            if term < total * 1e-17:
                return math.log(total)
            if m > 100_000:
                raise RuntimeError("Bessel series failed to converge")
    log_q = math.log(q)
    return _series_log(log_t0, lambda m: log_q - math.log((m + 1) * (nu + m + 1)))


def _bessel_asymptotic_scaled_log(nu: float, x: float) -> float:
    """log of e^{-x} I_nu(x) by the large-argument expansion.

    e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} * sum_k (-1)^k a_k(nu) / x^k with
    a_k = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! 8^k); truncated at the first
    non-decreasing term.
    """
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(1, 60):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        if abs(term) < 1e-17 * abs(total):
            break
    return math.log(total) - 0.5 * math.log(2.0 * math.pi * x)


def _bessel_half_integer_scaled(nu: float, x: float) -> float:
    """e^{-x} I_nu(x) for half-integer nu via the exact hyperbolic forms.

    g_{-1/2} = (1 + e^{-2x}) / sqrt(2 pi x), g_{1/2} = (1 - e^{-2x}) / sqrt(2 pi x),
    then the upward recurrence g_{nu+1} = g_{nu-1} - (2 nu / x) g_nu.
    Caller guarantees the recurrence is stable (x not small against nu^2).
    """
    c = 1.0 / math.sqrt(2.0 * math.pi * x)
    g_minus = c * (1.0 + math.exp(-2.0 * x))
    g_plus = c * (-math.expm1(-2.0 * x))
    if nu == -0.5:
        return g_minus
    order = 0.5
    while order < nu:
        g_minus, g_plus = g_plus, g_minus - (2.0 * order / x) * g_plus
        order += 1.0
    return g_plus


def bessel_i_scaled(nu: float, x: float) -> SpecFunResult:
    """e^{-x} I_nu(x) for nu >= -1/2, x >= 0.

    Bounded by 1 for nu >= 0; approaches 1/sqrt(2 pi x) for large x.
    """
    if x < 0.0:
        raise ValueError(f"bessel_i_scaled requires x >= 0, got {x}")
    if nu < -0.5:
        raise ValueError(f"bessel_i_scaled requires nu >= -1/2, got {nu}")
    if x == 0.0:
        if nu == 0.0:
            return SpecFunResult(1.0, 0.0)
        if nu > 0.0:
            return SpecFunResult(0.0, -math.inf)
        return SpecFunResult(math.inf, math.inf)

    if x >= SWITCH_FACTOR * (1.0 + abs(nu)):
        return _from_log(_bessel_asymptotic_scaled_log(nu, x))
    half_integer = (nu - 0.5) == math.floor(nu - 0.5) and nu * 2.0 == math.floor(nu * 2.0)
    if half_integer and x >= max(10.0, nu * nu):
        value = _bessel_half_integer_scaled(nu, x)
        return SpecFunResult(value, math.log(value))
    return _from_log(_bessel_series_scaled_log(nu, x))


# ---------------------------------------------------------------------------
# regularized confluent hypergeometric functions
# ---------------------------------------------------------------------------


def hyp0f1_reg(b: float, z: float) -> SpecFunResult:
    """0F~1(b; z) = sum_m z^m / (m! Gamma(b+m)) for b > 0, z >= 0.

    Grows like exp(2 sqrt z); for large z the value itself overflows and the
    result is delivered through ``log_scaled`` (via the scaled-Bessel identity
    0F~1(b; z) = z^{-(b-1)/2} I_{b-1}(2 sqrt z)).
    """
    if b <= 0.0:
        raise ValueError(f"hyp0f1_reg requires b > 0, got {b}")
    if z < 0.0:
        raise ValueError(f"hyp0f1_reg requires z >= 0, got {z}")
    if z == 0.0:
        return _from_log(-math.lgamma(b))

    x = 2.0 * math.sqrt(z)
    nu = b - 1.0
    if x >= SWITCH_FACTOR * (1.0 + abs(nu)):
        log_value = x + bessel_i_scaled(nu, x).log - nu * 0.5 * math.log(z)
        return _from_log(log_value)

    log_t0 = -math.lgamma(b)
    if log_t0 + x > _LOG_TINY and log_t0 + x < _LOG_HUGE:
        term = math.exp(log_t0)
        total = term
        m = 0
        while True:
            m += 1
            term *= z / (m * (b + m - 1.0))
            total += term
            if term < total * 1e-17:
                return SpecFunResult(total, math.log(total))
            if m > 100_000:
                raise RuntimeError("0F1 series failed to converge")
    log_z = math.log(z)
    return _from_log(
        _series_log(log_t0, lambda m: log_z - math.log((m + 1) * (b + m)))
    )


def hyp1f1_reg(a: float, b: float, z: float) -> SpecFunResult:
    """1F~1(a; b; z) = sum_m (a)_m z^m / (m! Gamma(b+m)) for b > 0, z <= 0.

    Only the non-positive-z half line is supported (all uses have
    a = -1/2, b = n/2, z = -k0^2/sigma^2).  The Kummer transform
    e^z 1F1(b-a; b; -z) keeps every series term positive; for z -> -inf the
    expansion 1F~1 ~ (-z)^{-a} / Gamma(b-a) * [1 + O(1/z)] takes over.
    """
    if b <= 0.0:
        raise ValueError(f"hyp1f1_reg requires b > 0, got {b}")
    if z > 0.0:
        raise ValueError(f"hyp1f1_reg supports z <= 0 only, got {z}")
    if b - a <= 0.0:
        raise ValueError(f"hyp1f1_reg requires b - a > 0, got a={a}, b={b}")
    if z == 0.0:
        return _from_log(-math.lgamma(b))

    t = -z
    if t >= SWITCH_FACTOR * (1.0 + abs(a) + b):
        # DLMF 13.7.2 with the recessive e^z term dropped.
        term = 1.0
        total = 1.0
        prev = math.inf
        for s in range(1, 60):
            term *= (a + s - 1.0) * (a - b + s) / (s * t)
            if abs(term) >= prev:
                break
            total += term
            prev = abs(term)
            if abs(term) < 1e-17 * abs(total):
                break
        return _from_log(-a * math.log(t) - math.lgamma(b - a) + math.log(total))

    # Kummer: 1F~1(a; b; -t) = e^{-t} * sum_m (b-a)_m t^m / ((b)_m m!) / Gamma(b)
    # with e^{-t} folded into the leading term.
    log_t0 = -math.lgamma(b) - t
    if log_t0 > _LOG_TINY:
        term = math.exp(log_t0)
        total = term
        m = 0
        while True:
            m += 1
            term *= (b - a + m - 1.0) * t / ((b + m - 1.0) * m)
            total += term
            if term < total * 1e-17:
                return SpecFunResult(total, math.log(total))
            if m > 200_000:
                raise RuntimeError("1F1 series failed to converge")
    log_t = math.log(t)

    def ratio_log(m: int) -> float:
        return math.log(b - a + m) + log_t - math.log((b + m) * (m + 1))

    return _from_log(_series_log(log_t0, ratio_log))


# ---------------------------------------------------------------------------
# Jacobi theta_3, erf, gamma
# ---------------------------------------------------------------------------


def theta3_nome(q: float) -> float:
    """theta_3(0, q) = 1 + 2 sum_{m>=1} q^{m^2} for 0 <= q < 1."""
    if not 0.0 <= q < 1.0:
        raise ValueError(f"theta3_nome requires 0 <= q < 1, got {q}")
    if q == 0.0:
        return 1.0
    total = 1.0
    m = 0
    while True:
        m += 1
        term = 2.0 * q ** (m * m)
        total += term
        if term < 1e-16 * total:
            return total
        if m > 1_000_000:
            raise RuntimeError("theta3 partial sum failed to converge")


def erf(x: float) -> float:
    """Error function, relative accuracy better than 1e-14 on |x| <= 30."""
    return math.erf(x)


def gamma(x: float) -> float:
    """Gamma function for x > 0 or non-integer x; poles raise ValueError."""
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma pole at non-positive integer {x}")
    return math.gamma(x)
