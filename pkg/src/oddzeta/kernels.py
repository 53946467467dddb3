"""Explicit hyperbolic-space kernel scalars and related special values.

Everything here is the scalar (Schur) component of a kernel: endomorphism
factors such as parallel transport and Clifford multiplication live in the
transport module.  Dimension bookkeeping: the space is H^(d+1); the spinor
heat scalars use d + 1 = 2n + 1, the signature heat scalars d + 1 = 4m - 1.

The derivative operator (-d/d cosh r)^k is evaluated exactly: through
Taylor jets in r away from the diagonal, and through an even power-series
recast in v = cosh r - 1 near r = 0 where the removable singularities
live.  No finite differences anywhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import jets
from .errors import AtDiagonal, DivergentIntegral, PoleAt, PoleOfGamma
from .quadrature import integrate
from .special import GammaPole, gamma_quotient, hyp2f1, is_nonpositive_integer

_LOG2 = math.log(2.0)
# series-in-(cosh r - 1) below, jets above: both are near machine accuracy
# at the crossover for derivative orders up to 5
_SMALL_R = 0.45
_SERIES_ORDER_PAD = 12


@dataclass(frozen=True)
class KernelPoint:
    """Evaluation point: geodesic distance r, spectral lambda, heat time t, n."""

    r: float
    lam: complex = 0.0
    t: float = 1.0
    n: int = 1

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"r = {self.r} negative")
        if self.t <= 0:
            raise ValueError(f"t = {self.t} not positive")
        if self.n < 1:
            raise ValueError(f"n = {self.n} must be a positive integer")


def c_lambda(lam: complex) -> complex:
    """C(lambda) = 2^(-2 lambda) Gamma(1/2 - lambda) / Gamma(1/2 + lambda).

    Satisfies C(lambda) C(-lambda) = 1; first-order poles at 1/2 + N0.
    """
    lam = complex(lam)
    if is_nonpositive_integer(0.5 - lam):
        raise PoleAt(f"C(lambda) pole at lambda = {lam}")
    try:
        ratio = gamma_quotient([0.5 - lam], [0.5 + lam])
    except GammaPole as exc:  # pragma: no cover - caught by the check above
        raise PoleAt(str(exc)) from exc
    return cmath.exp(-2.0 * lam * _LOG2) * ratio


def _log_cosh_half(r: float) -> float:
    # log cosh(r/2), overflow-safe
    x = 0.5 * r
    return x + math.log1p(math.exp(-2.0 * x)) - _LOG2


def _log_sinh_half(r: float) -> float:
    x = 0.5 * r
    return x + math.log1p(-math.exp(-2.0 * x)) - _LOG2


def _sech2_half(r: float) -> float:
    return math.exp(-2.0 * _log_cosh_half(r))


def resolvent_scalar(p: KernelPoint, d: int) -> complex:
    """Scalar prefactor of the squared-Dirac resolvent kernel on H^(d+1).

    2^-(d+1) pi^-(d+1)/2 G((d+1)/2+l) G(l) / G(2l+1)
        * cosh(r/2)^-(d+2l) * 2F1((d+1)/2+l, l; 2l+1; sech^2(r/2)).

    Excluded lambda: {0} u (-N/2) and poles of Gamma((d+1)/2 + lambda).
    """
    lam = complex(p.lam)
    if p.r <= 0:
        raise AtDiagonal("resolvent scalar is singular at r = 0")
    if is_nonpositive_integer(2.0 * lam, tol=2e-12):
        raise PoleOfGamma(f"lambda = {lam} in the excluded set {{0}} u (-N/2)")
    if is_nonpositive_integer(0.5 * (d + 1) + lam):
        raise PoleOfGamma(f"Gamma((d+1)/2 + lambda) pole at lambda = {lam}")
    pref = (2.0 ** -(d + 1)) * math.pi ** (-0.5 * (d + 1))
    gam = gamma_quotient([0.5 * (d + 1) + lam, lam], [2.0 * lam + 1.0])
    power = cmath.exp(-(d + 2.0 * lam) * _log_cosh_half(p.r))
    return pref * gam * power * hyp2f1(
        0.5 * (d + 1) + lam, lam, 2.0 * lam + 1.0, _sech2_half(p.r)
    )


def dirac_resolvent_scalar(p: KernelPoint, d: int) -> complex:
    """Scalar prefactor of the Dirac-times-resolvent kernel on H^(d+1).

    -2^-(d+1) pi^-(d+1)/2 G((d+1)/2+l) G(l+1) / G(2l+1)
        * cosh(r/2)^-(d+1+2l) sinh(r/2)
        * 2F1((d+1)/2+l, l+1; 2l+1; sech^2(r/2)),
    with the cl(v) U(m, m') endomorphism stripped.  Analytic at lambda = 0;
    the formula's gamma factors still exclude (-N/2).
    """
    lam = complex(p.lam)
    if p.r <= 0:
        raise AtDiagonal("Dirac resolvent scalar is singular at r = 0")
    if lam != 0 and is_nonpositive_integer(2.0 * lam, tol=2e-12):
        raise PoleOfGamma(f"lambda = {lam} in the excluded set (-N/2)")
    if is_nonpositive_integer(0.5 * (d + 1) + lam):
        raise PoleOfGamma(f"Gamma((d+1)/2 + lambda) pole at lambda = {lam}")
    pref = -(2.0 ** -(d + 1)) * math.pi ** (-0.5 * (d + 1))
    gam = gamma_quotient([0.5 * (d + 1) + lam, lam + 1.0], [2.0 * lam + 1.0])
    power = cmath.exp(
        -(d + 1 + 2.0 * lam) * _log_cosh_half(p.r) + _log_sinh_half(p.r)
    )
    return pref * gam * power * hyp2f1(
        0.5 * (d + 1) + lam, lam + 1.0, 2.0 * lam + 1.0, _sech2_half(p.r)
    )


# --- (-d/d cosh r)^k of r / sinh(r/scale) * exp(-r^2 / 4t) -------------------


def _sinhc_series(inv_scale: float, order: int):
    """Power series in rho = r^2 of sinh(r * inv_scale) / r."""
    coeffs = []
    for m_idx in range(order + 1):
        coeffs.append(inv_scale ** (2 * m_idx + 1) / math.gamma(2 * m_idx + 2))
    return coeffs


def _cosh_derivatives_near_zero(inv_scale: float, t: float, k: int, r: float) -> float:
    """(-d/d cosh r)^k [ r/sinh(r*inv_scale) e^(-r^2/4t) ] for small r.

    The bracket is an even analytic function of r, hence analytic in
    v = cosh r - 1; the derivative becomes an honest series derivative.
    """
    order = k + _SERIES_ORDER_PAD
    sinhc = _sinhc_series(inv_scale, order)
    f_rho = jets.series_inv(sinhc, order)
    expo = [(-0.25 / t) ** m_idx / math.gamma(m_idx + 1) for m_idx in range(order + 1)]
    f_rho = jets.series_mul(f_rho, expo, order)
    # v(rho) = cosh(sqrt(rho)) - 1 = sum_{m>=1} rho^m / (2m)!
    v_of_rho = [0.0] + [1.0 / math.gamma(2 * m_idx + 1) for m_idx in range(1, order + 1)]
    rho_of_v = jets.series_revert(v_of_rho, order)
    phi = jets.series_compose(f_rho, rho_of_v, order)
    v0 = 2.0 * math.sinh(0.5 * r) ** 2  # cosh r - 1, cancellation-free
    return (-1.0) ** k * jets.series_derivative_at(phi, k, v0)


def _cosh_derivatives_generic(inv_scale: float, t: float, k: int, r: float) -> float:
    """Same operator away from r = 0, via Taylor jets at r."""
    order = 2 * k + 2
    rj = jets.j_var(r, order)
    sinh_scaled = jets.j_sinh([c * inv_scale for c in rj])
    expo = jets.j_exp(jets.j_mul([-0.25 / t * c for c in rj], rj))
    f = jets.j_mul(jets.j_div(rj, sinh_scaled), expo)
    sinh_r = jets.j_sinh(rj)
    for _ in range(k):
        df = jets.j_deriv(f)
        f = [-c for c in jets.j_div(df, sinh_r[: len(df)])]
    return f[0]


def _neg_dcosh_power(inv_scale: float, t: float, k: int, r: float) -> float:
    if r < _SMALL_R:
        return _cosh_derivatives_near_zero(inv_scale, t, k, r)
    return _cosh_derivatives_generic(inv_scale, t, k, r)


def heat_scalar_spinor(p: KernelPoint):
    """Half-spin scalar components (p_plus, p_minus) of the odd heat kernel.

    p_plus = sinh(r/2) / (i 2^(3n + 3/2) Gamma(n + 3/2) t^(3/2))
             * (-d/d cosh r)^n [ r sinh(r/2)^(-1) e^(-r^2/4t) ]
    on H^(2n+1); p_minus = -p_plus by construction.  Values are purely
    imaginary; the removable singularity at r = 0 is handled exactly.
    """
    core = _neg_dcosh_power(0.5, p.t, p.n, p.r)
    denom = 2.0 ** (3 * p.n + 1.5) * math.gamma(p.n + 1.5) * p.t ** 1.5
    p_plus = -1j * math.sinh(0.5 * p.r) / denom * core
    return p_plus, -p_plus


def heat_scalar_signature(p: KernelPoint, m: int):
    """Signature-operator scalar components (p_plus, p_minus, p_middle).

    On H^(4m-1): p_plus = (4m-1) sinh(r) / (i 2^(2m - 1/2) pi^(2m + 1/2)
    t^(3/2)) * (-d/d cosh r)^(2m-1) [ r sinh(r)^(-1) e^(-r^2/4t) ], with
    p_middle identically zero.
    """
    if m < 1:
        raise ValueError(f"m = {m} must be a positive integer")
    core = _neg_dcosh_power(1.0, p.t, 2 * m - 1, p.r)
    denom = 2.0 ** (2 * m - 0.5) * math.pi ** (2 * m + 0.5) * p.t ** 1.5
    p_plus = -1j * (4 * m - 1) * math.sinh(p.r) / denom * core
    return p_plus, -p_plus, 0.0


# --- Gaussian time integral ---------------------------------------------------


def gaussian_time_integral(lam: complex, r: float) -> complex:
    """exp(-lambda r) / (4 pi r), the closed form of
    int_0^inf exp(-t lambda^2) (4 pi t)^(-3/2) exp(-r^2/4t) dt,
    valid for Re(lambda^2) > 0."""
    lam = complex(lam)
    if (lam * lam).real <= 0:
        raise DivergentIntegral(f"Re(lambda^2) = {(lam * lam).real:.6g} <= 0")
    if r <= 0:
        raise ValueError(f"r = {r} must be positive")
    return cmath.exp(-lam * r) / (4.0 * math.pi * r)


def gaussian_time_integral_quadrature(lam: complex, r: float,
                                      tol: float = 1e-11):
    """Verification mode: adaptive quadrature of the time integral.

    Returns (value, reported_absolute_error) where the error combines the
    quadrature estimate and the analytic bound on the truncated tail.
    """
    lam = complex(lam)
    mu = (lam * lam).real
    if mu <= 0:
        raise DivergentIntegral(f"Re(lambda^2) = {mu:.6g} <= 0")
    if r <= 0:
        raise ValueError(f"r = {r} must be positive")
    lam2 = lam * lam

    def integrand(t: float) -> complex:
        arg = r * r / (4.0 * t)
        if arg > 700.0:
            return 0.0 + 0.0j
        return cmath.exp(-t * lam2) * (4.0 * math.pi * t) ** -1.5 * math.exp(-arg)

    upper = max(1.0, 40.0 / mu, 5.0 * r / (2.0 * math.sqrt(mu)))
    # pure relative control: the value can be exponentially small in r
    value, err = integrate(integrand, 0.0, upper, tol_abs=0.0, tol_rel=tol,
                           max_panels=4096)
    tail = (4.0 * math.pi * upper) ** -1.5 * math.exp(-upper * mu) / mu
    return value, err + tail
