"""
Bessel-function identities and bounds used as verification oracles.

Each function evaluates one side of a classical identity or one bound so
that the verification suites and tests can compare the two sides:

- Hankel functions of imaginary order: two upper bounds on |H^{(1)}_{iy}(r)|
  and Nicholson's integral for |H^{(1)}_{iy}(r)|².
- Product formula  J_ν(ir) H^{(1)}_ν(iR) = −(2i/π) I_ν(r) K_ν(R)
  = −(2i/π) ∫₀^∞ e^{−(r+R) cosh x} I_{2ν}(2√(rR) sinh x) dx,  0 < r < R.
- Weighted modulus integral ∫₀^∞ |J_ν(t)|² t^{−δ} dt in closed form and by
  quadrature with an exact far-field tail.
- Laplace-type integral ∫₀^∞ e^{−Br} J_ν(r)² dr = Q_{ν−1/2}(1 + B²/2)/π.
- Large-order behaviour of J_ν, H^{(1)}_ν and of the product J_ν(s)H^{(1)}_ν(r).
"""

from __future__ import annotations

import cmath
import math
from typing import Tuple

from specfun.bessel import (
    far_field_series,
    scaled_bessel_j,
    scaled_hankel,
    scaled_modified_i,
)
from specfun.gamma import log_gamma, scaled_gamma
from specfun.integrals import (
    complex_quad,
    legendre_q0,
    macdonald_k0,
    oscillatory_tail,
    real_quad,
)
from specfun.scaled import Number, Scaled
from utils.errors import DomainError

K0_NEGLIGIBLE = 42.0


def imaxis_bounds(y: float, r: float) -> Tuple[float, float]:
    """
    Upper bounds on |H^{(1)}_{iy}(r)| for real y ≠ 0.

    Returns:
        (2^{3/4}(πr)^{−1/2} e^{πy/2}, (2/√π)(r|y|)^{−1/4} e^{πy/2})
    """
    if y == 0:
        raise DomainError("imaginary-axis bounds need y != 0")
    growth = math.exp(math.pi * y / 2.0)
    first = 2.0 ** 0.75 * (math.pi * r) ** -0.5 * growth
    second = (2.0 / math.sqrt(math.pi)) * (r * abs(y)) ** -0.25 * growth
    return first, second


def nicholson_modulus(y: float, r: float) -> float:
    """|H^{(1)}_{iy}(r)|² = (8e^{πy}/π²) ∫₀^∞ K₀(2r sinh t) cos(2ty) dt."""
    upper = math.asinh(K0_NEGLIGIBLE / (2.0 * r))
    integral = real_quad(lambda t: macdonald_k0(2.0 * r * math.sinh(t)) * math.cos(2.0 * t * y),
                         0.0, upper, epsabs=0.0, epsrel=1e-10, limit=400)
    return 8.0 * math.exp(math.pi * y) / math.pi ** 2 * integral


def buchholz_product(nu: Number, r: float, R: float) -> complex:
    """Left side J_ν(ir) H^{(1)}_ν(iR)."""
    return (scaled_bessel_j(nu, 1j * r) * scaled_hankel(1, nu, 1j * R)).value


def buchholz_integral(nu: Number, r: float, R: float) -> complex:
    """
    Right side −(2i/π) ∫₀^∞ e^{−(r+R) cosh x} I_{2ν}(2√(rR) sinh x) dx.

    Args:
        nu: Order with Re ν > 0
        r: Inner radius, 0 < r < R
        R: Outer radius

    Returns:
        Complex value of the absolutely convergent integral
    """
    nu = complex(nu)
    if not 0 < r < R:
        raise DomainError(f"product formula needs 0 < r < R, got r={r}, R={R}")
    if not nu.real > 0:
        raise DomainError(f"product formula needs Re(nu) > 0, got {nu}")
    total = r + R
    scale = 2.0 * math.sqrt(r * R)
    gap = total - scale
    # the exponent behaves like −gap·e^x/2 for large x
    upper = max(1.0, math.log(2.0 * (K0_NEGLIGIBLE + 20.0) / gap))

    def integrand(x: float) -> complex:
        if x == 0:
            return 0j
        growth = scaled_modified_i(2.0 * nu, scale * math.sinh(x))
        return (growth * Scaled.from_log(-total * math.cosh(x))).value

    return -2j / math.pi * complex_quad(integrand, 0.0, upper, epsrel=1e-10)


def intmodule_closed_form(nu: Number, delta: float) -> float:
    """Γ(δ)Γ(Re ν + (1−δ)/2) / (2^δ |Γ((δ+1)/2 + i Im ν)|² Γ(Re ν + (1+δ)/2))."""
    nu = complex(nu)
    if not 2 * nu.real + 1 > delta > 0:
        raise DomainError(f"weighted modulus integral needs 2Re(nu)+1 > delta > 0")
    log_value = (log_gamma(delta) + log_gamma(nu.real + (1 - delta) / 2)
                 - delta * math.log(2.0)
                 - 2.0 * log_gamma((delta + 1) / 2 + 1j * nu.imag).real
                 - log_gamma(nu.real + (1 + delta) / 2))
    return math.exp(log_value.real)


def intmodule_quadrature(nu: Number, delta: float, cutoff: float = 200.0) -> float:
    """∫₀^∞ |J_ν(t)|² t^{−δ} dt: adaptive quadrature on [0, cutoff] plus the far-field tail."""
    nu = complex(nu)

    def modulus(t: float) -> float:
        return abs(scaled_bessel_j(nu, t).value) ** 2 * t ** -delta

    edges = [0.0, 1.0] + [float(t) for t in range(10, int(cutoff), 10)] + [cutoff]
    body = sum(real_quad(modulus, lo, hi, epsabs=0.0, epsrel=1e-11, limit=400)
               for lo, hi in zip(edges[:-1], edges[1:]))

    growth = math.exp(math.pi * nu.imag)
    turn = cmath.exp(-1j * (math.pi * nu.real + math.pi / 2.0))

    def smooth(t: float) -> float:
        plus = far_field_series(nu, t, 1j)[0]
        minus = far_field_series(nu, t, -1j)[0]
        return (growth * abs(plus) ** 2 + abs(minus) ** 2 / growth) / (2.0 * math.pi * t ** (1 + delta))

    def amplitude(t: float) -> complex:
        plus = far_field_series(nu, t, 1j)[0]
        minus = far_field_series(nu, t, -1j)[0]
        return turn * plus * minus.conjugate() / (math.pi * t ** (1 + delta))

    return body + oscillatory_tail(smooth, amplitude, cutoff, 2.0)


def product_bound_ratio(nu: Number, r: float, R: float, delta: float) -> float:
    """|J_ν(r)H^{(1)}_ν(R)| / (e^{π|Im ν|}(1+Re ν)^{−δ/2}(rR)^{(δ−1)/4})."""
    nu = complex(nu)
    product = scaled_bessel_j(nu, r) * scaled_hankel(1, nu, R)
    log_envelope = (math.pi * abs(nu.imag) - 0.5 * delta * math.log(1.0 + nu.real)
                    + 0.25 * (delta - 1.0) * math.log(r * R))
    return math.exp(product.log_abs() - log_envelope)


def laplace_bessel_square(nu: Number, decay: float) -> complex:
    """∫₀^∞ e^{−Br} J_ν(r)² dr by quadrature."""
    nu = complex(nu)
    upper = (K0_NEGLIGIBLE + math.pi * abs(nu.imag)) / decay

    def integrand(t: float) -> complex:
        value = scaled_bessel_j(nu, t)
        return (value * value * Scaled.from_log(-decay * t)).value

    edges = [0.0] + [float(t) for t in range(5, int(upper), 5)] + [upper]
    return sum(complex_quad(integrand, lo, hi, epsrel=1e-11)
               for lo, hi in zip(edges[:-1], edges[1:]))


def laplace_bessel_square_closed_form(nu: Number, decay: float) -> complex:
    """Q_{ν−1/2}(1 + B²/2)/π."""
    return legendre_q0(complex(nu) - 0.5, 1.0 + decay ** 2 / 2.0) / math.pi


def legendre_large_degree(mu: float, eta: float) -> float:
    """Leading behaviour √(π/(2μ sinh η)) e^{−μη} of Q_{μ−1/2}(cosh η)."""
    return math.sqrt(math.pi / (2.0 * mu * math.sinh(eta))) * math.exp(-mu * eta)


def uniform_bessel_ratio(nu: Number, r: float) -> complex:
    """J_ν(r) Γ(ν+1) (r/2)^{−ν}, which tends to 1 as |ν| → ∞ off the negative axis."""
    nu = complex(nu)
    return (scaled_bessel_j(nu, r) * scaled_gamma(nu + 1) * Scaled.power(r / 2.0, -nu)).value


def uniform_hankel_ratio(nu: Number, r: float) -> complex:
    """H^{(1)}_ν(r) / (−(i/π)(r/2)^{−ν}Γ(ν)), which tends to 1 for |Arg ν| < π/2."""
    nu = complex(nu)
    leading = Scaled.power(r / 2.0, -nu) * scaled_gamma(nu) * (-1j / math.pi)
    return (scaled_hankel(1, nu, r) / leading).value


def uniform_product_expansion(nu: Number, s: float, r: float) -> Tuple[Scaled, Scaled]:
    """
    Two-term large-order expansion of J_ν(s)H^{(1)}_ν(r) near the positive imaginary axis.

    Returns:
        (oscillating term (s/r)^ν/(iπν)·(1 + (r²−s²)/4ν),
         growing term 2(rs/4)^ν/Γ²(ν+1)·(1 − (r²+s²)/4ν))
    """
    nu = complex(nu)
    first = Scaled.power(s / r, nu) / (1j * math.pi * nu) * (1.0 + (r * r - s * s) / (4.0 * nu))
    gamma = scaled_gamma(nu + 1)
    second = (Scaled.power(r * s / 4.0, nu) / (gamma * gamma)
              * (2.0 * (1.0 - (r * r + s * s) / (4.0 * nu))))
    return first, second
