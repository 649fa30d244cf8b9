"""
Free (q = 0) solutions of the radial equation
=============================================

    −y'' + (ν² − 1/4)/r² y = k² y

u(r)   = √(πr/2) J_ν(r)                    regular, u ~ r^{ν+1/2}/A(ν)
v(r)   = −i √(πr/2) H^{(1)}_ν(r)            W(u, v) = 1
f₀^±   = e^{±i(ν+1/2)π/2} √(πkr/2) H^{(1,2)}_ν(kr) ~ e^{±ikr}
φ₀     = k^{−ν−1/2} A(ν) √(πkr/2) J_ν(kr)  ~ r^{ν+1/2}
A(ν)   = √(2/π) 2^ν Γ(ν+1)
α₀     = ½ A(ν) e^{−i(ν+1/2)π/2},  β₀ = ½ A(ν) e^{i(ν+1/2)π/2}
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

from specfun.bessel import (
    far_field_series,
    scaled_bessel_j,
    scaled_bessel_j_deriv,
    scaled_hankel,
    scaled_hankel_deriv,
)
from specfun.gamma import log_gamma
from specfun.scaled import Number, Scaled
from utils.errors import DomainError

_HALF_LOG_PI_OVER_2 = 0.5 * math.log(math.pi / 2.0)


@dataclass(frozen=True)
class FreeSolutions:
    u: complex
    du: complex
    v: complex
    dv: complex


@dataclass(frozen=True)
class FreeJostFunctions:
    """Closed-form Jost functions of the zero potential, with their logs."""
    alpha0: complex
    beta0: complex
    A: complex
    log_alpha0: complex
    log_beta0: complex
    log_A: complex


def _riccati(value: Scaled, deriv: Scaled, z: complex) -> Tuple[Scaled, Scaled]:
    """√(πz/2)·g(z) and its z-derivative from g and g'."""
    root = Scaled.from_log(_HALF_LOG_PI_OVER_2 + 0.5 * cmath.log(z))
    return root * value, root * (value / (2.0 * z) + deriv)


def scaled_riccati_bessel(nu: Number, z: Number) -> Tuple[Scaled, Scaled]:
    z = complex(z)
    return _riccati(scaled_bessel_j(nu, z), scaled_bessel_j_deriv(nu, z), z)


def scaled_riccati_hankel(kind: int, nu: Number, z: Number) -> Tuple[Scaled, Scaled]:
    z = complex(z)
    return _riccati(scaled_hankel(kind, nu, z), scaled_hankel_deriv(kind, nu, z), z)


def free_solutions(nu: Number, r: float) -> FreeSolutions:
    """
    The unit-Wronskian free pair (u, v) and derivatives at radius r.

    Args:
        nu: Complex order
        r: Positive radius in the Bessel working range

    Returns:
        FreeSolutions with u, u', v, v'
    """
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    u, du = scaled_riccati_bessel(nu, r)
    h, dh = scaled_riccati_hankel(1, nu, r)
    return FreeSolutions(u.value, du.value, (h * -1j).value, (dh * -1j).value)


def scaled_free_jost(sign: int, nu: Number, r: float, k: Number = 1.0) -> Tuple[Scaled, Scaled]:
    """f₀^±(r, ν) at energy k² and its r-derivative."""
    nu = complex(nu)
    k = complex(k)
    kind = 1 if sign > 0 else 2
    value, deriv = scaled_riccati_hankel(kind, nu, k * r)
    phase = Scaled.from_log(sign * 1j * (nu + 0.5) * math.pi / 2.0)
    return phase * value, phase * deriv * k


def free_jost(sign: int, nu: Number, r: float, k: Number = 1.0) -> Tuple[complex, complex]:
    """Public accessor for f₀^± and its derivative."""
    value, deriv = scaled_free_jost(sign, nu, r, k)
    return value.value, deriv.value


def far_field_envelope(sign: int, nu: Number, r: float) -> complex:
    """S^± with f₀^±(r) = e^{±ir} S^±(r) for large r."""
    total, _, _ = far_field_series(nu, r, sign * 1j)
    return total


def log_free_amplitude(nu: Number) -> complex:
    """log A(ν) = ½ log(2/π) + ν log 2 + log Γ(ν+1)."""
    nu = complex(nu)
    return 0.5 * math.log(2.0 / math.pi) + nu * math.log(2.0) + log_gamma(nu + 1)


def scaled_free_regular(nu: Number, r: float, k: Number = 1.0) -> Tuple[Scaled, Scaled]:
    """φ₀(r, ν) normalized to r^{ν+1/2} at the origin, and its r-derivative."""
    nu = complex(nu)
    k = complex(k)
    value, deriv = scaled_riccati_bessel(nu, k * r)
    norm = Scaled.from_log(log_free_amplitude(nu) - (nu + 0.5) * cmath.log(k))
    return norm * value, norm * deriv * k


def free_jost_functions(nu: Number) -> FreeJostFunctions:
    """
    α₀(ν), β₀(ν) and A(ν) for Re ν > −1.

    The plain values overflow to inf for very large |ν|; the log variants
    stay finite.
    """
    nu = complex(nu)
    if not nu.real > -1:
        raise DomainError(f"free Jost functions need Re(nu) > -1, got {nu}")
    log_a = log_free_amplitude(nu)
    turn = 1j * (nu + 0.5) * math.pi / 2.0
    log_alpha = log_a - math.log(2.0) - turn
    log_beta = log_a - math.log(2.0) + turn
    return FreeJostFunctions(
        alpha0=Scaled.from_log(log_alpha).value,
        beta0=Scaled.from_log(log_beta).value,
        A=Scaled.from_log(log_a).value,
        log_alpha0=log_alpha,
        log_beta0=log_beta,
        log_A=log_a,
    )
