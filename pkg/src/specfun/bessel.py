"""
Bessel functions of complex order
=================================

J_ν, H^{(1)}_ν, H^{(2)}_ν and I_ν for complex order ν.

Evaluation routes
-----------------
- Power series  J_ν(z) = (z/2)^ν/Γ(ν+1) · Σ_k (−z²/4)^k / (k! (ν+1)_k),
  summed with compensated (fsum) accumulation and a certified tail bound.
  The prefactor is carried in log form so orders of several hundred stay
  representable.
- Connection formula  H^{(1,2)}_ν = (J_{−ν} − e^{∓iπν} J_ν) / (±i sin νπ).
  Within EPS_INT of an integer order the value is the average of the
  formula at ν ± EPS_REG, which keeps O(EPS_REG²) accuracy without a
  logarithmic Y_n series.
- Hankel asymptotic series for large argument and moderate order
  (|z| ≥ FAR_FIELD_MIN, |ν|² ≤ |z|). Beyond |z| ≈ 15 the power series
  loses absolute accuracy like e^{|z|}·ε, so this route takes over there.

The ``scaled_*`` functions accept a complex argument and return ``Scaled``
values; they back the solvers. The public functions keep the positive real
working range x ∈ (0, 30] (larger x only where the far field applies).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

from specfun.gamma import log_gamma
from specfun.scaled import Number, Scaled
from utils.errors import ConvergenceError, DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

SERIES_TOL = 1e-15
MAX_TERMS = 2000
X_MAX = 30.0
FAR_FIELD_MIN = 15.0
FAR_FIELD_TOL = 1e-17
EPS_INT = 1e-6
EPS_REG = 1e-5
OVERFLOW_GUARD = 600.0
MODIFIED_FAR_FIELD_MIN = 40.0


@dataclass(frozen=True)
class SeriesResult:
    """Series value with its truncation diagnostics."""
    value: complex
    terms_used: int
    tail_bound: float


def _negative_integer(nu: complex) -> int:
    """n > 0 if ν == −n exactly, else 0."""
    if nu.imag == 0 and nu.real < 0 and float(nu.real).is_integer():
        return int(-nu.real)
    return 0


def _normalized_series(nu: complex, z: complex, sign: int,
                       tol: float = SERIES_TOL,
                       max_terms: int = MAX_TERMS) -> Tuple[complex, int, float]:
    """
    Sum Σ_k (sign·z²/4)^k / (k! (ν+1)_k).

    Args:
        nu: Order
        z: Argument
        sign: −1 for J, +1 for I
        tol: Relative stopping tolerance
        max_terms: Hard limit on the number of terms

    Returns:
        (sum, terms used, bound on the omitted tail)
    """
    w = sign * z * z / 4.0
    term = 1 + 0j
    real_parts = [1.0]
    imag_parts = [0.0]
    running = 1 + 0j
    for k in range(1, max_terms + 1):
        denom = k * (nu + k)
        if denom == 0:
            raise DomainError(f"Bessel series undefined for order {nu}")
        term = term * w / denom
        real_parts.append(term.real)
        imag_parts.append(term.imag)
        running += term
        if term == 0:
            return complex(math.fsum(real_parts), math.fsum(imag_parts)), k + 1, 0.0
        # the term ratio decreases monotonically only once k + 1 > −Re ν
        if k + 1 <= -nu.real:
            continue
        ratio = abs(w) / ((k + 1) * abs(nu + k + 1))
        if ratio >= 1.0:
            continue
        tail = abs(term) * ratio / (1.0 - ratio)
        scale = abs(running)
        if abs(term) <= tol * scale and tail <= tol * scale:
            total = complex(math.fsum(real_parts), math.fsum(imag_parts))
            return total, k + 1, tail
    raise ConvergenceError(
        f"Bessel series for nu={nu}, z={z} did not reach tol={tol:g} in {max_terms} terms"
    )


def _scaled_series(nu: complex, z: complex, sign: int,
                   tol: float = SERIES_TOL) -> Tuple[Scaled, int, float]:
    n = _negative_integer(nu)
    if n:
        value, terms, tail = _scaled_series(complex(n), z, sign, tol)
        parity = (-1) ** n if sign < 0 else 1
        return value * parity, terms, tail
    if z == 0:
        return (Scaled.from_value(1.0) if nu == 0 else Scaled(0j, 0.0)), 1, 0.0
    if abs(z) > OVERFLOW_GUARD:
        raise DomainError(f"argument |z|={abs(z):g} outside the series range")
    prefactor = Scaled.from_log(nu * cmath.log(z / 2.0) - log_gamma(nu + 1))
    total, terms, tail = _normalized_series(nu, z, sign, tol)
    tail_abs = tail * math.exp(min(prefactor.exponent, 700.0))
    return prefactor * total, terms, tail_abs


def far_field_series(nu: Number, z: Number, rotation: complex,
                     tol: float = FAR_FIELD_TOL,
                     max_terms: int = 60) -> Tuple[complex, int, float]:
    """
    Σ_k rotation^k a_k(ν) / z^k with a_k = Π_{j≤k}(4ν² − (2j−1)²) / (k! 8^k).

    rotation is ±i for H^{(1,2)} and −1 for I. Summation stops at the
    requested tolerance or at the smallest term of the asymptotic series.
    """
    nu = complex(nu)
    z = complex(z)
    mu = 4.0 * nu * nu
    term = 1 + 0j
    total = 1 + 0j
    for k in range(1, max_terms + 1):
        new_term = term * rotation * (mu - (2 * k - 1) ** 2) / (8.0 * k * z)
        if k > 1 and abs(new_term) > abs(term):
            return total, k, abs(term)
        term = new_term
        total += term
        if abs(term) <= tol * abs(total):
            return total, k + 1, abs(term)
    return total, max_terms + 1, abs(term)


def far_field_applicable(nu: Number, z: Number) -> bool:
    nu = complex(nu)
    z = complex(z)
    return (abs(z) >= FAR_FIELD_MIN and abs(nu) ** 2 <= abs(z)
            and z.real > 0 and abs(z.imag) <= z.real)


def _scaled_hankel_far(kind: int, nu: complex, z: complex) -> Tuple[Scaled, int, float]:
    sign = 1 if kind == 1 else -1
    omega = z - nu * math.pi / 2.0 - math.pi / 4.0
    total, terms, tail = far_field_series(nu, z, sign * 1j)
    prefactor = Scaled.from_log(0.5 * cmath.log(2.0 / (math.pi * z)) + sign * 1j * omega)
    return prefactor * total, terms, tail * math.exp(min(prefactor.exponent, 700.0))


def scaled_bessel_j(nu: Number, z: Number) -> Scaled:
    """J_ν(z) for complex order and argument."""
    nu = complex(nu)
    z = complex(z)
    if far_field_applicable(nu, z):
        return (_scaled_hankel_far(1, nu, z)[0] + _scaled_hankel_far(2, nu, z)[0]) * 0.5
    return _scaled_series(nu, z, -1)[0]


def scaled_bessel_j_deriv(nu: Number, z: Number) -> Scaled:
    nu = complex(nu)
    return (scaled_bessel_j(nu - 1, z) - scaled_bessel_j(nu + 1, z)) * 0.5


def _check_kind(kind: int) -> int:
    if kind not in (1, 2):
        raise DomainError(f"Hankel kind must be 1 or 2, got {kind}")
    return kind


def _hankel_connection(kind: int, nu: complex, z: complex) -> Scaled:
    sign = 1 if kind == 1 else -1
    j_minus = _scaled_series(-nu, z, -1)[0]
    j_plus = _scaled_series(nu, z, -1)[0]
    rotation = Scaled.from_log(-sign * 1j * math.pi * nu)
    sine = (Scaled.from_log(1j * math.pi * nu) - Scaled.from_log(-1j * math.pi * nu)) / 2j
    return (j_minus - rotation * j_plus) / (sine * (sign * 1j))


def scaled_hankel(kind: int, nu: Number, z: Number) -> Scaled:
    """H^{(kind)}_ν(z) for complex order and argument."""
    kind = _check_kind(kind)
    nu = complex(nu)
    z = complex(z)
    if far_field_applicable(nu, z):
        return _scaled_hankel_far(kind, nu, z)[0]
    nearest = round(nu.real)
    if abs(nu - nearest) < EPS_INT:
        upper = _hankel_connection(kind, nu + EPS_REG, z)
        lower = _hankel_connection(kind, nu - EPS_REG, z)
        return (upper + lower) * 0.5
    return _hankel_connection(kind, nu, z)


def scaled_hankel_deriv(kind: int, nu: Number, z: Number) -> Scaled:
    """dH/dz from 2H'_ν = H_{ν−1} − H_{ν+1}."""
    nu = complex(nu)
    return (scaled_hankel(kind, nu - 1, z) - scaled_hankel(kind, nu + 1, z)) * 0.5


def scaled_modified_i(nu: Number, z: Number) -> Scaled:
    """I_ν(z); large real-part arguments use the exponential asymptotic series."""
    nu = complex(nu)
    z = complex(z)
    if (abs(z) >= MODIFIED_FAR_FIELD_MIN and abs(nu) ** 2 <= abs(z) / 3.0
            and z.real > 0 and abs(z.imag) <= z.real):
        total, _, _ = far_field_series(nu, z, -1.0)
        return Scaled.from_log(z - 0.5 * cmath.log(2.0 * math.pi * z)) * total
    return _scaled_series(nu, z, 1)[0]


def _check_argument(nu: complex, x: Number) -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"argument must be real, got {x}")
        x = x.real
    x = float(x)
    if not x > 0:
        raise DomainError(f"argument must be positive, got {x:g}")
    if x > X_MAX and not far_field_applicable(nu, x):
        raise DomainError(f"argument x={x:g} outside the working range (0, {X_MAX:g}]")
    return x


def bessel_j(nu: Number, x: Number, tol: float = SERIES_TOL) -> SeriesResult:
    """
    Bessel function of the first kind at a positive real argument.

    Args:
        nu: Complex order with Re ν ≥ −1
        x: Argument in (0, 30]
        tol: Relative truncation tolerance of the series

    Returns:
        SeriesResult with the value, number of terms and certified tail bound
    """
    nu = complex(nu)
    if nu.real < -1:
        raise DomainError(f"order Re(nu)={nu.real:g} below the working range Re(nu) >= -1")
    x = _check_argument(nu, x)
    if far_field_applicable(nu, x):
        first, terms_1, tail_1 = _scaled_hankel_far(1, nu, complex(x))
        second, terms_2, tail_2 = _scaled_hankel_far(2, nu, complex(x))
        value = (first + second) * 0.5
        return SeriesResult(value.value, max(terms_1, terms_2), 0.5 * (tail_1 + tail_2))
    value, terms, tail = _scaled_series(nu, complex(x), -1, tol)
    return SeriesResult(value.value, terms, tail)


def bessel_j_deriv(nu: Number, x: Number) -> complex:
    nu = complex(nu)
    x = _check_argument(nu, x)
    return scaled_bessel_j_deriv(nu, x).value


def hankel(kind: int, nu: Number, x: Number) -> complex:
    """
    Hankel function H^{(1)}_ν(x) or H^{(2)}_ν(x).

    Args:
        kind: 1 or 2
        nu: Any complex order
        x: Positive real argument in the working range

    Returns:
        Complex value; near-integer orders carry ~1e−9 relative accuracy
    """
    nu = complex(nu)
    x = _check_argument(nu, x)
    return scaled_hankel(kind, nu, x).value


def hankel_deriv(kind: int, nu: Number, x: Number) -> complex:
    nu = complex(nu)
    x = _check_argument(nu, x)
    return scaled_hankel_deriv(kind, nu, x).value


def modified_i(nu: Number, x: Number) -> complex:
    """Modified Bessel function I_ν(x) = e^{−iπν/2} J_ν(ix) at positive real x."""
    nu = complex(nu)
    x = _check_argument(nu, x)
    return scaled_modified_i(nu, x).value
