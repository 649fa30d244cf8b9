"""
Quadrature-defined special functions and oscillatory tails.

- macdonald_k0: K₀(x) = ∫₀^∞ e^{−x cosh t} dt
- legendre_q0:  Q_μ(x) = ∫₀^∞ (x + √(x²−1) cosh t)^{−μ−1} dt,  Re μ > −1
- oscillatory_tail: ∫_T^∞ [s(t) + Re(a(t) e^{iωt})] dt with QAWF for the
  oscillating part
"""

from __future__ import annotations

import cmath
import math
import warnings
from typing import Callable

import numpy as np
from scipy import integrate

from specfun.scaled import Number
from utils.errors import ConvergenceError, DomainError

CUTOFF = 1e-18
_LOG_CUTOFF = -math.log(CUTOFF)


def real_quad(func: Callable[[float], float], a: float, b: float, strict: bool = True,
              **kwargs) -> float:
    """
    scipy ``quad`` that turns subdivision exhaustion into ConvergenceError.

    With ``strict=False`` the estimate is returned whatever quad reported.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, _ = integrate.quad(func, a, b, **kwargs)
    for warning in caught:
        message = str(warning.message)
        # roundoff notices at tight tolerances are benign; subdivision exhaustion is not
        if strict and ("maximum number" in message or "divergent" in message):
            raise ConvergenceError(f"quadrature on [{a:g}, {b:g}] failed: {message.splitlines()[0]}")
    return value


def complex_quad(func: Callable[[float], complex], a: float, b: float,
                 epsrel: float = 1e-12, limit: int = 400, points=None,
                 epsabs: float = 0.0) -> complex:
    """Adaptive quadrature of a complex integrand, real and imaginary parts separately."""
    options = dict(epsabs=epsabs, epsrel=epsrel, limit=limit)
    if points is not None:
        options["points"] = points
    seen = {}

    def cached(t: float) -> complex:
        if t not in seen:
            seen[t] = complex(func(t))
        return seen[t]

    real = real_quad(lambda t: cached(t).real, a, b, **options)
    imag = real_quad(lambda t: cached(t).imag, a, b, **options)
    return complex(real, imag)


def macdonald_k0(x: float) -> float:
    """
    Macdonald function K₀(x) by quadrature of its integral representation.

    The integral is truncated where the integrand has dropped below 1e−18
    of its value at t = 0.
    """
    if not x > 0:
        raise DomainError(f"K0 needs x > 0, got {x}")
    upper = math.acosh(1.0 + _LOG_CUTOFF / x)
    scaled = real_quad(lambda t: math.exp(-x * (math.cosh(t) - 1.0)), 0.0, upper,
                       epsabs=0.0, epsrel=1e-13, limit=200)
    return math.exp(-x) * scaled


def macdonald_bound(x: float) -> float:
    """Upper bound √(π/2x) e^{−x} for K₀."""
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)


def legendre_q0(mu: Number, x: float) -> complex:
    """
    Legendre function of the second kind Q_μ(x), x > 1.

    Args:
        mu: Degree with Re μ > −1
        x: Real argument > 1

    Returns:
        Q_μ(x), real for real μ
    """
    mu = complex(mu)
    if not x > 1:
        raise DomainError(f"Q_mu needs x > 1, got {x}")
    if not mu.real > -1:
        raise DomainError(f"Q_mu integral needs Re(mu) > -1, got {mu}")
    root = math.sqrt(x * x - 1.0)
    power = mu + 1.0
    # integrand drops by 1e−18 relative to t = 0 beyond this cosh value
    target = (x + root) * math.exp(_LOG_CUTOFF / power.real)
    upper = math.acosh(max((target - x) / root, 1.0 + 1e-12))
    base0 = math.log(x + root)

    def integrand(t: float) -> complex:
        return cmath.exp(-power * (math.log(x + root * math.cosh(t)) - base0))

    value = complex_quad(integrand, 0.0, upper, epsrel=1e-12)
    return value * cmath.exp(-power * base0)


def oscillatory_tail(smooth: Callable[[float], float],
                     amplitude: Callable[[float], complex],
                     start: float, omega: float,
                     epsrel: float = 1e-10) -> float:
    """
    ∫_start^∞ [smooth(t) + Re(amplitude(t) e^{iωt})] dt.

    smooth and amplitude must decay at least like t^{−1−ε}.
    """
    non_oscillating = real_quad(smooth, start, np.inf, epsabs=1e-300, epsrel=epsrel, limit=200)
    cosine = real_quad(lambda t: amplitude(t).real, start, np.inf, strict=False,
                       weight="cos", wvar=omega, epsabs=1e-14, limlst=200)
    sine = real_quad(lambda t: amplitude(t).imag, start, np.inf, strict=False,
                     weight="sin", wvar=omega, epsabs=1e-14, limlst=200)
    return non_oscillating + cosine - sine
