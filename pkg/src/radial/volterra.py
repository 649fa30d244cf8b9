"""
Integral-equation residuals
===========================

Independent certification of the ODE output. The regular solution satisfies

    φ(r) = r^{ν+1/2} + ∫₀^r √(rs)((r/s)^ν − (s/r)^ν)/(2ν) (q(s) − k²) φ(s) ds

and the Jost solutions (k = 1) satisfy

    f^±(r) = f₀^±(r) + ∫_r^∞ N(r, s) q(s) f^±(s) ds,   N(r, s) = u(r)v(s) − u(s)v(r).

Both are evaluated cumulatively between consecutive nodes so that every
node value of a field is compared with the integral of the field itself.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from potentials.models import Potential
from radial.solver import JOST_MINUS, JOST_PLUS, REGULAR, SolutionField
from specfun.bessel import scaled_bessel_j, scaled_hankel
from specfun.integrals import complex_quad
from specfun.scaled import Number, Scaled
from utils.errors import DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

QUAD_EPSREL = 1e-11
QUAD_EPSABS = 1e-15
_HALF_LOG_PI_OVER_2 = 0.5 * math.log(math.pi / 2.0)


def free_pair(nu: Number, r: float) -> Tuple[Scaled, Scaled]:
    """u(r) = √(πr/2) J_ν(r) and v(r) = −i √(πr/2) H^{(1)}_ν(r), log-scaled."""
    root = Scaled.from_log(_HALF_LOG_PI_OVER_2 + 0.5 * math.log(r))
    return root * scaled_bessel_j(nu, r), root * scaled_hankel(1, nu, r) * -1j


def green_kernel_k(nu: Number, r: float, s: float) -> complex:
    """K(r, s) = u(s)v(r) for s ≤ r and u(r)v(s) for s ≥ r."""
    inner, outer = (s, r) if s <= r else (r, s)
    u_inner, _ = free_pair(nu, inner)
    _, v_outer = free_pair(nu, outer)
    return (u_inner * v_outer).value


def green_kernel_n(nu: Number, r: float, s: float) -> complex:
    """N(r, s) = u(r)v(s) − u(s)v(r)."""
    u_r, v_r = free_pair(nu, r)
    u_s, v_s = free_pair(nu, s)
    return (u_r * v_s - u_s * v_r).value


def _kernel_factor(nu: complex, x: complex) -> complex:
    """(1 − e^{2νx})/(2ν), continuous at ν = 0."""
    z = 2.0 * nu * x
    if abs(z) < 1e-8:
        return -x * (1.0 + 0.5 * z)
    return -np.expm1(z) / (2.0 * nu)


def _pieces(field: SolutionField, stride: int, upper: Optional[float]) -> List[int]:
    last = len(field.grid.nodes) - 1
    if upper is not None:
        last = max(i for i, r in enumerate(field.grid.nodes) if r <= upper * (1 + 1e-12))
    indices = list(range(0, last + 1, max(1, stride)))
    if indices[-1] != last:
        indices.append(last)
    return indices


def regular_residuals(field: SolutionField, potential: Potential, stride: int = 1,
                      upper: Optional[float] = None) -> np.ndarray:
    """Relative residual of the regular-solution integral equation at grid nodes."""
    if field.kind != REGULAR:
        raise DomainError(f"regular residual needs a regular field, got {field.kind}")
    nu, k2 = field.nu, field.k * field.k
    nodes = field.grid.nodes

    def source(s: float) -> complex:
        value, _ = field.scaled_at(s)
        normalized = value * Scaled.power(s, -nu - 0.5)
        return (complex(potential.clamped(s)) - k2) * normalized.value * s

    def piece(lo: float, hi: float, weight) -> complex:
        return complex_quad(lambda s: weight(s) * source(s), lo, hi,
                            epsrel=QUAD_EPSREL, epsabs=QUAD_EPSABS)

    residuals = []
    j2 = 0j
    d = 0j
    previous = 0.0
    for i in _pieces(field, stride, upper):
        r = nodes[i]
        if previous > 0:
            ratio_log = math.log(previous / r)
            d += j2 * _kernel_factor(nu, ratio_log)
            j2 *= cmath.exp(2.0 * nu * ratio_log)
        d += piece(previous, r, lambda s: _kernel_factor(nu, math.log(s / r)))
        j2 += piece(previous, r, lambda s: cmath.exp(2.0 * nu * math.log(s / r)))
        value, _ = field.node(i)
        stored = (value * Scaled.power(r, -nu - 0.5)).value
        residuals.append(abs(stored - 1.0 - d) / abs(stored))
        previous = r
    return np.asarray(residuals)


def jost_residuals(field: SolutionField, potential: Potential, stride: int = 1,
                   upper: Optional[float] = None) -> np.ndarray:
    """Relative residual of the Jost-solution integral equation at nodes below the boundary."""
    if field.kind not in (JOST_PLUS, JOST_MINUS):
        raise DomainError(f"jost residual needs a Jost field, got {field.kind}")
    if field.k != 1:
        raise DomainError("the Jost integral equation is implemented at k = 1 only")
    nu = field.nu
    boundary = field.grid.jost_boundary
    indices = [i for i in _pieces(field, stride, upper) if field.grid.nodes[i] <= boundary]
    if not indices:
        return np.zeros(0)
    nodes = field.grid.nodes

    def piece(lo: float, hi: float, which: int) -> Scaled:
        reference_u, reference_v = free_pair(nu, lo)
        reference = (reference_u, reference_v)[which] * field.scaled_at(lo)[0]
        scale = Scaled(1.0 + 0j, reference.exponent)

        def integrand(s: float) -> complex:
            free = free_pair(nu, s)[which]
            return (free * field.scaled_at(s)[0] * complex(potential.evaluate(s)) / scale).value

        return Scaled.from_value(complex_quad(integrand, lo, hi, epsrel=QUAD_EPSREL,
                                              epsabs=QUAD_EPSABS)) * scale

    residuals = []
    a_sum = Scaled(0j, 0.0)
    b_sum = Scaled(0j, 0.0)
    previous = boundary
    for i in reversed(indices):
        r = nodes[i]
        if r < previous:
            a_sum = a_sum + piece(r, previous, 1)
            b_sum = b_sum + piece(r, previous, 0)
        u, v = free_pair(nu, r)
        predicted = field.closed_form(r)[0] + u * a_sum - v * b_sum
        stored, _ = field.node(i)
        residuals.append(((stored - predicted).normalized().log_abs(), stored.log_abs()))
        previous = r
    return np.asarray([math.exp(gap - size) for gap, size in reversed(residuals)])


def volterra_residual(field: SolutionField, potential: Potential, stride: int = 1,
                      upper: Optional[float] = None) -> float:
    """
    Max-norm relative residual of the integral equation the field solves.

    Args:
        field: Regular or Jost field
        potential: The potential the field was computed for
        stride: Check every ``stride``-th node (pieces span the skipped nodes)
        upper: Only check nodes up to this radius

    Returns:
        Largest relative residual over the checked nodes
    """
    if field.kind == REGULAR:
        residuals = regular_residuals(field, potential, stride, upper)
    else:
        residuals = jost_residuals(field, potential, stride, upper)
    worst = float(np.max(residuals)) if residuals.size else 0.0
    logger.debug("volterra residual %s nu=%s: %.3g", field.kind, field.nu, worst)
    return worst


def product_integral(weight: Callable[[float], complex], first: Callable[[float], Scaled],
                     second: Callable[[float], Scaled], lo: float, hi: float,
                     points: Optional[Sequence[float]] = None,
                     epsrel: float = QUAD_EPSREL) -> Scaled:
    """
    ∫_lo^hi weight(r) a(r) b(r) dr for log-scaled factors a and b.

    The integrand is normalized by |a b| at ``hi`` before quadrature.
    """
    scale = Scaled(1.0 + 0j, (first(hi) * second(hi)).exponent)
    inner = [p for p in (points or ()) if lo < p < hi] or None

    def integrand(r: float) -> complex:
        w = complex(weight(r))
        if w == 0:
            return 0j
        return (first(r) * second(r) / scale).value * w

    return Scaled.from_value(complex_quad(integrand, lo, hi, epsrel=epsrel,
                                          epsabs=QUAD_EPSABS, points=inner)) * scale
