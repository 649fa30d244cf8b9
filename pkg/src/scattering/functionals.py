"""
Functionals of one or two potentials built from Jost data
=========================================================

For potentials q and q̃ the differences of the Jost functions are integrals
of q − q̃ against products of solutions:

    α − α̃       =  (1/2i) ∫ (q − q̃) f⁻ φ̃ dr
    β − β̃       = −(1/2i) ∫ (q − q̃) f⁺ φ̃ dr
    αβ̃ − α̃β     =  (1/2i) ∫ (q − q̃) φ φ̃ dr

These are evaluated directly by quadrature, so a small difference is never
obtained by subtracting two large numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from radial.grid import tail_radius
from radial.volterra import free_pair, product_integral
from scattering.jost import JostSystem
from specfun.bessel import FAR_FIELD_MIN
from specfun.free import far_field_envelope, scaled_free_jost
from specfun.integrals import complex_quad, oscillatory_tail
from specfun.scaled import Number, Scaled
from utils.errors import DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

_INV_2I = Scaled.from_value(1.0 / 2j)
_TURN = 0.5j * math.pi


def reach(potential: Potential, tolerances: Optional[ToleranceConfig] = None,
          grid_config: Optional[GridConfig] = None) -> float:
    """Radius beyond which q is zero or below the tail tolerance."""
    support = potential.support_radius
    if support is not None:
        return float(support)
    tolerances = tolerances or ToleranceConfig()
    grid_config = grid_config or GridConfig()
    return tail_radius(potential, tolerances.tail_tol, grid_config.r_max_cap)


@dataclass
class PotentialPair:
    """
    Two potentials matched on a common radius.

    Both systems share r_match = max(reach(q), reach(q̃)), so every solution
    field covers the region where q and q̃ differ.
    """
    first: JostSystem
    second: JostSystem
    upper: float

    @classmethod
    def build(cls, q: Potential, q_tilde: Potential, tolerances: Optional[ToleranceConfig] = None,
              grid_config: Optional[GridConfig] = None) -> "PotentialPair":
        tolerances = tolerances or ToleranceConfig()
        grid_config = grid_config or GridConfig()
        upper = max(reach(q, tolerances, grid_config), reach(q_tilde, tolerances, grid_config))
        if grid_config.r_match is None:
            grid_config = replace(grid_config, r_match=max(upper, 1.0))
        return cls(JostSystem(q, tolerances, grid_config),
                   JostSystem(q_tilde, tolerances, grid_config), upper)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted(set(self.first.potential.breakpoints)
                            | set(self.second.potential.breakpoints)))

    def difference(self, r: float) -> complex:
        return complex(self.first.potential.clamped(r)) - complex(self.second.potential.clamped(r))

    def integral(self, first, second) -> Scaled:
        """∫₀^upper (q − q̃) a b dr for log-scaled factor callables."""
        if self.upper == 0:
            return Scaled(0j, 0.0)
        return product_integral(self.difference, first, second, 0.0, self.upper,
                                points=self.breakpoints)


@dataclass(frozen=True)
class JostDifference:
    nu: complex
    d_alpha: Scaled
    d_beta: Scaled
    cross: Scaled
    direct_residual: float

    def values(self) -> Tuple[complex, complex, complex]:
        """(α − α̃, β − β̃, αβ̃ − α̃β)."""
        return self.d_alpha.value, self.d_beta.value, self.cross.value


def _direct_residual(pair: PotentialPair, nu: complex, d_alpha: Scaled, d_beta: Scaled,
                     cross: Scaled) -> float:
    data = pair.first.evaluate(nu)
    other = pair.second.evaluate(nu)
    alpha, beta = data.scaled_alpha, data.scaled_beta
    alpha_t, beta_t = other.scaled_alpha, other.scaled_beta
    size = max(alpha.log_abs(), beta.log_abs())
    gaps = [
        ((alpha - alpha_t) - d_alpha).log_abs() - size,
        ((beta - beta_t) - d_beta).log_abs() - size,
        ((alpha * beta_t - alpha_t * beta) - cross).log_abs() - size - max(alpha_t.log_abs(), beta_t.log_abs()),
    ]
    return math.exp(max(gaps)) if math.isfinite(max(gaps)) else 0.0


def jost_difference(q: Potential, q_tilde: Potential, nu: Number,
                    tolerances: Optional[ToleranceConfig] = None,
                    grid_config: Optional[GridConfig] = None,
                    pair: Optional[PotentialPair] = None) -> JostDifference:
    """
    α − α̃, β − β̃ and αβ̃ − α̃β by quadrature.

    Args:
        q: First potential
        q_tilde: Second potential
        nu: Complex angular momentum, Re ν ≥ 0
        tolerances: Shared tolerances
        grid_config: Shared grid hints
        pair: Prebuilt pair to reuse

    Returns:
        JostDifference whose ``direct_residual`` compares the quadratures with
        the subtraction of separately computed Jost functions, relative to
        the size of the terms subtracted
    """
    nu = complex(nu)
    if nu.real < 0:
        raise DomainError(f"Jost differences need Re(nu) >= 0, got {nu}")
    pair = pair or PotentialPair.build(q, q_tilde, tolerances, grid_config)
    regular, plus, minus = pair.first.fields(nu)
    regular_t = pair.second.regular(nu)

    def tilde(r):
        return regular_t.scaled_at(r)[0]

    d_alpha = _INV_2I * pair.integral(lambda r: minus.scaled_at(r)[0], tilde)
    d_beta = -_INV_2I * pair.integral(lambda r: plus.scaled_at(r)[0], tilde)
    cross = _INV_2I * pair.integral(lambda r: regular.scaled_at(r)[0], tilde)
    residual = _direct_residual(pair, nu, d_alpha, d_beta, cross)
    logger.debug("jost difference nu=%s: direct residual %.3g", nu, residual)
    return JostDifference(nu, d_alpha, d_beta, cross, residual)


def uniqueness_gap(q: Potential, q_tilde: Potential, r: float, nu: Number,
                   tolerances: Optional[ToleranceConfig] = None,
                   grid_config: Optional[GridConfig] = None,
                   pair: Optional[PotentialPair] = None) -> Scaled:
    """
    G(ν) = (α̃β − αβ̃) / ((ν+1)² r^{2ν}).

    For potentials equal beyond b and r > b this tends to zero along the
    real axis.
    """
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    nu = complex(nu)
    cross = jost_difference(q, q_tilde, nu, tolerances, grid_config, pair).cross
    return -cross / (Scaled.from_value((nu + 1.0) ** 2) * Scaled.power(r, 2.0 * nu))


def borg_functional(q: Potential, q_tilde: Potential, r: float, nu: Number,
                    tolerances: Optional[ToleranceConfig] = None,
                    grid_config: Optional[GridConfig] = None,
                    pair: Optional[PotentialPair] = None) -> complex:
    """F(r, ν) = f⁺ f̃⁻ − f⁻ f̃⁺ at radius r."""
    nu = complex(nu)
    pair = pair or PotentialPair.build(q, q_tilde, tolerances, grid_config)
    states = []
    for system in (pair.first, pair.second):
        grid = system.grid(nu)
        (plus,) = system.solver.jost_states(nu, 1, [r], grid)
        (minus,) = system.solver.jost_states(nu, -1, [r], grid)
        states.append((plus[0], minus[0]))
    (plus, minus), (plus_t, minus_t) = states
    return (plus * minus_t - minus * plus_t).value


def jost_solution_bound(potential: Potential, r: float) -> float:
    """|f^±(r, iy)| ≤ 2^{1/4} exp(√2 ∫_r^∞ |q|) on the imaginary axis."""
    return 2.0 ** 0.25 * math.exp(math.sqrt(2.0) * potential.tail_integral(r))


def borg_imaginary_bound(q: Potential, q_tilde: Potential, r: float) -> float:
    return 2.0 * jost_solution_bound(q, r) * jost_solution_bound(q_tilde, r)


@dataclass(frozen=True)
class LinkCheck:
    nu: complex
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs))


def _far_radius(nu: complex, boundary: float) -> float:
    return max(boundary, FAR_FIELD_MIN, 4.0 * abs(nu) ** 2)


def link_identity(system: JostSystem, nu: Number) -> LinkCheck:
    """
    Both sides of |α|² − |β|² = 2 Re ν Im ν ∫₀^∞ |φ|²/r² dr.

    Beyond the integrated range φ = α f₀⁺ + β f₀⁻; past max(15, 4|ν|²) the free
    solutions are replaced by their far-field series and the oscillating
    cross term goes to a Fourier-weighted quadrature.
    """
    nu = complex(nu)
    if system.k != 1:
        raise DomainError("the link identity is implemented at k = 1 only")
    data = system.evaluate(nu)
    alpha, beta = data.alpha, data.beta
    field = system.regular(nu)
    boundary = field.grid.r_max
    far = _far_radius(nu, boundary)
    points = [b for b in system.potential.breakpoints if 0 < b < boundary] or None

    def modulus(value: Scaled, r: float) -> float:
        return math.exp(2.0 * value.log_abs()) / (r * r)

    inner = complex_quad(lambda r: modulus(field.scaled_at(r)[0], r), 0.0, boundary,
                         epsrel=1e-11, points=points).real

    def outside(r: float) -> Scaled:
        plus = scaled_free_jost(1, nu, r)[0]
        minus = scaled_free_jost(-1, nu, r)[0]
        return data.scaled_alpha * plus + data.scaled_beta * minus

    middle = complex_quad(lambda r: modulus(outside(r), r), boundary, far,
                          epsrel=1e-11).real if far > boundary else 0.0

    def smooth(t: float) -> float:
        plus = far_field_envelope(1, nu, t)
        minus = far_field_envelope(-1, nu, t)
        return (abs(alpha * plus) ** 2 + abs(beta * minus) ** 2) / (t * t)

    def amplitude(t: float) -> complex:
        plus = far_field_envelope(1, nu, t)
        minus = far_field_envelope(-1, nu, t)
        return 2.0 * alpha * np.conj(beta) * plus * np.conj(minus) / (t * t)

    tail = oscillatory_tail(smooth, amplitude, far, 2.0)
    total = inner + middle + tail
    lhs = abs(alpha) ** 2 - abs(beta) ** 2
    rhs = 2.0 * nu.real * nu.imag * total
    logger.debug("link identity nu=%s: lhs=%.6g rhs=%.6g (inner %.3g middle %.3g tail %.3g)",
                 nu, lhs, rhs, inner, middle, tail)
    return LinkCheck(nu, lhs, rhs)


def newrep2_residual(system: JostSystem, nu: Number) -> float:
    """
    Relative residual of α e^{iπ(ν−1/2)/2} + β e^{−iπ(ν−1/2)/2} = −∫ u q φ dr.
    """
    nu = complex(nu)
    data = system.evaluate(nu)
    field = system.regular(nu)
    upper = field.grid.jost_boundary
    turn = Scaled.from_log(_TURN * (nu - 0.5) / 2.0)
    overlap = Scaled(0j, 0.0)
    if upper > 0:
        overlap = product_integral(system.potential.clamped, lambda r: free_pair(nu, r)[0],
                                   lambda r: field.scaled_at(r)[0], 0.0, upper,
                                   points=system.potential.breakpoints)
    total = data.scaled_alpha * turn + data.scaled_beta / turn + overlap
    size = max(data.scaled_alpha.log_abs(), data.scaled_beta.log_abs())
    return math.exp(total.log_abs() - size)


def newrep1_residual(system: JostSystem, nu: Number, radius: float) -> float:
    """
    Relative residual of φ(r) = −2iβ e^{−iπ(ν−1/2)/2} u(r) + ∫₀^∞ K(r, s) q(s) φ(s) ds at r.

    K(r, s) is split at s = r: v(r)∫₀^r u q φ + u(r)∫_r^∞ v q φ.
    """
    nu = complex(nu)
    field = system.regular(nu)
    upper = field.grid.jost_boundary
    q = system.potential.clamped
    points = system.potential.breakpoints
    u_r, v_r = free_pair(nu, radius)
    beta = system.beta(nu)
    value = field.scaled_at(radius)[0]
    lower_part = Scaled(0j, 0.0)
    upper_part = Scaled(0j, 0.0)
    reach_inner = min(radius, upper)
    if reach_inner > 0:
        lower_part = product_integral(q, lambda s: free_pair(nu, s)[0],
                                      lambda s: field.scaled_at(s)[0], 0.0, reach_inner,
                                      points=points)
    if upper > radius:
        upper_part = product_integral(q, lambda s: free_pair(nu, s)[1],
                                      lambda s: field.scaled_at(s)[0], radius, upper,
                                      points=points)
    free_term = Scaled.from_value(-2j) * beta * Scaled.from_log(-_TURN * (nu - 0.5) / 2.0) * u_r
    predicted = free_term + v_r * lower_part + u_r * upper_part
    return math.exp((value - predicted).log_abs() - value.log_abs())


def imaginary_axis_defect(system: JostSystem, y: float) -> float:
    """Relative defect of |α(iy)|² − |β(iy)|² = y."""
    if y == 0:
        raise DomainError("imaginary-axis identity needs y != 0")
    data = system.evaluate(1j * y)
    return abs(abs(data.alpha) ** 2 - abs(data.beta) ** 2 - y) / abs(y)
