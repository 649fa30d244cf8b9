"""
Phase shifts
============

The phase shift at angular momentum ν is δ(ν) = (1/2i) log σ(ν). Along the
real axis the branch is fixed by continuity from a large anchor ν₀, where
δ is pinned near zero, down to the target in steps of 0.25.

Very small shifts are not extracted from arg σ but from

    e^{2iδ} − 1 = e^{iπ(ν−1/2)/2} ∫₀^∞ u q φ dr / β

which involves no cancellation. For a potential without compact support the
integral is taken numerically up to the Jost boundary; beyond it φ/β is
replaced by its free form −2i e^{−iπ(ν−1/2)/2} u, which leaves the tail
−2i ∫_R^∞ u² q dr. It is summed one half-period at a time until the bound
max(1, |v(r)|²) ∫_r^∞ |q| on the remainder is negligible; |u|² ≤ |v|² and
|v|² is monotone in r, approaching 1.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from potentials.models import Potential
from radial.grid import RadialGrid
from radial.solver import SolutionField
from radial.volterra import free_pair, product_integral
from scattering.functionals import PotentialPair, jost_difference
from scattering.jost import JostSystem
from specfun.gamma import log_gamma
from specfun.integrals import complex_quad
from specfun.scaled import Number, Scaled
from utils.errors import BranchTrackingError, DomainError, PreconditionError
from utils.logging_config import get_logger

logger = get_logger(__name__)

ARG_TRACKED = "arg-tracked"
SMALL_PHASE = "small-phase"
TRACK_STEP = 0.25
ANCHOR_OFFSET = 40.0
# consecutive arg σ values further apart than this cannot be continued reliably
MAX_ARG_STEP = 0.75 * math.pi
SMALL_PHASE_LIMIT = 0.1
# the unsummed Born tail may not exceed this fraction of |e^{2iδ} − 1|
SMALL_PHASE_TAIL_RTOL = 1e-6
# decay rate of the exponential envelope as a fraction of the potential's own rate
ENVELOPE_RATE_FRACTION = 0.9


@dataclass(frozen=True)
class PhaseShift:
    nu: complex
    delta: complex
    branch_anchor: float
    method: str
    l: Optional[int] = None

    @property
    def value(self) -> float:
        return self.delta.real


def physical_order(l: int, dimension: int = 3) -> float:
    """ν(l) = l + (n − 2)/2."""
    if l < 0 or int(l) != l:
        raise DomainError(f"l must be a non-negative integer, got {l}")
    if dimension < 2:
        raise DomainError(f"dimension must be at least 2, got {dimension}")
    return l + (dimension - 2) / 2.0


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def log1p_complex(z: complex) -> complex:
    """log(1 + z) without losing digits for tiny |z|."""
    if abs(z) < 1e-4:
        return z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * (0.25 - z / 5.0))))
    return cmath.log(1.0 + z)


def edge_phase_envelope(q_edge: float, a: float, l: int) -> float:
    """
    Large-l phase shift of a potential with a jump q(a−0) at its support edge.

        δ_l ≈ −(q(a−0)/2) (a/2l)³ (ae/2l)^{2l}
    """
    if l < 1:
        raise DomainError(f"edge envelope needs l >= 1, got {l}")
    ratio = a / (2.0 * l)
    log_size = 3.0 * math.log(ratio) + 2.0 * l * math.log(ratio * math.e)
    return -0.5 * q_edge * math.exp(log_size)


def necessary_condition_envelope(a: float, nu: Number) -> float:
    """(a/2)^{2ν} / ((ν+1) Γ²(ν+1)) for real ν."""
    nu = float(complex(nu).real)
    return math.exp(2.0 * nu * math.log(a / 2.0) - math.log(nu + 1.0)
                    - 2.0 * log_gamma(nu + 1.0).real)


def super_exponential_envelope(nu: float, b: float) -> float:
    """ν^{−1/2} e^{−νη} with cosh η = 1 + b²/2, the large-ν decay of ∫₀^∞ e^{−br} J_ν(r)² dr."""
    if not (nu > 0 and b > 0):
        raise DomainError(f"envelope needs nu > 0 and b > 0, got nu={nu}, b={b}")
    eta = math.acosh(1.0 + 0.5 * b * b)
    return math.exp(-0.5 * math.log(nu) - nu * eta)


def predicted_magnitude(potential: Potential, l: int) -> Optional[float]:
    """|δ_l| from the edge envelope when the potential has a jump at its edge."""
    a = potential.support_radius
    if a == 0:
        return 0.0
    if not a or l < 1:
        return None
    q_edge = potential.edge_value()
    if q_edge == 0:
        return None
    return abs(edge_phase_envelope(q_edge, a, l))


class PhaseShiftTracker:
    """
    Branch-continuous phase shifts of one potential.

    Values of log σ on the tracking lattice are cached, so a sweep over l
    shares most of its Jost evaluations.
    """

    def __init__(self, system: JostSystem, step: float = TRACK_STEP,
                 anchor_offset: float = ANCHOR_OFFSET):
        if not step > 0:
            raise DomainError(f"tracking step must be positive, got {step}")
        self.system = system
        self.step = step
        self.anchor_offset = anchor_offset
        self._log_sigma: Dict[float, complex] = {}
        self._lock = threading.Lock()

    @property
    def potential(self) -> Potential:
        return self.system.potential

    def log_sigma(self, nu: float) -> complex:
        key = round(float(nu), 10)
        with self._lock:
            if key in self._log_sigma:
                return self._log_sigma[key]
        if self.potential.is_real:
            # α = conj β on the real axis, so one Wronskian suffices
            log_beta = self.system.beta(key).log()
            value = 1j * math.pi * (key + 0.5) + log_beta.conjugate() - log_beta
        else:
            value = self.system.evaluate(key).log_sigma
        with self._lock:
            return self._log_sigma.setdefault(key, value)

    def track(self, nu: float) -> float:
        """δ(ν) by continuation from ν + anchor_offset."""
        count = int(round(self.anchor_offset / self.step))
        lattice = [nu + j * self.step for j in range(count, -1, -1)]
        previous = _wrap(self.log_sigma(lattice[0]).imag)
        phase = previous
        for point in lattice[1:]:
            current = _wrap(self.log_sigma(point).imag)
            jump = _wrap(current - previous)
            if abs(jump) >= MAX_ARG_STEP:
                raise BranchTrackingError(
                    f"arg sigma jumps by {jump:.3f} between nu={point + self.step:g} and nu={point:g}"
                )
            phase += jump
            previous = current
        return 0.5 * phase

    def small_phase(self, nu: float, grid: Optional[RadialGrid] = None) -> complex:
        """δ(ν) from the cancellation-free quadrature."""
        nu = float(nu)
        upper = self._integration_limit(nu, grid)
        if upper == 0:
            return 0j
        field = self.system.regular(nu)
        overlap = overlap_integral(self.potential, field, upper)
        beta = self.system.beta(nu)
        ratio = (Scaled.from_log(1j * math.pi * (nu - 0.5) / 2.0) * overlap / beta).value
        if self.potential.support_radius is None:
            ratio += self._tail_term(nu, upper, abs(ratio))
        delta = log1p_complex(ratio) / 2j
        if abs(delta) >= SMALL_PHASE_LIMIT:
            raise PreconditionError(f"|delta|={abs(delta):.3g} at nu={nu} is too large for the small-phase route")
        return delta

    def _tail_term(self, nu: float, lower: float, scale: float) -> complex:
        """Contribution −2i ∫_lower^∞ u² q dr of the region beyond the Jost boundary."""
        rtol = self.system.tolerances.quad_epsrel
        tail, remaining = born_tail(self.potential, nu, lower, self.system.grid_config.r_max_cap,
                                    rtol, scale / 2.0)
        size = max(scale, 2.0 * abs(tail))
        if 2.0 * remaining > SMALL_PHASE_TAIL_RTOL * size:
            raise PreconditionError(
                f"tail of {self.potential.kind} potential beyond r={lower:g} is bounded only by "
                f"{2.0 * remaining:.3g}, against |e^(2i delta) - 1| ~ {size:.3g} at nu={nu}"
            )
        logger.debug("born tail nu=%s from r=%g: %.3g (remainder %.2g)", nu, lower, abs(tail), remaining)
        return -2j * tail

    def _integration_limit(self, nu: float, grid: Optional[RadialGrid]) -> float:
        support = self.potential.support_radius
        if support is not None:
            return support
        return (grid or self.system.grid(nu)).jost_boundary

    def phase_shift(self, nu: float, l: Optional[int] = None) -> PhaseShift:
        nu = float(nu)
        anchor = nu + self.anchor_offset
        predicted = predicted_magnitude(self.potential, l) if l is not None else None
        switch = self.system.tolerances.small_phase_switch
        if predicted is not None and predicted < switch:
            return PhaseShift(complex(nu), complex(self.small_phase(nu).real), anchor, SMALL_PHASE, l)
        tracked = self.track(nu)
        if abs(tracked) < switch:
            return PhaseShift(complex(nu), complex(self.small_phase(nu).real), anchor, SMALL_PHASE, l)
        return PhaseShift(complex(nu), complex(tracked), anchor, ARG_TRACKED, l)


def overlap_integral(potential: Potential, field: SolutionField, upper: float) -> Scaled:
    """∫₀^upper u(r) q(r) φ(r) dr, log-scaled; split where the field's integration restarted."""
    points = sorted(set(potential.breakpoints) | {segment.lo for segment in field.segments})
    return product_integral(potential.clamped, lambda r: free_pair(field.nu, r)[0],
                            lambda r: field.scaled_at(r)[0], 0.0, upper, points=points)


def _remainder_bound(potential: Potential, nu: float, r: float) -> float:
    tail = potential.tail_integral(r)
    if tail == 0:
        return 0.0
    log_modulus = max(0.0, 2.0 * free_pair(nu, r)[1].log_abs())
    return math.exp(min(700.0, log_modulus + math.log(tail)))


def born_tail(potential: Potential, nu: float, lower: float, cap: float,
              rtol: float = 1e-10, scale: float = 0.0) -> Tuple[complex, float]:
    """
    ∫_lower^∞ u(r)² q(r) dr for the free u, summed over half-periods.

    Summation stops once the remainder bound falls below rtol times the
    larger of ``scale`` and the partial sum, or at ``cap``.

    Returns:
        (partial sum, bound on the remainder beyond the last piece)
    """
    total = 0j
    r = float(lower)
    while True:
        remaining = _remainder_bound(potential, nu, r)
        if remaining <= rtol * max(scale, abs(total)) or r >= cap:
            return total, remaining
        end = min(r + math.pi, cap)

        def integrand(s: float) -> complex:
            u = free_pair(nu, s)[0]
            return (u * u).value * complex(potential.clamped(s))

        total += complex_quad(integrand, r, end, epsrel=rtol,
                              epsabs=0.1 * rtol * max(scale, abs(total)))
        r = end


def phase_shift(potential: Potential, l: int, dimension: int = 3,
                system: Optional[JostSystem] = None) -> PhaseShift:
    """
    Physical phase shift δ_l at ν(l) = l + (n−2)/2.

    Args:
        potential: Real potential
        l: Angular momentum quantum number
        dimension: Space dimension n ≥ 2
        system: Jost system to reuse (built with default tolerances when omitted)

    Returns:
        PhaseShift with a real delta
    """
    nu = physical_order(l, dimension)
    tracker = PhaseShiftTracker(system or JostSystem(potential))
    return tracker.phase_shift(nu, l)


def phase_shift_small(potential: Potential, nu: float,
                      system: Optional[JostSystem] = None) -> PhaseShift:
    """Small phase shift at real ν by quadrature; raises PreconditionError if |δ| ≥ 0.1."""
    if complex(nu).imag != 0:
        raise DomainError(f"small-phase route needs real nu, got {nu}")
    nu = float(complex(nu).real)
    tracker = PhaseShiftTracker(system or JostSystem(potential))
    delta = tracker.small_phase(nu)
    return PhaseShift(complex(nu), complex(delta.real), math.inf, SMALL_PHASE)


def generalized_phase_shift(system: JostSystem, nu: Number) -> complex:
    """(1/2i) log σ(ν), principal branch, for complex ν."""
    return system.evaluate(nu).log_sigma / 2j


def herglotz_margin(system: JostSystem, nu: Number) -> float:
    """Im(δ(ν) − πν/2) = −½ log|α/β|; positive where |α| < |β|."""
    data = system.evaluate(nu)
    return -0.5 * (data.log_alpha.real - data.log_beta.real)


def phase_shift_difference(q: Potential, q_tilde: Potential, l: int, dimension: int = 3,
                           pair: Optional[PotentialPair] = None) -> float:
    """
    δ_l − δ̃_l without subtracting the two phase shifts.

    With σ − σ̃ = e^{iπ(ν+1/2)}(αβ̃ − α̃β)/(ββ̃) the ratio (σ − σ̃)/σ̃ reduces to
    (αβ̃ − α̃β)/(β α̃), and δ − δ̃ = (1/2i) log(1 + that).
    """
    nu = physical_order(l, dimension)
    pair = pair or PotentialPair.build(q, q_tilde)
    cross = jost_difference(q, q_tilde, nu, pair=pair).cross
    if cross.is_zero:
        return 0.0
    beta = pair.first.beta(nu)
    if q_tilde.is_real:
        alpha_tilde = pair.second.beta(nu).conjugate()
    else:
        alpha_tilde = pair.second.evaluate(nu).scaled_alpha
    ratio = (cross / (beta * alpha_tilde)).value
    return (log1p_complex(ratio) / 2j).real
