"""
Radial solvers
==============

Solutions of

    −φ'' + ((ν² − 1/4)/r² + q(r)) φ = k² φ

are integrated in t = log r for w = φ/√r, which satisfies

    w'' = (ν² + r² (q(r) − k²)) w.

The regular solution φ ~ r^{ν+1/2} is integrated outward from a seed radius
using the two-term origin expansion. The Jost solutions f^± ~ e^{±ikr} are
integrated inward from the Jost boundary, where they coincide with the free
solutions f₀^±. Integration restarts at chunk edges and is renormalized
there, so magnitudes like r^{ν+1/2} at large ν never leave the double range.
"""

from __future__ import annotations

import bisect
import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from config.settings import GridConfig, ToleranceConfig
from potentials.hypotheses import require_hypotheses
from potentials.models import Potential
from radial.grid import RadialGrid, build_grid
from specfun.free import scaled_free_jost, scaled_riccati_bessel, scaled_riccati_hankel
from specfun.scaled import Number, Scaled
from utils.errors import DomainError, IntegrationError
from utils.logging_config import get_logger

logger = get_logger(__name__)

REGULAR = "regular"
JOST_PLUS = "jost_plus"
JOST_MINUS = "jost_minus"
FREE_U = "free_u"
FREE_V = "free_v"
KINDS = (REGULAR, JOST_PLUS, JOST_MINUS, FREE_U, FREE_V)

State = Tuple[Scaled, Scaled]


def _to_log_variables(value: Scaled, deriv: Scaled, r: float) -> State:
    root = math.sqrt(r)
    w = value / root
    return w, deriv * root - w * 0.5


def _from_log_variables(w: complex, wt: complex, r: float) -> Tuple[complex, complex]:
    root = math.sqrt(r)
    return w * root, (0.5 * w + wt) / root


def _origin_expansion(nu: complex, c: complex, r: float) -> State:
    power = Scaled.power(r, nu - 0.5)
    return power * (r * (1.0 + c * r * r)), power * ((nu + 0.5) + c * (nu + 2.5) * r * r)


@dataclass(frozen=True)
class Segment:
    """Dense output of one integration chunk, valid on [lo, hi]."""
    lo: float
    hi: float
    dense: integrate.OdeSolution
    log_offset: float

    def state(self, r: float) -> State:
        w, wt = self.dense(math.log(r))
        value, deriv = _from_log_variables(complex(w), complex(wt), r)
        scale = Scaled(1.0 + 0j, self.log_offset)
        return Scaled.from_value(value) * scale, Scaled.from_value(deriv) * scale


@dataclass(frozen=True, eq=False)
class SolutionField:
    """
    A solution of the radial equation sampled on a grid.

    ``values``/``derivs`` hold mantissas: the true value at node i is
    values[i]·exp(log_scale[i]). Between nodes the field is evaluated from
    the integrator's dense output through :meth:`scaled_at`.
    """
    kind: str
    nu: complex
    k: complex
    grid: RadialGrid
    values: np.ndarray
    derivs: np.ndarray
    log_scale: np.ndarray
    segments: Tuple[Segment, ...] = ()
    seed_coefficient: complex = 0j

    @property
    def sign(self) -> int:
        return {JOST_PLUS: 1, JOST_MINUS: -1}.get(self.kind, 0)

    @property
    def closed_form_from(self) -> float:
        """Radius from which the field is the free solution in closed form."""
        if self.kind in (FREE_U, FREE_V):
            return 0.0
        if self.kind == REGULAR:
            return math.inf
        return self.grid.jost_boundary

    def scaled_at(self, r: float) -> State:
        """(value, r-derivative) at any r > 0 the field covers."""
        if not r > 0:
            raise DomainError(f"radius must be positive, got {r}")
        if r >= self.closed_form_from:
            return self.closed_form(r)
        if self.kind == REGULAR and r < self.grid.r_min:
            return self._seed(r)
        starts = [s.lo for s in self.segments]
        i = bisect.bisect_right(starts, r) - 1
        if i < 0 or r > self.segments[i].hi * (1.0 + 1e-14):
            raise DomainError(f"r={r:g} lies outside the integrated range of the {self.kind} field")
        return self.segments[i].state(min(r, self.segments[i].hi))

    def at(self, r: float) -> Tuple[complex, complex]:
        value, deriv = self.scaled_at(r)
        return value.value, deriv.value

    def node(self, i: int) -> State:
        scale = Scaled(1.0 + 0j, float(self.log_scale[i]))
        return (Scaled.from_value(self.values[i]) * scale,
                Scaled.from_value(self.derivs[i]) * scale)

    def _seed(self, r: float) -> State:
        return _origin_expansion(self.nu, self.seed_coefficient, r)

    def closed_form(self, r: float) -> State:
        """The free solution this field coincides with beyond ``closed_form_from``."""
        if self.kind in (JOST_PLUS, JOST_MINUS):
            return scaled_free_jost(self.sign, self.nu, r, self.k)
        if self.kind == FREE_U:
            return scaled_riccati_bessel(self.nu, r)
        value, deriv = scaled_riccati_hankel(1, self.nu, r)
        return value * -1j, deriv * -1j


def _node_arrays(field_values: Iterable[State]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    values, derivs, scales = [], [], []
    for value, deriv in field_values:
        offset = max(value.log_abs(), deriv.log_abs())
        if not math.isfinite(offset):
            offset = 0.0
        norm = Scaled(1.0 + 0j, offset)
        values.append((value / norm).value)
        derivs.append((deriv / norm).value)
        scales.append(offset)
    return (np.asarray(values, dtype=complex), np.asarray(derivs, dtype=complex),
            np.asarray(scales, dtype=float))


def _finish(kind: str, nu: complex, k: complex, grid: RadialGrid,
            segments: Sequence[Segment] = (), seed_coefficient: complex = 0j) -> SolutionField:
    shell = SolutionField(kind, nu, k, grid, np.empty(0, complex), np.empty(0, complex),
                          np.empty(0), tuple(sorted(segments, key=lambda s: s.lo)), seed_coefficient)
    values, derivs, scales = _node_arrays(shell.scaled_at(r) for r in grid.nodes)
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(derivs))):
        raise IntegrationError(f"non-finite {kind} values for nu={nu}")
    return SolutionField(kind, nu, k, grid, values, derivs, scales, shell.segments, seed_coefficient)


class RadialSolver:
    """Integrates the radial equation of one potential at a fixed wave number k."""

    def __init__(self, potential: Potential, tolerances: Optional[ToleranceConfig] = None,
                 grid_config: Optional[GridConfig] = None, k: Number = 1.0):
        require_hypotheses(potential)
        self.potential = potential
        self.tolerances = tolerances or ToleranceConfig()
        self.grid_config = grid_config or GridConfig()
        self.k = complex(k)

    def grid(self, nu: Number) -> RadialGrid:
        nu = complex(nu)
        if nu.real < 0:
            nu = -nu
        return build_grid(self.potential, nu, self.grid_config, self.tolerances, self.k)

    def _rhs(self, nu: complex, lo: float, hi: float):
        nu2 = nu * nu
        k2 = self.k * self.k
        q = self.potential.clamped
        # q is sampled strictly inside the chunk so a jump at an edge is seen from the correct side
        inner_lo = float(np.nextafter(lo, hi))
        inner_hi = float(np.nextafter(hi, lo))

        def rhs(t, y):
            r = min(max(math.exp(t), inner_lo), inner_hi)
            return np.array([y[1], (nu2 + r * r * (complex(q(r)) - k2)) * y[0]])

        return rhs

    def _integrate(self, nu: complex, edges: Sequence[float], start: State,
                   dense: bool = True) -> Tuple[List[Segment], List[Tuple[float, State]]]:
        """
        Integrate from edges[0] through edges[-1], restarting at each edge.

        Returns the dense segments and the (radius, (φ, φ')) state at every edge.
        """
        w, wt = _to_log_variables(start[0], start[1], edges[0])
        segments: List[Segment] = []
        states: List[Tuple[float, State]] = [(edges[0], start)]
        for begin, end in zip(edges[:-1], edges[1:]):
            offset = max(w.log_abs(), wt.log_abs())
            if not math.isfinite(offset):
                raise IntegrationError(f"solution vanished at r={begin:g} for nu={nu}")
            norm = Scaled(1.0 + 0j, offset)
            y0 = np.array([(w / norm).value, (wt / norm).value], dtype=complex)
            lo, hi = min(begin, end), max(begin, end)
            solution = integrate.solve_ivp(
                self._rhs(nu, lo, hi),
                (math.log(begin), math.log(end)),
                y0,
                method="DOP853",
                rtol=self.tolerances.ode_rtol,
                atol=self.tolerances.ode_atol,
                dense_output=dense,
            )
            if not solution.success:
                raise IntegrationError(
                    f"integration on [{lo:g}, {hi:g}] failed for nu={nu}: {solution.message}"
                )
            w_end, wt_end = solution.y[0, -1], solution.y[1, -1]
            if not (cmath.isfinite(w_end) and cmath.isfinite(wt_end)):
                raise IntegrationError(f"overflow on [{lo:g}, {hi:g}] for nu={nu}")
            if dense:
                segments.append(Segment(lo, hi, solution.sol, offset))
            w = Scaled.from_value(w_end) * norm
            wt = Scaled.from_value(wt_end) * norm
            root = math.sqrt(end)
            states.append((end, (w * root, (w * 0.5 + wt) / root)))
        return segments, states

    def seed(self, nu: Number, r: float) -> Tuple[State, complex]:
        """Two-term origin expansion r^{ν+1/2}(1 + c r²) at r, and c."""
        nu = complex(nu)
        c = (complex(self.potential.clamped(r)) - self.k * self.k) / (4.0 * (nu + 1.0))
        return _origin_expansion(nu, c, r), c

    def _check_regular_order(self, nu: complex):
        if nu.real < 0:
            raise DomainError(f"regular solution needs Re(nu) >= 0, got {nu}")

    def regular(self, nu: Number, grid: Optional[RadialGrid] = None) -> SolutionField:
        """Regular solution φ(r, ν) on [r_min, r_max]."""
        nu = complex(nu)
        self._check_regular_order(nu)
        grid = grid or self.grid(nu)
        start, c = self.seed(nu, grid.r_min)
        edges = grid.chunk_edges(grid.r_min, grid.r_max, self.grid_config.chunk_nodes)
        segments, _ = self._integrate(nu, edges, start)
        logger.debug("regular nu=%s: %d chunks", nu, len(segments))
        return _finish(REGULAR, nu, self.k, grid, segments, c)

    def regular_states(self, nu: Number, radii: Sequence[float],
                       grid: Optional[RadialGrid] = None) -> List[State]:
        """φ and φ' at the given radii without building a dense field."""
        nu = complex(nu)
        self._check_regular_order(nu)
        grid = grid or self.grid(nu)
        start, _ = self.seed(nu, grid.r_min)
        end = max(radii)
        edges = sorted(set(grid.chunk_edges(grid.r_min, end, self.grid_config.chunk_nodes))
                       | {r for r in radii if grid.r_min < r < end})
        _, states = self._integrate(nu, edges, start, dense=False)
        lookup = dict(states)
        return [lookup[r] for r in radii]

    def jost(self, nu: Number, sign: int, grid: Optional[RadialGrid] = None) -> SolutionField:
        """Jost solution f^±(r, ν); sign is +1 or −1."""
        nu = complex(nu)
        if sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {sign}")
        grid = grid or self.grid(nu)
        kind = JOST_PLUS if sign > 0 else JOST_MINUS
        boundary = grid.jost_boundary
        if boundary <= grid.r_min:
            return _finish(kind, nu, self.k, grid)
        start = scaled_free_jost(sign, nu, boundary, self.k)
        edges = grid.chunk_edges(grid.r_min, boundary, self.grid_config.chunk_nodes)[::-1]
        segments, _ = self._integrate(nu, edges, start)
        logger.debug("jost sign=%+d nu=%s: %d chunks from r=%g", sign, nu, len(segments), boundary)
        return _finish(kind, nu, self.k, grid, segments)

    def jost_states(self, nu: Number, sign: int, radii: Sequence[float],
                    grid: Optional[RadialGrid] = None) -> List[State]:
        """f^± and its derivative at the given radii without building a dense field."""
        nu = complex(nu)
        grid = grid or self.grid(nu)
        boundary = grid.jost_boundary
        outside = {r: scaled_free_jost(sign, nu, r, self.k) for r in radii if r >= boundary}
        inside = sorted((r for r in radii if r < boundary), reverse=True)
        if inside:
            start = scaled_free_jost(sign, nu, boundary, self.k)
            edges = sorted(set(grid.chunk_edges(inside[-1], boundary, self.grid_config.chunk_nodes))
                           | set(inside), reverse=True)
            _, states = self._integrate(nu, edges, start, dense=False)
            outside.update(dict(states))
        return [outside[r] for r in radii]


def free_field(nu: Number, grid: RadialGrid, which: str = FREE_U) -> SolutionField:
    """The free solution u (``free_u``) or v (``free_v``) on a grid, in closed form."""
    if which not in (FREE_U, FREE_V):
        raise DomainError(f"free field must be '{FREE_U}' or '{FREE_V}', got {which!r}")
    return _finish(which, complex(nu), 1.0 + 0j, grid)


def solve_regular(potential: Potential, nu: Number, grid: Optional[RadialGrid] = None,
                  tolerances: Optional[ToleranceConfig] = None,
                  grid_config: Optional[GridConfig] = None, k: Number = 1.0) -> SolutionField:
    """
    Regular solution φ(r, ν) ~ r^{ν+1/2} at the origin.

    Args:
        potential: Potential q
        nu: Complex angular momentum with Re ν ≥ 0
        grid: Grid to sample on; built from the potential when omitted
        tolerances: ODE and seed tolerances
        grid_config: Grid hints used when ``grid`` is omitted
        k: Wave number

    Returns:
        SolutionField of kind ``regular``

    Raises:
        PreconditionError: when the potential fails the integrability hypotheses
    """
    return RadialSolver(potential, tolerances, grid_config, k).regular(nu, grid)


def solve_jost(potential: Potential, nu: Number, grid: Optional[RadialGrid] = None, sign: int = 1,
               tolerances: Optional[ToleranceConfig] = None,
               grid_config: Optional[GridConfig] = None, k: Number = 1.0) -> SolutionField:
    """Jost solution f^±(r, ν) ~ e^{±ikr} at infinity."""
    return RadialSolver(potential, tolerances, grid_config, k).jost(nu, sign, grid)


def scaled_wronskian(first: State, second: State) -> Scaled:
    """W = a b' − a' b of two (value, derivative) pairs."""
    return first[0] * second[1] - first[1] * second[0]


def wronskian(a: SolutionField, b: SolutionField, r: float) -> complex:
    """
    W(a, b)(r) = a b' − a' b.

    Raises:
        DomainError: when the fields belong to different ν or k
    """
    if a.nu != b.nu or a.k != b.k:
        raise DomainError(f"wronskian of fields with nu={a.nu}, k={a.k} and nu={b.nu}, k={b.k}")
    return scaled_wronskian(a.scaled_at(r), b.scaled_at(r)).value
