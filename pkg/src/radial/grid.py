"""
Radial grids
============

Nodes are geometric on [r_min, 1] and uniform on [1, r_max]. Besides the
nodes a grid records the matching radius, where Wronskians are taken, and
the Jost boundary radius beyond which the Jost solutions are the free ones
(the support radius of a compact potential, or the tail-truncation radius).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from specfun.scaled import Number
from utils.errors import DomainError, SeedRadiusError, TailToleranceError
from utils.logging_config import get_logger

logger = get_logger(__name__)

MATCH_FACTORS = (1.0, 1.2, 1.5)
_SEED_LADDER = 10.0 ** -0.25


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_match: float
    r_max: float
    nodes: Tuple[float, ...]
    jost_boundary: float
    breakpoints: Tuple[float, ...] = ()

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.size < 2 or np.any(np.diff(nodes) <= 0):
            raise DomainError("grid nodes must be strictly increasing")
        if not self.r_min <= self.r_match <= self.r_max:
            raise DomainError(
                f"grid needs r_min <= r_match <= r_max, got {self.r_min}, {self.r_match}, {self.r_max}"
            )
        object.__setattr__(self, "nodes", tuple(float(r) for r in nodes))

    @property
    def match_radii(self) -> Tuple[float, ...]:
        return tuple(self.r_match * f for f in MATCH_FACTORS)

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, r: float) -> int:
        """Index of the node equal to r (to rounding)."""
        i = int(np.argmin(np.abs(np.asarray(self.nodes) - r)))
        if not math.isclose(self.nodes[i], r, rel_tol=1e-12):
            raise DomainError(f"r={r:g} is not a grid node")
        return i

    def nodes_between(self, lo: float, hi: float) -> List[float]:
        return [r for r in self.nodes if lo <= r <= hi]

    def chunk_edges(self, lo: float, hi: float, chunk_nodes: int) -> List[float]:
        """
        Restart radii for integration across [lo, hi].

        Every ``chunk_nodes``-th node, every breakpoint and every matching
        radius inside the interval is an edge, so no integration step
        straddles a jump of q.
        """
        inside = self.nodes_between(lo, hi)
        edges = {lo, hi}
        edges.update(inside[::max(1, chunk_nodes)])
        edges.update(b for b in self.breakpoints + self.match_radii if lo < b < hi)
        return sorted(edges)


def seed_radius(potential: Potential, nu: Number, seed_tol: float, floor: float,
                k: Number = 1.0, start: float = 0.1) -> float:
    """
    Largest radius on a geometric ladder where the two-term origin expansion is accurate.

    Accepts r once |q(s) − k²| s² / |2ν + 2| < seed_tol at s = r and at the
    next two rungs below it.
    """
    nu = complex(nu)
    k2 = complex(k) ** 2
    denominator = abs(2.0 * nu + 2.0)
    lower = max(floor, potential.domain_min)

    def error(s: float) -> float:
        return abs(complex(potential.clamped(s)) - k2) * s * s / denominator

    r = start
    while r >= lower:
        if all(error(r * _SEED_LADDER ** j) < seed_tol for j in range(3)
               if r * _SEED_LADDER ** j >= lower):
            return r
        r *= _SEED_LADDER
    if lower > 0 and error(lower) < seed_tol:
        return lower
    raise SeedRadiusError(
        f"no seed radius above {lower:g} meets seed_tol={seed_tol:g} for nu={nu}"
    )


def tail_radius(potential: Potential, tail_tol: float, cap: float) -> float:
    """Smallest R with ∫_R^∞ |q| < tail_tol, found by bracketing then bisection."""
    if potential.tail_integral(cap) >= tail_tol:
        raise TailToleranceError(
            f"tail integral of {potential.kind} potential exceeds {tail_tol:g} even at r={cap:g}"
        )
    hi = 1.0
    while potential.tail_integral(hi) >= tail_tol:
        hi = min(2.0 * hi, cap)
    if hi <= 1.0:
        return hi
    lo = hi / 2.0
    return optimize.brentq(lambda r: potential.tail_integral(r) - tail_tol, lo, hi, xtol=1e-6)


def _node_set(r_min: float, r_max: float, per_decade: int, uniform_step: float,
              extra: Sequence[float]) -> np.ndarray:
    knee = min(1.0, r_max)
    decades = math.log10(knee / r_min)
    count = max(2, int(math.ceil(decades * per_decade)) + 1)
    geometric = np.geomspace(r_min, knee, count)
    if r_max > 1.0:
        steps = max(1, int(math.ceil((r_max - 1.0) / uniform_step)))
        uniform = np.linspace(1.0, r_max, steps + 1)
    else:
        uniform = np.empty(0)
    nodes = np.concatenate([geometric, uniform, [r for r in extra if r_min <= r <= r_max]])
    nodes = np.unique(nodes)
    # drop near-duplicates created by merging the extra radii
    keep = np.concatenate([[True], np.diff(nodes) > 1e-12 * nodes[1:]])
    return nodes[keep]


def build_grid(potential: Potential, nu: Number, config: Optional[GridConfig] = None,
               tolerances: Optional[ToleranceConfig] = None, k: Number = 1.0) -> RadialGrid:
    """
    Grid for one angular momentum.

    Args:
        potential: Potential the solutions belong to
        nu: Complex angular momentum (sets the seed radius)
        config: Grid hints; r_match and r_max override the defaults
        tolerances: seed_tol and tail_tol
        k: Wave number

    Returns:
        RadialGrid with r_match, 1.2 r_match, 1.5 r_match and all breakpoints as nodes
    """
    config = config or GridConfig()
    tolerances = tolerances or ToleranceConfig()
    support = potential.support_radius

    if config.r_match is not None:
        r_match = float(config.r_match)
    elif support:
        r_match = float(support)
    else:
        r_match = 1.0

    if support is not None:
        boundary = float(support)
        r_max = max(boundary, MATCH_FACTORS[-1] * r_match)
    else:
        boundary = tail_radius(potential, tolerances.tail_tol, config.r_max_cap)
        r_max = max(boundary, MATCH_FACTORS[-1] * r_match)
    if config.r_max is not None:
        if config.r_max < MATCH_FACTORS[-1] * r_match:
            raise DomainError(f"r_max={config.r_max:g} is below 1.5 r_match={1.5 * r_match:g}")
        r_max = float(config.r_max)
        if support is None:
            boundary = r_max
            leftover = potential.tail_integral(r_max)
            if leftover >= tolerances.tail_tol:
                logger.warning("tail integral %.3g beyond r_max=%g exceeds tail_tol", leftover, r_max)
    if r_max > config.r_max_cap:
        raise TailToleranceError(f"r_max={r_max:g} exceeds the cap {config.r_max_cap:g}")

    r_min = seed_radius(potential, nu, tolerances.seed_tol, config.r_min_floor, k,
                        start=min(0.1, 0.1 * r_match))
    breakpoints = tuple(b for b in potential.breakpoints if r_min < b < r_max)
    extra = [r_match * f for f in MATCH_FACTORS] + list(breakpoints)
    if boundary > r_min:
        extra.append(boundary)
    nodes = _node_set(r_min, r_max, config.per_decade, config.uniform_step, extra)
    logger.debug("grid for nu=%s: r_min=%.3g r_match=%g r_max=%g nodes=%d",
                 nu, r_min, r_match, r_max, len(nodes))
    return RadialGrid(
        r_min=float(nodes[0]),
        r_match=r_match,
        r_max=float(nodes[-1]),
        nodes=tuple(nodes),
        jost_boundary=boundary,
        breakpoints=breakpoints,
    )
