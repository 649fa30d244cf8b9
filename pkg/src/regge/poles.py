"""
Regge pole search: recursive bisection of a rectangle by winding number,
then Newton iteration on h = β/β₀ inside every cell that isolates one zero.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from regge.contour import ContourCounter, NormalizedJost, SearchRegion
from scattering.jost import JostSystem
from utils.errors import ContourError, ConvergenceError
from utils.logging_config import get_logger

logger = get_logger(__name__)

MAX_NEWTON_ITERATIONS = 60
DIFFERENCE_STEP = 1e-6


@dataclass(frozen=True)
class ReggePole:
    nu: complex
    newton_residual: float
    winding_cell: SearchRegion
    multiplicity: int = 1

    @property
    def is_cluster(self) -> bool:
        return self.multiplicity > 1


def newton_refine(func, start: complex, tol: float,
                  max_iterations: int = MAX_NEWTON_ITERATIONS) -> Tuple[complex, float]:
    """
    Newton iteration on a holomorphic func with a central-difference
    derivative; the difference step is 1e−6·(1 + |ν|). Iterates are kept in Re ν ≥ 0.

    Returns:
        (root, |func(root)|)

    Raises:
        ConvergenceError: no step below ``tol`` within ``max_iterations``
    """
    nu = complex(start)
    for _ in range(max_iterations):
        value = func(nu)
        step = DIFFERENCE_STEP * (1.0 + abs(nu))
        # differences along Im ν keep Re ν unchanged near the imaginary axis
        derivative = (func(nu + 1j * step) - func(nu - 1j * step)) / (2j * step)
        if derivative == 0 or not math.isfinite(abs(value / derivative)):
            raise ConvergenceError(f"Newton step undefined at nu={nu}")
        delta = value / derivative
        nu = complex(max((nu - delta).real, 0.0), (nu - delta).imag)
        if abs(delta) < tol:
            return nu, abs(func(nu))
    raise ConvergenceError(f"Newton iteration from {start} did not converge in {max_iterations} steps")


def _distinct(poles: Sequence[ReggePole], tol: float) -> List[ReggePole]:
    kept: List[ReggePole] = []
    for pole in poles:
        if all(abs(pole.nu - other.nu) > 10.0 * tol * (1.0 + abs(pole.nu)) for other in kept):
            kept.append(pole)
    return kept


class PoleFinder:
    """
    Zeros of β in rectangles of the first quadrant.

    Cells of one subdivision level are processed concurrently; each cell is
    counted exactly once and either discarded, refined, reported as a
    cluster or split in two.
    """

    def __init__(self, system: JostSystem, threads: int = 1):
        self.system = system
        self.tolerances = system.tolerances
        self.threads = threads
        self.func = NormalizedJost(system)

    def counter(self, region: SearchRegion) -> ContourCounter:
        return ContourCounter(self.func.log, max(self.tolerances.contour_margin, region.boundary_margin))

    def _process(self, cell: SearchRegion, depth: int) -> Tuple[List[ReggePole], List[Tuple[SearchRegion, int]]]:
        count, used = self.counter(cell).winding(cell)
        if count < 0:
            raise ContourError(f"negative winding {count} around {used.bounds}: h is not analytic there")
        if count == 0:
            return [], []
        if count == 1:
            try:
                root, residual = newton_refine(self.func, used.center, self.tolerances.newton_tol)
            except ConvergenceError as exc:
                logger.debug("newton failed in %s: %s", used.bounds, exc)
                root = None
            if root is not None and used.contains(root, slack=1e-9 * used.diameter):
                return [ReggePole(root, residual, used, 1)], []
        if depth >= used.max_depth:
            logger.warning("cell %s at depth %d keeps winding %d; reported as a cluster",
                           used.bounds, depth, count)
            center = used.center
            return [ReggePole(center, abs(self.func(center)), used, count)], []
        return [], [(child, depth + 1) for child in used.split()]

    def find(self, region: SearchRegion) -> List[ReggePole]:
        """Poles inside ``region`` sorted by |ν|."""
        level = [(region, 0)]
        found: List[ReggePole] = []
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            while level:
                results = list(pool.map(lambda item: self._process(*item), level))
                found.extend(pole for poles, _ in results for pole in poles)
                level = [child for _, children in results for child in children]
        poles = sorted(_distinct(found, self.tolerances.newton_tol), key=lambda p: abs(p.nu))
        logger.info("%d poles in %s (%d h evaluations)", len(poles), region.bounds, self.func.evaluations)
        return poles


def find_poles(potential: Potential, region: SearchRegion,
               tolerances: Optional[ToleranceConfig] = None,
               grid_config: Optional[GridConfig] = None,
               threads: int = 1) -> List[ReggePole]:
    """
    Regge poles of a potential inside a rectangle.

    Args:
        potential: Potential q
        region: Search rectangle in the first quadrant
        tolerances: ``newton_tol`` and ``contour_margin`` are used
        grid_config: Grid hints
        threads: Worker threads per subdivision level

    Returns:
        Poles sorted by |ν|; cells that stay multiply wound at max depth
        appear once with their multiplicity
    """
    return PoleFinder(JostSystem(potential, tolerances, grid_config), threads).find(region)


def poles_within(poles: Sequence[ReggePole], radius: float) -> int:
    return sum(1 for pole in poles if abs(pole.nu) <= radius)


@dataclass(frozen=True)
class StripReport:
    """Running maximum of Re(ν e^{i(π/2−b)}) over poles, row by row upward."""
    rows: Tuple[Tuple[float, int, float], ...]
    angle: float

    @property
    def running_maximum(self) -> List[float]:
        return [row[2] for row in self.rows]

    @property
    def bounded(self) -> bool:
        """No growth of the running maximum beyond the first third of the rows."""
        values = self.running_maximum
        if not values:
            return True
        settle = max(0, len(values) // 3 - 1)
        return values[-1] <= values[settle] + 1e-9


def strip_check_analytic(potential: Potential, region: SearchRegion, rows: int = 5,
                         b: float = 0.5 * math.pi,
                         tolerances: Optional[ToleranceConfig] = None,
                         grid_config: Optional[GridConfig] = None,
                         threads: int = 1) -> StripReport:
    """
    Scan a tall rectangle in horizontal rows and record, after each row, the
    largest Re(ν e^{i(π/2−b)}) over all poles found so far.

    Diagnostic only: the strip abscissa is not known in advance.
    """
    finder = PoleFinder(JostSystem(potential, tolerances, grid_config), threads)
    rotation = complex(math.cos(0.5 * math.pi - b), math.sin(0.5 * math.pi - b))
    height = (region.im_hi - region.im_lo) / rows
    running = -math.inf
    table = []
    for i in range(rows):
        band = region.with_bounds(region.re_lo, region.re_hi,
                                  region.im_lo + i * height, region.im_lo + (i + 1) * height)
        poles = finder.find(band)
        for pole in poles:
            running = max(running, (pole.nu * rotation).real)
        table.append((band.im_hi, len(poles), running))
    report = StripReport(tuple(table), b)
    logger.info("strip check over %s: running maxima %s", region.bounds, report.running_maximum)
    return report
