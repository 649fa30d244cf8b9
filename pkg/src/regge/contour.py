"""
Argument-principle zero counting
================================

Zeros of β(ν) in a rectangle of the first quadrant are counted as the
winding number of h(ν) = β(ν)/β₀(ν) around the rectangle. β₀ never
vanishes, so h has the zeros of β, and unlike β it stays of order one
where the free part dominates.

Each side is sampled adaptively: a step is bisected until the phase of h
changes by less than π/2 across it, which makes the unwrapped phase
unambiguous without derivatives of h.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from scattering.jost import JostSystem
from specfun.free import free_jost_functions
from specfun.scaled import Number, Scaled
from utils.errors import ContourError, DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

MAX_PHASE_STEP = 0.5 * math.pi
INITIAL_SAMPLES = 8
MAX_BISECTIONS = 30
MAX_PERTURBATIONS = 4
PERTURBATION = 1e-3


@dataclass(frozen=True)
class SearchRegion:
    """Rectangle [re_lo, re_hi] × [im_lo, im_hi] in the closed first quadrant."""
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    max_depth: int = 8
    boundary_margin: float = 1e-6

    def __post_init__(self):
        if self.re_lo < 0 or self.im_lo < 0:
            raise DomainError(f"search region must lie in the first quadrant, got {self.bounds}")
        if not (self.re_hi > self.re_lo and self.im_hi > self.im_lo):
            raise DomainError(f"search region is empty: {self.bounds}")
        if self.max_depth < 0:
            raise DomainError(f"max_depth must be non-negative, got {self.max_depth}")

    @classmethod
    def from_bounds(cls, bounds: Sequence[float], **options) -> "SearchRegion":
        if len(bounds) != 4:
            raise DomainError(f"region needs [re_lo, re_hi, im_lo, im_hi], got {list(bounds)}")
        return cls(*(float(b) for b in bounds), **options)

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        return self.re_lo, self.re_hi, self.im_lo, self.im_hi

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    @property
    def corners(self) -> Tuple[complex, complex, complex, complex]:
        """Counterclockwise from the lower-left corner."""
        return (complex(self.re_lo, self.im_lo), complex(self.re_hi, self.im_lo),
                complex(self.re_hi, self.im_hi), complex(self.re_lo, self.im_hi))

    @property
    def diameter(self) -> float:
        return math.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def contains(self, nu: complex, slack: float = 0.0) -> bool:
        return (self.re_lo - slack <= nu.real <= self.re_hi + slack
                and self.im_lo - slack <= nu.imag <= self.im_hi + slack)

    def with_bounds(self, re_lo: float, re_hi: float, im_lo: float, im_hi: float) -> "SearchRegion":
        return SearchRegion(re_lo, re_hi, im_lo, im_hi, self.max_depth, self.boundary_margin)

    def split(self) -> List["SearchRegion"]:
        """Two halves across the longer side."""
        if self.re_hi - self.re_lo >= self.im_hi - self.im_lo:
            middle = 0.5 * (self.re_lo + self.re_hi)
            return [self.with_bounds(self.re_lo, middle, self.im_lo, self.im_hi),
                    self.with_bounds(middle, self.re_hi, self.im_lo, self.im_hi)]
        middle = 0.5 * (self.im_lo + self.im_hi)
        return [self.with_bounds(self.re_lo, self.re_hi, self.im_lo, middle),
                self.with_bounds(self.re_lo, self.re_hi, middle, self.im_hi)]

    def perturbed(self, attempt: int) -> "SearchRegion":
        """
        The rectangle with every side moved by a small offset.

        Sides on the coordinate axes move inward, all others outward, and
        the offset grows with ``attempt``.
        """
        step = PERTURBATION * (attempt + 1) * self.diameter
        re_lo = self.re_lo + step if self.re_lo == 0 else self.re_lo - step
        im_lo = self.im_lo + step if self.im_lo == 0 else self.im_lo - step
        return self.with_bounds(max(re_lo, 0.0), self.re_hi + step, max(im_lo, 0.0), self.im_hi + step)


class NormalizedJost:
    """
    h(ν) = β(ν)/β₀(ν) (or α/α₀) of one potential, kept as log h in a
    thread-safe cache so that very large |h| never overflows.

    Contour sides shared by neighbouring cells are sampled at the same
    points, so the cache removes most repeated Jost evaluations.
    """

    def __init__(self, system: JostSystem, which: str = "beta"):
        if which not in ("beta", "alpha"):
            raise DomainError(f"normalized Jost function must be 'beta' or 'alpha', got {which!r}")
        self.system = system
        self.which = which
        self._cache: Dict[complex, complex] = {}
        self._lock = threading.Lock()

    def log(self, nu: Number) -> complex:
        nu = complex(nu)
        key = complex(round(nu.real, 12), round(nu.imag, 12))
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        free = free_jost_functions(nu)
        if self.which == "beta":
            value = self.system.beta(nu).log() - free.log_beta0
        else:
            value = self.system.evaluate(nu).log_alpha - free.log_alpha0
        with self._lock:
            self._cache[key] = value
        return value

    def __call__(self, nu: Number) -> complex:
        return Scaled.from_log(self.log(nu)).value

    @property
    def evaluations(self) -> int:
        return len(self._cache)


def normalized_beta(potential: Potential, nu: Number,
                    tolerances: Optional[ToleranceConfig] = None,
                    grid_config: Optional[GridConfig] = None) -> complex:
    """h(ν) = β(ν)/β₀(ν); equals 1 for the zero potential."""
    return JostSystem(potential, tolerances, grid_config).normalized_beta(nu)


def normalized_alpha(potential: Potential, nu: Number,
                     tolerances: Optional[ToleranceConfig] = None,
                     grid_config: Optional[GridConfig] = None) -> complex:
    """α(ν)/α₀(ν)."""
    return JostSystem(potential, tolerances, grid_config).evaluate(nu).normalized_alpha


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


class _ContourHit(Exception):
    def __init__(self, nu: complex, log_value: complex):
        super().__init__(f"log|h|={log_value.real:.3g} at nu={nu}")
        self.nu = nu


class ContourCounter:
    """Winding numbers around rectangles of a function given through its logarithm."""

    def __init__(self, log_func: Callable[[complex], complex], margin: float = 1e-6):
        self.log_func = log_func
        self.log_margin = math.log(margin)

    def _log_value(self, nu: complex) -> complex:
        value = self.log_func(nu)
        if math.isnan(value.real) or math.isnan(value.imag) or value.real == math.inf:
            raise ContourError(f"non-finite function value at nu={nu}")
        if value.real < self.log_margin:
            raise _ContourHit(nu, value)
        return value

    def _side_phase(self, start: complex, end: complex) -> float:
        """Continuous phase change of the function along the segment start → end."""
        total = 0.0
        points = [start + (end - start) * j / INITIAL_SAMPLES for j in range(INITIAL_SAMPLES + 1)]
        stack = [(points[j], points[j + 1], 0) for j in range(INITIAL_SAMPLES - 1, -1, -1)]
        while stack:
            a, b, depth = stack.pop()
            step = _wrap((self._log_value(b) - self._log_value(a)).imag)
            if abs(step) < MAX_PHASE_STEP:
                total += step
                continue
            if depth >= MAX_BISECTIONS:
                raise ContourError(f"phase of h does not resolve between {a} and {b}")
            middle = 0.5 * (a + b)
            stack.append((middle, b, depth + 1))
            stack.append((a, middle, depth + 1))
        return total

    def _winding(self, region: SearchRegion) -> int:
        corners = region.corners
        total = sum(self._side_phase(corners[j], corners[(j + 1) % 4]) for j in range(4))
        turns = total / (2.0 * math.pi)
        count = int(round(turns))
        if abs(turns - count) > 1e-6:
            raise ContourError(f"phase change {total:.6g} around {region.bounds} is not a multiple of 2pi")
        return count

    def winding(self, region: SearchRegion) -> Tuple[int, SearchRegion]:
        """
        Winding number around ``region``, or around a slightly perturbed
        copy when the contour passes within the margin of a zero.

        Returns:
            (count, the rectangle actually used)

        Raises:
            ContourError: every perturbation still meets a zero
        """
        current = region
        for attempt in range(MAX_PERTURBATIONS + 1):
            try:
                return self._winding(current), current
            except _ContourHit as hit:
                logger.warning("contour %s passes a zero near %s; perturbing", current.bounds, hit.nu)
                current = region.perturbed(attempt)
        raise ContourError(f"contour around {region.bounds} meets a zero after "
                           f"{MAX_PERTURBATIONS} perturbations")


def count_zeros(potential: Potential, region: SearchRegion,
                tolerances: Optional[ToleranceConfig] = None,
                grid_config: Optional[GridConfig] = None,
                which: str = "beta") -> int:
    """
    Number of zeros of β (or α) inside ``region``.

    Args:
        potential: Potential q
        region: Search rectangle in the first quadrant
        tolerances: ``contour_margin`` is the |h| threshold for a contour hit
        grid_config: Grid hints
        which: ``beta`` for Regge poles, ``alpha`` for the mirrored check

    Returns:
        Winding number of the normalized Jost function
    """
    tolerances = tolerances or ToleranceConfig()
    func = NormalizedJost(JostSystem(potential, tolerances, grid_config), which)
    count, _ = ContourCounter(func.log, max(tolerances.contour_margin, region.boundary_margin)).winding(region)
    logger.info("%d zeros of %s in %s (%d evaluations)", count, which, region.bounds, func.evaluations)
    return count
