"""
Jost functions
==============

    α(ν) = (i/2) W(φ, f⁻),   β(ν) = −(i/2) W(φ, f⁺),   σ(ν) = e^{iπ(ν+1/2)} α/β

Both Wronskians are taken at the matching radius and re-checked at
1.2 and 1.5 times it; the largest deviation is kept with the result.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from radial.grid import RadialGrid
from radial.solver import RadialSolver, SolutionField, scaled_wronskian
from specfun.free import free_jost_functions
from specfun.scaled import Number, Scaled
from utils.errors import PreconditionError
from utils.logging_config import get_logger

logger = get_logger(__name__)

_HALF_I = Scaled.from_value(0.5j)


@dataclass(frozen=True)
class JostData:
    nu: complex
    log_alpha: complex
    log_beta: complex
    match_radius: float
    r_independence_residual: float
    k: complex = 1.0 + 0j

    @property
    def scaled_alpha(self) -> Scaled:
        return Scaled.from_log(self.log_alpha)

    @property
    def scaled_beta(self) -> Scaled:
        return Scaled.from_log(self.log_beta)

    @property
    def alpha(self) -> complex:
        return self.scaled_alpha.value

    @property
    def beta(self) -> complex:
        return self.scaled_beta.value

    @property
    def log_sigma(self) -> complex:
        return 1j * math.pi * (self.nu + 0.5) + self.log_alpha - self.log_beta

    @property
    def sigma(self) -> complex:
        return Scaled.from_log(self.log_sigma).value

    @property
    def normalized_beta(self) -> complex:
        """h(ν) = β/β₀; same zeros as β, of order one where β₀ dominates."""
        return Scaled.from_log(self.log_beta - free_jost_functions(self.nu).log_beta0).value

    @property
    def normalized_alpha(self) -> complex:
        return Scaled.from_log(self.log_alpha - free_jost_functions(self.nu).log_alpha0).value


class JostSystem:
    """
    Jost functions of one potential at a fixed wave number.

    Dense solution fields are cached per ν so that several functionals at
    the same ν share one integration.
    """

    def __init__(self, potential: Potential, tolerances: Optional[ToleranceConfig] = None,
                 grid_config: Optional[GridConfig] = None, k: Number = 1.0):
        self.potential = potential
        self.tolerances = tolerances or ToleranceConfig()
        self.grid_config = grid_config or GridConfig()
        self.solver = RadialSolver(potential, self.tolerances, self.grid_config, k)
        self._regular: Dict[complex, SolutionField] = {}
        self._fields: Dict[complex, Tuple[SolutionField, SolutionField, SolutionField]] = {}
        self._lock = threading.Lock()

    @property
    def k(self) -> complex:
        return self.solver.k

    def grid(self, nu: Number) -> RadialGrid:
        return self.solver.grid(nu)

    def regular(self, nu: Number) -> SolutionField:
        nu = complex(nu)
        with self._lock:
            if nu in self._regular:
                return self._regular[nu]
        field = self.solver.regular(nu, self.grid(nu))
        with self._lock:
            return self._regular.setdefault(nu, field)

    def fields(self, nu: Number) -> Tuple[SolutionField, SolutionField, SolutionField]:
        """(φ, f⁺, f⁻) on a common grid."""
        nu = complex(nu)
        with self._lock:
            if nu in self._fields:
                return self._fields[nu]
        regular = self.regular(nu)
        grid = regular.grid
        fields = (regular, self.solver.jost(nu, 1, grid), self.solver.jost(nu, -1, grid))
        with self._lock:
            return self._fields.setdefault(nu, fields)

    def evaluate(self, nu: Number, grid: Optional[RadialGrid] = None) -> JostData:
        """
        α(ν) and β(ν) with the matching-radius check.

        Args:
            nu: Complex angular momentum, Re ν ≥ 0
            grid: Grid to match on; built from the potential when omitted

        Returns:
            JostData
        """
        nu = complex(nu)
        grid = grid or self.grid(nu)
        radii = grid.match_radii
        regular = self.solver.regular_states(nu, radii, grid)
        plus = self.solver.jost_states(nu, 1, radii, grid)
        minus = self.solver.jost_states(nu, -1, radii, grid)
        alphas = [_HALF_I * scaled_wronskian(p, m) for p, m in zip(regular, minus)]
        betas = [-_HALF_I * scaled_wronskian(p, f) for p, f in zip(regular, plus)]
        size = max(alphas[0].log_abs(), betas[0].log_abs())
        deviation = max(
            max((a - alphas[0]).log_abs(), (b - betas[0]).log_abs())
            for a, b in zip(alphas[1:], betas[1:])
        )
        residual = math.exp(deviation - size) if math.isfinite(deviation) else 0.0
        if residual > self.tolerances.r_independence_tol:
            logger.warning("matching-radius deviation %.3g for nu=%s exceeds %.1g",
                           residual, nu, self.tolerances.r_independence_tol)
        return JostData(nu, alphas[0].log(), betas[0].log(), grid.r_match, residual, self.k)

    def beta(self, nu: Number) -> Scaled:
        """β(ν) alone, matched at r_match only."""
        nu = complex(nu)
        grid = self.grid(nu)
        (regular,) = self.solver.regular_states(nu, [grid.r_match], grid)
        (plus,) = self.solver.jost_states(nu, 1, [grid.r_match], grid)
        return -_HALF_I * scaled_wronskian(regular, plus)

    def normalized_beta(self, nu: Number) -> complex:
        nu = complex(nu)
        return Scaled.from_log(self.beta(nu).log() - free_jost_functions(nu).log_beta0).value

    def sigma(self, nu: Number, grid: Optional[RadialGrid] = None) -> complex:
        """Regge interpolation σ(ν); refuses to evaluate next to a Regge pole."""
        data = self.evaluate(nu, grid)
        h = abs(data.normalized_beta) if data.k == 1 else abs(data.beta)
        if h < self.tolerances.near_pole:
            raise PreconditionError(f"|beta/beta0|={h:.3g} at nu={data.nu}: too close to a Regge pole")
        return data.sigma


def jost_functions(potential: Potential, nu: Number, grid: Optional[RadialGrid] = None,
                   tolerances: Optional[ToleranceConfig] = None,
                   grid_config: Optional[GridConfig] = None) -> JostData:
    """α(ν), β(ν) of a potential; see :meth:`JostSystem.evaluate`."""
    return JostSystem(potential, tolerances, grid_config).evaluate(nu, grid)


def regge_sigma(potential: Potential, nu: Number, grid: Optional[RadialGrid] = None,
                tolerances: Optional[ToleranceConfig] = None,
                grid_config: Optional[GridConfig] = None) -> complex:
    """σ(ν) = e^{iπ(ν+1/2)} α(ν)/β(ν)."""
    return JostSystem(potential, tolerances, grid_config).sigma(nu, grid)
