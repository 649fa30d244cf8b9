"""
Asymptotic location of Regge poles for compactly supported potentials
=====================================================================

When q has a jump q(a−0) ≠ 0 at the edge of its support, for large |ν|

    β/β₀ ≈ 1 − (2iπ / ((ν+1) Γ²(ν+1))) (a/2)^{2ν+2} q(a−0).

Its zeros with index p solve z log z = α_p with

    A   = 1 + log(a/2)
    α_p = (log q(a−0) + i(2p + 1/2)π) / (2e^A)
    z_p = exp(W(α_p)),   ν_p = e^A z_p − 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential
from scattering.jost import JostSystem
from specfun.free import free_jost_functions
from specfun.gamma import log_gamma
from specfun.lambert import lambert_residual, lambert_w0
from specfun.scaled import Number, Scaled
from utils.errors import DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PolePrediction:
    index: int
    nu_predicted: complex
    lambert_residual: float

    @property
    def real_ratio(self) -> float:
        """Re ν_p / (pπ²/(2 log²p))."""
        p = self.index
        return self.nu_predicted.real / (p * math.pi ** 2 / (2.0 * math.log(p) ** 2))

    @property
    def imag_ratio(self) -> float:
        """Im ν_p / (pπ/log p)."""
        p = self.index
        return self.nu_predicted.imag / (p * math.pi / math.log(p))

    @property
    def concentration(self) -> float:
        return self.nu_predicted.imag / self.nu_predicted.real


def predict_poles_compact(a: float, q_edge: float, p_range: Iterable[int]) -> List[PolePrediction]:
    """
    Predicted Regge poles ν_p of a potential supported in [0, a].

    Args:
        a: Support radius
        q_edge: q(a−0), non-zero
        p_range: Pole indices p ≥ 1

    Returns:
        One PolePrediction per index; its Lambert residual is relative to max(1, |α_p|)
    """
    if not a > 0:
        raise DomainError(f"support radius must be positive, got {a}")
    if q_edge == 0:
        raise DomainError("the pole predictor needs q(a-0) != 0")
    big_a = 1.0 + math.log(a / 2.0)
    scale = math.exp(big_a)
    log_edge = cmath.log(complex(q_edge))
    predictions = []
    for p in p_range:
        if p < 1:
            raise DomainError(f"pole index must be at least 1, got {p}")
        alpha = (log_edge + 1j * (2 * p + 0.5) * math.pi) / (2.0 * scale)
        w = lambert_w0(alpha)
        predictions.append(PolePrediction(p, scale * cmath.exp(w) - 1.0, lambert_residual(w, alpha)))
    return predictions


def edge_leading_term(a: float, q_edge: float, nu: Number) -> Scaled:
    """−(2iπ / ((ν+1)Γ²(ν+1))) (a/2)^{2ν+2} q(a−0), log-scaled."""
    nu = complex(nu)
    log_size = ((2.0 * nu + 2.0) * math.log(a / 2.0) - cmath.log(nu + 1.0)
                - 2.0 * log_gamma(nu + 1.0))
    return Scaled.from_log(log_size) * (-2j * math.pi * q_edge)


@dataclass(frozen=True)
class EdgeFormulaReport:
    nu: complex
    computed: complex
    leading: complex

    @property
    def ratio(self) -> complex:
        if self.leading == 0:
            return complex(math.nan, math.nan)
        return self.computed / self.leading

    @property
    def phase_gap(self) -> float:
        """|arg((h − 1)/leading term)|."""
        return abs(cmath.phase(self.ratio)) if self.leading != 0 else math.nan


def edge_formula_check(potential: Potential, nu: Number,
                       tolerances: Optional[ToleranceConfig] = None,
                       grid_config: Optional[GridConfig] = None,
                       system: Optional[JostSystem] = None) -> EdgeFormulaReport:
    """
    Compare the computed h(ν) − 1 with the leading edge term.

    Args:
        potential: Compactly supported potential
        nu: Order with |ν| in [10, 40], typically near arg ν = π/2 − 0.05
        tolerances: Solver tolerances
        grid_config: Grid hints
        system: Jost system to reuse

    Returns:
        EdgeFormulaReport; ``ratio`` is (h − 1)/leading term
    """
    nu = complex(nu)
    if not 10.0 <= abs(nu) <= 40.0:
        raise DomainError(f"edge formula check needs 10 <= |nu| <= 40, got {abs(nu):.3g}")
    a = potential.support_radius
    if a is None:
        raise DomainError(f"{potential.kind} potential is not compactly supported")
    system = system or JostSystem(potential, tolerances, grid_config)
    h = Scaled.from_log(system.beta(nu).log() - free_jost_functions(nu).log_beta0)
    computed = (h - 1.0).value
    leading = edge_leading_term(a, potential.edge_value(), nu).value if a > 0 else 0j
    report = EdgeFormulaReport(nu, computed, leading)
    logger.info("edge formula nu=%s: h-1=%.4g%+.4gj leading=%.4g%+.4gj", nu, computed.real,
                computed.imag, leading.real, leading.imag)
    return report
