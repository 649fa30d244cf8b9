"""
Complex scaling
===============

With q_θ(r) = e^{2θ} q(e^θ r) the regular and Jost solutions of q at k = 1
are dilations of those of q_θ at k = e^θ, which gives

    β(ν; 1, q) = e^{(ν−1/2)θ} β(ν; e^θ, q_θ).

Only potentials that continue analytically into a sector admit non-real θ.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.settings import GridConfig, ToleranceConfig
from potentials.models import Potential, scale
from scattering.jost import JostSystem
from specfun.scaled import Number
from utils.errors import DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

MAX_THETA = 0.3


def scaled_beta(potential: Potential, nu: Number, theta: Number,
                tolerances: Optional[ToleranceConfig] = None,
                grid_config: Optional[GridConfig] = None) -> complex:
    """
    log β(ν; 1, q) computed at energy e^{2θ} from q_θ.

    Args:
        potential: Base potential; must be analytic when Im θ ≠ 0
        nu: Complex angular momentum
        theta: Scaling parameter, |θ| ≤ 0.3
        tolerances: Solver tolerances
        grid_config: Grid hints

    Returns:
        (ν − 1/2)θ + log β(ν; e^θ, q_θ)

    Raises:
        HypothesisError: complex θ for a non-analytic potential
    """
    theta = complex(theta)
    nu = complex(nu)
    if abs(theta) > MAX_THETA:
        raise DomainError(f"|theta| must not exceed {MAX_THETA}, got {abs(theta):.3g}")
    scaled = scale(potential, theta)
    system = JostSystem(scaled, tolerances, grid_config, k=cmath.exp(theta))
    return (nu - 0.5) * theta + system.beta(nu).log()


@dataclass(frozen=True)
class ScalingCheck:
    nu: complex
    theta: complex
    log_direct: complex
    log_scaled: complex

    @property
    def residual(self) -> float:
        return abs(complex(np.expm1(self.log_scaled - self.log_direct)))


def scaling_check(potential: Potential, nu: Number, theta: Number,
                  tolerances: Optional[ToleranceConfig] = None,
                  grid_config: Optional[GridConfig] = None) -> ScalingCheck:
    """Both sides of the scaling identity; ``residual`` is their relative difference."""
    nu = complex(nu)
    direct = JostSystem(potential, tolerances, grid_config).beta(nu).log()
    scaled = scaled_beta(potential, nu, theta, tolerances, grid_config)
    check = ScalingCheck(nu, complex(theta), direct, scaled)
    logger.debug("scaling nu=%s theta=%s: residual %.3g", nu, theta, check.residual)
    return check
