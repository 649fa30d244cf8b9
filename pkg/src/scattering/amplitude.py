"""
Scattering amplitude in three dimensions from the phase shifts:

    A(θ) = −(1/π²) Σ_l (2l+1) ((e^{2iδ_l} − 1)/2i) P_l(cos θ)

(e^{2iδ} − 1)/2i is formed as e^{iδ} sin δ, exact for tiny δ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from potentials.models import Potential
from scattering.jost import JostSystem
from scattering.phase import PhaseShiftTracker, physical_order
from utils.errors import DomainError
from utils.logging_config import get_logger

logger = get_logger(__name__)

_PREFACTOR = -1.0 / math.pi ** 2


@dataclass(frozen=True)
class AmplitudeResult:
    theta: float
    value: complex
    l_max: int
    tail_estimate: float


def legendre_table(l_max: int, x: float) -> np.ndarray:
    """P_0(x) .. P_{l_max}(x) by the three-term recurrence."""
    if l_max < 0:
        raise DomainError(f"l_max must be non-negative, got {l_max}")
    values = np.empty(l_max + 1)
    values[0] = 1.0
    if l_max >= 1:
        values[1] = x
    for l in range(1, l_max):
        values[l + 1] = ((2 * l + 1) * x * values[l] - l * values[l - 1]) / (l + 1)
    return values


def partial_wave_terms(deltas: Sequence[float], theta: float) -> np.ndarray:
    """(2l+1) e^{iδ_l} sin δ_l P_l(cos θ) for l = 0 .. len(deltas) − 1."""
    deltas = np.asarray(deltas, dtype=float)
    l = np.arange(deltas.size)
    legendre = legendre_table(deltas.size - 1, math.cos(theta))
    return (2 * l + 1) * np.exp(1j * deltas) * np.sin(deltas) * legendre


def tail_estimate(deltas: Sequence[float]) -> float:
    """
    Bound on the omitted terms l > l_max, assuming |δ_l| keeps decaying at
    the ratio of its last two values and |P_l| ≤ 1.
    """
    magnitudes = np.abs(np.asarray(deltas, dtype=float))
    if magnitudes.size < 2 or magnitudes[-1] == 0:
        return 0.0
    if magnitudes[-2] == 0:
        return math.inf
    ratio = magnitudes[-1] / magnitudes[-2]
    if ratio >= 1.0:
        return math.inf
    l_max = magnitudes.size - 1
    # Σ_{j≥1} (2(l_max+j)+1) ρ^j |δ_{l_max}|, summed in closed form
    first = (2 * l_max + 1) * ratio / (1.0 - ratio)
    second = 2.0 * ratio / (1.0 - ratio) ** 2
    return abs(_PREFACTOR) * magnitudes[-1] * (first + second)


def amplitude_from_phase_shifts(deltas: Sequence[float], theta: float) -> AmplitudeResult:
    terms = partial_wave_terms(deltas, theta)
    value = _PREFACTOR * complex(math.fsum(terms.real), math.fsum(terms.imag))
    return AmplitudeResult(float(theta), value, len(deltas) - 1, tail_estimate(deltas))


def phase_shift_table(potential: Potential, l_max: int,
                      system: Optional[JostSystem] = None) -> List[float]:
    """δ_0 .. δ_{l_max} for n = 3, sharing one tracker."""
    tracker = PhaseShiftTracker(system or JostSystem(potential))
    return [tracker.phase_shift(physical_order(l, 3), l).value for l in range(l_max + 1)]


def amplitude_n3(potential: Potential, theta: float, l_max: int,
                 system: Optional[JostSystem] = None,
                 deltas: Optional[Sequence[float]] = None) -> AmplitudeResult:
    """
    Partial-wave sum of the scattering amplitude at angle θ.

    Args:
        potential: Real potential
        theta: Scattering angle in radians
        l_max: Last partial wave included
        system: Jost system to reuse
        deltas: Precomputed δ_0 .. δ_{l_max}

    Returns:
        AmplitudeResult with the truncation tail estimate
    """
    if deltas is None:
        deltas = phase_shift_table(potential, l_max, system)
    elif len(deltas) != l_max + 1:
        raise DomainError(f"expected {l_max + 1} phase shifts, got {len(deltas)}")
    result = amplitude_from_phase_shifts(deltas, theta)
    logger.debug("amplitude theta=%g l_max=%d: %s (tail %.3g)", theta, l_max, result.value,
                 result.tail_estimate)
    return result
