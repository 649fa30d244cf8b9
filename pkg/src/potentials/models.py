"""
Radial potential models
=======================

Every model evaluates q(r) on scalars or numpy arrays and carries the
metadata the solvers and hypothesis checks rely on:

- support_radius: a with q ≡ 0 on [a, ∞), or None for non-compact models
  (0.0 for the zero potential)
- decay_exponent: ρ with |q(r)| ≤ C r^{−ρ} at infinity (inf for compact or
  exponentially decaying models)
- analytic: q extends analytically to Re z ≥ 0 (required for complex scaling)
- singularity_exponent: s with |q(r)| ~ r^{−s} at the origin
- breakpoints: radii where q or its low derivatives jump; solvers restart there
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import integrate
from scipy.interpolate import PchipInterpolator

from utils.errors import DomainError, HypothesisError

_SMOOTH_START = 0.8


class Potential(ABC):
    """Radial potential q(r)."""

    kind: str = "abstract"

    @abstractmethod
    def evaluate(self, r):
        """q(r) for r > 0 (scalar or array)."""

    def __call__(self, r):
        return self.evaluate(r)

    def clamped(self, r: float):
        """q(r), held at its value at domain_min below that radius."""
        return self.evaluate(max(r, self.domain_min))

    @property
    def support_radius(self) -> Optional[float]:
        return None

    @property
    def decay_exponent(self) -> float:
        return math.inf

    @property
    def analytic(self) -> bool:
        return False

    @property
    def singularity_exponent(self) -> float:
        return 0.0

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return ()

    @property
    def domain_min(self) -> float:
        return 0.0

    @property
    def is_real(self) -> bool:
        """q takes real values on the positive axis."""
        return True

    @property
    def is_compact(self) -> bool:
        return self.support_radius is not None

    def edge_value(self) -> float:
        """q(a−0) at the support radius a."""
        a = self.support_radius
        if not a:
            raise DomainError(f"{self.kind} potential has no support edge")
        return float(np.real(self.evaluate(np.nextafter(a, 0.0))))

    def tail_integral(self, radius: float) -> float:
        """∫_radius^∞ |q(r)| dr."""
        a = self.support_radius
        if a is not None:
            if radius >= a:
                return 0.0
            points = [b for b in self.breakpoints if radius < b < a] or None
            value, _ = integrate.quad(lambda r: abs(self.evaluate(r)), radius, a,
                                      points=points, limit=200)
            return value
        value, _ = integrate.quad(lambda r: abs(self.evaluate(r)), radius, np.inf, limit=200)
        return value

    @abstractmethod
    def to_mapping(self) -> Dict:
        """Config mapping that rebuilds this potential."""


@dataclass(frozen=True)
class ZeroPotential(Potential):
    kind = "zero"

    def evaluate(self, r):
        return np.zeros_like(np.asarray(r, dtype=float)) if np.ndim(r) else 0.0

    @property
    def support_radius(self) -> Optional[float]:
        return 0.0

    @property
    def analytic(self) -> bool:
        return True

    def edge_value(self) -> float:
        return 0.0

    def tail_integral(self, radius: float) -> float:
        return 0.0

    def to_mapping(self) -> Dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class SquareWell(Potential):
    """q = q0 on (0, a), 0 beyond."""
    q0: float
    a: float
    kind = "square_well"

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"square well radius must be positive, got {self.a}")

    def evaluate(self, r):
        return np.where(np.asarray(r) < self.a, self.q0, 0.0) if np.ndim(r) else (
            float(self.q0) if r < self.a else 0.0)

    @property
    def support_radius(self) -> Optional[float]:
        return float(self.a)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (float(self.a),)

    def edge_value(self) -> float:
        return float(self.q0)

    def tail_integral(self, radius: float) -> float:
        return abs(self.q0) * max(self.a - radius, 0.0)

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "q0": self.q0, "a": self.a}


def _smoothstep(s):
    """C² ramp from 0 at s = 0 to 1 at s = 1."""
    return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)


@dataclass(frozen=True)
class SmoothCompact(Potential):
    """
    q(r) = P(r)·χ(r/a) with P a polynomial and χ a C² cutoff.

    χ ≡ 1 on [0, 0.8] and falls to ``edge`` at 1; edge ≠ 0 gives a jump
    q(a−0) = P(a)·edge at the support radius.
    """
    coefficients: Tuple[float, ...]
    a: float
    edge: float = 0.0
    kind = "smooth_compact"

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"support radius must be positive, got {self.a}")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    def _cutoff(self, t):
        s = np.clip((t - _SMOOTH_START) / (1.0 - _SMOOTH_START), 0.0, 1.0)
        chi = 1.0 - (1.0 - self.edge) * _smoothstep(s)
        return np.where(t < 1.0, chi, 0.0)

    def evaluate(self, r):
        r_arr = np.asarray(r, dtype=float)
        values = np.polynomial.polynomial.polyval(r_arr, self.coefficients) * self._cutoff(r_arr / self.a)
        return values if np.ndim(r) else float(values)

    @property
    def support_radius(self) -> Optional[float]:
        return float(self.a)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (_SMOOTH_START * self.a, float(self.a))

    def edge_value(self) -> float:
        return float(np.polynomial.polynomial.polyval(self.a, self.coefficients) * self.edge)

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "coefficients": list(self.coefficients), "a": self.a,
                "edge": self.edge}


@dataclass(frozen=True)
class AnalyticDecay(Potential):
    """q(r) = amplitude · e^{−cr} (1+r)^{−p}; evaluates at complex r as well."""
    amplitude: float = 1.0
    c: float = 1.0
    p: float = 2.0
    kind = "analytic_decay"

    def __post_init__(self):
        if self.c < 0:
            raise DomainError(f"decay rate c must be non-negative, got {self.c}")

    def evaluate(self, r):
        r_arr = np.asarray(r)
        values = self.amplitude * np.exp(-self.c * r_arr) * np.power(1.0 + r_arr, -self.p)
        if np.ndim(r):
            return values
        return complex(values) if np.iscomplexobj(values) else float(values)

    @property
    def decay_exponent(self) -> float:
        return math.inf if self.c > 0 else float(self.p)

    @property
    def analytic(self) -> bool:
        return True

    def tail_integral(self, radius: float) -> float:
        amp = abs(self.amplitude)
        if self.c > 0 and self.p >= 0:
            return amp * math.exp(-self.c * radius) * (1.0 + radius) ** -self.p / self.c
        if self.c == 0:
            if self.p <= 1:
                return math.inf
            return amp * (1.0 + radius) ** (1.0 - self.p) / (self.p - 1.0)
        return super().tail_integral(radius)

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "amplitude": self.amplitude, "c": self.c, "p": self.p}


@dataclass(frozen=True)
class SumPotential(Potential):
    terms: Tuple[Potential, ...]
    kind = "sum"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def evaluate(self, r):
        if not self.terms:
            return ZeroPotential().evaluate(r)
        total = self.terms[0].evaluate(r)
        for term in self.terms[1:]:
            total = total + term.evaluate(r)
        return total

    @property
    def support_radius(self) -> Optional[float]:
        supports = [t.support_radius for t in self.terms]
        if any(s is None for s in supports):
            return None
        return max(supports, default=0.0)

    @property
    def decay_exponent(self) -> float:
        return min((t.decay_exponent for t in self.terms), default=math.inf)

    @property
    def analytic(self) -> bool:
        return all(t.analytic for t in self.terms)

    @property
    def is_real(self) -> bool:
        return all(t.is_real for t in self.terms)

    @property
    def singularity_exponent(self) -> float:
        return max((t.singularity_exponent for t in self.terms), default=0.0)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(sorted({b for t in self.terms for b in t.breakpoints}))

    @property
    def domain_min(self) -> float:
        return max((t.domain_min for t in self.terms), default=0.0)

    def edge_value(self) -> float:
        a = self.support_radius
        if not a:
            raise DomainError("sum potential has no support edge")
        return sum(t.edge_value() if t.support_radius == a else float(np.real(t.evaluate(a)))
                   for t in self.terms)

    def tail_integral(self, radius: float) -> float:
        # triangle inequality; exact when the terms do not overlap in sign
        return sum(t.tail_integral(radius) for t in self.terms)

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "terms": [t.to_mapping() for t in self.terms]}


@dataclass(frozen=True)
class TabulatedPotential(Potential):
    """
    Sampled potential with monotone cubic (PCHIP) interpolation.

    Vanishes beyond the last sample; evaluation below the first sample is
    an error.
    """
    radii: Tuple[float, ...]
    values: Tuple[float, ...]
    kind = "tabulated"
    _interpolant: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if radii.ndim != 1 or radii.shape != values.shape or radii.size < 2:
            raise DomainError("tabulated potential needs matching 1-d radius/value samples")
        if np.any(np.diff(radii) <= 0) or radii[0] <= 0:
            raise DomainError("tabulated radii must be positive and strictly increasing")
        object.__setattr__(self, "radii", tuple(radii))
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "_interpolant", PchipInterpolator(radii, values, extrapolate=False))

    def evaluate(self, r):
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr < self.radii[0] * (1.0 - 1e-12)):
            raise DomainError(
                f"r={float(np.min(r_arr)):g} below the tabulated range starting at {self.radii[0]:g}"
            )
        inside = np.clip(r_arr, self.radii[0], self.radii[-1])
        values = np.where(r_arr <= self.radii[-1], self._interpolant(inside), 0.0)
        return values if np.ndim(r) else float(values)

    @property
    def support_radius(self) -> Optional[float]:
        return float(self.radii[-1])

    @property
    def singularity_exponent(self) -> float:
        q0, q1 = abs(self.values[0]), abs(self.values[1])
        if q0 == 0 or q1 == 0:
            return 0.0
        return max(0.0, -math.log(q1 / q0) / math.log(self.radii[1] / self.radii[0]))

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (float(self.radii[-1]),)

    @property
    def domain_min(self) -> float:
        return float(self.radii[0])

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "r": list(self.radii), "q": list(self.values)}


@dataclass(frozen=True)
class ScaledPotential(Potential):
    """q_θ(r) = e^{2θ} q(e^θ r)."""
    base: Potential
    theta: complex
    kind = "scaled"

    def __post_init__(self):
        object.__setattr__(self, "theta", complex(self.theta))

    @property
    def _stretch(self):
        return self.theta.real if self.theta.imag == 0 else self.theta

    def evaluate(self, r):
        stretch = np.exp(self._stretch)
        values = np.exp(2.0 * self._stretch) * self.base.evaluate(stretch * np.asarray(r))
        if np.ndim(r):
            return values
        return complex(values) if np.iscomplexobj(values) else float(values)

    @property
    def support_radius(self) -> Optional[float]:
        a = self.base.support_radius
        if a is None or self.theta.imag != 0:
            return None if a is None else a
        return a * math.exp(-self.theta.real)

    @property
    def decay_exponent(self) -> float:
        return self.base.decay_exponent

    @property
    def analytic(self) -> bool:
        return self.base.analytic

    @property
    def singularity_exponent(self) -> float:
        return self.base.singularity_exponent

    @property
    def is_real(self) -> bool:
        return self.theta.imag == 0 and self.base.is_real

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        if self.theta.imag != 0:
            return ()
        return tuple(b * math.exp(-self.theta.real) for b in self.base.breakpoints)

    def tail_integral(self, radius: float) -> float:
        if self.theta.imag == 0:
            stretch = math.exp(self.theta.real)
            return stretch * self.base.tail_integral(stretch * radius)
        return super().tail_integral(radius)

    def to_mapping(self) -> Dict:
        return {"kind": self.kind, "base": self.base.to_mapping(),
                "theta": [self.theta.real, self.theta.imag]}


def scale(potential: Potential, theta) -> ScaledPotential:
    """
    Complex-scaled family member q_θ.

    Args:
        potential: Base potential
        theta: Scaling parameter; a non-real θ needs an analytic base

    Returns:
        ScaledPotential wrapper
    """
    theta = complex(theta)
    if theta.imag != 0 and not potential.analytic:
        raise HypothesisError(
            f"{potential.kind} potential is not analytic; complex theta={theta} is not admissible"
        )
    return ScaledPotential(potential, theta)
