"""Integrability checks on a potential before it is handed to the solvers."""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

from scipy import integrate

from potentials.models import Potential, SumPotential
from utils.errors import PreconditionError
from utils.logging_config import get_logger

logger = get_logger(__name__)

MAX_DECADES = 12
# Consecutive decade contributions whose ratio stays above this are treated as divergent.
DIVERGENT_RATIO = 0.999


@dataclass
class HypothesisReport:
    eps: float
    delta: float
    h1_integral: float
    h1_finite: bool
    h2_integral: float
    h2_finite: bool
    moment_integral: float
    moment_finite: bool
    in_class_a: bool
    in_class_c: bool
    notes: List[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return self.h1_finite and self.h2_finite


def _decade_sum(func: Callable[[float], float], edges: Sequence[float],
                breakpoints: Sequence[float]) -> float:
    """
    Sum ∫ func over consecutive intervals, ordered so contributions should shrink.

    Returns inf when the per-interval contributions stop decreasing; otherwise
    the sum plus a geometric estimate of what lies beyond the last interval.
    """
    contributions = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        a, b = min(lo, hi), max(lo, hi)
        points = [p for p in breakpoints if a < p < b] or None
        value, _ = integrate.quad(func, a, b, points=points, limit=200)
        contributions.append(value)
        total = sum(contributions)
        if total > 0 and value <= 1e-15 * total:
            return total
    last, previous = contributions[-1], contributions[-2]
    if previous == 0:
        return sum(contributions)
    ratio = last / previous
    if ratio >= DIVERGENT_RATIO:
        return math.inf
    return sum(contributions) + last * ratio / (1.0 - ratio)


def _origin_integral(potential: Potential, eps: float) -> float:
    """∫_0^1 r^{1−2ε} |q(r)| dr."""
    weight = lambda r: r ** (1.0 - 2.0 * eps) * abs(potential.evaluate(r))
    r0 = potential.domain_min
    if r0 > 0:
        # power-law continuation below the first sample
        s = potential.singularity_exponent
        exponent = 2.0 - 2.0 * eps - s
        if exponent <= 0:
            return math.inf
        head = abs(potential.evaluate(r0)) * r0 ** (1.0 - 2.0 * eps) * r0 / exponent
        if r0 >= 1.0:
            return head
        body, _ = integrate.quad(weight, r0, 1.0,
                                 points=[b for b in potential.breakpoints if r0 < b < 1.0] or None,
                                 limit=200)
        return head + body
    edges = [10.0 ** -k for k in range(0, MAX_DECADES + 1)]
    return _decade_sum(weight, edges, potential.breakpoints)


def _far_integral(potential: Potential, power: float) -> float:
    """∫_1^∞ r^power |q(r)| dr."""
    weight = lambda r: r ** power * abs(potential.evaluate(r))
    a = potential.support_radius
    if a is not None:
        if a <= 1.0:
            return 0.0
        value, _ = integrate.quad(weight, 1.0, a,
                                  points=[b for b in potential.breakpoints if 1.0 < b < a] or None,
                                  limit=200)
        return value
    if power == 0:
        return potential.tail_integral(1.0)
    edges = [10.0 ** k for k in range(0, MAX_DECADES + 1)]
    return _decade_sum(weight, edges, potential.breakpoints)


def _class_c(potential: Potential) -> bool:
    if isinstance(potential, SumPotential):
        return all(t.is_compact or _class_a(t) for t in potential.terms)
    return potential.is_compact or _class_a(potential)


def _class_a(potential: Potential) -> bool:
    return potential.analytic and potential.decay_exponent > 1.5


def check_hypotheses(potential: Potential, eps: float = 0.25, delta: float = 0.5) -> HypothesisReport:
    """
    Report which integrability conditions the potential satisfies.

    Args:
        potential: Potential to check
        eps: Origin exponent in ∫_0^1 r^{1−2ε}|q| < ∞, 0 < ε < 1/2
        delta: Moment exponent in ∫_1^∞ r^{(1+δ)/2}|q| < ∞

    Returns:
        HypothesisReport with the integrals, finiteness flags, class flags and notes
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    if not 0 < delta:
        raise ValueError(f"delta must be positive, got {delta}")

    h1 = _origin_integral(potential, eps)
    h2 = _far_integral(potential, 0.0)
    moment = _far_integral(potential, (1.0 + delta) / 2.0)
    report = HypothesisReport(
        eps=eps,
        delta=delta,
        h1_integral=h1,
        h1_finite=math.isfinite(h1),
        h2_integral=h2,
        h2_finite=math.isfinite(h2),
        moment_integral=moment,
        moment_finite=math.isfinite(moment),
        in_class_a=_class_a(potential),
        in_class_c=_class_c(potential),
    )
    if not report.h1_finite:
        report.notes.append(f"r^(1-2eps)|q| is not integrable at the origin (eps={eps})")
    if not report.h2_finite:
        report.notes.append("|q| is not integrable at infinity")
    if not report.moment_finite:
        report.notes.append(f"moment r^((1+delta)/2)|q| diverges (delta={delta})")
    rho = potential.decay_exponent
    if potential.analytic and 1.0 < rho <= 1.5:
        report.notes.append(f"analytic but decay exponent {rho:g} lies outside the pole-analysis class")
    logger.debug("hypotheses for %s: %s", potential.kind, report)
    return report


def require_hypotheses(potential: Potential) -> HypothesisReport:
    """check_hypotheses, raising PreconditionError for a potential the solvers cannot take."""
    report = check_hypotheses(potential)
    if not report.admissible:
        raise PreconditionError(f"{potential.kind} potential is not admissible: {'; '.join(report.notes)}")
    for note in report.notes:
        logger.warning("%s potential: %s", potential.kind, note)
    return report
