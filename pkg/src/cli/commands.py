"""
Subcommand bodies. Each takes a CommandContext (the parsed RunConfig with
its potentials loaded) and returns a ResultTable; main.py handles
arguments, output files and exit codes.
"""

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from config.settings import RunConfig, complex_entries, parameter_range
from data.potential_loader import PotentialLoader
from evaluation.results import Provenance, ResultTable
from evaluation.verification import VerificationReport, verifier_from_config
from potentials.models import AnalyticDecay, Potential
from regge.asymptotics import PolePrediction, predict_poles_compact
from regge.contour import SearchRegion
from regge.poles import PoleFinder, ReggePole
from scattering.amplitude import amplitude_n3, phase_shift_table
from scattering.functionals import PotentialPair, borg_functional, reach, uniqueness_gap
from scattering.jost import JostSystem
from scattering.phase import (
    ENVELOPE_RATE_FRACTION,
    PhaseShiftTracker,
    edge_phase_envelope,
    necessary_condition_envelope,
    phase_shift_difference,
    physical_order,
    super_exponential_envelope,
)
from specfun.bessel import bessel_j, hankel, modified_i
from specfun.gamma import gamma_complex
from specfun.identities import imaxis_bounds
from specfun.lambert import lambert_residual, lambert_w0
from utils.errors import ConfigError, DomainError, ReggeScatError
from utils.logging_config import get_logger

logger = get_logger(__name__)

DEFAULT_L_RANGE = (0, 12)
DEFAULT_P_RANGE = (1, 20)
DEFAULT_GAP_ORDERS = (5.0, 10.0, 20.0, 40.0)
DEFAULT_L_MAX = 12
DEFAULT_ANGLES = (0.0, 0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, math.pi)
ALL_SUITES = ("free-exactness", "wronskian", "conjugation", "jost-imaginary", "link", "newrep2",
              "nicholson", "buchholz", "intmodule", "scaling", "borg-gap")
SPECFUN_FUNCTIONS = ("gamma", "bessel_j", "hankel1", "hankel2", "modified_i", "lambert_w", "imaxis")


def sweep(func: Callable[[Any], Dict[str, Any]], items: Sequence[Any], threads: int,
          desc: str) -> List[Tuple[Any, Optional[Dict[str, Any]], Optional[str]]]:
    """
    Apply func to every item on a thread pool, in input order.

    Numerical failures are caught per item and returned as messages so one
    bad row never aborts a sweep.
    """
    def guarded(item):
        try:
            return item, func(item), None
        except ReggeScatError as exc:
            logger.warning("%s failed for %s: %s", desc, item, exc)
            return item, None, f"{type(exc).__name__}: {exc}"

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(tqdm(pool.map(guarded, items), total=len(items), desc=desc,
                         disable=not sys.stderr.isatty()))


@dataclass
class CommandContext:
    config: RunConfig
    threads: int = 1
    base_dir: Optional[Path] = None

    def __post_init__(self):
        self.loader = PotentialLoader(self.base_dir)
        self.potential = self.loader.load(self.config.potential)
        self.compare = (self.loader.load(self.config.compare_potential, "compare_potential")
                        if self.config.compare_potential is not None else None)

    def parameter(self, key: str, default=None):
        return self.config.parameters.get(key, default)

    def system(self, potential: Optional[Potential] = None) -> JostSystem:
        return JostSystem(potential or self.potential, self.config.tolerances, self.config.grid)

    def table(self, command: str, columns: Sequence[str]) -> ResultTable:
        return ResultTable(columns, Provenance.from_config(command, self.config, self.potential))

    def require_compare(self, command: str) -> Potential:
        if self.compare is None:
            raise ConfigError(f"{command} needs a 'compare_potential' mapping")
        return self.compare


def _edge(potential: Potential) -> Optional[Tuple[float, float]]:
    """(a, q(a−0)) for compact potentials with a jump at the edge."""
    a = potential.support_radius
    if not a:
        return None
    q_edge = potential.edge_value()
    return (a, q_edge) if q_edge != 0 else None


def _envelope(potential: Potential, edge: Optional[Tuple[float, float]], l: int, nu: float) -> Optional[float]:
    if edge and l >= 1:
        return edge_phase_envelope(edge[1], edge[0], l)
    if isinstance(potential, AnalyticDecay) and potential.c > 0 and nu > 0:
        return super_exponential_envelope(nu, ENVELOPE_RATE_FRACTION * potential.c)
    return None


def cmd_phase_shifts(context: CommandContext) -> ResultTable:
    """
    δ_l over the configured l range, or Δδ_l = δ_l − δ̃_l when a comparison
    potential is given.

    Single-potential columns: l, nu, delta, method, envelope, ratio. The
    envelope is the edge-jump asymptotic form for a compact potential with a
    jump (three dimensions only), whose ratio tends to 1, or ν^{−1/2}e^{−νη}
    for exponential decay, whose ratio stays bounded.
    Two-potential columns: l, nu, delta_difference, envelope, scaled, with
    the necessary-condition envelope at radius ``radius``.
    """
    dimension = context.config.dimension
    l_values = list(parameter_range(context.parameter("l_range", list(DEFAULT_L_RANGE)),
                                    "parameters.l_range"))
    if context.compare is not None:
        return _phase_shift_differences(context, l_values)

    tracker = PhaseShiftTracker(context.system())
    edge = _edge(context.potential) if dimension == 3 else None
    table = context.table("phase-shifts", ("l", "nu", "delta", "method", "envelope", "ratio"))

    def row(l: int) -> Dict[str, Any]:
        shift = tracker.phase_shift(physical_order(l, dimension), l)
        envelope = _envelope(context.potential, edge, l, shift.nu.real)
        ratio = shift.value / envelope if envelope else None
        return dict(nu=shift.nu.real, delta=shift.value, method=shift.method,
                    envelope=envelope, ratio=ratio)

    for l, values, error in sweep(row, l_values, context.threads, "phase shifts"):
        if error:
            table.add_error(error, l=l, nu=physical_order(l, dimension))
        else:
            table.add_row(l=l, **values)
    return table


def _phase_shift_differences(context: CommandContext, l_values: List[int]) -> ResultTable:
    dimension = context.config.dimension
    compare = context.require_compare("phase-shifts")
    pair = PotentialPair.build(context.potential, compare, context.config.tolerances, context.config.grid)
    radius = float(context.parameter("radius", pair.upper))
    table = context.table("phase-shifts", ("l", "nu", "delta_difference", "envelope", "scaled"))

    def row(l: int) -> Dict[str, Any]:
        nu = physical_order(l, dimension)
        difference = phase_shift_difference(context.potential, compare, l, dimension, pair)
        envelope = necessary_condition_envelope(radius, nu)
        return dict(nu=nu, delta_difference=difference, envelope=envelope,
                    scaled=abs(difference) / envelope if envelope > 0 else None)

    for l, values, error in sweep(row, l_values, context.threads, "phase-shift differences"):
        if error:
            table.add_error(error, l=l, nu=physical_order(l, dimension))
        else:
            table.add_row(l=l, **values)
    return table


def cmd_amplitude(context: CommandContext) -> ResultTable:
    """Three-dimensional scattering amplitude at ``theta_angles`` (radians) from δ_0 .. δ_{l_max}."""
    if context.config.dimension != 3:
        raise ConfigError(f"amplitude is defined for dimension 3, got {context.config.dimension}")
    l_max = int(context.parameter("l_max", DEFAULT_L_MAX))
    if l_max < 0:
        raise ConfigError(f"parameters.l_max must be non-negative, got {l_max}")
    angles = [angle.real for angle in complex_entries(context.parameter("theta_angles", list(DEFAULT_ANGLES)))]
    deltas = phase_shift_table(context.potential, l_max, context.system())
    table = context.table("amplitude", ("theta", "value_re", "value_im", "l_max", "tail_estimate"))
    for theta in angles:
        result = amplitude_n3(context.potential, theta, l_max, deltas=deltas)
        table.add_row(theta=theta, value_re=result.value.real, value_im=result.value.imag,
                      l_max=result.l_max, tail_estimate=result.tail_estimate)
    return table


def search_region(context: CommandContext) -> SearchRegion:
    bounds = context.parameter("region")
    if bounds is None:
        raise ConfigError("poles needs 'parameters.region' as [re_lo, re_hi, im_lo, im_hi]")
    options = {}
    if context.parameter("max_depth") is not None:
        options["max_depth"] = int(context.parameter("max_depth"))
    try:
        return SearchRegion.from_bounds(bounds, boundary_margin=context.config.tolerances.contour_margin,
                                        **options)
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError(f"parameters.region: {exc}") from exc


def _nearest(pole: ReggePole, predictions: Sequence[PolePrediction]) -> Optional[PolePrediction]:
    if not predictions:
        return None
    return min(predictions, key=lambda p: abs(p.nu_predicted - pole.nu))


def cmd_poles(context: CommandContext) -> Tuple[ResultTable, List[ReggePole], List[PolePrediction]]:
    """
    Regge poles in the configured rectangle.

    For compact potentials with an edge jump every pole is paired with the
    nearest Lambert-W prediction from ``p_range`` unless ``predict`` is false.
    """
    region = search_region(context)
    poles = PoleFinder(context.system(), context.threads).find(region)
    edge = _edge(context.potential)
    predictions: List[PolePrediction] = []
    if edge is not None and context.parameter("predict", True):
        p_values = parameter_range(context.parameter("p_range", list(DEFAULT_P_RANGE)), "parameters.p_range")
        predictions = predict_poles_compact(edge[0], edge[1], p_values)
    table = context.table("poles", ("index", "nu_re", "nu_im", "abs_nu", "newton_residual",
                                    "multiplicity", "predicted_index", "predicted_re", "predicted_im"))
    for i, pole in enumerate(poles, start=1):
        nearest = _nearest(pole, predictions)
        table.add_row(index=i, nu_re=pole.nu.real, nu_im=pole.nu.imag, abs_nu=abs(pole.nu),
                      newton_residual=pole.newton_residual, multiplicity=pole.multiplicity,
                      predicted_index=nearest.index if nearest else None,
                      predicted_re=nearest.nu_predicted.real if nearest else None,
                      predicted_im=nearest.nu_predicted.imag if nearest else None)
    return table, poles, predictions


def cmd_predict_poles(context: CommandContext) -> ResultTable:
    edge = _edge(context.potential)
    if edge is None:
        raise ConfigError("predict-poles needs a compactly supported potential with q(a-0) != 0")
    p_values = parameter_range(context.parameter("p_range", list(DEFAULT_P_RANGE)), "parameters.p_range")
    table = context.table("predict-poles", ("p", "nu_re", "nu_im", "lambert_residual",
                                            "real_ratio", "imag_ratio", "concentration"))
    for prediction in predict_poles_compact(edge[0], edge[1], p_values):
        p = prediction.index
        table.add_row(p=p, nu_re=prediction.nu_predicted.real, nu_im=prediction.nu_predicted.imag,
                      lambert_residual=prediction.lambert_residual,
                      # the ratios divide by log p
                      real_ratio=prediction.real_ratio if p > 1 else None,
                      imag_ratio=prediction.imag_ratio if p > 1 else None,
                      concentration=prediction.concentration)
    return table


def cmd_verify(context: CommandContext, tol: Optional[float] = None) -> VerificationReport:
    suites = context.parameter("suites", list(ALL_SUITES))
    if isinstance(suites, str):
        suites = [suites]
    verifier = verifier_from_config(context.config, tol, context.base_dir)
    report = verifier.run(list(tqdm(suites, desc="suites", disable=not sys.stderr.isatty())))
    logger.info("verification %s: %d checks, %d failed",
                "passed" if report.passed else "FAILED", len(report.checks), len(report.failures))
    return report


def verification_table(context: CommandContext, report: VerificationReport) -> ResultTable:
    table = context.table("verify", ("suite", "check", "residual", "tolerance", "passed"))
    for check in report.checks:
        table.add_row(suite=check.suite, check=check.name, residual=check.residual,
                      tolerance=check.tolerance, passed=check.passed, error=check.detail or None)
    return table


def cmd_uniqueness_gap(context: CommandContext) -> ResultTable:
    """
    Borg functional F(r, ν), uniqueness gap |G(ν)| and, at physical orders,
    Δδ_l for the configured potential pair.
    """
    compare = context.require_compare("uniqueness-gap")
    config = context.config
    pair = PotentialPair.build(context.potential, compare, config.tolerances, config.grid)
    radius = float(context.parameter("radius", reach(context.potential, config.tolerances, config.grid)))
    orders = [nu.real for nu in complex_entries(context.parameter("nu", list(DEFAULT_GAP_ORDERS)))]
    offset = (config.dimension - 2) / 2.0
    table = context.table("uniqueness-gap", ("nu", "radius", "borg_re", "borg_im", "gap_abs",
                                             "gap_log10", "delta_difference"))

    def row(nu: float) -> Dict[str, Any]:
        borg = borg_functional(context.potential, compare, radius, nu, pair=pair)
        gap = uniqueness_gap(context.potential, compare, radius, nu, pair=pair)
        log10 = gap.log_abs() / math.log(10.0)
        l = nu - offset
        difference = None
        if l >= 0 and float(l).is_integer():
            difference = phase_shift_difference(context.potential, compare, int(l), config.dimension, pair)
        return dict(radius=radius, borg_re=borg.real, borg_im=borg.imag,
                    gap_abs=10.0 ** log10 if log10 > -300 else 0.0, gap_log10=log10,
                    delta_difference=difference)

    for nu, values, error in sweep(row, orders, context.threads, "uniqueness gap"):
        if error:
            table.add_error(error, nu=nu, radius=radius)
        else:
            table.add_row(nu=nu, **values)
    return table


def _gamma_row(z: complex) -> Dict[str, Any]:
    return dict(value=gamma_complex(z))


def _lambert_row(z: complex) -> Dict[str, Any]:
    w = lambert_w0(z)
    return dict(value=w, residual=lambert_residual(w, z))


def _imaxis_row(y: float, x: float) -> Dict[str, Any]:
    modulus = abs(hankel(1, 1j * y, x))
    bound = min(imaxis_bounds(y, x))
    return dict(value=complex(modulus), bound=bound, within=modulus <= bound)


_ORDER_FUNCTIONS = {
    "bessel_j": lambda nu, x: bessel_j(nu, x).value,
    "hankel1": lambda nu, x: hankel(1, nu, x),
    "hankel2": lambda nu, x: hankel(2, nu, x),
    "modified_i": modified_i,
}


def _specfun_points(function: str, orders: Sequence[complex],
                    values: Sequence[complex]) -> List[Tuple[Dict[str, Any], Callable[[], Dict[str, Any]]]]:
    """(row coordinates, evaluation) for every tabulated point."""
    if function == "gamma":
        return [(dict(nu_re=z.real, nu_im=z.imag), lambda z=z: _gamma_row(z)) for z in values]
    if function == "lambert_w":
        return [(dict(nu_re=z.real, nu_im=z.imag), lambda z=z: _lambert_row(z)) for z in values]
    if function == "imaxis":
        return [(dict(nu_re=0.0, nu_im=y.real, x=x.real), lambda y=y, x=x: _imaxis_row(y.real, x.real))
                for y in orders for x in values]
    evaluate = _ORDER_FUNCTIONS[function]
    return [(dict(nu_re=nu.real, nu_im=nu.imag, x=x.real),
             lambda nu=nu, x=x: dict(value=evaluate(nu, x.real)))
            for nu in orders for x in values]


def cmd_specfun_table(context: CommandContext) -> ResultTable:
    """
    Tabulate one special function over ``values`` (and ``nu`` for the
    Bessel family). For ``imaxis`` the ``nu`` entries are the imaginary
    parts y of the order, and each row carries the smaller of the two
    upper bounds on |H^{(1)}_{iy}(x)| with a flag.
    """
    function = context.parameter("function")
    if function not in SPECFUN_FUNCTIONS:
        raise ConfigError(f"parameters.function must be one of {SPECFUN_FUNCTIONS}, got {function!r}")
    values = complex_entries(context.parameter("values", [1, 2, 3, 4, 5]))
    orders = complex_entries(context.parameter("nu", [0]))
    table = context.table("specfun-table", ("function", "nu_re", "nu_im", "x", "value_re", "value_im",
                                            "residual", "bound", "within"))
    for coordinates, evaluate in _specfun_points(function, orders, values):
        try:
            entry = evaluate()
        except ReggeScatError as exc:
            table.add_error(f"{type(exc).__name__}: {exc}", function=function, **coordinates)
            continue
        value = entry.pop("value")
        table.add_row(function=function, value_re=value.real, value_im=value.imag,
                      **coordinates, **entry)
    return table


COMMANDS = ("phase-shifts", "amplitude", "poles", "predict-poles", "verify", "uniqueness-gap",
            "specfun-table")
