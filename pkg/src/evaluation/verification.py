"""
Invariant suites
================

Each suite evaluates both sides of a set of identities and records one
relative residual per check. A check passes when its residual does not
exceed its tolerance; ``--tol`` replaces the tolerance of every residual
check but leaves structural checks (bounds, monotone trends) alone.

Suites:
    free-exactness  β = β₀ and δ_l = 0 for the zero potential
    wronskian       W(f⁺, f⁻) = −2i, W(u, v) = 1, r-independence of β
    conjugation     φ(r, ν̄) = conj φ(r, ν), β(ν̄) = conj α(ν)
    jost-imaginary  |α(iy)|² − |β(iy)|² = y
    link            |α|² − |β|² = 2 Re ν Im ν ∫|φ|²/r²
    newrep2         both integral representations of φ and β
    nicholson       Nicholson's integral and the imaginary-order Hankel bounds
    buchholz        product formula for J_ν(ir)H^{(1)}_ν(iR)
    intmodule       weighted modulus integral and the Laplace-Legendre integral
    scaling         β(ν; 1, q) = e^{(ν−1/2)θ} β(ν; e^θ, q_θ)
    borg-gap        Borg functional and uniqueness gap of a tail-equal pair
"""

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from config.settings import GridConfig, RunConfig, ToleranceConfig, complex_entries
from data.potential_loader import PotentialLoader
from evaluation.results import Provenance
from potentials.models import Potential, ZeroPotential
from radial.solver import FREE_U, FREE_V, free_field, scaled_wronskian, wronskian
from scattering.functionals import (
    PotentialPair,
    borg_functional,
    imaginary_axis_defect,
    link_identity,
    newrep1_residual,
    newrep2_residual,
    uniqueness_gap,
)
from scattering.jost import JostSystem
from scattering.phase import phase_shift
from scattering.scaling import scaling_check
from specfun.bessel import hankel
from specfun.free import free_jost_functions
from specfun.identities import (
    buchholz_integral,
    buchholz_product,
    imaxis_bounds,
    intmodule_closed_form,
    intmodule_quadrature,
    laplace_bessel_square,
    laplace_bessel_square_closed_form,
    nicholson_modulus,
)
from specfun.scaled import Scaled
from utils.errors import ConfigError, HypothesisError, ReggeScatError
from utils.logging_config import get_logger

logger = get_logger(__name__)

SAMPLE_SEED = 20240611
SAMPLE_COUNT = 8
BORG_ORDERS = (5.0, 10.0, 20.0, 40.0)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def suites(self) -> Dict[str, List[CheckResult]]:
        grouped: Dict[str, List[CheckResult]] = {}
        for check in self.checks:
            grouped.setdefault(check.suite, []).append(check)
        return grouped

    def to_json(self, provenance: Optional[Provenance] = None) -> str:
        def encode(check: CheckResult) -> Dict:
            entry = asdict(check)
            entry["passed"] = check.passed
            if not math.isfinite(check.residual):
                entry["residual"] = str(check.residual)
            return entry

        document = {
            "passed": self.passed,
            "suites": {
                name: {"passed": all(c.passed for c in checks), "checks": [encode(c) for c in checks]}
                for name, checks in self.suites().items()
            },
        }
        if provenance is not None:
            document["provenance"] = asdict(provenance)
        return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _relative(value: Scaled, reference: Scaled) -> float:
    """|value − reference| / |reference| without leaving log-scaled form."""
    gap = (value - reference).log_abs()
    return math.exp(gap - reference.log_abs()) if math.isfinite(gap) else 0.0


class Verifier:
    """
    Runs invariant suites against one potential (and an optional comparison
    potential for the two-potential suites).

    Args:
        potential: Potential under test
        compare: Second potential for ``borg-gap``; q itself when omitted
        tolerances: Solver tolerances
        grid_config: Grid hints
        parameters: Command parameters (``nu``, ``theta``, ``radius``)
        tol: Replacement tolerance for every residual check
    """

    def __init__(self, potential: Potential, compare: Optional[Potential] = None,
                 tolerances: Optional[ToleranceConfig] = None,
                 grid_config: Optional[GridConfig] = None,
                 parameters: Optional[Dict] = None, tol: Optional[float] = None):
        self.potential = potential
        self.compare = compare
        self.tolerances = tolerances or ToleranceConfig()
        self.grid_config = grid_config or GridConfig()
        self.parameters = parameters or {}
        self.tol = tol
        self.system = JostSystem(potential, self.tolerances, self.grid_config)
        self.rng = np.random.default_rng(SAMPLE_SEED)
        self.suites: Dict[str, Callable[[], List[CheckResult]]] = {
            "free-exactness": self._free_exactness,
            "wronskian": self._wronskian,
            "conjugation": self._conjugation,
            "jost-imaginary": self._jost_imaginary,
            "link": self._link,
            "newrep2": self._newrep2,
            "nicholson": self._nicholson,
            "buchholz": self._buchholz,
            "intmodule": self._intmodule,
            "scaling": self._scaling,
            "borg-gap": self._borg_gap,
        }

    def _check(self, suite: str, name: str, residual: float, default: float) -> CheckResult:
        tolerance = self.tol if self.tol is not None else default
        return CheckResult(suite, name, float(residual), tolerance)

    def _orders(self, defaults: Sequence[complex]) -> List[complex]:
        raw = self.parameters.get("nu")
        if raw is None:
            return [complex(nu) for nu in defaults]
        return complex_entries(raw)

    def _samples(self, count: int = SAMPLE_COUNT):
        """Random (ν, fraction of r_match) pairs; the seed is fixed."""
        for _ in range(count):
            nu = complex(self.rng.uniform(0.2, 4.0), self.rng.uniform(-1.5, 1.5))
            yield nu, float(self.rng.uniform(0.2, 0.9))

    def _free_exactness(self) -> List[CheckResult]:
        system = JostSystem(ZeroPotential(), self.tolerances, self.grid_config)
        checks = []
        for _ in range(10):
            nu = complex(self.rng.uniform(0.0, 6.0), self.rng.uniform(-3.0, 3.0))
            log_ratio = system.beta(nu).log() - free_jost_functions(nu).log_beta0
            checks.append(self._check("free-exactness", f"beta nu={nu:.4g}",
                                      abs(complex(np.expm1(log_ratio))), 1e-8))
        for l in range(10):
            delta = phase_shift(system.potential, l, system=system).value
            checks.append(self._check("free-exactness", f"delta l={l}", abs(delta), 1e-10))
        return checks

    def _wronskian(self) -> List[CheckResult]:
        checks = []
        for nu, fraction in self._samples():
            regular, plus, minus = self.system.fields(nu)
            grid = regular.grid
            r = fraction * grid.r_match
            jost = wronskian(plus, minus, r)
            checks.append(self._check("wronskian", f"W(f+,f-) nu={nu:.4g} r={r:.4g}",
                                      abs(jost + 2j) / 2.0, 1e-7))
            free = wronskian(free_field(nu, grid, FREE_U), free_field(nu, grid, FREE_V), r)
            checks.append(self._check("wronskian", f"W(u,v) nu={nu:.4g} r={r:.4g}",
                                      abs(free - 1.0), 1e-7))
            beta = Scaled.from_value(-0.5j) * scaled_wronskian(regular.scaled_at(r), plus.scaled_at(r))
            checks.append(self._check("wronskian", f"beta at r={r:.4g} nu={nu:.4g}",
                                      _relative(beta, self.system.beta(nu)), 1e-7))
        return checks

    def _conjugation(self) -> List[CheckResult]:
        if not self.potential.is_real:
            raise HypothesisError(f"conjugation symmetry needs a real potential, got {self.potential.kind}")
        checks = []
        for nu, fraction in self._samples():
            nu_bar = nu.conjugate()
            field = self.system.regular(nu)
            mirrored = self.system.regular(nu_bar)
            r = fraction * field.grid.r_match
            reference = field.scaled_at(r)[0].conjugate()
            checks.append(self._check("conjugation", f"phi nu={nu:.4g} r={r:.4g}",
                                      _relative(mirrored.scaled_at(r)[0], reference), 1e-7))
            alpha = self.system.evaluate(nu).scaled_alpha.conjugate()
            beta_bar = self.system.evaluate(nu_bar).scaled_beta
            checks.append(self._check("conjugation", f"beta(conj nu) nu={nu:.4g}",
                                      _relative(beta_bar, alpha), 1e-7))
        return checks

    def _jost_imaginary(self) -> List[CheckResult]:
        return [self._check("jost-imaginary", f"y={y:g}", imaginary_axis_defect(self.system, y), 1e-6)
                for y in (0.5, -0.5, 2.0, -2.0, 5.0, -5.0)]

    def _link(self) -> List[CheckResult]:
        return [self._check("link", f"nu={nu:.4g}", link_identity(self.system, nu).residual, 1e-5)
                for nu in self._orders((1 + 1j, 2 + 0.5j))]

    def _newrep2(self) -> List[CheckResult]:
        checks = []
        for nu in self._orders((1 + 1j, 2 + 0.5j, 3.0)):
            checks.append(self._check("newrep2", f"beta representation nu={nu:.4g}",
                                      newrep2_residual(self.system, nu), 1e-6))
            radius = 0.5 * self.system.grid(nu).r_match
            checks.append(self._check("newrep2", f"phi representation nu={nu:.4g} r={radius:.4g}",
                                      newrep1_residual(self.system, nu, radius), 1e-6))
        return checks

    def _nicholson(self) -> List[CheckResult]:
        checks = []
        for y, r in ((0.5, 1.0), (1.0, 2.0), (-1.0, 3.0), (2.0, 5.0)):
            value = abs(hankel(1, 1j * y, r))
            modulus = nicholson_modulus(y, r)
            checks.append(self._check("nicholson", f"modulus y={y:g} r={r:g}",
                                      abs(value ** 2 - modulus) / modulus, 1e-7))
            bound = min(imaxis_bounds(y, r))
            checks.append(CheckResult("nicholson", f"bound y={y:g} r={r:g}",
                                      max(0.0, value / bound - 1.0), 0.0))
        return checks

    def _buchholz(self) -> List[CheckResult]:
        checks = []
        for nu, r, big_r in ((0.5 + 0.5j, 0.5, 1.5), (1.5, 1.0, 2.0), (2.0 + 1.0j, 0.3, 2.5)):
            lhs = buchholz_product(nu, r, big_r)
            rhs = buchholz_integral(nu, r, big_r)
            checks.append(self._check("buchholz", f"nu={complex(nu):.4g} r={r:g} R={big_r:g}",
                                      abs(lhs - rhs) / abs(rhs), 1e-7))
        return checks

    def _intmodule(self) -> List[CheckResult]:
        checks = []
        for nu, delta in ((1 + 0.5j, 0.5), (2.0, 1.0)):
            exact = intmodule_closed_form(nu, delta)
            checks.append(self._check("intmodule", f"nu={complex(nu):.4g} delta={delta:g}",
                                      abs(intmodule_quadrature(nu, delta) - exact) / exact, 1e-6))
        for nu, decay in ((1.0, 1.0), (0.5 + 0.5j, 2.0)):
            exact = laplace_bessel_square_closed_form(nu, decay)
            checks.append(self._check("intmodule", f"laplace nu={complex(nu):.4g} B={decay:g}",
                                      abs(laplace_bessel_square(nu, decay) - exact) / abs(exact), 1e-8))
        return checks

    def _scaling(self) -> List[CheckResult]:
        checks = []
        for theta in complex_entries(self.parameters.get("theta", [0.1, 0.15])):
            for nu in self._orders((2.0, 1 + 0.5j)):
                residual = scaling_check(self.potential, nu, theta, self.tolerances,
                                         self.grid_config).residual
                checks.append(self._check("scaling", f"nu={nu:.4g} theta={theta:.4g}", residual, 1e-5))
        return checks

    def _borg_gap(self) -> List[CheckResult]:
        radius = float(self.parameters.get("radius", 1.0))
        same = PotentialPair.build(self.potential, self.potential, self.tolerances, self.grid_config)
        checks = []
        for nu in BORG_ORDERS:
            value = borg_functional(self.potential, self.potential, radius, nu, pair=same)
            checks.append(self._check("borg-gap", f"F(q,q) nu={nu:g}", abs(value), 1e-8))
        if self.compare is None:
            return checks
        pair = PotentialPair.build(self.potential, self.compare, self.tolerances, self.grid_config)
        sizes = []
        for nu in BORG_ORDERS:
            gap = uniqueness_gap(self.potential, self.compare, radius, nu, pair=pair)
            sizes.append(math.exp(gap.log_abs()))
        worst = max(b / a if a > 0 else math.inf for a, b in zip(sizes[:-1], sizes[1:]))
        # strictly decreasing: every consecutive ratio below one
        checks.append(CheckResult("borg-gap", "G decreasing", worst, 1.0 - 1e-12))
        checks.append(self._check("borg-gap", f"|G| at nu={BORG_ORDERS[-1]:g}", sizes[-1], 1e-3))
        return checks

    def run_suite(self, name: str) -> List[CheckResult]:
        if name not in self.suites:
            raise ConfigError(f"unknown verification suite {name!r}; known: {sorted(self.suites)}")
        logger.info("running suite %s", name)
        try:
            checks = self.suites[name]()
        except ReggeScatError as exc:
            logger.warning("suite %s aborted: %s", name, exc)
            return [CheckResult(name, "aborted", math.inf, 0.0, str(exc))]
        failed = sum(1 for check in checks if not check.passed)
        logger.info("suite %s: %d checks, %d failed", name, len(checks), failed)
        return checks

    def run(self, suites: Sequence[str]) -> VerificationReport:
        report = VerificationReport()
        for name in suites:
            report.checks.extend(self.run_suite(name))
        return report


def verifier_from_config(config: RunConfig, tol: Optional[float] = None,
                         base_dir: Optional[Path] = None) -> Verifier:
    loader = PotentialLoader(base_dir)
    compare = (loader.load(config.compare_potential, "compare_potential")
               if config.compare_potential is not None else None)
    return Verifier(loader.load(config.potential), compare, config.tolerances, config.grid,
                    config.parameters, tol)
