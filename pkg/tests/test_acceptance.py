"""End-to-end checks on the reference potentials. All are slow."""

import pytest

from evaluation.verification import Verifier
from potentials.models import AnalyticDecay, SquareWell
from scattering.functionals import PotentialPair
from scattering.phase import (
    edge_phase_envelope,
    necessary_condition_envelope,
    phase_shift_difference,
    phase_shift_small,
    physical_order,
)

pytestmark = pytest.mark.slow


def test_edge_jump_envelope():
    well = SquareWell(1.0, 2.0)
    ratios = []
    for l in range(8, 13):
        delta = phase_shift_small(well, physical_order(l)).value
        ratios.append(delta / edge_phase_envelope(well.edge_value(), 2.0, l))
    assert all(0.6 <= ratio <= 1.4 for ratio in ratios), ratios
    distances = [abs(ratio - 1.0) for ratio in ratios]
    assert distances == sorted(distances, reverse=True)


def test_imaginary_axis_suite_on_square_well():
    report = Verifier(SquareWell(1.0, 1.0)).run(["jost-imaginary"])
    assert len(report.checks) == 6
    assert report.passed, [(c.name, c.residual) for c in report.failures]


def test_scaling_suite_on_analytic_potential():
    report = Verifier(AnalyticDecay(1.0, 1.0, 2.0)).run(["scaling"])
    assert len(report.checks) == 4
    assert report.passed, [(c.name, c.residual) for c in report.failures]


def test_necessary_condition_envelope_bounds_tail_equal_pair():
    q, q_tilde = SquareWell(1.0, 1.5), SquareWell(0.5, 1.5)
    pair = PotentialPair.build(q, q_tilde)
    scaled = {}
    for l in range(6, 13):
        difference = phase_shift_difference(q, q_tilde, l, pair=pair)
        scaled[l] = abs(difference) / necessary_condition_envelope(1.5, physical_order(l))
    bound = 1.5 * scaled[6]
    assert scaled[6] > 0
    assert all(scaled[l] <= bound for l in range(7, 13)), scaled
