import math

import pytest

from potentials.models import AnalyticDecay, SquareWell, ZeroPotential
from scattering.functionals import (
    PotentialPair,
    borg_functional,
    borg_imaginary_bound,
    imaginary_axis_defect,
    jost_difference,
    jost_solution_bound,
    link_identity,
    newrep1_residual,
    newrep2_residual,
    reach,
    uniqueness_gap,
)
from scattering.jost import JostSystem
from utils.errors import DomainError


def test_reach():
    assert reach(SquareWell(1.0, 2.5)) == 2.5
    assert reach(ZeroPotential()) == 0.0
    potential = AnalyticDecay(1.0, 1.0, 2.0)
    assert potential.tail_integral(reach(potential)) == pytest.approx(1e-10, rel=1e-3)


def test_pair_shares_matching_radius():
    pair = PotentialPair.build(SquareWell(1.0, 1.0), SquareWell(0.5, 2.0))
    assert pair.upper == 2.0
    assert pair.first.grid(0.5).r_match == pair.second.grid(0.5).r_match == 2.0
    assert pair.breakpoints == (1.0, 2.0)


def test_identical_potentials_have_zero_differences():
    well = SquareWell(1.0, 1.0)
    difference = jost_difference(well, SquareWell(1.0, 1.0), 1.0 + 0.5j)
    assert difference.d_alpha.is_zero and difference.d_beta.is_zero and difference.cross.is_zero


@pytest.mark.parametrize("nu", [0.5, 1.5 + 1.0j])
def test_differences_match_subtraction(nu):
    difference = jost_difference(SquareWell(1.0, 1.0), SquareWell(0.5, 1.0), nu)
    assert difference.direct_residual < 1e-7


def test_uniqueness_gap_decreases_for_tail_equal_pair():
    pair = PotentialPair.build(SquareWell(1.0, 1.0), SquareWell(0.5, 1.0))
    gaps = [uniqueness_gap(pair.first.potential, pair.second.potential, 1.2, nu, pair=pair).log_abs()
            for nu in (5.0, 10.0, 20.0)]
    assert gaps[0] > gaps[1] > gaps[2]
    with pytest.raises(DomainError):
        uniqueness_gap(pair.first.potential, pair.second.potential, 0.0, 5.0, pair=pair)


def test_borg_functional_vanishes_for_equal_potentials():
    well = SquareWell(1.0, 1.0)
    assert borg_functional(well, SquareWell(1.0, 1.0), 0.5, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_borg_functional_bounded_on_imaginary_axis():
    first, second = SquareWell(0.3, 1.0), SquareWell(-0.2, 1.0)
    value = borg_functional(first, second, 0.5, 3.0j)
    assert abs(value) <= borg_imaginary_bound(first, second, 0.5)


def test_jost_solution_bound():
    assert jost_solution_bound(ZeroPotential(), 1.0) == pytest.approx(2.0 ** 0.25)
    assert jost_solution_bound(SquareWell(1.0, 1.0), 0.5) == pytest.approx(
        2.0 ** 0.25 * math.exp(math.sqrt(2.0) * 0.5))


@pytest.mark.slow
def test_link_identity(square_well_system):
    check = link_identity(square_well_system, 1.0 + 1.0j)
    assert check.residual < 1e-5


def test_link_identity_on_real_axis_is_trivial(shallow_well):
    check = link_identity(JostSystem(shallow_well), 1.5)
    assert check.rhs == 0.0
    assert abs(check.lhs) < 1e-8


@pytest.mark.parametrize("nu", [0.5, 1.0 + 0.5j])
def test_green_kernel_representations(square_well_system, nu):
    assert newrep2_residual(square_well_system, nu) < 1e-7
    assert newrep1_residual(square_well_system, nu, 0.5) < 1e-7
    assert newrep1_residual(square_well_system, nu, 1.3) < 1e-7


@pytest.mark.parametrize("y", [0.5, -2.0])
def test_imaginary_axis_identity(square_well_system, y):
    assert imaginary_axis_defect(square_well_system, y) < 1e-6


def test_imaginary_axis_identity_needs_nonzero_order(square_well_system):
    with pytest.raises(DomainError):
        imaginary_axis_defect(square_well_system, 0.0)
