import math

import numpy as np
import pytest

from potentials.models import AnalyticDecay, SquareWell, TabulatedPotential, ZeroPotential
from radial.grid import build_grid
from radial.solver import (
    FREE_V,
    RadialSolver,
    free_field,
    solve_jost,
    solve_regular,
    wronskian,
)
from radial.volterra import volterra_residual
from scattering.jost import JostSystem
from utils.errors import DomainError, PreconditionError

from conftest import oracle_regular_free


@pytest.mark.parametrize("nu", [0.5, 1.5 + 0.5j, 3.0])
def test_free_regular_solution_matches_bessel(nu):
    field = solve_regular(ZeroPotential(), nu)
    for r in (0.05, 0.5, 1.0, 1.4):
        assert field.at(r)[0] == pytest.approx(oracle_regular_free(nu, r), rel=1e-8)


def test_large_order_regular_solution_stays_in_range():
    nu = 60.0
    field = solve_regular(ZeroPotential(), nu)
    value, _ = field.scaled_at(1.2)
    assert value.log_abs() == pytest.approx(math.log(abs(oracle_regular_free(nu, 1.2))), abs=1e-8)


def test_square_well_interior_is_pure_power(square_well):
    # q = k² inside the well, so φ = r^{ν+1/2} exactly there
    nu = 0.7 + 0.3j
    field = solve_regular(square_well, nu)
    for r in (0.2, 0.6, 0.95):
        assert field.at(r)[0] == pytest.approx(r ** (nu + 0.5), rel=1e-9)


@pytest.mark.parametrize("nu", [0.5, 2.0 + 1.0j])
def test_jost_pair_wronskian(square_well, nu):
    grid = build_grid(square_well, nu)
    plus = solve_jost(square_well, nu, grid, sign=1)
    minus = solve_jost(square_well, nu, grid, sign=-1)
    for r in (0.3, 1.0, 1.3):
        assert wronskian(plus, minus, r) == pytest.approx(-2j, abs=1e-7)


def test_wronskian_is_radius_independent(shallow_well):
    nu = 1.0 + 0.5j
    grid = build_grid(shallow_well, nu)
    phi = solve_regular(shallow_well, nu, grid)
    plus = solve_jost(shallow_well, nu, grid)
    inner = wronskian(phi, plus, 0.3)
    assert wronskian(phi, plus, grid.r_match) == pytest.approx(inner, rel=1e-7)
    assert wronskian(phi, plus, 1.4) == pytest.approx(inner, rel=1e-7)


def test_free_pair_field_has_unit_wronskian():
    grid = build_grid(ZeroPotential(), 1.5)
    u = free_field(1.5, grid)
    v = free_field(1.5, grid, FREE_V)
    assert wronskian(u, v, 0.7) == pytest.approx(1.0, abs=1e-10)


def test_states_without_dense_output(shallow_well):
    solver = RadialSolver(shallow_well)
    nu = 0.5
    grid = solver.grid(nu)
    field = solver.regular(nu, grid)
    radii = [0.4, 1.0, 1.2]
    for r, (value, deriv) in zip(radii, solver.regular_states(nu, radii, grid)):
        expected_value, expected_deriv = field.at(r)
        assert value.value == pytest.approx(expected_value, rel=1e-8)
        assert deriv.value == pytest.approx(expected_deriv, rel=1e-8)
    plus = solver.jost(nu, 1, grid)
    for r, (value, _) in zip(radii, solver.jost_states(nu, 1, radii, grid)):
        assert value.value == pytest.approx(plus.at(r)[0], rel=1e-8)


def test_regular_field_solves_integral_equation(shallow_well):
    field = solve_regular(shallow_well, 1.0 + 0.5j)
    assert volterra_residual(field, shallow_well, stride=2) < 1e-7


def test_jost_field_solves_integral_equation(shallow_well):
    field = solve_jost(shallow_well, 0.5 + 0.5j)
    assert volterra_residual(field, shallow_well, stride=2) < 1e-7


def test_invalid_requests():
    solver = RadialSolver(SquareWell(1.0, 1.0))
    with pytest.raises(DomainError):
        solver.regular(-0.5)
    with pytest.raises(DomainError):
        solver.jost(0.5, 0)
    grid = build_grid(ZeroPotential(), 0.5)
    with pytest.raises(DomainError):
        free_field(0.5, grid, "regular")
    with pytest.raises(DomainError):
        wronskian(free_field(0.5, grid), free_field(1.5, grid), 0.5)


@pytest.mark.parametrize("nu", [1.3 + 0.4j, 2.7 - 0.6j, 0.8 + 1.5j])
def test_jost_solutions_are_even_in_order(square_well, nu):
    grid = RadialSolver(square_well).grid(nu)
    for sign in (1, -1):
        forward = solve_jost(square_well, nu, grid, sign)
        mirrored = solve_jost(square_well, -nu, grid, sign)
        for r in (0.3, 0.7, 1.5):
            assert mirrored.at(r)[0] == pytest.approx(forward.at(r)[0], rel=1e-8)


@pytest.mark.slow
def test_jost_solution_has_no_fourth_quadrant_zeros(strong_well):
    solver = RadialSolver(strong_well)
    for x in np.linspace(0.25, 5.0, 10):
        for y in np.linspace(-5.0, -0.25, 10):
            for value, _ in solver.jost_states(complex(x, y), 1, [0.5, 2.0]):
                assert value.log_abs() > math.log(1e-12)


@pytest.mark.parametrize("potential", [
    AnalyticDecay(1.0, 0.0, 0.5),
    TabulatedPotential(tuple(np.geomspace(0.01, 2.0, 40)), tuple(np.geomspace(0.01, 2.0, 40) ** -2)),
])
def test_inadmissible_potentials_are_rejected(potential):
    with pytest.raises(PreconditionError, match="not admissible"):
        solve_regular(potential, 1.5)
    with pytest.raises(PreconditionError):
        JostSystem(potential)
