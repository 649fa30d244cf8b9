import cmath
import math

import pytest

from specfun.free import (
    free_jost,
    free_jost_functions,
    free_solutions,
    scaled_free_regular,
)
from utils.errors import DomainError

from conftest import oracle_bessel_j, oracle_regular_free


@pytest.mark.parametrize("nu, r", [(0.5, 1.0), (2.3 + 0.4j, 3.0), (0.2j, 0.7), (4.0, 8.0)])
def test_free_pair_has_unit_wronskian(nu, r):
    pair = free_solutions(nu, r)
    assert pair.u * pair.dv - pair.du * pair.v == pytest.approx(1.0, abs=1e-8)


def test_regular_solution_is_riccati_bessel():
    nu, r = 1.25 + 0.5j, 2.0
    expected = math.sqrt(math.pi * r / 2.0) * oracle_bessel_j(nu, r)
    assert free_solutions(nu, r).u == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("nu, r", [(0.0, 0.5), (1.5 + 1.0j, 2.0), (3.7, 6.0)])
def test_normalized_regular_solution(nu, r):
    value, _ = scaled_free_regular(nu, r)
    assert value.value == pytest.approx(oracle_regular_free(nu, r), rel=1e-10)


def test_regular_solution_near_origin():
    nu, r = 2.0 + 1.0j, 1e-3
    value, _ = scaled_free_regular(nu, r)
    assert value.value == pytest.approx(r ** (nu + 0.5), rel=1e-6)


@pytest.mark.parametrize("nu", [0.0, 1.5, 0.7 + 0.8j])
def test_jost_pair_wronskian(nu):
    plus, dplus = free_jost(1, nu, 2.5)
    minus, dminus = free_jost(-1, nu, 2.5)
    assert plus * dminus - dplus * minus == pytest.approx(-2j, abs=1e-8)


def test_half_order_jost_solution_is_plane_wave():
    value, deriv = free_jost(1, 0.5, 2.0)
    assert value == pytest.approx(cmath.exp(2j), abs=1e-13)
    assert deriv == pytest.approx(1j * cmath.exp(2j), abs=1e-12)


def test_half_order_jost_functions():
    free = free_jost_functions(0.5)
    assert free.A == pytest.approx(1.0)
    assert free.alpha0 == pytest.approx(-0.5j)
    assert free.beta0 == pytest.approx(0.5j)


@pytest.mark.parametrize("nu", [0.0, 2.5, 17.0])
def test_real_order_jost_functions_are_conjugate(nu):
    free = free_jost_functions(nu)
    assert free.alpha0 == pytest.approx(free.beta0.conjugate(), rel=1e-14)


def test_large_order_logs_stay_finite():
    free = free_jost_functions(400.0 + 3.0j)
    assert math.isfinite(free.log_beta0.real)
    assert free.log_beta0 - free.log_alpha0 == pytest.approx(1j * (400.5 + 3.0j) * math.pi)


def test_order_out_of_range():
    with pytest.raises(DomainError):
        free_jost_functions(-1.5)
    with pytest.raises(DomainError):
        free_solutions(1.0, 0.0)
