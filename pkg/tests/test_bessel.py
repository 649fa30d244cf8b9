import math

import pytest

from specfun.bessel import bessel_j, bessel_j_deriv, hankel, hankel_deriv, modified_i
from utils.errors import DomainError

from conftest import oracle_bessel_j, oracle_besseli, oracle_hankel1


@pytest.mark.parametrize("x", [0.1, 1.0, 4.5, 12.0])
def test_half_integer_order_closed_form(x):
    expected = math.sqrt(2.0 / (math.pi * x)) * math.sin(x)
    assert bessel_j(0.5, x).value == pytest.approx(expected, rel=1e-9)


def test_series_reports_diagnostics():
    result = bessel_j(2.0, 3.0)
    assert result.terms_used > 1
    assert result.tail_bound <= 1e-14 * abs(result.value)


@pytest.mark.parametrize("nu, x", [(0.3 + 0.7j, 2.0), (2.5 - 1.0j, 6.0), (1.0j, 0.5), (7.25, 9.0)])
def test_bessel_j_against_mpmath(nu, x):
    assert bessel_j(nu, x).value == pytest.approx(oracle_bessel_j(nu, x), rel=1e-11)


@pytest.mark.parametrize("nu, x", [(0.3 + 0.7j, 2.0), (1.5j, 4.0), (2.2, 1.0), (0.6 + 0.4j, 20.0)])
def test_hankel_against_mpmath(nu, x):
    assert hankel(1, nu, x) == pytest.approx(oracle_hankel1(nu, x), rel=1e-9)


def test_hankel_kinds_are_conjugate_for_real_order():
    assert hankel(2, 1.3, 2.0) == pytest.approx(hankel(1, 1.3, 2.0).conjugate(), rel=1e-12)


def test_hankel_near_integer_order():
    assert hankel(1, 1.0, 2.0) == pytest.approx(oracle_hankel1(1.0, 2.0), rel=1e-8)


def test_derivative_recurrence():
    nu, x = 0.7 + 0.2j, 3.0
    h = 1e-5
    numeric = (bessel_j(nu, x + h).value - bessel_j(nu, x - h).value) / (2 * h)
    assert bessel_j_deriv(nu, x) == pytest.approx(numeric, rel=1e-8)
    numeric = (hankel(1, nu, x + h) - hankel(1, nu, x - h)) / (2 * h)
    assert hankel_deriv(1, nu, x) == pytest.approx(numeric, rel=1e-8)


def test_modified_i_against_mpmath():
    assert modified_i(1.5 + 0.5j, 2.0) == pytest.approx(oracle_besseli(1.5 + 0.5j, 2.0), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, 31.0])
def test_argument_outside_working_range(x):
    with pytest.raises(DomainError):
        bessel_j(6.0, x)


def test_order_below_range():
    with pytest.raises(DomainError):
        bessel_j(-1.5, 1.0)


def test_bad_hankel_kind():
    with pytest.raises(DomainError):
        hankel(3, 0.5, 1.0)
