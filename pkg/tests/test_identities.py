import math

import pytest

from specfun.bessel import hankel, scaled_bessel_j, scaled_hankel
from specfun.identities import (
    buchholz_integral,
    buchholz_product,
    imaxis_bounds,
    intmodule_closed_form,
    intmodule_quadrature,
    laplace_bessel_square,
    laplace_bessel_square_closed_form,
    legendre_large_degree,
    nicholson_modulus,
    product_bound_ratio,
    uniform_bessel_ratio,
    uniform_hankel_ratio,
    uniform_product_expansion,
)
from specfun.integrals import legendre_q0
from utils.errors import DomainError


@pytest.mark.parametrize("y, r", [(0.5, 1.0), (1.0, 2.0), (-1.0, 3.0), (2.0, 5.0)])
def test_nicholson_integral_and_bounds(y, r):
    value = abs(hankel(1, 1j * y, r))
    assert nicholson_modulus(y, r) == pytest.approx(value ** 2, rel=1e-7)
    assert value <= min(imaxis_bounds(y, r))


@pytest.mark.parametrize("nu, r, big_r", [(0.5 + 0.5j, 0.5, 1.5), (1.5, 1.0, 2.0)])
def test_product_formula(nu, r, big_r):
    assert buchholz_product(nu, r, big_r) == pytest.approx(buchholz_integral(nu, r, big_r), rel=1e-7)


def test_product_formula_domain():
    with pytest.raises(DomainError):
        buchholz_integral(1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        buchholz_integral(-0.5, 0.5, 1.0)


def test_weighted_modulus_integral():
    exact = intmodule_closed_form(2.0, 1.0)
    # ∫|J_2|²/t dt = 1/(2ν)
    assert exact == pytest.approx(0.25)
    assert intmodule_quadrature(2.0, 1.0) == pytest.approx(exact, rel=1e-6)


def test_weighted_modulus_domain():
    with pytest.raises(DomainError):
        intmodule_closed_form(0.0, 1.5)


@pytest.mark.parametrize("nu, decay", [(1.0, 1.0), (0.5 + 0.5j, 2.0)])
def test_laplace_bessel_square(nu, decay):
    exact = laplace_bessel_square_closed_form(nu, decay)
    assert laplace_bessel_square(nu, decay) == pytest.approx(exact, rel=1e-8)


def test_legendre_large_degree():
    mu, eta = 40.0, 1.0
    assert legendre_q0(mu - 0.5, math.cosh(eta)).real == pytest.approx(legendre_large_degree(mu, eta), rel=0.02)


def test_large_order_ratios_tend_to_one():
    assert uniform_bessel_ratio(50.0, 1.0) == pytest.approx(1.0, abs=0.01)
    assert uniform_hankel_ratio(20.0, 1.0) == pytest.approx(1.0, abs=0.03)


def test_imaginary_axis_bounds_need_nonzero_order():
    with pytest.raises(DomainError):
        imaxis_bounds(0.0, 1.0)


def test_product_bound_ratio_at_half_order():
    # |J_{1/2}(r) H_{1/2}(R)| = 2 sin r / (π √(rR))
    r, big_r = 1.0, 2.0
    expected = 2.0 * math.sin(r) / (math.pi * math.sqrt(r * big_r)) * math.sqrt(1.5)
    assert product_bound_ratio(0.5, r, big_r, 1.0) == pytest.approx(expected, rel=1e-8)


def test_uniform_product_expansion_at_large_order():
    nu, s, r = 30.3, 1.0, 2.0
    first, second = uniform_product_expansion(nu, s, r)
    exact = scaled_bessel_j(nu, s) * scaled_hankel(1, nu, r)
    approximation = first + second
    gap = (approximation - exact).log_abs() - exact.log_abs()
    assert math.exp(gap) < 5e-3
    assert second.log_abs() < first.log_abs() - 20.0
