import cmath
import math
from concurrent.futures import ThreadPoolExecutor

import pytest

from config.settings import ToleranceConfig
from potentials.models import ZeroPotential
from scattering.jost import JostSystem, jost_functions, regge_sigma
from specfun.free import free_jost_functions
from utils.errors import PreconditionError


@pytest.mark.parametrize("nu", [0.3, 2.0 + 1.0j, 0.5j])
def test_zero_potential_has_free_jost_functions(nu):
    data = jost_functions(ZeroPotential(), nu)
    free = free_jost_functions(nu)
    assert data.normalized_beta == pytest.approx(1.0, abs=1e-8)
    assert data.alpha == pytest.approx(free.alpha0, rel=1e-8)
    assert data.sigma == pytest.approx(1.0, abs=1e-8)


def test_s_wave_sigma_of_unit_well(square_well):
    # q = k² inside the well: δ₀ = π/4 − 1
    sigma = regge_sigma(square_well, 0.5)
    assert sigma == pytest.approx(cmath.exp(2j * (math.pi / 4.0 - 1.0)), rel=1e-7)


@pytest.mark.parametrize("nu", [0.5, 1.5, 4.0])
def test_real_order_unitarity(shallow_well, nu):
    data = JostSystem(shallow_well).evaluate(nu)
    assert abs(data.sigma) == pytest.approx(1.0, abs=1e-8)
    assert data.alpha == pytest.approx(data.beta.conjugate(), rel=1e-8)
    assert data.r_independence_residual < 1e-6


def test_beta_alone_matches_full_evaluation(square_well_system):
    nu = 1.0 + 0.5j
    full = square_well_system.evaluate(nu)
    assert square_well_system.beta(nu).value == pytest.approx(full.beta, rel=1e-10)
    assert square_well_system.normalized_beta(nu) == pytest.approx(full.normalized_beta, rel=1e-10)


def test_fields_are_cached(square_well_system):
    first = square_well_system.fields(0.5)
    assert square_well_system.fields(0.5) is first
    assert first[0] is square_well_system.regular(0.5)


def test_sigma_refuses_pole_neighbourhood():
    system = JostSystem(ZeroPotential(), ToleranceConfig(near_pole=10.0))
    with pytest.raises(PreconditionError):
        system.sigma(1.0)


FIRST_QUADRANT = [complex(x, y) for x in (0.5, 1.5, 3.0) for y in (0.5, 1.5, 3.0)]


@pytest.mark.parametrize("nu", FIRST_QUADRANT)
def test_alpha_dominates_beta_in_first_quadrant(square_well_system, nu):
    data = square_well_system.evaluate(nu)
    # |α|² − |β|² = 2 Re ν Im ν ∫|φ|²/r² dr > 0
    assert data.log_alpha.real > data.log_beta.real


def test_concurrent_field_requests_share_one_cache_entry(square_well_system):
    nu = 1.5 + 0.25j
    with ThreadPoolExecutor(max_workers=4) as pool:
        fields = list(pool.map(square_well_system.fields, [nu] * 8))
    assert all(f is fields[0] for f in fields)
    assert all(f[0] is square_well_system.regular(nu) for f in fields)
