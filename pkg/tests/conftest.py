import math

import mpmath
import pytest

from config.settings import GridConfig, ToleranceConfig
from potentials.models import AnalyticDecay, SmoothCompact, SquareWell, ZeroPotential
from scattering.jost import JostSystem

mpmath.mp.dps = 30


def mp_complex(value) -> complex:
    return complex(mpmath.mpc(value))


def oracle_bessel_j(nu: complex, x: float) -> complex:
    return mp_complex(mpmath.besselj(mpmath.mpc(nu), x))


def oracle_hankel1(nu: complex, x: float) -> complex:
    return mp_complex(mpmath.hankel1(mpmath.mpc(nu), x))


def oracle_besseli(nu: complex, x: float) -> complex:
    return mp_complex(mpmath.besseli(mpmath.mpc(nu), x))


def oracle_regular_free(nu: complex, r: float) -> complex:
    """φ₀(r) = Γ(ν+1) 2^ν √r J_ν(r), normalized to r^{ν+1/2} at the origin."""
    nu = mpmath.mpc(nu)
    return mp_complex(mpmath.gamma(nu + 1) * mpmath.power(2, nu) * mpmath.sqrt(r) * mpmath.besselj(nu, r))


def square_well_s_wave(q0: float, a: float) -> float:
    """Exact s-wave phase shift of a shallow square well (q0 < 1) at k = 1."""
    kappa = math.sqrt(1.0 - q0)
    return math.atan(math.tan(kappa * a) / kappa) - a


@pytest.fixture
def tolerances():
    return ToleranceConfig()


@pytest.fixture
def grid_config():
    return GridConfig()


@pytest.fixture
def zero_potential():
    return ZeroPotential()


@pytest.fixture
def square_well():
    return SquareWell(1.0, 1.0)


@pytest.fixture
def shallow_well():
    return SquareWell(0.5, 1.0)


@pytest.fixture
def strong_well():
    return SquareWell(4.0, 2.0)


@pytest.fixture
def analytic_potential():
    return AnalyticDecay(1.0, 1.0, 2.0)


@pytest.fixture
def smooth_potential():
    return SmoothCompact((1.0, -0.5), 1.5, 0.0)


@pytest.fixture
def square_well_system(square_well):
    return JostSystem(square_well)
