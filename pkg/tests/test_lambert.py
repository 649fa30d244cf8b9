import math

import pytest
from scipy import special

from specfun.lambert import lambert_residual, lambert_w0
from utils.errors import DomainError


@pytest.mark.parametrize("z", [0.5, math.e, 10.0 + 3.0j, -0.2 + 0.1j, 1e6j, -0.36])
def test_matches_scipy(z):
    w = lambert_w0(z)
    assert w == pytest.approx(complex(special.lambertw(z, 0)), rel=1e-13, abs=1e-15)
    assert lambert_residual(w, z) < 1e-14


def test_special_values():
    assert lambert_w0(0) == 0
    assert lambert_w0(math.e) == pytest.approx(1.0)
    assert lambert_w0(-1.0 / math.e) == pytest.approx(-1.0, abs=1e-7)


def test_branch_cut_rejected():
    with pytest.raises(DomainError):
        lambert_w0(-1.0)
