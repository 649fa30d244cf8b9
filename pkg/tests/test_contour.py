import cmath
import math

import pytest

from potentials.models import SquareWell, ZeroPotential
from regge.contour import ContourCounter, NormalizedJost, SearchRegion, count_zeros
from scattering.jost import JostSystem
from utils.errors import ContourError, DomainError


def log_of(*zeros, poles=()):
    """log Π(ν − zᵢ)/Π(ν − pⱼ), −inf at an exact zero."""
    def log_func(nu: complex) -> complex:
        total = 0j
        for zero in zeros:
            if nu == zero:
                return complex(-math.inf, 0.0)
            total += cmath.log(nu - zero)
        for pole in poles:
            total -= cmath.log(nu - pole)
        return total
    return log_func


def test_region_validation():
    with pytest.raises(DomainError):
        SearchRegion(-1.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        SearchRegion(1.0, 1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        SearchRegion.from_bounds([0.0, 1.0, 0.0])


def test_region_geometry():
    region = SearchRegion.from_bounds([0, 4, 1, 3])
    assert region.center == 2 + 2j
    assert region.corners[0] == 1j and region.corners[2] == 4 + 3j
    left, right = region.split()
    assert left.bounds == (0.0, 2.0, 1.0, 3.0) and right.bounds == (2.0, 4.0, 1.0, 3.0)
    assert region.contains(4 + 3j) and not region.contains(4.1 + 3j)
    assert region.contains(4.1 + 3j, slack=0.2)


def test_perturbation_moves_axis_sides_inward():
    region = SearchRegion(0.0, 1.0, 0.5, 1.5)
    moved = region.perturbed(0)
    step = 1e-3 * region.diameter
    assert moved.re_lo == pytest.approx(step)
    assert moved.im_lo == pytest.approx(0.5 - step)
    assert moved.re_hi == pytest.approx(1.0 + step)


@pytest.mark.parametrize("zeros, expected", [
    ((1 + 1j, 2 + 2j), 2),
    ((1 + 1j, 5 + 1j), 1),
    ((4 + 4j,), 0),
    ((1.3 + 0.7j, 1.3 + 0.7j), 2),
])
def test_winding_counts_zeros(zeros, expected):
    count, used = ContourCounter(log_of(*zeros)).winding(SearchRegion(0.0, 3.0, 0.0, 3.0))
    assert count == expected
    assert used.bounds == (0.0, 3.0, 0.0, 3.0)


def test_poles_count_negatively():
    count, _ = ContourCounter(log_of(1 + 1j, poles=(2 + 2j, 2.5 + 0.5j))).winding(SearchRegion(0.0, 3.0, 0.0, 3.0))
    assert count == -1


def test_contour_through_a_zero_is_perturbed():
    region = SearchRegion(1.0, 2.0, 0.5, 1.5)
    count, used = ContourCounter(log_of(1.5 + 0.5j)).winding(region)
    assert count == 1
    assert used != region and used.contains(1.5 + 0.5j)


def test_non_finite_values_raise():
    counter = ContourCounter(lambda nu: complex(math.nan, 0.0))
    with pytest.raises(ContourError):
        counter.winding(SearchRegion(0.0, 1.0, 0.0, 1.0))


def test_zero_potential_has_no_regge_poles():
    assert count_zeros(ZeroPotential(), SearchRegion(0.5, 3.0, 0.5, 3.0)) == 0


def test_normalized_jost_caches_values():
    func = NormalizedJost(JostSystem(ZeroPotential()))
    assert func(1 + 1j) == pytest.approx(1.0, abs=1e-8)
    func.log(1 + 1j)
    assert func.evaluations == 1
    with pytest.raises(DomainError):
        NormalizedJost(JostSystem(ZeroPotential()), "gamma")


@pytest.mark.slow
def test_alpha_has_no_zeros_mirroring_fourth_quadrant_poles():
    # β(ν̄) = conj α(ν) for real q, so these would be zeros of β below the real axis
    assert count_zeros(SquareWell(4.0, 2.0), SearchRegion(0.0, 6.0, 0.0, 6.0), which="alpha") == 0
