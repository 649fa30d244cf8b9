import math
from concurrent.futures import ThreadPoolExecutor

import mpmath
import pytest

from config.settings import GridConfig, ToleranceConfig
from potentials.models import AnalyticDecay, SquareWell, ZeroPotential
from scattering.jost import JostSystem
from scattering.phase import (
    ARG_TRACKED,
    SMALL_PHASE,
    PhaseShiftTracker,
    born_tail,
    edge_phase_envelope,
    generalized_phase_shift,
    herglotz_margin,
    log1p_complex,
    necessary_condition_envelope,
    phase_shift,
    phase_shift_difference,
    phase_shift_small,
    physical_order,
    predicted_magnitude,
    super_exponential_envelope,
)
from utils.errors import DomainError, PreconditionError

from conftest import square_well_s_wave


def unit_well_phase(nu: float) -> float:
    """Exact δ(ν) of SquareWell(1, 1) at k = 1, where φ = r^{ν+1/2} inside."""
    p = nu + 0.5

    def riccati(bessel):
        return lambda r: mpmath.sqrt(mpmath.pi * r / 2) * bessel(nu, r)

    u, w = riccati(mpmath.besselj), riccati(mpmath.bessely)
    numerator = mpmath.diff(u, 1) - p * u(1)
    denominator = mpmath.diff(w, 1) - p * w(1)
    return float(mpmath.atan(numerator / denominator))


def tracker(potential, anchor_offset=10.0):
    return PhaseShiftTracker(JostSystem(potential), anchor_offset=anchor_offset)


def test_physical_order():
    assert physical_order(0) == 0.5
    assert physical_order(3, 2) == 3.0
    assert physical_order(2, 4) == 3.0
    with pytest.raises(DomainError):
        physical_order(-1)
    with pytest.raises(DomainError):
        physical_order(1, 1)


def test_shallow_well_s_wave():
    shift = tracker(SquareWell(0.5, 1.0)).phase_shift(0.5, 0)
    assert shift.method == ARG_TRACKED
    assert shift.value == pytest.approx(square_well_s_wave(0.5, 1.0), rel=1e-7)


def test_unit_well_s_wave():
    shift = tracker(SquareWell(1.0, 1.0)).phase_shift(0.5, 0)
    assert shift.value == pytest.approx(math.pi / 4.0 - 1.0, rel=1e-7)
    assert unit_well_phase(0.5) == pytest.approx(math.pi / 4.0 - 1.0, rel=1e-12)


def test_tracked_higher_wave():
    shift = tracker(SquareWell(1.0, 1.0)).phase_shift(2.5, 2)
    assert shift.method == ARG_TRACKED
    assert shift.value == pytest.approx(unit_well_phase(2.5), rel=1e-5)


def test_small_phase_route_for_high_waves():
    shift = tracker(SquareWell(1.0, 1.0)).phase_shift(6.5, 6)
    assert shift.method == SMALL_PHASE
    assert shift.value == pytest.approx(unit_well_phase(6.5), rel=1e-6)
    assert shift.value < 0


def test_small_phase_rejects_large_shifts():
    with pytest.raises(PreconditionError):
        phase_shift_small(SquareWell(4.0, 2.0), 0.5)
    with pytest.raises(DomainError):
        phase_shift_small(SquareWell(1.0, 1.0), 0.5 + 0.1j)


def test_zero_potential_has_no_phase_shift():
    for l in range(4):
        assert phase_shift(ZeroPotential(), l).value == 0.0


@pytest.mark.slow
def test_default_anchor_matches_short_anchor():
    well = SquareWell(0.5, 1.0)
    assert phase_shift(well, 1).value == pytest.approx(tracker(well).phase_shift(1.5, 1).value, abs=1e-9)


def test_complex_order_functionals():
    system = JostSystem(ZeroPotential())
    assert generalized_phase_shift(system, 0.3 + 0.2j) == pytest.approx(0.0, abs=1e-8)
    assert herglotz_margin(JostSystem(SquareWell(0.5, 1.0)), 1.5) == pytest.approx(0.0, abs=1e-8)


def test_phase_shift_difference_of_equal_potentials():
    well = SquareWell(1.0, 1.0)
    assert phase_shift_difference(well, SquareWell(1.0, 1.0), 2) == pytest.approx(0.0, abs=1e-12)


def test_phase_shift_difference_matches_subtraction():
    first, second = SquareWell(1.0, 1.0), SquareWell(0.5, 1.0)
    difference = phase_shift_difference(first, second, 0)
    expected = (math.pi / 4.0 - 1.0) - square_well_s_wave(0.5, 1.0)
    assert difference == pytest.approx(expected, rel=1e-7)


def test_envelopes():
    assert edge_phase_envelope(1.0, 1.0, 6) < 0
    assert edge_phase_envelope(-1.0, 1.0, 6) > 0
    with pytest.raises(DomainError):
        edge_phase_envelope(1.0, 1.0, 0)
    assert necessary_condition_envelope(1.0, 2.5) > necessary_condition_envelope(1.0, 5.5) > 0
    assert predicted_magnitude(ZeroPotential(), 3) == 0.0
    assert predicted_magnitude(AnalyticDecay(), 3) is None
    assert predicted_magnitude(SquareWell(1.0, 1.0), 6) == pytest.approx(abs(edge_phase_envelope(1.0, 1.0, 6)))


def test_log1p_complex_keeps_small_digits():
    z = 1e-12 + 2e-12j
    assert log1p_complex(z) == pytest.approx(z, rel=1e-11)
    assert log1p_complex(0.5j) == pytest.approx(complex(mpmath.log(1 + 0.5j)))


def first_order_phase(potential: AnalyticDecay, nu: float, lower: float = 0.0) -> float:
    """−∫_lower^∞ (πr/2) J_ν(r)² q(r) dr."""
    def integrand(r):
        q = potential.amplitude * mpmath.exp(-potential.c * r) * (1 + r) ** -potential.p
        return mpmath.pi * r / 2 * mpmath.besselj(nu, r) ** 2 * q

    edges = sorted({lower, *(x for x in (nu / 2, nu, 2 * nu, 4 * nu) if x > lower)})
    return -float(mpmath.quad(integrand, edges + [mpmath.inf]))


@pytest.mark.parametrize("nu", [10.0, 20.0])
def test_small_phase_of_decaying_potential_matches_first_order(nu):
    potential = AnalyticDecay(1.0, 1.0, 2.0)
    shift = phase_shift_small(potential, nu)
    assert shift.value == pytest.approx(first_order_phase(potential, nu), rel=1e-3)


def test_small_phase_ignores_tail_tolerance():
    potential = AnalyticDecay(1.0, 1.0, 2.0)
    reference = phase_shift_small(potential, 20.0).value
    for tail_tol in (1e-6, 1e-8):
        system = JostSystem(potential, ToleranceConfig(tail_tol=tail_tol))
        assert phase_shift_small(potential, 20.0, system=system).value == pytest.approx(reference, rel=1e-3)


def test_born_tail_matches_quadrature_beyond_boundary():
    potential = AnalyticDecay(1.0, 1.0, 2.0)
    tail, remaining = born_tail(potential, 20.0, 17.0, cap=200.0)
    assert -tail.real == pytest.approx(first_order_phase(potential, 20.0, lower=17.0), rel=1e-6)
    assert abs(tail.imag) < 1e-12 * abs(tail)
    assert remaining <= 1e-10 * abs(tail)


def test_born_tail_reports_slow_decay():
    _, remaining = born_tail(AnalyticDecay(1.0, 0.0, 2.0), 5.0, 10.0, cap=40.0)
    assert remaining > 1e-2


def test_small_phase_refuses_unbounded_tail():
    system = JostSystem(AnalyticDecay(1.0, 1.0, 2.0), grid_config=GridConfig(r_max_cap=20.0))
    with pytest.raises(PreconditionError):
        PhaseShiftTracker(system).small_phase(20.0)


@pytest.mark.parametrize("nu", [complex(x, -y) for x in (0.5, 1.5, 3.0) for y in (0.5, 1.5, 3.0)])
def test_herglotz_sign_in_fourth_quadrant(nu):
    assert herglotz_margin(JostSystem(SquareWell(1.0, 1.0)), nu) > 0


def test_decaying_potential_stays_under_exponential_envelope():
    potential = AnalyticDecay(1.0, 1.0, 2.0)
    system = JostSystem(potential)
    scaled = [abs(phase_shift_small(potential, nu, system).value) / super_exponential_envelope(nu, 0.9)
              for nu in (10.0, 15.0, 20.0)]
    assert all(value <= scaled[0] for value in scaled[1:]), scaled


def test_exponential_envelope_domain():
    assert super_exponential_envelope(20.0, 0.9) < super_exponential_envelope(10.0, 0.9)
    with pytest.raises(DomainError):
        super_exponential_envelope(0.0, 0.9)


def test_tracker_cache_is_shared_across_threads():
    shifts = tracker(SquareWell(1.0, 1.0))
    with ThreadPoolExecutor(max_workers=4) as pool:
        values = list(pool.map(shifts.log_sigma, [1.5] * 8))
    assert len(set(values)) == 1
    assert list(shifts._log_sigma) == [1.5]
