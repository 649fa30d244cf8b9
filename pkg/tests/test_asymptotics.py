import math

import pytest

from potentials.models import AnalyticDecay, SquareWell
from regge.asymptotics import edge_formula_check, edge_leading_term, predict_poles_compact
from utils.errors import DomainError


@pytest.mark.parametrize("p", [5, 20, 100, 1000])
def test_lambert_equation_residual(p):
    (prediction,) = predict_poles_compact(2.0, 4.0, [p])
    assert prediction.index == p
    assert prediction.lambert_residual <= 1e-12
    assert prediction.nu_predicted.real > 0 and prediction.nu_predicted.imag > 0


def test_predictions_move_up_and_concentrate():
    predictions = predict_poles_compact(2.0, 4.0, range(1, 201))
    moduli = [abs(p.nu_predicted) for p in predictions]
    assert moduli == sorted(moduli)
    # Im ν / Re ν grows like 2 log p / π
    assert predictions[-1].concentration > predictions[9].concentration > 1.0


def test_predictor_ratios_are_order_one():
    (prediction,) = predict_poles_compact(1.0, 1.0, [1000])
    assert 0.5 < prediction.imag_ratio < 2.0
    assert 0.2 < prediction.real_ratio < 5.0


@pytest.mark.parametrize("a, q_edge, p_range", [(0.0, 1.0, [1]), (1.0, 0.0, [1]), (1.0, 1.0, [0])])
def test_predictor_domain(a, q_edge, p_range):
    with pytest.raises(DomainError):
        predict_poles_compact(a, q_edge, p_range)


def test_leading_term_decays_along_real_axis():
    small = edge_leading_term(2.0, 4.0, 30.0).log_abs()
    large = edge_leading_term(2.0, 4.0, 40.0).log_abs()
    assert large < small


def test_edge_formula_domain():
    with pytest.raises(DomainError):
        edge_formula_check(SquareWell(4.0, 2.0), 5.0)
    with pytest.raises(DomainError):
        edge_formula_check(AnalyticDecay(), 20.0j)


@pytest.mark.slow
def test_edge_formula_on_steep_ray():
    nu = 20.0 * complex(math.cos(0.5 * math.pi - 0.05), math.sin(0.5 * math.pi - 0.05))
    report = edge_formula_check(SquareWell(4.0, 2.0), nu)
    assert abs(report.ratio - 1.0) < 0.5


@pytest.mark.slow
def test_lambert_residual_up_to_index_1000():
    predictions = predict_poles_compact(2.0, 4.0, range(1, 1001))
    assert max(p.lambert_residual for p in predictions) <= 1e-12
    assert [p.index for p in predictions] == list(range(1, 1001))
