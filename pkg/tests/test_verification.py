import json
import math

import pytest

from evaluation.verification import CheckResult, VerificationReport, Verifier
from potentials.models import AnalyticDecay, ZeroPotential, scale
from utils.errors import ConfigError


@pytest.fixture
def verifier():
    return Verifier(ZeroPotential())


def test_identity_suites_pass(verifier):
    report = verifier.run(["nicholson"])
    assert report.passed, [(c.name, c.residual) for c in report.failures]
    assert set(report.suites()) == {"nicholson"}
    assert len(report.checks) == 8


def test_tol_overrides_residual_checks_only():
    checks = Verifier(ZeroPotential(), tol=1e-30).run_suite("nicholson")
    moduli = [c for c in checks if c.name.startswith("modulus")]
    bounds = [c for c in checks if c.name.startswith("bound")]
    assert moduli and all(c.tolerance == 1e-30 for c in moduli)
    assert bounds and all(c.tolerance == 0.0 and c.passed for c in bounds)


def test_unknown_suite(verifier):
    with pytest.raises(ConfigError):
        verifier.run_suite("parseval")


def test_failed_hypothesis_aborts_suite():
    complex_scaled = scale(AnalyticDecay(), 0.1j)
    checks = Verifier(complex_scaled).run_suite("conjugation")
    assert len(checks) == 1
    assert checks[0].name == "aborted"
    assert not checks[0].passed
    assert "real potential" in checks[0].detail


def test_report_json():
    report = VerificationReport([
        CheckResult("wronskian", "W(u,v)", 1e-12, 1e-7),
        CheckResult("link", "aborted", math.inf, 0.0, "boom"),
    ])
    document = json.loads(report.to_json())
    assert document["passed"] is False
    assert document["suites"]["wronskian"]["passed"] is True
    assert document["suites"]["link"]["checks"][0]["residual"] == "inf"
    assert [c.suite for c in report.failures] == ["link"]


@pytest.mark.slow
def test_free_exactness(verifier):
    report = verifier.run(["free-exactness"])
    assert report.passed, [(c.name, c.residual) for c in report.failures]
