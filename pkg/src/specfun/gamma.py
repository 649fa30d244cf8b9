"""Complex gamma function with explicit pole checks and a log-scaled variant."""

from __future__ import annotations

from scipy import special

from specfun.scaled import Number, Scaled
from utils.errors import GammaPoleError


def _check_pole(z: complex) -> None:
    if z.imag == 0 and z.real <= 0 and float(z.real).is_integer():
        raise GammaPoleError(f"Gamma has a pole at z={z.real:g}")


def gamma_complex(z: Number) -> complex:
    """
    Gamma function of a complex argument.

    Args:
        z: Any complex number except the non-positive integers

    Returns:
        Γ(z); overflows to inf for |z| beyond ~171 along the real axis
    """
    z = complex(z)
    _check_pole(z)
    return complex(special.gamma(z))


def log_gamma(z: Number) -> complex:
    """Principal branch of log Γ(z), analytic off the non-positive real axis."""
    z = complex(z)
    _check_pole(z)
    return complex(special.loggamma(z))


def reciprocal_gamma(z: Number) -> complex:
    """1/Γ(z); entire, zero at the poles of Γ."""
    return complex(special.rgamma(complex(z)))


def scaled_gamma(z: Number) -> Scaled:
    return Scaled.from_log(log_gamma(z))
