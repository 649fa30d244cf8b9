"""Principal branch of the Lambert W function by Halley iteration."""

from __future__ import annotations

import cmath
import math

from specfun.scaled import Number
from utils.errors import ConvergenceError, DomainError

_INV_E = math.exp(-1.0)
MAX_ITERATIONS = 100


def lambert_w0(z: Number, max_iterations: int = MAX_ITERATIONS) -> complex:
    """
    Solve w e^w = z on the principal branch.

    Args:
        z: Complex argument off the cut (−∞, −1/e)
        max_iterations: Halley iteration limit

    Returns:
        W₀(z)
    """
    z = complex(z)
    if z.imag == 0 and z.real < -_INV_E:
        raise DomainError(f"z={z.real:g} lies on the branch cut of W0")
    if z == 0:
        return 0j

    if abs(z + _INV_E) <= 1.5:
        # branch-point series, accurate near −1/e
        w = cmath.sqrt(2.0 * math.e * z + 2.0) - 1.0
    else:
        log_z = cmath.log(z)
        w = log_z - cmath.log(log_z)

    for _ in range(max_iterations):
        ew = cmath.exp(w)
        residual = w * ew - z
        w1 = w + 1.0 if w != -1 else w
        dw = residual / (ew * w1 - (w + 2.0) * residual / (2.0 * w1))
        w -= dw
        if abs(dw) < 0.7e-16 * (2.0 + abs(w)):
            return w
    raise ConvergenceError(f"Lambert W did not converge for z={z}")


def lambert_residual(w: complex, z: Number) -> float:
    """|w e^w − z| relative to max(1, |z|)."""
    z = complex(z)
    return abs(w * cmath.exp(w) - z) / max(1.0, abs(z))
