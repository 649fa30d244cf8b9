"""
Log-scaled complex numbers.

Quantities such as Γ(ν+1), β(ν) or r^{ν+1/2} leave the double range long
before the angular momenta the toolkit works with. A ``Scaled`` keeps a
mantissa of order one and a real exponent so that

    value = mantissa * exp(exponent)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

Number = Union[int, float, complex]


@dataclass(frozen=True)
class Scaled:
    mantissa: complex
    exponent: float = 0.0

    @classmethod
    def from_value(cls, value: Number) -> "Scaled":
        value = complex(value)
        if value == 0:
            return cls(0j, 0.0)
        modulus = abs(value)
        return cls(value / modulus, math.log(modulus))

    @classmethod
    def from_log(cls, log_value: Number) -> "Scaled":
        log_value = complex(log_value)
        if math.isinf(log_value.real) and log_value.real < 0:
            return cls(0j, 0.0)
        return cls(cmath.exp(1j * log_value.imag), log_value.real)

    @classmethod
    def power(cls, base: Number, exponent: Number) -> "Scaled":
        """Principal-branch base**exponent."""
        return cls.from_log(complex(exponent) * cmath.log(complex(base)))

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def value(self) -> complex:
        if self.is_zero:
            return 0j
        with np.errstate(over="ignore"):
            scale = np.exp(self.exponent)
        return complex(self.mantissa * scale)

    def normalized(self) -> "Scaled":
        if self.is_zero:
            return Scaled(0j, 0.0)
        modulus = abs(self.mantissa)
        return Scaled(self.mantissa / modulus, self.exponent + math.log(modulus))

    def log(self) -> complex:
        if self.is_zero:
            return complex(-math.inf, 0.0)
        return cmath.log(self.mantissa) + self.exponent

    def log_abs(self) -> float:
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent

    def conjugate(self) -> "Scaled":
        return Scaled(self.mantissa.conjugate(), self.exponent)

    def _coerce(self, other) -> "Scaled":
        return other if isinstance(other, Scaled) else Scaled.from_value(other)

    def __mul__(self, other) -> "Scaled":
        other = self._coerce(other)
        return Scaled(self.mantissa * other.mantissa, self.exponent + other.exponent).normalized()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scaled":
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by a zero Scaled value")
        return Scaled(self.mantissa / other.mantissa, self.exponent - other.exponent).normalized()

    def __rtruediv__(self, other) -> "Scaled":
        return self._coerce(other) / self

    def __add__(self, other) -> "Scaled":
        other = self._coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        top = max(self.exponent, other.exponent)
        mantissa = (self.mantissa * math.exp(self.exponent - top)
                    + other.mantissa * math.exp(other.exponent - top))
        return Scaled(mantissa, top).normalized()

    __radd__ = __add__

    def __neg__(self) -> "Scaled":
        return Scaled(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "Scaled":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Scaled":
        return self._coerce(other) - self


def scaled_sum(terms) -> Scaled:
    """Sum of Scaled terms aligned to the largest exponent in one pass."""
    terms = [t for t in terms if not t.is_zero]
    if not terms:
        return Scaled(0j, 0.0)
    top = max(t.exponent for t in terms)
    real = math.fsum((t.mantissa * math.exp(t.exponent - top)).real for t in terms)
    imag = math.fsum((t.mantissa * math.exp(t.exponent - top)).imag for t in terms)
    return Scaled(complex(real, imag), top).normalized()
