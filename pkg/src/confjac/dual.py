"""Dual numbers: (value, derivative) pairs for forward-mode differentiation.

Arithmetic follows the exact propagation rules, e.g. the product rule
``(a, b) * (c, d) = (a*c, a*d + b*c)`` with no truncation beyond float
rounding. The formulas here mirror the tape kernels in ``_core.pyx``
and ``_pyeval.py`` operation for operation; the test suite pins all
three together bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DerivativeDomainError, EvalDomainError

__all__ = ["Dual"]


def _coerce(x) -> "Dual":
    if isinstance(x, Dual):
        return x
    return Dual(float(x), 0.0)


@dataclass(frozen=True, slots=True)
class Dual:
    value: float
    deriv: float = 0.0

    @classmethod
    def constant(cls, x: float) -> "Dual":
        return cls(float(x), 0.0)

    @classmethod
    def variable(cls, x: float) -> "Dual":
        """Lift the active variable: derivative seed 1."""
        return cls(float(x), 1.0)

    def __add__(self, other) -> "Dual":
        o = _coerce(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other) -> "Dual":
        o = _coerce(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other) -> "Dual":
        return _coerce(other).__sub__(self)

    def __mul__(self, other) -> "Dual":
        o = _coerce(other)
        return Dual(self.value * o.value,
                    self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Dual":
        o = _coerce(other)
        if o.value == 0.0:
            raise EvalDomainError("division by zero")
        return Dual(self.value / o.value,
                    _over(self.deriv * o.value - self.value * o.deriv,
                          o.value * o.value))

    def __rtruediv__(self, other) -> "Dual":
        return _coerce(other).__truediv__(self)

    def __neg__(self) -> "Dual":
        return Dual(-self.value, -self.deriv)

    def __pow__(self, other) -> "Dual":
        o = _coerce(other)
        a, da = self.value, self.deriv
        b, db = o.value, o.deriv
        if db == 0.0:
            # exponent carries no derivative here: plain power rule
            if a > 0.0:
                v = _pow(a, b)
            elif a == 0.0:
                if b > 0.0:
                    v = 0.0
                elif b == 0.0:
                    v = 1.0
                else:
                    raise EvalDomainError("zero base raised to a non-positive power")
            else:
                if math.isfinite(b) and b == math.floor(b):
                    v = _pow(a, b)
                else:
                    raise EvalDomainError("non-integer power of a negative base")
            if da == 0.0:
                d = 0.0
            elif b == 0.0:
                d = 0.0
            elif a == 0.0:
                if b == 1.0:
                    d = da
                elif b > 1.0:
                    d = 0.0
                else:
                    raise DerivativeDomainError(
                        "derivative of a fractional power at zero base")
            else:
                d = b * _pow(a, b - 1.0) * da
            return Dual(v, d)
        if a <= 0.0:
            raise DerivativeDomainError(
                "derivative of a power with varying exponent needs a positive base")
        v = _pow(a, b)
        return Dual(v, v * (db * math.log(a) + b * da / a))

    def __rpow__(self, other) -> "Dual":
        return _coerce(other).__pow__(self)

    def sin(self) -> "Dual":
        return Dual(_sin(self.value), _cos(self.value) * self.deriv)

    def cos(self) -> "Dual":
        return Dual(_cos(self.value), -_sin(self.value) * self.deriv)

    def tan(self) -> "Dual":
        c = _cos(self.value)
        return Dual(_tan(self.value), _over(self.deriv, c * c))

    def exp(self) -> "Dual":
        e = _exp(self.value)
        return Dual(e, e * self.deriv)

    def ln(self) -> "Dual":
        if self.value <= 0.0:
            raise EvalDomainError("logarithm of a non-positive value")
        return Dual(math.log(self.value), self.deriv / self.value)

    def sqrt(self) -> "Dual":
        if self.value < 0.0:
            raise EvalDomainError("square root of a negative value")
        v = math.sqrt(self.value)
        if self.value > 0.0:
            return Dual(v, self.deriv / (2.0 * v))
        if self.deriv == 0.0:
            return Dual(v, 0.0)
        raise DerivativeDomainError("derivative of a square root at zero")


# libm-style wrappers: the math module raises where C quietly returns
# an IEEE special; map those cases back so Dual matches the compiled
# kernel on every input.

def _sin(x: float) -> float:
    try:
        return math.sin(x)
    except ValueError:
        return math.nan


def _cos(x: float) -> float:
    try:
        return math.cos(x)
    except ValueError:
        return math.nan


def _tan(x: float) -> float:
    try:
        return math.tan(x)
    except ValueError:
        return math.nan


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _pow(x: float, y: float) -> float:
    try:
        return math.pow(x, y)
    except OverflowError:
        if x < 0.0 and math.fmod(y, 2.0) != 0.0:
            return -math.inf
        return math.inf
    except ValueError:
        return math.nan


def _over(num: float, den: float) -> float:
    """num / den when den may be +0.0 from underflow; C divides quietly."""
    if den != 0.0:
        return num / den
    if num > 0.0:
        return math.inf
    if num < 0.0:
        return -math.inf
    return math.nan
