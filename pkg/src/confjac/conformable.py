"""Conformable (fractional-order) derivatives, partials and Jacobians.

For a function that is classically differentiable at a point with all
coordinates positive, the order-alpha conformable Jacobian equals the
classical Jacobian with column j scaled by ``a_j**(1-alpha)``. That
identity is the analytic computation path used throughout this module;
the limit-definition counterpart lives in :mod:`confjac.oracle` and is
kept independent so it can certify this path.

All operations are pure functions over immutable inputs and accept
either the wrapped types (Order, PositivePoint) or plain numbers and
sequences, which are validated on the spot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .autodiff import JacobianMatrix, classical_jacobian, derivative_1d
from .engine import evaluate, get_engine
from .errors import (
    CompositionDomainError, DimensionError, NonPositiveError, OrderRangeError,
)
from .expr import FunctionDef

__all__ = [
    "Order", "PositivePoint", "ScalingMatrix", "scaling_matrix",
    "conformable_jacobian", "conformable_partial", "conformable_derivative",
    "chain_rhs", "chain_rhs_1d", "component_rows",
]


@dataclass(frozen=True, slots=True)
class Order:
    """Fractional order confined to the interval (0, 1]."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        if not (0.0 < self.alpha <= 1.0):  # also rejects nan
            raise OrderRangeError(
                f"order must lie in (0, 1], got {self.alpha}")


@dataclass(frozen=True, slots=True)
class PositivePoint:
    """Evaluation point with every coordinate finite and strictly positive."""

    coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in np.atleast_1d(np.asarray(self.coords, dtype=np.float64)))
        for j, c in enumerate(coords):
            if not (math.isfinite(c) and c > 0.0):
                raise NonPositiveError(
                    f"coordinate {j} is {c}, every coordinate must be finite and > 0")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=np.float64)


@dataclass(frozen=True, slots=True)
class ScalingMatrix:
    """Diagonal linear map with strictly positive, finite diagonal."""

    diagonal: tuple[float, ...]

    def __post_init__(self):
        diagonal = tuple(float(d) for d in self.diagonal)
        for j, d in enumerate(diagonal):
            if not (math.isfinite(d) and d > 0.0):
                raise NonPositiveError(
                    f"diagonal entry {j} is {d}, must be finite and > 0")
        object.__setattr__(self, "diagonal", diagonal)

    def array(self) -> np.ndarray:
        return np.asarray(self.diagonal, dtype=np.float64)

    def as_matrix(self) -> np.ndarray:
        return np.diag(self.array())


def _as_order(alpha) -> Order:
    return alpha if isinstance(alpha, Order) else Order(alpha)


def _as_point(a, n: int) -> PositivePoint:
    point = a if isinstance(a, PositivePoint) else PositivePoint(tuple(np.atleast_1d(a)))
    if point.n != n:
        raise DimensionError(
            f"point has {point.n} coordinate(s), function takes {n}")
    return point


ExponentSign = Literal["1-alpha", "alpha-1"]


def scaling_matrix(a, alpha, exponent_sign: ExponentSign = "1-alpha") -> ScalingMatrix:
    """Diagonal map with entries ``a_j ** (1-alpha)`` (or ``a_j ** (alpha-1)``).

    The ``1-alpha`` form turns a classical Jacobian into a conformable
    one; the ``alpha-1`` form is the middle factor of the chain rule.
    At alpha = 1 either form is the identity.
    """
    point = a if isinstance(a, PositivePoint) else PositivePoint(tuple(np.atleast_1d(a)))
    order = _as_order(alpha)
    if exponent_sign == "1-alpha":
        e = 1.0 - order.alpha
    elif exponent_sign == "alpha-1":
        e = order.alpha - 1.0
    else:
        raise ValueError(f"exponent_sign must be '1-alpha' or 'alpha-1', got {exponent_sign!r}")
    return ScalingMatrix(tuple(c ** e for c in point.coords))


def conformable_jacobian(f: FunctionDef, a, alpha) -> JacobianMatrix:
    """Order-alpha conformable Jacobian at a positive point.

    Entry (i, j) is ``a_j**(1-alpha)`` times the classical partial of
    component i with respect to variable j. At alpha = 1 this is the
    classical Jacobian, entry for entry.
    """
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    classical = classical_jacobian(f, point.coords)
    scale = scaling_matrix(point, order).array()
    return JacobianMatrix(classical.entries * scale, f.variables)


def conformable_partial(f: FunctionDef, a, j: int, alpha) -> float:
    """Order-alpha conformable partial of a scalar function in variable j.

    ``j`` is a 0-based variable index. Equals entry (0, j) of the
    conformable Jacobian of the same function, computed on the same
    code path.
    """
    if f.m != 1:
        raise DimensionError(
            f"conformable_partial needs a scalar function, got m={f.m}")
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    if not 0 <= j < f.n:
        raise IndexError(f"variable index {j} out of range for {f.n} variable(s)")
    _, ders = get_engine(f).dual_sweep(point.array(), j)
    scale_j = point.coords[j] ** (1.0 - order.alpha)
    return float(ders[0] * scale_j)


def conformable_derivative(f: FunctionDef, t: float, alpha) -> float:
    """One-dimensional conformable derivative ``t**(1-alpha) * f'(t)``.

    Defined for t > 0 and functions of a single variable.
    """
    if f.n != 1 or f.m != 1:
        raise DimensionError(
            f"conformable_derivative needs a scalar function of one variable, "
            f"got m={f.m}, n={f.n}")
    point = _as_point((t,), 1)
    order = _as_order(alpha)
    w = point.coords[0] ** (1.0 - order.alpha)
    return w * derivative_1d(f, point.coords[0])


def _inner_values(f: FunctionDef, point: PositivePoint) -> np.ndarray:
    values = evaluate(f, point.coords)
    for i, v in enumerate(values):
        if not v > 0.0:
            raise CompositionDomainError(
                f"inner component {i} evaluates to {v} at the base point; "
                f"the chain rule needs every inner value > 0")
    return values


def chain_rhs(g: FunctionDef, f: FunctionDef, a, alpha) -> JacobianMatrix:
    """Chain-rule product for the composition g(f(x)) at a positive point.

    Computes ``Jg_alpha(f(a)) @ diag(f_i(a)**(alpha-1)) @ Jf_alpha(a)``,
    the right-hand side of the conformable chain rule. The direct left
    side is ``conformable_jacobian(compose(g, f), a, alpha)``.
    """
    if g.n != f.m:
        raise DimensionError(
            f"cannot compose: outer takes {g.n} variable(s) but inner "
            f"produces {f.m} component(s)")
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    fa = _inner_values(f, point)
    inner_point = PositivePoint(tuple(fa))
    middle = scaling_matrix(inner_point, order, "alpha-1").array()
    outer = conformable_jacobian(g, inner_point, order)
    inner = conformable_jacobian(f, point, order)
    entries = (outer.entries * middle) @ inner.entries
    return JacobianMatrix(entries, f.variables)


def chain_rhs_1d(g: FunctionDef, f: FunctionDef, t: float, alpha) -> float:
    """Scalar chain-rule product for one-dimensional compositions.

    ``D_alpha(g)(f(t)) * D_alpha(f)(t) * f(t)**(alpha-1)`` for t > 0 and
    f(t) > 0.
    """
    if not (f.n == 1 and f.m == 1 and g.n == 1 and g.m == 1):
        raise DimensionError("chain_rhs_1d needs scalar 1-variable functions")
    point = _as_point((t,), 1)
    order = _as_order(alpha)
    ft = float(_inner_values(f, point)[0])
    return (conformable_derivative(g, ft, order)
            * conformable_derivative(f, point.coords[0], order)
            * ft ** (order.alpha - 1.0))


def component_rows(f: FunctionDef, a, alpha) -> tuple[JacobianMatrix, ...]:
    """Conformable Jacobians of the individual components, in row order.

    Stacking the returned 1-by-n rows reproduces
    ``conformable_jacobian(f, a, alpha)`` bit for bit.
    """
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    return tuple(conformable_jacobian(f.component(i), point, order)
                 for i in range(f.m))
