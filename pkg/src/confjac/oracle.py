"""Finite-difference oracle for the limit definitions of the derivatives.

This module evaluates the defining difference quotients directly, with
forward (one-sided) steps matching the limit structure, and accelerates
them by Richardson extrapolation on a first-order base scheme. Only
function *values* enter here; none of the analytic derivative identities
are used, so the results independently certify the analytic module.

Steps shrink geometrically, ``h_k = h0 / shrink**k``. The initial step
is scaled per coordinate by ``max(1, a_j**alpha)`` so the physical
perturbation ``h * a_j**(1-alpha)`` stays proportionate for large or
small coordinates. The reported error estimate is the magnitude of the
last extrapolation correction, floored at an amplified roundoff bound;
a quotient sequence whose corrections grow two levels in a row (above
that bound) raises NonConvergenceError instead of returning garbage.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .autodiff import JacobianMatrix
from .conformable import Order, PositivePoint, _as_order, _as_point
from .engine import get_engine
from .errors import DefinitionError, DimensionError, NonConvergenceError
from .expr import FunctionDef

__all__ = [
    "FDConfig", "FDResult", "FDJacobianResult",
    "fd_conformable_derivative", "fd_conformable_partial",
    "fd_conformable_jacobian",
]

_EPS = sys.float_info.epsilon


@dataclass(frozen=True, slots=True)
class FDConfig:
    """Step schedule for the difference quotients.

    h0: initial step before per-coordinate scaling; levels: number of
    geometrically shrinking steps (and Richardson levels); shrink: the
    step ratio between levels.
    """

    h0: float = 1e-2
    levels: int = 6
    shrink: float = 2.0

    def __post_init__(self):
        if not self.h0 > 0.0:
            raise DefinitionError(f"h0 must be > 0, got {self.h0}")
        if int(self.levels) != self.levels or self.levels < 2:
            raise DefinitionError(f"levels must be an integer >= 2, got {self.levels}")
        object.__setattr__(self, "levels", int(self.levels))
        if not self.shrink > 1.0:
            raise DefinitionError(f"shrink must be > 1, got {self.shrink}")


@dataclass(frozen=True, slots=True)
class FDResult:
    """Extrapolated value with error estimate and the full tableau.

    ``steps[k]`` is the quotient step at level k, ``table[k]`` the row
    of extrapolants at level k (first entry is the raw quotient).
    """

    value: float
    error: float
    steps: tuple[float, ...]
    table: tuple[tuple[float, ...], ...]


@dataclass(frozen=True, slots=True)
class FDJacobianResult:
    """Matrix assembled column by column, with the worst entry estimate."""

    jacobian: JacobianMatrix
    error: float
    entry_errors: np.ndarray


def _amplification(shrink: float, levels: int) -> float:
    """Worst-case roundoff growth of the extrapolation diagonal."""
    amp = 1.0
    for j in range(1, levels):
        fac = shrink ** j
        amp *= (fac + 1.0) / (fac - 1.0)
    return amp


def _extrapolate(quotients: list[float], shrink: float) -> list[list[float]]:
    """Neville-style tableau; row k column j kills the h**j error term."""
    table: list[list[float]] = []
    prev: list[float] = []
    for k, q in enumerate(quotients):
        row = [q]
        for j in range(1, k + 1):
            fac = shrink ** j
            row.append(row[j - 1] + (row[j - 1] - prev[j - 1]) / (fac - 1.0))
        table.append(row)
        prev = row
    return table


def _finish(quotients: list[float], shrink: float, scale: float,
            h_min: float, context: str) -> tuple[float, float, list[list[float]]]:
    """Extrapolate, estimate the error, and police divergence."""
    levels = len(quotients)
    table = _extrapolate(quotients, shrink)
    diag = [table[k][k] for k in range(levels)]
    ests = [abs(diag[k] - diag[k - 1]) for k in range(1, levels)]
    floor = _amplification(shrink, levels) * _EPS * scale / h_min
    for k in range(2, len(ests)):
        if ests[k] > ests[k - 1] > ests[k - 2] and ests[k] > 8.0 * floor:
            raise NonConvergenceError(
                f"difference quotients diverge for {context}: successive "
                f"corrections {ests[k - 2]:.3e}, {ests[k - 1]:.3e}, {ests[k]:.3e}")
    error = max(ests[-1], floor) if ests else floor
    return diag[-1], error, table


def _column_samples(engine, coords: np.ndarray, j: int, alpha: float,
                    cfg: FDConfig):
    """Function values along the scaled one-sided stencil of coordinate j.

    Returns (steps, F0, deltas, scale) where deltas[k] is the vector
    f(perturbed) - f(a) at step k and scale bounds |f| on the stencil.
    """
    a_j = coords[j]
    weight = a_j ** (1.0 - alpha)
    h0 = cfg.h0 * max(1.0, a_j ** alpha)
    f0 = engine.values(coords)
    steps = []
    deltas = []
    scale = np.abs(f0)
    x = coords.copy()
    h = h0
    for _ in range(cfg.levels):
        x[j] = a_j + h * weight
        fk = engine.values(x)
        steps.append(h)
        deltas.append(fk - f0)
        scale = np.maximum(scale, np.abs(fk))
        h /= cfg.shrink
    return steps, f0, deltas, np.maximum(scale, 1.0)


def fd_conformable_derivative(f: FunctionDef, t: float, alpha,
                              cfg: FDConfig | None = None) -> FDResult:
    """Limit-definition conformable derivative of a 1-D function.

    Evaluates the quotient ``(f(t + h*t**(1-alpha)) - f(t)) / h`` on the
    shrinking step schedule and extrapolates.
    """
    if f.n != 1 or f.m != 1:
        raise DimensionError(
            f"fd_conformable_derivative needs a scalar function of one "
            f"variable, got m={f.m}, n={f.n}")
    point = _as_point((t,), 1)
    order = _as_order(alpha)
    cfg = cfg or FDConfig()
    return _fd_scalar(f, point, 0, order, cfg, component=0)


def fd_conformable_partial(f: FunctionDef, a, j: int, alpha,
                           cfg: FDConfig | None = None) -> FDResult:
    """Limit-definition conformable partial of a scalar function.

    Perturbs only coordinate ``j`` (0-based) with the scaled step of the
    defining quotient.
    """
    if f.m != 1:
        raise DimensionError(
            f"fd_conformable_partial needs a scalar function, got m={f.m}")
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    if not 0 <= j < f.n:
        raise IndexError(f"variable index {j} out of range for {f.n} variable(s)")
    cfg = cfg or FDConfig()
    return _fd_scalar(f, point, j, order, cfg, component=0)


def _fd_scalar(f: FunctionDef, point: PositivePoint, j: int, order: Order,
               cfg: FDConfig, component: int) -> FDResult:
    engine = get_engine(f)
    coords = point.array()
    steps, _, deltas, scale = _column_samples(engine, coords, j, order.alpha, cfg)
    quotients = [float(d[component]) / h for d, h in zip(deltas, steps)]
    value, error, table = _finish(
        quotients, cfg.shrink, float(scale[component]), steps[-1],
        context=f"variable {j} at {tuple(point.coords)}, order {order.alpha}")
    return FDResult(value, error, tuple(steps), tuple(tuple(r) for r in table))


def fd_conformable_jacobian(f: FunctionDef, a, alpha,
                            cfg: FDConfig | None = None) -> FDJacobianResult:
    """Limit-definition conformable Jacobian, column by column.

    Column j collects the quotient vectors of all m components under a
    perturbation of coordinate j alone; each entry gets its own
    extrapolation tableau. Columns are independent, so the assembly
    order cannot affect the result.
    """
    point = _as_point(a, f.n)
    order = _as_order(alpha)
    cfg = cfg or FDConfig()
    engine = get_engine(f)
    coords = point.array()
    entries = np.empty((f.m, f.n), dtype=np.float64)
    errors = np.empty((f.m, f.n), dtype=np.float64)
    for j in range(f.n):
        steps, _, deltas, scale = _column_samples(engine, coords, j, order.alpha, cfg)
        for i in range(f.m):
            quotients = [float(d[i]) / h for d, h in zip(deltas, steps)]
            value, error, _ = _finish(
                quotients, cfg.shrink, float(scale[i]), steps[-1],
                context=f"entry ({i}, {j}) at {tuple(point.coords)}, "
                        f"order {order.alpha}")
            entries[i, j] = value
            errors[i, j] = error
    errors.flags.writeable = False
    return FDJacobianResult(JacobianMatrix(entries, f.variables),
                            float(errors.max()), errors)
