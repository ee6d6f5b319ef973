"""Exact classical derivatives by forward-mode dual propagation.

``classical_jacobian`` runs one sweep per variable over the evaluation
tapes, so entry (i, j) is the exact partial of component i with respect
to variable j, with no truncation error beyond float rounding.
``dual_components`` is a tree-walking reference sweep built on the
public Dual type; the tests pin it bitwise against the tape backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import Dual
from .engine import _as_coords, get_engine
from .errors import DimensionError
from .expr import Binary, Constant, ExprNode, FunctionDef, Unary, Variable

__all__ = ["Dual", "JacobianMatrix", "classical_jacobian", "derivative_1d",
           "dual_components"]


@dataclass(frozen=True, eq=False)
class JacobianMatrix:
    """Dense m-by-n derivative matrix with row/column provenance.

    Row i follows the component order of the producing FunctionDef,
    column j its variable order. Entries are read-only.
    """

    entries: np.ndarray
    variables: tuple[str, ...]

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.float64, order="C")
        if entries.ndim != 2:
            raise DimensionError("Jacobian entries must be a 2-D matrix")
        if entries.shape[1] != len(self.variables):
            raise DimensionError(
                f"{entries.shape[1]} columns but {len(self.variables)} variables")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "variables", tuple(self.variables))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, key) -> float:
        return float(self.entries[key])

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()


def classical_jacobian(f: FunctionDef, a) -> JacobianMatrix:
    """Usual Jacobian f'(a) by n forward dual sweeps."""
    x = _as_coords(a, f.n)
    return JacobianMatrix(get_engine(f).jacobian(x), f.variables)


def derivative_1d(f: FunctionDef, t: float) -> float:
    """Classical f'(t) for a single-variable, single-component function."""
    if f.n != 1 or f.m != 1:
        raise DimensionError(
            f"derivative_1d needs a scalar function of one variable, "
            f"got m={f.m}, n={f.n}")
    _, ders = get_engine(f).dual_sweep(np.array([float(t)]), 0)
    return float(ders[0])


def dual_components(f: FunctionDef, a, seed: int) -> tuple[Dual, ...]:
    """Reference forward sweep: evaluate each component over Dual numbers.

    Seeds derivative 1 on variable index ``seed``. Slower than the tape
    backends; used to cross-check them and to expose (value, derivative)
    pairs directly.
    """
    x = _as_coords(a, f.n)
    if not 0 <= seed < f.n:
        raise IndexError(f"seed {seed} out of range for {f.n} variable(s)")
    env = {name: Dual(float(x[j]), 1.0 if j == seed else 0.0)
           for j, name in enumerate(f.variables)}
    return tuple(_eval_dual_tree(c, env) for c in f.components)


def _eval_dual_tree(node: ExprNode, env: dict[str, Dual]) -> Dual:
    if isinstance(node, Constant):
        return Dual(node.value, 0.0)
    if isinstance(node, Variable):
        return env[node.name]
    if isinstance(node, Unary):
        child = _eval_dual_tree(node.child, env)
        if node.op == "neg":
            return -child
        return getattr(child, node.op)()
    assert isinstance(node, Binary)
    left = _eval_dual_tree(node.left, env)
    right = _eval_dual_tree(node.right, env)
    if node.op == "add":
        return left + right
    if node.op == "sub":
        return left - right
    if node.op == "mul":
        return left * right
    if node.op == "div":
        return left / right
    return left ** right
