"""Tape compilation and evaluation-backend selection.

An expression tree compiles once into a flat postfix tape: an opcode
array, an argument array (constant-pool or variable indices) and a
constant pool. Both backends walk the same tape:

* ``_core`` is the Cython kernel built at install time,
* ``_pyeval`` is the pure-Python fallback and reference.

The compiled backend is used when importable; set the environment
variable ``CONFJAC_BACKEND=pure`` to force the fallback, or
``CONFJAC_BACKEND=compiled`` to fail loudly when the extension is
missing. Results are bit-identical either way.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from . import _pyeval
from ._ops import (
    BINARY_CODE, DERIV_STATUS_DETAIL, EVAL_STATUS_DETAIL, OP_CONST, OP_VAR,
    STACK_CAP, UNARY_CODE,
)
from .errors import (
    DefinitionError, DerivativeDomainError, DimensionError, EvalDomainError,
)
from .expr import Binary, Constant, ExprNode, FunctionDef, Unary, Variable, unparse

_ENV_CHOICE = os.environ.get("CONFJAC_BACKEND", "").strip().lower()

try:
    from . import _core as _compiled
except ImportError:  # extension not built; fall back
    _compiled = None

if _ENV_CHOICE == "pure":
    _default_kernel = _pyeval
elif _ENV_CHOICE == "compiled":
    if _compiled is None:
        raise RuntimeError(
            "CONFJAC_BACKEND=compiled but the confjac._core extension is not built")
    _default_kernel = _compiled
elif _ENV_CHOICE in ("", "auto"):
    _default_kernel = _compiled if _compiled is not None else _pyeval
else:
    raise RuntimeError(f"unrecognized CONFJAC_BACKEND={_ENV_CHOICE!r}")

#: name of the backend used by default in this process
BACKEND = "compiled" if _default_kernel is _compiled else "pure-python"


@dataclass(frozen=True, eq=False)
class Tape:
    """Flat postfix program for one component expression.

    ``paths``/``nodes`` give, per instruction, the originating tree
    node for error reporting. ``codes_t``/``args_t``/``consts_t`` are
    tuple twins of the arrays for the pure-Python walker.
    """

    codes: np.ndarray
    args: np.ndarray
    consts: np.ndarray
    codes_t: tuple[int, ...]
    args_t: tuple[int, ...]
    consts_t: tuple[float, ...]
    paths: tuple[str, ...]
    nodes: tuple[ExprNode, ...]
    stack_need: int


def compile_tree(root: ExprNode, var_index: Mapping[str, int]) -> Tape:
    codes: list[int] = []
    args: list[int] = []
    consts: list[float] = []
    pool: dict[tuple[float, bool], int] = {}
    paths: list[str] = []
    nodes: list[ExprNode] = []

    def emit(code: int, arg: int, node: ExprNode, path: str) -> None:
        codes.append(code)
        args.append(arg)
        nodes.append(node)
        paths.append(path or "(root)")

    def const_slot(value: float) -> int:
        # key by bit pattern so 0.0 and -0.0 get distinct slots
        key = (value, np.signbit(value).item())
        if key not in pool:
            pool[key] = len(consts)
            consts.append(value)
        return pool[key]

    def walk(node: ExprNode, path: str) -> int:
        if isinstance(node, Constant):
            emit(OP_CONST, const_slot(node.value), node, path)
            return 1
        if isinstance(node, Variable):
            emit(OP_VAR, var_index[node.name], node, path)
            return 1
        if isinstance(node, Unary):
            need = walk(node.child, _join(path, "child"))
            emit(UNARY_CODE[node.op], 0, node, path)
            return need
        assert isinstance(node, Binary)
        left = walk(node.left, _join(path, "left"))
        right = walk(node.right, _join(path, "right"))
        emit(BINARY_CODE[node.op], 0, node, path)
        return max(left, 1 + right)

    need = walk(root, "")
    if need > STACK_CAP:
        raise DefinitionError(
            f"expression nesting needs stack {need}, cap is {STACK_CAP}")
    return Tape(
        codes=np.asarray(codes, dtype=np.int32),
        args=np.asarray(args, dtype=np.int32),
        consts=np.asarray(consts, dtype=np.float64),
        codes_t=tuple(codes),
        args_t=tuple(args),
        consts_t=tuple(consts),
        paths=tuple(paths),
        nodes=tuple(nodes),
        stack_need=need,
    )


def _join(path: str, leg: str) -> str:
    return f"{path}.{leg}" if path else leg


def _raise_status(status: int, ip: int, tape: Tape, component: int):
    kwargs = dict(path=tape.paths[ip], subexpr=unparse(tape.nodes[ip]),
                  component=component)
    if status in EVAL_STATUS_DETAIL:
        raise EvalDomainError(EVAL_STATUS_DETAIL[status], **kwargs)
    raise DerivativeDomainError(DERIV_STATUS_DETAIL[status], **kwargs)


class CompiledFunction:
    """Evaluation engine for one FunctionDef with a fixed backend.

    Instances hold only immutable tapes and may be shared across
    threads; every call uses its own evaluation stack.
    """

    __slots__ = ("fdef", "tapes", "_kernel", "backend")

    def __init__(self, fdef: FunctionDef, backend: str | None = None):
        if backend in (None, "auto"):
            kernel = _default_kernel
        elif backend == "pure":
            kernel = _pyeval
        elif backend == "compiled":
            if _compiled is None:
                raise RuntimeError("compiled backend requested but not built")
            kernel = _compiled
        else:
            raise ValueError(f"unknown backend {backend!r}")
        self._kernel = kernel
        self.backend = "compiled" if kernel is _compiled else "pure-python"
        self.fdef = fdef
        var_index = {name: j for j, name in enumerate(fdef.variables)}
        self.tapes = tuple(compile_tree(c, var_index) for c in fdef.components)

    @property
    def m(self) -> int:
        return self.fdef.m

    @property
    def n(self) -> int:
        return self.fdef.n

    def _run_values(self, tape: Tape, x: np.ndarray):
        if self._kernel is _pyeval:
            return _pyeval.run_values(tape.codes_t, tape.args_t, tape.consts_t, x)
        return self._kernel.run_values(tape.codes, tape.args, tape.consts, x)

    def _run_dual(self, tape: Tape, x: np.ndarray, seed: int):
        if self._kernel is _pyeval:
            return _pyeval.run_dual(tape.codes_t, tape.args_t, tape.consts_t, x, seed)
        return self._kernel.run_dual(tape.codes, tape.args, tape.consts, x, seed)

    def values(self, x) -> np.ndarray:
        """Component values at x; shape (m,)."""
        x = _as_coords(x, self.n)
        out = np.empty(self.m, dtype=np.float64)
        for i, tape in enumerate(self.tapes):
            status, ip, value = self._run_values(tape, x)
            if status:
                _raise_status(status, ip, tape, i)
            out[i] = value
        return out

    def dual_sweep(self, x, seed: int) -> tuple[np.ndarray, np.ndarray]:
        """Values and directional derivatives for one seeded variable."""
        x = _as_coords(x, self.n)
        vals = np.empty(self.m, dtype=np.float64)
        ders = np.empty(self.m, dtype=np.float64)
        for i, tape in enumerate(self.tapes):
            status, ip, value, deriv = self._run_dual(tape, x, seed)
            if status:
                _raise_status(status, ip, tape, i)
            vals[i] = value
            ders[i] = deriv
        return vals, ders

    def jacobian(self, x) -> np.ndarray:
        """All first partials by n forward sweeps; shape (m, n)."""
        x = _as_coords(x, self.n)
        out = np.empty((self.m, self.n), dtype=np.float64)
        for i, tape in enumerate(self.tapes):
            for j in range(self.n):
                status, ip, _, deriv = self._run_dual(tape, x, j)
                if status:
                    _raise_status(status, ip, tape, i)
                out[i, j] = deriv
        return out


@lru_cache(maxsize=256)
def get_engine(fdef: FunctionDef, backend: str | None = None) -> CompiledFunction:
    """Cached engine for a function; trees are immutable so this is safe."""
    return CompiledFunction(fdef, backend)


def _as_coords(point, n: int) -> np.ndarray:
    """Normalize a point (sequence or PositivePoint) to a float64 array."""
    coords = getattr(point, "coords", point)
    x = np.ascontiguousarray(coords, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != n:
        raise DimensionError(
            f"point has {x.shape[0] if x.ndim == 1 else x.ndim} coordinate(s), "
            f"function takes {n}")
    return x


def evaluate(fdef: FunctionDef, point) -> np.ndarray:
    """Evaluate every component of the function at a point.

    Deterministic and pure: the same inputs give bit-identical output.
    """
    return get_engine(fdef).values(point)
