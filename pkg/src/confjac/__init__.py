"""Conformable fractional-order derivatives of expression-defined functions.

The package parses small arithmetic expressions into immutable trees,
differentiates them exactly by forward-mode dual sweeps, applies the
conformable column scaling to obtain fractional-order Jacobians and
partials, and certifies the analytic results against an independent
finite-difference oracle built directly on the defining limits.

A compiled tape evaluator (``confjac._core``) carries the hot inner
loop when available; a bit-identical pure-Python walker is the
fallback. ``confjac.BACKEND`` names the one in use.
"""

from .autodiff import (
    Dual, JacobianMatrix, classical_jacobian, derivative_1d, dual_components,
)
from .conformable import (
    Order, PositivePoint, ScalingMatrix, chain_rhs, chain_rhs_1d,
    component_rows, conformable_derivative, conformable_jacobian,
    conformable_partial, scaling_matrix,
)
from .engine import BACKEND, evaluate
from .errors import (
    CompositionDomainError, ConformableError, DefinitionError,
    DerivativeDomainError, DimensionError, DomainError, EvalDomainError,
    NonConvergenceError, NonPositiveError, OrderRangeError, ParseError,
    UnknownVariableError,
)
from .expr import (
    Binary, Constant, ExprNode, FunctionDef, Unary, Variable, compose,
    unparse, variables_in,
)
from .oracle import (
    FDConfig, FDJacobianResult, FDResult, fd_conformable_derivative,
    fd_conformable_jacobian, fd_conformable_partial,
)
from .parser import parse

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Binary",
    "CompositionDomainError",
    "ConformableError",
    "Constant",
    "DefinitionError",
    "DerivativeDomainError",
    "DimensionError",
    "DomainError",
    "Dual",
    "EvalDomainError",
    "ExprNode",
    "FDConfig",
    "FDJacobianResult",
    "FDResult",
    "FunctionDef",
    "JacobianMatrix",
    "NonConvergenceError",
    "NonPositiveError",
    "Order",
    "OrderRangeError",
    "ParseError",
    "PositivePoint",
    "ScalingMatrix",
    "Unary",
    "UnknownVariableError",
    "Variable",
    "chain_rhs",
    "chain_rhs_1d",
    "classical_jacobian",
    "component_rows",
    "compose",
    "conformable_derivative",
    "conformable_jacobian",
    "conformable_partial",
    "derivative_1d",
    "dual_components",
    "evaluate",
    "fd_conformable_derivative",
    "fd_conformable_jacobian",
    "fd_conformable_partial",
    "parse",
    "scaling_matrix",
    "unparse",
    "variables_in",
    "__version__",
]
