"""Immutable expression trees for functions of named real variables.

Nodes compare and hash structurally, so trees can serve as cache keys.
The node set is deliberately small: seven unary operators, five binary
operators, constants and variables. That is enough to express every
function this package differentiates while keeping the evaluator and
the parser easy to audit.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DefinitionError, DimensionError

UNARY_OPS = frozenset({"neg", "sin", "cos", "tan", "exp", "ln", "sqrt"})
BINARY_OPS = frozenset({"add", "sub", "mul", "div", "pow"})

#: names usable with call syntax in sources, e.g. ``sin(x)``
FUNCTION_NAMES = frozenset(UNARY_OPS - {"neg"})

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class ExprNode:
    """Base class for expression nodes. Instances are immutable."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Constant(ExprNode):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise DefinitionError("constants must be finite")


@dataclass(frozen=True, slots=True)
class Variable(ExprNode):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise DefinitionError(f"invalid variable name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Unary(ExprNode):
    op: str
    child: ExprNode

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise DefinitionError(f"unknown unary operator {self.op!r}")
        if not isinstance(self.child, ExprNode):
            raise DefinitionError("unary child must be an ExprNode")


@dataclass(frozen=True, slots=True)
class Binary(ExprNode):
    op: str
    left: ExprNode
    right: ExprNode

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise DefinitionError(f"unknown binary operator {self.op!r}")
        if not isinstance(self.left, ExprNode) or not isinstance(self.right, ExprNode):
            raise DefinitionError("binary operands must be ExprNodes")


def variables_in(node: ExprNode) -> frozenset[str]:
    """Set of variable names appearing anywhere in the tree."""
    if isinstance(node, Variable):
        return frozenset((node.name,))
    if isinstance(node, Unary):
        return variables_in(node.child)
    if isinstance(node, Binary):
        return variables_in(node.left) | variables_in(node.right)
    return frozenset()


@dataclass(frozen=True)
class FunctionDef:
    """A function from R^n to R^m given by ordered component expressions.

    ``components`` fixes the row order of every Jacobian built from this
    function; ``variables`` fixes the column order. Every variable used
    by a component must be declared, but declared variables may be
    unused (their Jacobian columns are then zero).
    """

    components: tuple[ExprNode, ...]
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.components) < 1:
            raise DefinitionError("a function needs at least one component")
        if len(self.variables) < 1:
            raise DefinitionError("a function needs at least one variable")
        for name in self.variables:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise DefinitionError(f"invalid variable name {name!r}")
            if name in FUNCTION_NAMES:
                raise DefinitionError(
                    f"variable name {name!r} collides with a built-in function")
        if len(set(self.variables)) != len(self.variables):
            raise DefinitionError("duplicate variable names")
        declared = set(self.variables)
        for i, comp in enumerate(self.components):
            if not isinstance(comp, ExprNode):
                raise DefinitionError("components must be ExprNodes")
            free = variables_in(comp)
            if not free <= declared:
                missing = ", ".join(sorted(free - declared))
                raise DefinitionError(
                    f"component {i} uses undeclared variable(s): {missing}")

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def n(self) -> int:
        return len(self.variables)

    def component(self, i: int) -> "FunctionDef":
        """Single-component function sharing this variable list."""
        return FunctionDef((self.components[i],), self.variables)

    def var_index(self, name: str) -> int:
        return self.variables.index(name)


def compose(outer: FunctionDef, inner: FunctionDef) -> FunctionDef:
    """Symbolic composition outer(inner(x)) built by substitution.

    The k-th variable of ``outer`` is replaced by the k-th component
    expression of ``inner`` throughout; the result is a function of
    ``inner``'s variables.
    """
    if outer.n != inner.m:
        raise DimensionError(
            f"cannot compose: outer takes {outer.n} variable(s) but "
            f"inner produces {inner.m} component(s)")
    replacement = dict(zip(outer.variables, inner.components))

    def subst(node: ExprNode) -> ExprNode:
        if isinstance(node, Variable):
            return replacement[node.name]
        if isinstance(node, Unary):
            return Unary(node.op, subst(node.child))
        if isinstance(node, Binary):
            return Binary(node.op, subst(node.left), subst(node.right))
        return node

    return FunctionDef(tuple(subst(c) for c in outer.components), inner.variables)


_BIN_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}
_BIN_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "pow": 4}
_PREC_NEG = 3
_PREC_ATOM = 5


def _prec(node: ExprNode) -> int:
    if isinstance(node, Binary):
        return _BIN_PREC[node.op]
    if isinstance(node, Unary) and node.op == "neg":
        return _PREC_NEG
    return _PREC_ATOM


def unparse(node: ExprNode) -> str:
    """Render a tree as source that reparses to a structurally equal tree.

    Parenthesization follows the grammar: left-associative chains stay
    flat, anything else gets explicit parentheses. Negative constants
    render with a leading minus and therefore reparse as a negation
    node; parser-produced trees only ever hold non-negative constants.
    """
    if isinstance(node, Constant):
        return repr(node.value)
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            inner = unparse(node.child)
            if _prec(node.child) < _PREC_NEG:
                inner = f"({inner})"
            return f"-{inner}"
        return f"{node.op}({unparse(node.child)})"
    sym = _BIN_SYMBOL[node.op]
    prec = _BIN_PREC[node.op]
    left = unparse(node.left)
    right = unparse(node.right)
    if node.op == "pow":
        # grammar: base must be an atom, exponent any factor
        if _prec(node.left) < _PREC_ATOM:
            left = f"({left})"
        if _prec(node.right) < _PREC_NEG:
            right = f"({right})"
    else:
        if _prec(node.left) < prec:
            left = f"({left})"
        if _prec(node.right) <= prec:
            right = f"({right})"
    return f"{left}{sym}{right}"
