"""Exception types raised across the package."""


class ConformableError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(ConformableError):
    """Malformed expression source; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(ParseError):
    """Identifier that is neither a declared variable nor a built-in function."""


class DefinitionError(ConformableError, ValueError):
    """Invalid construction of an expression tree, function or config object."""


class OrderRangeError(ConformableError, ValueError):
    """Fractional order outside the half-open interval (0, 1]."""


class NonPositiveError(ConformableError, ValueError):
    """A point coordinate (or scalar argument) that must be > 0 is not."""


class DimensionError(ConformableError, ValueError):
    """Mismatched sizes between functions, points or composed functions."""


class DomainError(ConformableError):
    """Evaluation-time domain violation, annotated with the offending node."""

    def __init__(self, detail: str, *, path: str | None = None,
                 subexpr: str | None = None, component: int | None = None):
        super().__init__(detail)
        self.detail = detail
        self.path = path
        self.subexpr = subexpr
        self.component = component

    def __str__(self) -> str:
        parts = [self.detail]
        if self.subexpr is not None:
            parts.append(f"in '{self.subexpr}'")
        where = []
        if self.component is not None:
            where.append(f"component {self.component}")
        if self.path is not None:
            where.append(f"node {self.path}")
        if where:
            parts.append("(" + ", ".join(where) + ")")
        return " ".join(parts)


class EvalDomainError(DomainError):
    """Plain evaluation left the real domain (div by zero, ln(-1), ...)."""


class DerivativeDomainError(DomainError):
    """The value exists but the derivative rule is undefined there."""


class CompositionDomainError(DomainError):
    """Inner function value violates the chain-rule positivity hypothesis."""


class NonConvergenceError(ConformableError):
    """Finite-difference extrapolation diverged instead of settling."""
