"""Tape opcode and status-code tables shared by both evaluation backends.

The numeric values are part of the tape format; ``_core.pyx`` repeats
them as a C enum and must stay in sync.
"""

(OP_CONST, OP_VAR, OP_NEG, OP_SIN, OP_COS, OP_TAN, OP_EXP, OP_LN,
 OP_SQRT, OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_POW) = range(14)

UNARY_CODE = {
    "neg": OP_NEG, "sin": OP_SIN, "cos": OP_COS, "tan": OP_TAN,
    "exp": OP_EXP, "ln": OP_LN, "sqrt": OP_SQRT,
}
BINARY_CODE = {
    "add": OP_ADD, "sub": OP_SUB, "mul": OP_MUL, "div": OP_DIV,
    "pow": OP_POW,
}

STATUS_OK = 0

# value-domain failures
ERR_DIV_ZERO = 1
ERR_LN_DOMAIN = 2
ERR_SQRT_DOMAIN = 3
ERR_POW_NEG_BASE = 4
ERR_POW_ZERO_BASE = 5

# derivative-domain failures (value exists, derivative rule does not)
ERR_DSQRT_ZERO = 10
ERR_DPOW_BASE = 11
ERR_DPOW_ZERO = 12

EVAL_STATUS_DETAIL = {
    ERR_DIV_ZERO: "division by zero",
    ERR_LN_DOMAIN: "logarithm of a non-positive value",
    ERR_SQRT_DOMAIN: "square root of a negative value",
    ERR_POW_NEG_BASE: "non-integer power of a negative base",
    ERR_POW_ZERO_BASE: "zero base raised to a non-positive power",
}
DERIV_STATUS_DETAIL = {
    ERR_DSQRT_ZERO: "derivative of a square root at zero",
    ERR_DPOW_BASE: "derivative of a power with varying exponent needs a positive base",
    ERR_DPOW_ZERO: "derivative of a fractional power at zero base",
}

#: hard cap on evaluation stack depth (checked at tape-compile time)
STACK_CAP = 4096
