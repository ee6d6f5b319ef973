"""Pure-Python tape walker, the fallback and reference backend.

Mirrors ``_core.pyx`` operation for operation: same branch order, same
expression shapes, so both backends produce bit-identical results. It
returns ``(status, ip, ...)`` tuples instead of raising; the engine
turns non-zero statuses into exceptions with node context.

The math-module wrappers exist because CPython raises where libm
quietly returns an IEEE special (e.g. ``exp`` overflow); the compiled
kernel gets libm behaviour, so the fallback must match it.
"""

from __future__ import annotations

import math

from ._ops import (
    ERR_DIV_ZERO, ERR_DPOW_BASE, ERR_DPOW_ZERO, ERR_DSQRT_ZERO,
    ERR_LN_DOMAIN, ERR_POW_NEG_BASE, ERR_POW_ZERO_BASE, ERR_SQRT_DOMAIN,
    OP_ADD, OP_CONST, OP_COS, OP_DIV, OP_EXP, OP_LN, OP_MUL, OP_NEG,
    OP_POW, OP_SIN, OP_SQRT, OP_SUB, OP_TAN, OP_VAR, STATUS_OK,
)


def _sin(x):
    try:
        return math.sin(x)
    except ValueError:
        return math.nan


def _cos(x):
    try:
        return math.cos(x)
    except ValueError:
        return math.nan


def _tan(x):
    try:
        return math.tan(x)
    except ValueError:
        return math.nan


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _log(x):
    try:
        return math.log(x)
    except ValueError:
        return math.nan


def _pow(x, y):
    try:
        return math.pow(x, y)
    except OverflowError:
        if x < 0.0 and math.fmod(y, 2.0) != 0.0:
            return -math.inf
        return math.inf
    except ValueError:
        return math.nan


def _over(num, den):
    """num / den when den may be +0.0 from underflow; C divides quietly."""
    if den != 0.0:
        return num / den
    if num > 0.0:
        return math.inf
    if num < 0.0:
        return -math.inf
    return math.nan


def run_values(codes, args, consts, x):
    """Evaluate one tape. Returns (status, ip, value)."""
    stack = []
    push = stack.append
    for ip, op in enumerate(codes):
        if op == OP_CONST:
            push(consts[args[ip]])
        elif op == OP_VAR:
            push(float(x[args[ip]]))
        elif op == OP_NEG:
            stack[-1] = -stack[-1]
        elif op == OP_SIN:
            stack[-1] = _sin(stack[-1])
        elif op == OP_COS:
            stack[-1] = _cos(stack[-1])
        elif op == OP_TAN:
            stack[-1] = _tan(stack[-1])
        elif op == OP_EXP:
            stack[-1] = _exp(stack[-1])
        elif op == OP_LN:
            a = stack[-1]
            if a <= 0.0:
                return ERR_LN_DOMAIN, ip, 0.0
            stack[-1] = _log(a)
        elif op == OP_SQRT:
            a = stack[-1]
            if a < 0.0:
                return ERR_SQRT_DOMAIN, ip, 0.0
            stack[-1] = math.sqrt(a)
        elif op == OP_ADD:
            b = stack.pop()
            stack[-1] = stack[-1] + b
        elif op == OP_SUB:
            b = stack.pop()
            stack[-1] = stack[-1] - b
        elif op == OP_MUL:
            b = stack.pop()
            stack[-1] = stack[-1] * b
        elif op == OP_DIV:
            b = stack.pop()
            if b == 0.0:
                return ERR_DIV_ZERO, ip, 0.0
            stack[-1] = stack[-1] / b
        else:  # OP_POW
            b = stack.pop()
            a = stack[-1]
            if a > 0.0:
                stack[-1] = _pow(a, b)
            elif a == 0.0:
                if b > 0.0:
                    if math.isfinite(b) and b == math.floor(b):
                        stack[-1] = 0.0
                    else:
                        return ERR_POW_NEG_BASE, ip, 0.0
                elif b == 0.0:
                    stack[-1] = 1.0
                else:
                    return ERR_POW_ZERO_BASE, ip, 0.0
            else:
                if math.isfinite(b) and b == math.floor(b):
                    stack[-1] = _pow(a, b)
                else:
                    return ERR_POW_NEG_BASE, ip, 0.0
    return STATUS_OK, -1, stack[0]


def run_dual(codes, args, consts, x, seed):
    """Forward sweep with derivative seed on variable ``seed``.

    Returns (status, ip, value, deriv).
    """
    vs = []
    ds = []
    for ip, op in enumerate(codes):
        if op == OP_CONST:
            vs.append(consts[args[ip]])
            ds.append(0.0)
        elif op == OP_VAR:
            j = args[ip]
            vs.append(float(x[j]))
            ds.append(1.0 if j == seed else 0.0)
        elif op == OP_NEG:
            vs[-1] = -vs[-1]
            ds[-1] = -ds[-1]
        elif op == OP_SIN:
            a = vs[-1]
            vs[-1] = _sin(a)
            ds[-1] = _cos(a) * ds[-1]
        elif op == OP_COS:
            a = vs[-1]
            vs[-1] = _cos(a)
            ds[-1] = -_sin(a) * ds[-1]
        elif op == OP_TAN:
            a = vs[-1]
            c = _cos(a)
            vs[-1] = _tan(a)
            ds[-1] = _over(ds[-1], c * c)
        elif op == OP_EXP:
            a = _exp(vs[-1])
            vs[-1] = a
            ds[-1] = a * ds[-1]
        elif op == OP_LN:
            a = vs[-1]
            if a <= 0.0:
                return ERR_LN_DOMAIN, ip, 0.0, 0.0
            vs[-1] = _log(a)
            ds[-1] = ds[-1] / a
        elif op == OP_SQRT:
            a = vs[-1]
            if a < 0.0:
                return ERR_SQRT_DOMAIN, ip, 0.0, 0.0
            v = math.sqrt(a)
            vs[-1] = v
            if a > 0.0:
                ds[-1] = ds[-1] / (2.0 * v)
            elif ds[-1] != 0.0:
                return ERR_DSQRT_ZERO, ip, 0.0, 0.0
        elif op == OP_ADD:
            b = vs.pop()
            db = ds.pop()
            vs[-1] = vs[-1] + b
            ds[-1] = ds[-1] + db
        elif op == OP_SUB:
            b = vs.pop()
            db = ds.pop()
            vs[-1] = vs[-1] - b
            ds[-1] = ds[-1] - db
        elif op == OP_MUL:
            b = vs.pop()
            db = ds.pop()
            a = vs[-1]
            da = ds[-1]
            vs[-1] = a * b
            ds[-1] = a * db + da * b
        elif op == OP_DIV:
            b = vs.pop()
            db = ds.pop()
            if b == 0.0:
                return ERR_DIV_ZERO, ip, 0.0, 0.0
            a = vs[-1]
            da = ds[-1]
            vs[-1] = a / b
            ds[-1] = _over(da * b - a * db, b * b)
        else:  # OP_POW
            b = vs.pop()
            db = ds.pop()
            a = vs[-1]
            da = ds[-1]
            if db == 0.0:
                # exponent carries no derivative here: plain power rule
                if a > 0.0:
                    vs[-1] = _pow(a, b)
                elif a == 0.0:
                    if b > 0.0:
                        if math.isfinite(b) and b == math.floor(b):
                            vs[-1] = 0.0
                        else:
                            return ERR_POW_NEG_BASE, ip, 0.0, 0.0
                    elif b == 0.0:
                        vs[-1] = 1.0
                    else:
                        return ERR_POW_ZERO_BASE, ip, 0.0, 0.0
                else:
                    if math.isfinite(b) and b == math.floor(b):
                        vs[-1] = _pow(a, b)
                    else:
                        return ERR_POW_NEG_BASE, ip, 0.0, 0.0
                if da == 0.0:
                    ds[-1] = 0.0
                elif b == 0.0:
                    ds[-1] = 0.0
                elif a == 0.0:
                    # value stage admitted only positive integer exponents
                    ds[-1] = da if b == 1.0 else 0.0
                else:
                    ds[-1] = b * _pow(a, b - 1.0) * da
            else:
                if a <= 0.0:
                    return ERR_DPOW_BASE, ip, 0.0, 0.0
                v = _pow(a, b)
                vs[-1] = v
                ds[-1] = v * (db * _log(a) + b * da / a)
    return STATUS_OK, -1, vs[0], ds[0]
