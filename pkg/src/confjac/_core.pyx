# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled tape walker for expression values and dual-number sweeps.

Operation-for-operation mirror of ``_pyeval.py``; keep the two in
lockstep so results are bit-identical across backends.
"""

from libc.math cimport cos, exp, floor, isfinite, log, pow, sin, sqrt, tan

# must match _ops.py
cdef enum:
    OP_CONST = 0
    OP_VAR = 1
    OP_NEG = 2
    OP_SIN = 3
    OP_COS = 4
    OP_TAN = 5
    OP_EXP = 6
    OP_LN = 7
    OP_SQRT = 8
    OP_ADD = 9
    OP_SUB = 10
    OP_MUL = 11
    OP_DIV = 12
    OP_POW = 13

cdef enum:
    STATUS_OK = 0
    ERR_DIV_ZERO = 1
    ERR_LN_DOMAIN = 2
    ERR_SQRT_DOMAIN = 3
    ERR_POW_NEG_BASE = 4
    ERR_POW_ZERO_BASE = 5
    ERR_DSQRT_ZERO = 10
    ERR_DPOW_BASE = 11
    ERR_DPOW_ZERO = 12

DEF STACK_CAP = 4096


def run_values(const int[::1] codes, const int[::1] args,
               const double[::1] consts, const double[::1] x):
    """Evaluate one tape. Returns (status, ip, value)."""
    cdef double stack[STACK_CAP]
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t ip
    cdef int op, sp = 0
    cdef double a, b
    for ip in range(n):
        op = codes[ip]
        if op == OP_CONST:
            stack[sp] = consts[args[ip]]
            sp += 1
        elif op == OP_VAR:
            stack[sp] = x[args[ip]]
            sp += 1
        elif op == OP_NEG:
            stack[sp - 1] = -stack[sp - 1]
        elif op == OP_SIN:
            stack[sp - 1] = sin(stack[sp - 1])
        elif op == OP_COS:
            stack[sp - 1] = cos(stack[sp - 1])
        elif op == OP_TAN:
            stack[sp - 1] = tan(stack[sp - 1])
        elif op == OP_EXP:
            stack[sp - 1] = exp(stack[sp - 1])
        elif op == OP_LN:
            a = stack[sp - 1]
            if a <= 0.0:
                return ERR_LN_DOMAIN, ip, 0.0
            stack[sp - 1] = log(a)
        elif op == OP_SQRT:
            a = stack[sp - 1]
            if a < 0.0:
                return ERR_SQRT_DOMAIN, ip, 0.0
            stack[sp - 1] = sqrt(a)
        elif op == OP_ADD:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] + stack[sp]
        elif op == OP_SUB:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] - stack[sp]
        elif op == OP_MUL:
            sp -= 1
            stack[sp - 1] = stack[sp - 1] * stack[sp]
        elif op == OP_DIV:
            sp -= 1
            b = stack[sp]
            if b == 0.0:
                return ERR_DIV_ZERO, ip, 0.0
            stack[sp - 1] = stack[sp - 1] / b
        else:  # OP_POW
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            if a > 0.0:
                stack[sp - 1] = pow(a, b)
            elif a == 0.0:
                if b > 0.0:
                    if isfinite(b) and b == floor(b):
                        stack[sp - 1] = 0.0
                    else:
                        return ERR_POW_NEG_BASE, ip, 0.0
                elif b == 0.0:
                    stack[sp - 1] = 1.0
                else:
                    return ERR_POW_ZERO_BASE, ip, 0.0
            else:
                if isfinite(b) and b == floor(b):
                    stack[sp - 1] = pow(a, b)
                else:
                    return ERR_POW_NEG_BASE, ip, 0.0
    return STATUS_OK, -1, stack[0]


def run_dual(const int[::1] codes, const int[::1] args,
             const double[::1] consts, const double[::1] x, int seed):
    """Forward sweep with derivative seed on variable ``seed``.

    Returns (status, ip, value, deriv).
    """
    cdef double vs[STACK_CAP]
    cdef double ds[STACK_CAP]
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t ip
    cdef int op, j, sp = 0
    cdef double a, b, da, db, c, v
    for ip in range(n):
        op = codes[ip]
        if op == OP_CONST:
            vs[sp] = consts[args[ip]]
            ds[sp] = 0.0
            sp += 1
        elif op == OP_VAR:
            j = args[ip]
            vs[sp] = x[j]
            ds[sp] = 1.0 if j == seed else 0.0
            sp += 1
        elif op == OP_NEG:
            vs[sp - 1] = -vs[sp - 1]
            ds[sp - 1] = -ds[sp - 1]
        elif op == OP_SIN:
            a = vs[sp - 1]
            vs[sp - 1] = sin(a)
            ds[sp - 1] = cos(a) * ds[sp - 1]
        elif op == OP_COS:
            a = vs[sp - 1]
            vs[sp - 1] = cos(a)
            ds[sp - 1] = -sin(a) * ds[sp - 1]
        elif op == OP_TAN:
            a = vs[sp - 1]
            c = cos(a)
            vs[sp - 1] = tan(a)
            ds[sp - 1] = ds[sp - 1] / (c * c)
        elif op == OP_EXP:
            a = exp(vs[sp - 1])
            vs[sp - 1] = a
            ds[sp - 1] = a * ds[sp - 1]
        elif op == OP_LN:
            a = vs[sp - 1]
            if a <= 0.0:
                return ERR_LN_DOMAIN, ip, 0.0, 0.0
            vs[sp - 1] = log(a)
            ds[sp - 1] = ds[sp - 1] / a
        elif op == OP_SQRT:
            a = vs[sp - 1]
            if a < 0.0:
                return ERR_SQRT_DOMAIN, ip, 0.0, 0.0
            v = sqrt(a)
            vs[sp - 1] = v
            if a > 0.0:
                ds[sp - 1] = ds[sp - 1] / (2.0 * v)
            elif ds[sp - 1] != 0.0:
                return ERR_DSQRT_ZERO, ip, 0.0, 0.0
        elif op == OP_ADD:
            sp -= 1
            vs[sp - 1] = vs[sp - 1] + vs[sp]
            ds[sp - 1] = ds[sp - 1] + ds[sp]
        elif op == OP_SUB:
            sp -= 1
            vs[sp - 1] = vs[sp - 1] - vs[sp]
            ds[sp - 1] = ds[sp - 1] - ds[sp]
        elif op == OP_MUL:
            sp -= 1
            b = vs[sp]
            db = ds[sp]
            a = vs[sp - 1]
            da = ds[sp - 1]
            vs[sp - 1] = a * b
            ds[sp - 1] = a * db + da * b
        elif op == OP_DIV:
            sp -= 1
            b = vs[sp]
            db = ds[sp]
            if b == 0.0:
                return ERR_DIV_ZERO, ip, 0.0, 0.0
            a = vs[sp - 1]
            da = ds[sp - 1]
            vs[sp - 1] = a / b
            ds[sp - 1] = (da * b - a * db) / (b * b)
        else:  # OP_POW
            sp -= 1
            b = vs[sp]
            db = ds[sp]
            a = vs[sp - 1]
            da = ds[sp - 1]
            if db == 0.0:
                # exponent carries no derivative here: plain power rule
                if a > 0.0:
                    vs[sp - 1] = pow(a, b)
                elif a == 0.0:
                    if b > 0.0:
                        if isfinite(b) and b == floor(b):
                            vs[sp - 1] = 0.0
                        else:
                            return ERR_POW_NEG_BASE, ip, 0.0, 0.0
                    elif b == 0.0:
                        vs[sp - 1] = 1.0
                    else:
                        return ERR_POW_ZERO_BASE, ip, 0.0, 0.0
                else:
                    if isfinite(b) and b == floor(b):
                        vs[sp - 1] = pow(a, b)
                    else:
                        return ERR_POW_NEG_BASE, ip, 0.0, 0.0
                if da == 0.0:
                    ds[sp - 1] = 0.0
                elif b == 0.0:
                    ds[sp - 1] = 0.0
                elif a == 0.0:
                    # value stage admitted only positive integer exponents
                    ds[sp - 1] = da if b == 1.0 else 0.0
                else:
                    ds[sp - 1] = b * pow(a, b - 1.0) * da
            else:
                if a <= 0.0:
                    return ERR_DPOW_BASE, ip, 0.0, 0.0
                v = pow(a, b)
                vs[sp - 1] = v
                ds[sp - 1] = v * (db * log(a) + b * da / a)
    return STATUS_OK, -1, vs[0], ds[0]
