"""Command-line front end with machine-readable JSON output.

Subcommands: jacobian, partial, tangent, chain-check, verify. Results
go to stdout, diagnostics to stderr. Exit status is 0 on success or a
PASS, 1 on a verification FAIL, 2 on usage or domain errors.

The JSON object always carries the keys ``command``, ``alpha``,
``vars``, ``point``, ``result`` and ``status``; ``verify`` adds
``oracle``, ``deltas`` and ``max_delta``; ``chain-check`` reports the
composition Jacobian as ``result``, the chain-rule product as
``oracle`` and their largest absolute difference as ``max_delta``.
Floats are serialized by shortest round-trip representation (up to 17
significant digits), so identical jobs print byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .conformable import (
    chain_rhs, conformable_derivative, conformable_jacobian,
    conformable_partial,
)
from .errors import ConformableError
from .expr import compose
from .oracle import FDConfig, fd_conformable_jacobian
from .parser import parse

_USAGE_EXIT = 2


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--expr", required=True, help="comma-separated component expressions")
    sub.add_argument("--vars", required=True, help="comma-separated variable names, in column order")
    sub.add_argument("--point", required=True, help="comma-separated coordinates, all > 0")
    sub.add_argument("--alpha", required=True, type=float, help="fractional order in (0, 1]")
    sub.add_argument("--format", choices=("json", "table"), default="json",
                     help="output mode (default json)")


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="confjac",
        description="Conformable fractional-order derivatives of expression-defined functions.")
    subs = top.add_subparsers(dest="command", required=True)

    p = subs.add_parser("jacobian", help="conformable Jacobian matrix")
    _add_common(p)

    p = subs.add_parser("partial", help="one conformable partial derivative")
    _add_common(p)
    p.add_argument("--index", required=True, type=int,
                   help="1-based variable index of the partial")

    p = subs.add_parser("tangent", help="one-dimensional conformable derivative")
    _add_common(p)

    p = subs.add_parser("chain-check", help="both sides of the chain rule")
    _add_common(p)
    p.add_argument("--inner", required=True,
                   help="inner function components over --vars; --expr is the "
                        "outer function, written in positional variables u1..um "
                        "(one per inner component)")

    p = subs.add_parser("verify", help="analytic Jacobian against the limit-definition oracle")
    _add_common(p)
    p.add_argument("--tol", type=float, default=1e-5,
                   help="relative tolerance per entry (default 1e-5)")
    p.add_argument("--abs-tol", type=float, default=1e-8,
                   help="absolute tolerance for near-zero entries (default 1e-8)")
    p.add_argument("--h0", type=float, default=None, help="initial oracle step")
    p.add_argument("--levels", type=int, default=None, help="oracle extrapolation levels")
    return top


def _parse_point(text: str, n_vars: int) -> list[float]:
    try:
        coords = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise ConformableError(f"bad --point value: {exc}") from None
    if len(coords) != n_vars:
        raise ConformableError(
            f"--point has {len(coords)} coordinate(s) but --vars declares {n_vars}")
    return coords


def _emit(payload: dict, mode: str) -> None:
    if mode == "json":
        print(json.dumps(payload))
        return
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            print(f"{key}:")
            for row in value:
                print("  " + "  ".join(f"{v: .17g}" for v in row))
        else:
            print(f"{key}: {value}")


def _base_payload(command: str, alpha: float, names: list[str],
                  point: list[float]) -> dict:
    return {"command": command, "alpha": alpha, "vars": names, "point": point}


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ConformableError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"while running {args.command} with expr={args.expr!r} "
              f"vars={args.vars!r} point={args.point!r} alpha={args.alpha!r}",
              file=sys.stderr)
        return _USAGE_EXIT


def _dispatch(args) -> int:
    names = [v.strip() for v in args.vars.split(",")]
    point = _parse_point(args.point, len(names))
    payload = _base_payload(args.command, args.alpha, names, point)

    if args.command == "chain-check":
        inner = parse(args.inner, names)
        # the outer expression uses positional variables u1..um, one per
        # inner component; the composition is built by symbolic substitution
        outer = parse(args.expr, [f"u{k + 1}" for k in range(inner.m)])
        direct = conformable_jacobian(compose(outer, inner), point, args.alpha)
        product = chain_rhs(outer, inner, point, args.alpha)
        delta = float(np.max(np.abs(direct.entries - product.entries)))
        payload["result"] = direct.tolist()
        payload["oracle"] = product.tolist()
        payload["max_delta"] = delta
        payload["status"] = "ok"
        _emit(payload, args.format)
        return 0

    f = parse(args.expr, names)

    if args.command == "jacobian":
        jac = conformable_jacobian(f, point, args.alpha)
        payload["result"] = jac.tolist()
        payload["status"] = "ok"
        _emit(payload, args.format)
        return 0

    if args.command == "partial":
        if f.m != 1:
            raise ConformableError(f"partial needs a single component, got {f.m}")
        if not 1 <= args.index <= f.n:
            raise IndexError(
                f"--index {args.index} out of range 1..{f.n}")
        value = conformable_partial(f, point, args.index - 1, args.alpha)
        payload["result"] = value
        payload["status"] = "ok"
        _emit(payload, args.format)
        return 0

    if args.command == "tangent":
        value = conformable_derivative(f, point[0], args.alpha)
        payload["result"] = value
        payload["status"] = "ok"
        _emit(payload, args.format)
        return 0

    # verify
    overrides = {}
    if args.h0 is not None:
        overrides["h0"] = args.h0
    if args.levels is not None:
        overrides["levels"] = args.levels
    cfg = FDConfig(**overrides)
    analytic = conformable_jacobian(f, point, args.alpha)
    oracle = fd_conformable_jacobian(f, point, args.alpha, cfg)
    deltas = np.abs(analytic.entries - oracle.jacobian.entries)
    ok = deltas <= np.maximum(args.tol * np.abs(analytic.entries), args.abs_tol)
    status = "PASS" if bool(ok.all()) else "FAIL"
    payload["result"] = analytic.tolist()
    payload["oracle"] = oracle.jacobian.tolist()
    payload["deltas"] = deltas.tolist()
    payload["max_delta"] = float(deltas.max())
    payload["status"] = status
    _emit(payload, args.format)
    return 0 if status == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main())
