"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to get one PASS line
per criterion (pytest's own -v report lists them as well).
"""

import math

import numpy as np
import pytest

from confjac import (
    CompositionDomainError, NonPositiveError, Order, OrderRangeError,
    PositivePoint, chain_rhs, chain_rhs_1d, classical_jacobian, compose,
    component_rows, conformable_derivative, conformable_jacobian,
    conformable_partial, evaluate, fd_conformable_derivative,
    fd_conformable_jacobian, parse,
)
from confjac.cli import main as cli_main

from corpus import chain_functions, corpus_functions, rel_close

GRID_A = (0.5, 1.0, 2.0)
GRID_B = (1.0, 3.0)
GRID_ALPHA = (0.25, 0.5, 0.75, 1.0)


def _pass(label):
    print(f"ACCEPTANCE PASS: {label}")


def test_sine_jacobian_closed_form_and_oracle():
    """Conformable Jacobian of sin(x) over a point grid.

    Analytic path must hit the closed form [[a**(1-alpha)*cos(a), 0]]
    to relative 1e-12 and agree with the limit-definition oracle to
    relative 1e-5.
    """
    f = parse("sin(x)", ("x", "y"))
    for a0 in GRID_A:
        for b0 in GRID_B:
            for alpha in GRID_ALPHA:
                expected = [[a0 ** (1.0 - alpha) * math.cos(a0), 0.0]]
                analytic = conformable_jacobian(f, (a0, b0), alpha)
                assert rel_close(analytic.entries, expected, 1e-12), (a0, b0, alpha)
                oracle = fd_conformable_jacobian(f, (a0, b0), alpha)
                assert rel_close(oracle.jacobian.entries, analytic.entries,
                                 1e-5, atol=1e-8), (a0, b0, alpha)
    _pass("sine-function Jacobian matches closed form (1e-12) and oracle (1e-5)")


def test_order_one_reduces_to_classical_jacobian():
    """At alpha = 1 the conformable Jacobian is the classical one (1e-14)."""
    for f, point, src in corpus_functions():
        conf = conformable_jacobian(f, point, 1.0).entries
        classical = classical_jacobian(f, point).entries
        assert rel_close(conf, classical, 1e-14), src
    _pass("alpha=1 reduction to the classical Jacobian (1e-14, 10-function corpus)")


def test_analytic_path_certified_by_limit_oracle(capsys):
    """Analytic vs oracle entries within 1e-5 relative (1e-8 absolute at
    true zeros) across the corpus, and the verify command exits 0."""
    for f, point, src in corpus_functions():
        for alpha in (0.25, 0.5, 0.75):
            analytic = conformable_jacobian(f, point, alpha).entries
            oracle = fd_conformable_jacobian(f, point, alpha).jacobian.entries
            assert rel_close(oracle, analytic, 1e-5, atol=1e-8), (src, alpha)
    for f, point, src in corpus_functions():
        for alpha in (0.25, 0.5, 0.75):
            code = cli_main([
                "verify", "--expr", src, "--vars", ",".join(f.variables),
                "--point", ",".join(repr(float(c)) for c in point),
                "--alpha", repr(alpha), "--tol", "1e-5"])
            capsys.readouterr()
            assert code == 0, (src, alpha)
    _pass("limit-definition oracle certifies the analytic path; verify exits 0")


def test_chain_rule_product_matches_composition():
    """Composition Jacobian vs chain-rule product on composable pairs
    with positive inner values: 1e-8 relative, 1e-10 for the 1-D case."""
    pairs = chain_functions()
    assert len(pairs) >= 5
    for outer, inner, point, label in pairs:
        for alpha in GRID_ALPHA:
            direct = conformable_jacobian(compose(outer, inner), point, alpha)
            product = chain_rhs(outer, inner, point, alpha)
            assert rel_close(product.entries, direct.entries, 1e-8), (label, alpha)
    scalar_pairs = [(o, i, p, s) for o, i, p, s in pairs
                    if i.n == 1 and i.m == 1 and o.m == 1]
    assert scalar_pairs
    for outer, inner, point, label in scalar_pairs:
        for alpha in GRID_ALPHA:
            t = float(point[0])
            lhs = conformable_derivative(compose(outer, inner), t, alpha)
            rhs = chain_rhs_1d(outer, inner, t, alpha)
            assert rel_close(rhs, lhs, 1e-10), (label, alpha)
    _pass("chain rule: product equals composition (1e-8; 1-D case 1e-10)")


def test_one_dimensional_operator_rules():
    """Power rule to 1e-12, constants exactly zero, linearity, product
    and quotient identities to 1e-10."""
    for p in (-1.0, 0.5, 1.0, 2.0, 3.0):
        for t in (0.5, 1.0, 2.0):
            for alpha in (0.25, 0.5, 1.0):
                f = parse(f"t^({p})", ("t",))
                got = conformable_derivative(f, t, alpha)
                assert rel_close(got, p * t ** (p - alpha), 1e-12), (p, t, alpha)

    for alpha in (0.25, 0.5, 1.0):
        assert conformable_derivative(parse("42", ("t",)), 1.7, alpha) == 0.0

    f_src, g_src = "sin(t)+2", "t^2+1"
    f, g = parse(f_src, ("t",)), parse(g_src, ("t",))
    for t in (0.5, 1.0, 2.0):
        for alpha in (0.25, 0.5, 1.0):
            tf = conformable_derivative(f, t, alpha)
            tg = conformable_derivative(g, t, alpha)
            ft, gt = evaluate(f, (t,))[0], evaluate(g, (t,))[0]

            lin = conformable_derivative(
                parse(f"2*({f_src}) - 3*({g_src})", ("t",)), t, alpha)
            assert rel_close(lin, 2.0 * tf - 3.0 * tg, 1e-10)

            prod = conformable_derivative(
                parse(f"({f_src})*({g_src})", ("t",)), t, alpha)
            assert rel_close(prod, ft * tg + gt * tf, 1e-10)

            quot = conformable_derivative(
                parse(f"({f_src})/({g_src})", ("t",)), t, alpha)
            assert rel_close(quot, (gt * tf - ft * tg) / gt ** 2, 1e-10)
    _pass("1-D operator rules: power (1e-12), constants (exact 0), "
          "linearity/product/quotient (1e-10)")


def test_rows_and_entries_structure():
    """Stacked component rows reproduce the Jacobian bit for bit; each
    entry equals the matching conformable partial to 1e-14."""
    for f, point, src in corpus_functions():
        for alpha in GRID_ALPHA:
            jac = conformable_jacobian(f, point, alpha)
            rows = component_rows(f, point, alpha)
            stacked = np.vstack([r.entries for r in rows])
            assert stacked.tobytes() == jac.entries.tobytes(), (src, alpha)
            for i in range(f.m):
                for j in range(f.n):
                    part = conformable_partial(f.component(i), point, j, alpha)
                    assert rel_close(part, jac[i, j], 1e-14, atol=5e-324), (src, i, j)
    _pass("row decomposition bit-exact; entries equal conformable partials (1e-14)")


def test_domain_enforcement_distinct_errors(capsys):
    """Order, point and composition constraints raise distinct errors
    and reach the CLI as exit status 2."""
    with pytest.raises(OrderRangeError):
        Order(1.5)
    with pytest.raises(OrderRangeError):
        Order(0.0)
    with pytest.raises(NonPositiveError):
        PositivePoint((1.0, 0.0))
    with pytest.raises(NonPositiveError):
        PositivePoint((-2.0,))
    with pytest.raises(CompositionDomainError):
        chain_rhs(parse("u1^2", ("u1",)), parse("x-2", ("x",)), (1.0,), 0.5)
    assert not issubclass(OrderRangeError, NonPositiveError)
    assert not issubclass(NonPositiveError, OrderRangeError)
    assert not issubclass(CompositionDomainError, (OrderRangeError, NonPositiveError))

    cases = [
        ["jacobian", "--expr", "sin(x)", "--vars", "x,y",
         "--point", "1.0,2.0", "--alpha", "1.5"],
        ["jacobian", "--expr", "sin(x)", "--vars", "x,y",
         "--point", "1.0,0.0", "--alpha", "0.5"],
        ["chain-check", "--expr", "u1^2", "--inner", "x-2",
         "--vars", "x", "--point", "1.0", "--alpha", "0.5"],
    ]
    for argv in cases:
        code = cli_main(argv)
        capsys.readouterr()
        assert code == 2, argv
    _pass("domain enforcement: distinct errors, CLI exit status 2")


def test_oracle_accuracy_and_convergence_order():
    """Extrapolated oracle within 1e-7 of the closed form for sin at
    t=2, alpha=0.3; raw quotient error decays at order 1.0 +/- 0.3."""
    r = fd_conformable_derivative(parse("sin(t)", ("t",)), 2.0, 0.3)
    truth = 2.0 ** 0.7 * math.cos(2.0)
    assert abs(r.value - truth) < 1e-7
    assert len(r.steps) == 6
    raw_errors = [abs(row[0] - truth) for row in r.table]
    slope = np.polyfit(np.log(r.steps), np.log(raw_errors), 1)[0]
    assert abs(slope - 1.0) <= 0.3
    _pass("oracle hits closed form to 1e-7; raw error order 1.0 +/- 0.3")
