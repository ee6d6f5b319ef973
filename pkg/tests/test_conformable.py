import math
import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confjac import (
    Binary, DimensionError, FunctionDef, NonPositiveError, Order,
    OrderRangeError, PositivePoint, ScalingMatrix, classical_jacobian,
    component_rows, conformable_derivative, conformable_jacobian,
    conformable_partial, evaluate, parse, scaling_matrix,
)

from corpus import ALPHAS, corpus_functions, rel_close


def bits(x):
    return struct.pack("<d", float(x))


class TestOrder:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0, 1e-9, 1])
    def test_accepts(self, alpha):
        assert Order(alpha).alpha == float(alpha)

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 1.0000001, 2, math.nan, math.inf])
    def test_rejects(self, alpha):
        with pytest.raises(OrderRangeError):
            Order(alpha)


class TestPositivePoint:
    def test_accepts(self):
        p = PositivePoint((0.5, 2.0, 1e-12))
        assert p.n == 3
        assert p.coords == (0.5, 2.0, 1e-12)

    @pytest.mark.parametrize("coords", [
        (1.0, 0.0), (-1.0,), (1.0, -2.0), (math.nan, 1.0), (math.inf, 1.0),
    ])
    def test_rejects(self, coords):
        with pytest.raises(NonPositiveError):
            PositivePoint(coords)


class TestScalingMatrix:
    def test_ones_point_gives_identity(self):
        s = scaling_matrix((1.0, 1.0, 1.0), 0.37)
        assert s.diagonal == (1.0, 1.0, 1.0)

    def test_direct_exponentiation(self):
        s = scaling_matrix((4.0,), 0.5)
        assert s.diagonal == (2.0,)

    @settings(max_examples=50)
    @given(st.lists(st.floats(min_value=1e-3, max_value=1e3),
                    min_size=1, max_size=4))
    def test_alpha_one_is_identity(self, coords):
        s = scaling_matrix(tuple(coords), 1.0)
        assert s.diagonal == tuple(1.0 for _ in coords)

    def test_chain_variant_is_reciprocal_exponent(self):
        fwd = scaling_matrix((4.0,), 0.5, "1-alpha")
        inv = scaling_matrix((4.0,), 0.5, "alpha-1")
        assert fwd.diagonal == (2.0,)
        assert inv.diagonal == (0.5,)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            scaling_matrix((1.0,), 0.5, "alpha")

    def test_matrix_form(self):
        s = scaling_matrix((4.0, 9.0), 0.5)
        assert s.as_matrix().tolist() == [[2.0, 0.0], [0.0, 3.0]]

    def test_rejects_nonpositive_diagonal(self):
        with pytest.raises(NonPositiveError):
            ScalingMatrix((1.0, 0.0))


class TestConformableJacobian:
    @pytest.mark.parametrize("a0", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("b0", [1.0, 3.0])
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_sine_closed_form(self, a0, b0, alpha):
        jac = conformable_jacobian(parse("sin(x)", ("x", "y")), (a0, b0), alpha)
        expected = [[a0 ** (1.0 - alpha) * math.cos(a0), 0.0]]
        assert rel_close(jac.entries, expected, 1e-12)

    def test_derived_matrix_at_half_order(self):
        jac = conformable_jacobian(parse("x^2*y, x+y^2", ("x", "y")), (1.0, 2.0), 0.5)
        expected = [[4.0, 2.0 ** 0.5], [1.0, 4.0 * 2.0 ** 0.5]]
        assert rel_close(jac.entries, expected, 1e-15)

    @pytest.mark.parametrize("f, point, src", corpus_functions())
    def test_alpha_one_reduces_to_classical(self, f, point, src):
        conf = conformable_jacobian(f, point, 1.0).entries
        classical = classical_jacobian(f, point).entries
        assert conf.tobytes() == classical.tobytes(), src

    def test_rejects_nonpositive_point(self):
        with pytest.raises(NonPositiveError):
            conformable_jacobian(parse("x", ("x",)), (0.0,), 0.5)

    def test_rejects_bad_order(self):
        with pytest.raises(OrderRangeError):
            conformable_jacobian(parse("x", ("x",)), (1.0,), 1.2)

    def test_accepts_wrapped_types(self):
        f = parse("x*y", ("x", "y"))
        a = conformable_jacobian(f, PositivePoint((1.0, 2.0)), Order(0.5))
        b = conformable_jacobian(f, (1.0, 2.0), 0.5)
        assert a.entries.tobytes() == b.entries.tobytes()


class TestConformablePartial:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_product_function(self, alpha):
        a0, b0 = 1.3, 2.1
        value = conformable_partial(parse("x^2*y", ("x", "y")), (a0, b0), 0, alpha)
        expected = a0 ** (1.0 - alpha) * 2.0 * a0 * b0
        assert math.isclose(value, expected, rel_tol=1e-13)

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 0.75))
    def test_matches_limit_oracle(self, alpha):
        from confjac import fd_conformable_partial
        f = parse("x^2*y", ("x", "y"))
        value = conformable_partial(f, (1.3, 2.1), 0, alpha)
        r = fd_conformable_partial(f, (1.3, 2.1), 0, alpha)
        assert abs(value - r.value) <= max(10.0 * r.error, 1e-8)

    def test_constant_is_zero(self):
        assert conformable_partial(parse("7", ("x", "y")), (1.5, 2.5), 1, 0.4) == 0.0

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_identity_function(self, alpha):
        a0 = 2.7
        value = conformable_partial(parse("x", ("x",)), (a0,), 0, alpha)
        assert bits(value) == bits(a0 ** (1.0 - alpha))

    def test_index_bounds(self):
        f = parse("x*y", ("x", "y"))
        with pytest.raises(IndexError):
            conformable_partial(f, (1.0, 2.0), 2, 0.5)
        with pytest.raises(IndexError):
            conformable_partial(f, (1.0, 2.0), -1, 0.5)

    def test_needs_scalar_function(self):
        with pytest.raises(DimensionError):
            conformable_partial(parse("x, y", ("x", "y")), (1.0, 2.0), 0, 0.5)

    @pytest.mark.parametrize("f, point, src", corpus_functions())
    @pytest.mark.parametrize("alpha", (0.25, 0.75))
    def test_equals_jacobian_entries(self, f, point, src, alpha):
        jac = conformable_jacobian(f, point, alpha)
        for i in range(f.m):
            for j in range(f.n):
                part = conformable_partial(f.component(i), point, j, alpha)
                assert bits(part) == bits(jac[i, j]), (src, i, j)


class TestConformableDerivative1D:
    @pytest.mark.parametrize("p", [-1.0, 0.5, 1.0, 2.0, 3.0])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
    def test_power_rule(self, p, t, alpha):
        f = parse(f"t^{p}" if p >= 0 else f"t^({p})", ("t",))
        value = conformable_derivative(f, t, alpha)
        expected = p * t ** (p - alpha)
        assert rel_close(value, expected, 1e-12)

    def test_constant_is_exactly_zero(self):
        assert conformable_derivative(parse("7", ("t",)), 1.8, 0.3) == 0.0

    def test_unit_point_is_plain_derivative(self):
        assert conformable_derivative(parse("t^2", ("t",)), 1.0, 0.5) == 2.0

    def test_rejects_nonpositive_t(self):
        with pytest.raises(NonPositiveError):
            conformable_derivative(parse("t^2", ("t",)), 0.0, 0.5)
        with pytest.raises(NonPositiveError):
            conformable_derivative(parse("t^2", ("t",)), -1.0, 0.5)

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
    def test_linearity_rule(self, alpha):
        t = 1.7
        f, g = parse("sin(t)", ("t",)), parse("t^2", ("t",))
        combined = parse("2*sin(t) - 3*t^2", ("t",))
        lhs = conformable_derivative(combined, t, alpha)
        rhs = (2.0 * conformable_derivative(f, t, alpha)
               - 3.0 * conformable_derivative(g, t, alpha))
        assert rel_close(lhs, rhs, 1e-10)

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
    @pytest.mark.parametrize("t", (0.5, 1.0, 2.0))
    def test_product_rule(self, alpha, t):
        f, g = parse("sin(t)+2", ("t",)), parse("t^2+1", ("t",))
        product = parse("(sin(t)+2)*(t^2+1)", ("t",))
        lhs = conformable_derivative(product, t, alpha)
        rhs = (evaluate(f, (t,))[0] * conformable_derivative(g, t, alpha)
               + evaluate(g, (t,))[0] * conformable_derivative(f, t, alpha))
        assert rel_close(lhs, rhs, 1e-10)

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
    @pytest.mark.parametrize("t", (0.5, 1.0, 2.0))
    def test_quotient_rule(self, alpha, t):
        f, g = parse("sin(t)+2", ("t",)), parse("t^2+1", ("t",))
        quotient = parse("(sin(t)+2)/(t^2+1)", ("t",))
        lhs = conformable_derivative(quotient, t, alpha)
        gt = evaluate(g, (t,))[0]
        rhs = (gt * conformable_derivative(f, t, alpha)
               - evaluate(f, (t,))[0] * conformable_derivative(g, t, alpha)) / gt ** 2
        assert rel_close(lhs, rhs, 1e-10)


class TestVectorRules:
    @pytest.mark.parametrize("lam, mu", [(-2.0, 0.5), (0.5, 3.0), (3.0, -2.0)])
    @pytest.mark.parametrize("alpha", (0.25, 0.75, 1.0))
    def test_linearity(self, lam, mu, alpha):
        from confjac import Constant
        f = parse("sin(x)*y, x^2+y", ("x", "y"))
        g = parse("exp(x/2), x*y", ("x", "y"))
        a = (1.2, 0.7)
        comps = tuple(
            Binary("add", Binary("mul", Constant(lam), cf),
                   Binary("mul", Constant(mu), cg))
            for cf, cg in zip(f.components, g.components))
        combo = conformable_jacobian(FunctionDef(comps, f.variables), a, alpha).entries
        expected = (lam * conformable_jacobian(f, a, alpha).entries
                    + mu * conformable_jacobian(g, a, alpha).entries)
        assert rel_close(combo, expected, 1e-12, atol=1e-300)

    @pytest.mark.parametrize("alpha", (0.25, 0.5, 1.0))
    def test_scalar_product_rule(self, alpha):
        f = parse("sin(x)+y", ("x", "y"))
        g = parse("x*y+1", ("x", "y"))
        product = parse("(sin(x)+y)*(x*y+1)", ("x", "y"))
        a = (1.4, 0.9)
        lhs = conformable_jacobian(product, a, alpha).entries
        rhs = (evaluate(f, a)[0] * conformable_jacobian(g, a, alpha).entries
               + evaluate(g, a)[0] * conformable_jacobian(f, a, alpha).entries)
        assert rel_close(lhs, rhs, 1e-10)


class TestComponentRows:
    def test_sine_pair_rows(self):
        a0, b0, alpha = 1.1, 2.3, 0.5
        rows = component_rows(parse("sin(x), x", ("x", "y")), (a0, b0), alpha)
        w = a0 ** (1.0 - alpha)
        assert rel_close(rows[0].entries, [[w * math.cos(a0), 0.0]], 1e-14)
        assert rel_close(rows[1].entries, [[w, 0.0]], 1e-14)

    def test_single_component_equals_jacobian(self):
        f = parse("x*y", ("x", "y"))
        row = component_rows(f, (1.5, 2.5), 0.25)
        jac = conformable_jacobian(f, (1.5, 2.5), 0.25)
        assert len(row) == 1
        assert row[0].entries.tobytes() == jac.entries.tobytes()

    @pytest.mark.parametrize("f, point, src", corpus_functions())
    @pytest.mark.parametrize("alpha", (0.25, 1.0))
    def test_stacking_is_bit_exact(self, f, point, src, alpha):
        rows = component_rows(f, point, alpha)
        stacked = np.vstack([r.entries for r in rows])
        jac = conformable_jacobian(f, point, alpha).entries
        assert stacked.tobytes() == jac.tobytes(), src
