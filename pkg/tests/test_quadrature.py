import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indexhyp import oracles
from indexhyp import quadrature as quad
from indexhyp import special_fn as sf


def test_beta_integral():
    # int x (1+x)^{-4} dx = B(2, 2)
    r = quad.integrate_x(lambda x: (1 + x) ** -4.0, 1.0, 1.0)
    assert r.converged
    assert r.value == pytest.approx(1 / 6, rel=1e-11)


def test_zero_integrand():
    r = quad.integrate_x(quad.ZERO, 1.0, 1.0)
    assert r.value == 0 and r.converged


def test_power_against_beta_and_panel_oracle():
    # (a, b, c) = (2, 1, 1): int x (1+x)^{-3} dx = B(2, 1)
    f = lambda x: (1 + x) ** -3.0
    r = quad.integrate_x(f, 1.0, 1.0)
    assert r.value == pytest.approx(0.5, rel=1e-11)
    assert r.value == pytest.approx(oracles.halfline_x_ref(f, 1.0, 1.0), rel=1e-10)


@given(st.floats(0.5, 3), st.floats(0.5, 3), st.floats(0.5, 4))
def test_generic_beta_family(b, c, extra):
    # int x^{b+c-1} (1+x)^{b-c} (1+x)^{-2b-extra} dx = B(b+c, extra)
    k = 2 * b + extra
    f = lambda x: (1 + x) ** -k
    p, q = b + c, extra
    ref = math.exp(math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q))
    r = quad.integrate_x(f, b, c)
    assert r.value == pytest.approx(ref, rel=1e-9)


def test_substitution_invariance():
    f = lambda x: np.exp(-x) / (1 + x)
    a = quad.integrate_x(f, 1.0, 1.5)
    b = quad.integrate_x(f, 1.0, 1.5, spec=quad.QuadratureSpec(x_substitution="none"))
    assert abs(a.value - b.value) <= 10 * (a.error_estimate + b.error_estimate) + 1e-11 * abs(a.value)


def test_linearity():
    f = lambda x: (1 + x) ** -3.0
    g = lambda x: np.exp(-x)
    lhs = quad.integrate_x(lambda x: 2.0 * f(x) - 3j * g(x), 1.0, 1.0).value
    rhs = 2.0 * quad.integrate_x(f, 1.0, 1.0).value - 3j * quad.integrate_x(g, 1.0, 1.0).value
    assert abs(lhs - rhs) < 1e-10


def test_refinement_does_not_increase_error():
    f = lambda x: np.cos(3 * x) * np.exp(-x)
    ref = oracles.halfline_x_ref(f, 1.0, 1.0)
    errs = [abs(quad.integrate_x(f, 1.0, 1.0, spec=quad.QuadratureSpec(rel_tol=t)).value - ref)
            for t in (1e-5, 1e-7, 1e-9, 1e-11)]
    assert errs[-1] < 1e-10
    assert all(e2 <= max(e1, 1e-12) for e1, e2 in zip(errs, errs[1:]))


def test_small_b_plus_c_warns():
    with pytest.warns(RuntimeWarning):
        quad.integrate_x(lambda x: (1 + x) ** -3.0, 0.1, 0.2)


def test_spec_validation():
    with pytest.raises(ValueError):
        quad.QuadratureSpec(rel_tol=0)
    with pytest.raises(ValueError):
        quad.QuadratureSpec(max_subdivisions=0)
    with pytest.raises(ValueError):
        quad.QuadratureSpec(x_substitution="tan")


def test_converged_implies_error_within_tolerance():
    spec = quad.QuadratureSpec()
    r = quad.integrate_x(lambda x: (1 + x) ** -3.0, 1.0, 1.0, spec)
    assert r.converged
    assert r.error_estimate <= max(spec.abs_tol, spec.rel_tol * abs(r.value))


def test_s_weight_constant_function():
    # int |Gamma(1+is)|^6 / |Gamma(2is)|^2 ds = 2 pi
    r = quad.integrate_s(lambda s: np.ones_like(s), quad.GammaABC(1.0, 1.0, 1.0))
    assert r.converged
    assert r.value == pytest.approx(2 * math.pi, rel=1e-11)


def test_s_weight_zero():
    r = quad.integrate_s(lambda s: np.zeros_like(s), quad.GammaABC(1.0, 1.0, 1.0))
    assert r.value == 0


def test_s_weight_general_triple():
    a, b, c = 1.5, 0.5, 1.0
    r = quad.integrate_s(lambda s: np.ones_like(s), quad.GammaABC(a, b, c))
    ref = 2 * math.pi * math.gamma(a + b) * math.gamma(a + c) * math.gamma(b + c)
    assert r.value == pytest.approx(ref, rel=1e-10)


def test_bc_weight_with_gamma_factor_matches_abc_weight():
    a, b, c = 2.0, 0.5, 1.0
    g = lambda s: np.exp(2 * np.real(sf.log_gamma(a + 1j * np.asarray(s))))
    r = quad.integrate_s(g, quad.GammaBC(b, c), g_bound=g)
    ref = quad.integrate_s(lambda s: np.ones_like(s), quad.GammaABC(a, b, c))
    assert r.value == pytest.approx(ref.value, rel=1e-9)


def test_bc_weight_alone_is_not_integrable():
    r = quad.integrate_s(lambda s: np.ones_like(s), quad.GammaBC(0.5, 1.0))
    assert not r.converged


def test_fixed_s_max_policy():
    spec = quad.QuadratureSpec(s_max_policy=12.0)
    r = quad.integrate_s(lambda s: np.ones_like(s), quad.GammaABC(1.0, 1.0, 1.0), spec)
    assert r.info["s_max"] == 12.0


def test_disk_area():
    r = quad.integrate_2d(lambda z: np.ones(np.shape(z)), "disk")
    assert r.value == pytest.approx(math.pi, rel=1e-9)


def test_disk_radial_reduces_to_one_dimension():
    h = lambda z: np.exp(-np.abs(z) ** 2)
    r = quad.integrate_2d(h, "disk")
    assert r.value == pytest.approx(math.pi * (1 - math.exp(-1)), rel=1e-7)


def test_separable_product():
    f = lambda x: (1 + x) ** -3.0
    g = lambda y: np.exp(-y)
    r = quad.integrate_2d(lambda x, y: f(x) * g(y), "half-lines", ((1.0, 1.0), (1.0, 0.5)))
    fx = quad.integrate_x(f, 1.0, 1.0).value
    gy = quad.integrate_x(g, 1.0, 0.5).value
    assert r.value == pytest.approx(fx * gy, rel=1e-7)


def test_half_line_function_helpers():
    f = quad.HalfLineFunction(lambda x: (1 + x) ** -3.0, 3.0, "p3")
    assert f.strip_halfwidth(1.0) == 2.0
    g = f.scaled(2.0) + quad.HalfLineFunction.from_scalar(lambda x: 1 / (1 + x) ** 5, 5.0)
    assert g.decay_exponent == 3.0
    assert g(1.0) == pytest.approx(2 / 8 + 1 / 32)


def test_panel_order_is_bit_stable():
    f = lambda x: np.sin(x) / (1 + x) ** 3
    a = quad.integrate_x(f, 1.0, 1.0).value
    b = quad.integrate_x(f, 1.0, 1.0).value
    assert a == b
