import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indexhyp import berezin_spaces as bz
from indexhyp import hahn
from indexhyp import oracles


def test_monomial_norms():
    assert bz.w_norm_sq(0, 2, 1, 1) == pytest.approx(0.25, rel=1e-15)
    assert bz.w_norm_sq(1, 2, 1, 1) == pytest.approx(1 / 18, rel=1e-15)


@pytest.mark.parametrize("k", range(4))
def test_monomial_norms_from_measure(k):
    ref = bz.w_norm_sq(k, 2.0, 1.0, 1.0)
    assert bz.w_norm_sq_quadrature(k, 2.0, 1.0, 1.0) == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("k", range(3))
def test_monomial_norms_from_disk_integral(k):
    ref = bz.w_norm_sq(k, 2.0, 1.0, 1.0)
    assert bz.w_norm_sq_disk(k, 2.0, 1.0, 1.0) == pytest.approx(ref, rel=1e-6)


def test_measure_needs_admissible_triple():
    with pytest.raises(ValueError):
        bz.w_norm_sq_quadrature(0, 1.0, 1.0, 1.0)


def test_kernel_at_origin():
    a, b, c = 2.0, 1.0, 1.5
    ref = math.gamma(a + b) * math.gamma(a + c) / math.gamma(b + c)
    assert bz.reproducing_kernel(a, b, c, 0.0, 0.4 + 0.2j) == pytest.approx(ref, rel=1e-14)


def test_reproducing_property():
    a, b, c = 2.0, 1.0, 1.0
    f = bz.DiskFunction((1, 0, 2))
    w = 0.3
    pairing = bz.w_inner(f, bz.kernel_section(a, b, c, w, 40), a, b, c)
    assert abs(pairing - f(w)) < 1e-10


def test_kernel_section_matches_closed_kernel():
    a, b, c = 2.0, 1.0, 1.5
    z, u = 0.3 + 0.1j, -0.2 + 0.4j
    assert abs(bz.kernel_section(a, b, c, u, 80)(z) - bz.reproducing_kernel(a, b, c, z, u)) < 1e-12


@given(st.complex_numbers(max_magnitude=0.9), st.complex_numbers(max_magnitude=0.9))
def test_kernel_hermitian(z, u):
    lhs = bz.reproducing_kernel(2.0, 1.0, 1.0, z, u)
    rhs = np.conj(bz.reproducing_kernel(2.0, 1.0, 1.0, u, z))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_transform_of_constant():
    a, b, c = 2.0, 1.0, 1.0
    ref = 1 / (math.gamma(a + b) * math.gamma(a + c))
    assert bz.j_abc_forward(bz.DiskFunction((1,)), a, b, c, 0.9) == pytest.approx(ref, rel=1e-14)


def test_transform_of_z_both_routes():
    a, b, c = 2.0, 1.0, 1.0
    exact = float(oracles.hahn_exact(1, 2, 1, 1, 1)) / (math.gamma(4) * math.gamma(4))
    g = bz.DiskFunction.monomial(1)
    assert bz.j_abc_forward(g, a, b, c, 1.0) == pytest.approx(exact, rel=1e-13)
    assert abs(bz.j_abc_forward(g, a, b, c, 1.0, route="quadrature") - exact) < 1e-6


def test_transform_of_zero():
    assert bz.j_abc_forward(bz.DiskFunction((0, 0)), 2.0, 1.0, 1.0, 1.3) == 0


def test_transform_routes_agree_on_polynomial():
    a, b, c = 2.0, 1.0, 1.5
    g = bz.DiskFunction((1.0, -0.5, 0.25, 2.0))
    s = np.array([0.2, 1.0, 2.5])
    closed = bz.j_abc_forward(g, a, b, c, s)
    quadr = bz.j_abc_forward(g, a, b, c, s, route="quadrature")
    assert np.max(np.abs(closed - quadr)) < 1e-6


def test_transform_unknown_route():
    with pytest.raises(ValueError):
        bz.j_abc_forward(bz.DiskFunction((1,)), 2.0, 1.0, 1.0, 0.5, route="series")


def test_unitarity_gram_quadrature_route():
    a, b, c = 2.0, 1.0, 1.0
    G = bz.thm53_gram(4, a, b, c)
    norms = np.array([bz.w_norm_sq(k, a, b, c) for k in range(5)])
    assert np.allclose(np.diag(G), norms, rtol=1e-6)
    off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(norms, norms))
    assert np.max(off) < 1e-6


def test_unitarity_gram_closed_route():
    a, b, c = 1.5, 0.5, 1.0
    G = bz.thm53_gram(3, a, b, c, route="closed")
    assert np.allclose(G, np.diag([bz.w_norm_sq(k, a, b, c) for k in range(4)]), rtol=1e-8, atol=1e-12)


def test_gram_relates_to_hahn_norms():
    a, b, c = 2.0, 1.0, 1.0
    for k in range(4):
        scale = math.exp(2 * (math.lgamma(a + b + k) + math.lgamma(a + c + k)))
        assert bz.w_norm_sq(k, a, b, c) * scale == pytest.approx(hahn.hahn_norm_sq(k, a, b, c), rel=1e-13)


def test_radial_norms():
    assert bz.radial_berezin_norm_sq(0, 4.0, 2) == 1
    assert bz.radial_berezin_norm_sq(1, 4.0, 2) == pytest.approx(0.2, rel=1e-15)
    assert bz.radial_berezin_norm_sq(2, 4.0, 2) == pytest.approx(4 / 52.5, rel=1e-14)
    with pytest.raises(ValueError):
        bz.radial_berezin_norm_sq(1, 0.0, 2)


@pytest.mark.parametrize("theta,n", [(4.0, 2), (6.0, 3), (5.5, 1)])
def test_dictionary_ratio_is_constant_with_half_theta(theta, n):
    ratios = [bz.dictionary_ratio(p, theta, n) for p in range(4)]
    assert np.allclose(ratios, bz.dictionary_constant(theta, n), rtol=1e-12)


def test_dictionary_ratio_varies_with_printed_rule():
    ratios = [bz.dictionary_ratio(p, 4.0, 2, rule="printed") for p in range(3)]
    assert abs(ratios[2] / ratios[0] - 1) > 0.1


def test_multinomial_sum_examples():
    assert bz.multinomial_sum_39(2, 2) == 16
    assert bz.multinomial_sum_39(3, 0) == 1
    assert bz.multinomial_sum_39(1, 3) == 20


@given(st.integers(1, 6), st.integers(0, 8))
def test_multinomial_sum_matches_series(n, p):
    val = bz.multinomial_sum_39(n, p)
    assert val == oracles.multinomial_enum(n, p)
    assert val == bz.binomial_coefficient_39(n, p) == oracles.binomial_series_coeff(n, p)


def test_multinomial_sum_overflow_guard():
    with pytest.raises(OverflowError):
        bz.multinomial_sum_39(30, 30, max_terms=1000)


@pytest.mark.parametrize("ks", bz.vtheta_multi_indices(2, 3))
def test_vtheta_norms_against_ball_integral(ks):
    theta = 4.0
    ref = bz.vtheta_norm_sq(ks, theta)
    assert bz.vtheta_norm_sq_dirichlet(ks, theta, panels=16) == pytest.approx(ref, rel=1e-6)


def test_disk_function_evaluation():
    f = bz.DiskFunction((1, 0, 2))
    assert f.degree == 2
    assert f(0.5j) == pytest.approx(1 - 0.5)
