import math

import numpy as np
import pytest

from indexhyp import lambda_fn as lf
from indexhyp import special_fn as sf
from indexhyp.errors import CalibrationError

# extended-precision references (mpmath, 40 digits)
FROZEN = {
    (2.0, 1.0, 1.0, 1.0): 1.118843758675071503 - 0.0071879242767889001j,
    (2.0, 1.0, 1.5, 0.7): 2.6497364101609934 + 3.0612566773356479j,
    (1.0, 0.5, 1.0, 1.0): 0.35899329311992829 - 0.25086144827024181j,
    (2.5, 0.5, 1.0, 3.0): 0.010758975290703123 - 0.14526765179729140j,
}


@pytest.mark.parametrize("point", sorted(FROZEN))
def test_lambda_against_frozen_reference(point):
    val = lf.lambda_eval(*point)
    ref = FROZEN[point]
    assert abs(val.value - ref) < 1e-9 * abs(ref)
    assert val.error_estimate < 1e-8


def test_lambda_finite_at_origin():
    v = lf.lambda_eval(2.0, 1.0, 1.0, 0.0).value
    assert np.isfinite(v)


def test_lambda_decays_beyond_fifty():
    xs = np.array([50.0, 100.0, 200.0, 400.0, 800.0])
    mags = np.abs(lf.lambda_values(2.0, 1.0, 1.0, xs)[0])
    assert np.all(np.diff(mags) < 0)


def test_lambda_rejects_bad_input():
    with pytest.raises(ValueError):
        lf.lambda_eval(0.0, 1.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        lf.lambda_values(2.0, 1.0, 1.0, [-1.0])


def test_cached_function_matches_direct():
    fun = lf.LambdaFunction(2.0, 1.0, 1.0)
    xs = np.array([0.1, 2.0, 0.1])
    vals = fun(xs)
    assert fun.cache_size == 2
    assert vals[0] == vals[2]
    assert abs(vals[1] - lf.lambda_eval(2.0, 1.0, 1.0, 2.0).value) < 1e-12


@pytest.mark.slow
def test_lambda_norm():
    a, b, c = 2.0, 1.0, 1.0
    assert lf.lambda_norm_sq(a, b, c) == pytest.approx(4.0, rel=1e-4)
    assert lf.lambda_norm_sq_exact(a, b, c) == pytest.approx(4.0, rel=1e-14)


@pytest.mark.slow
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_lambda_image_is_gamma(s):
    a, b, c = 2.0, 1.0, 1.0
    ref = lf.gamma_image(a, s)
    assert abs(lf.lambda_image(a, b, c, s) - ref) < 1e-4 * abs(ref)


def test_lambda_image_needs_positive_s():
    with pytest.raises(ValueError):
        lf.lambda_image(2.0, 1.0, 1.0, 0.0)


def test_symmetry_trivial_at_equal_parameters():
    assert lf.symmetry_67(2.0, 1.0, 1.0, 0.7) == 0


@pytest.mark.parametrize("b", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("c", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, 3.0])
def test_parameter_swap_symmetry(b, c, x):
    res = lf.symmetry_67(2.0, b, c, x)
    assert res < 1e-6 * abs(lf.lambda_eval(2.0, b, c, x).value)


@pytest.mark.parametrize("a,b,c,x", [(2.0, 1.0, 1.0, 0.5), (2.5, 0.5, 1.0, 1.0), (2.0, 1.5, 0.5, 3.0)])
def test_derivative_lowers_to_shifted_parameter(a, b, c, x):
    assert lf.derivative_68(a, b, c, x) < 1e-5


def test_derivative_error_is_second_order():
    a, b, c, x = 2.0, 1.0, 1.0, 0.5
    ref = lf.lambda_eval(a, b + 1, c, x).value
    fun = lf._fresh(a, b, c)
    e1 = abs(lf.fd_derivative(fun, x, 1, 2e-2) + ref)
    e2 = abs(lf.fd_derivative(fun, x, 1, 1e-2) + ref)
    assert 3.0 < e1 / e2 < 5.0


def test_iterated_identity_cases():
    a, b, c, x = 2.0, 1.0, 1.0, 0.8
    v, degraded = lf.iterated_69(a, b, c, 0, 0, x)
    assert v == lf.lambda_eval(a, b, c, x).value and not degraded
    v, _ = lf.iterated_69(a, b, c, 1, 0, x)
    assert abs(v - lf.lambda_eval(a, b + 1, c, x).value) < 1e-5
    v, _ = lf.iterated_69(a, b, c, 0, 1, x)
    ref = lf.lambda_eval(a, b, c + 1, x).value
    assert abs(v - ref) < 1e-4 * abs(ref)


@pytest.mark.parametrize("k,l", [(1, 1), (2, 0), (0, 2)])
def test_iterated_second_order(k, l):
    a, b, c, x = 2.0, 1.0, 1.0, 0.8
    v, degraded = lf.iterated_69(a, b, c, k, l, x)
    ref = lf.lambda_eval(a, b + k, c + l, x).value
    assert abs(v - ref) < 1e-4 * abs(ref) and not degraded


def test_iterated_depth_flag_and_limit():
    _, degraded = lf.iterated_69(2.0, 1.0, 1.0, 2, 1, 0.8)
    assert degraded
    with pytest.raises(ValueError):
        lf.iterated_69(2.0, 1.0, 1.0, 2, 2, 0.8)


@pytest.mark.parametrize("x", [0.0, 1.0, 4.0])
def test_four_term_recurrence(x):
    assert lf.recurrence_611(2.0, 1.0, 1.0, x) < 1e-5


def test_four_term_recurrence_printed_form_fails():
    assert lf.recurrence_611(2.0, 1.0, 1.0, 1.0, printed=True) > 0.1


def test_differential_form_of_recurrence():
    assert lf.recurrence_610(2.0, 1.0, 1.0, 1.0) < 1e-5
    assert lf.recurrence_610(2.0, 1.0, 1.0, 0.0) < 1e-5


def test_exact_values_of_the_one_integral():
    vals = [lf.lambda_pair_exact(2.0, 1.0, 1.0, n) for n in range(5)]
    assert vals == pytest.approx([8.0, 16.0, 8.0, -168.0, -1536.0], rel=1e-12)


def test_printed_right_sides_are_reported():
    assert lf.lambda_pair_rhs_4f3(2.0, 1.0, 1.0, 0) == pytest.approx(4.0, rel=1e-12)
    assert math.isnan(lf.lambda_pair_rhs_4f3(2.0, 1.0, 1.0, 1))
    assert lf.lambda_pair_rhs_altsum(2.0, 1.0, 1.0, 0) == pytest.approx(4.0, rel=1e-12)


@pytest.mark.slow
def test_one_integral_at_degree_zero_is_twice_the_norm():
    a, b, c = 2.0, 1.0, 1.0
    lhs, rhs, alt = lf.prop61_pair(a, b, c, 0)
    assert lhs / lf.lambda_norm_sq_exact(a, b, c) == pytest.approx(2.0, abs=1e-3)
    assert rhs == pytest.approx(lf.lambda_norm_sq_exact(a, b, c), rel=1e-12)


def test_pochhammer_pair_printed_expansion_differs():
    for n in range(4):
        exact = lf.pochhammer_lhs(n, 2.0, 0.7)
        assert exact == pytest.approx(2 * np.real(lf.poch_complex(2.0 + 0.7j, n)))
    assert lf.pochhammer_printed(0, 2.0, 0.7) != pytest.approx(lf.pochhammer_lhs(0, 2.0, 0.7))


def test_lambda_star_derivative_identity():
    b0, z, h = 0.5, 2.0, 1e-4
    d = (lf.volterra_lambda_star(z + h, b0) - lf.volterra_lambda_star(z - h, b0)) / (2 * h)
    rhs = -lf.volterra_lambda_star(z, b0 + 1) + lf.volterra_lambda_star(z, b0) / z
    assert abs(d - rhs) < 1e-6


def test_lambda_star_vanishes_for_large_start():
    small = abs(lf.volterra_lambda_star(40.0, 30.0))
    big = abs(lf.volterra_lambda_star(40.0, 5.0))
    assert small < 1e-6 * big


def test_lambda_star_needs_right_half_plane():
    with pytest.raises(ValueError):
        lf.volterra_lambda_star(-1.0 + 0.1j, 0.5)


@pytest.mark.parametrize("x", [0.5, 2.0])
def test_lambda_star_decomposition(x):
    ref = lf.lambda_eval(2.0, 0.5, 1.0, x).value
    got = lf.lstar_decomposition(2.0, x)
    assert abs(got - ref) < 1e-3 * abs(ref)
    assert abs(lf.lstar_decomposition(2.0, x, printed=True) - ref) > 1e-2 * abs(ref)


def test_calibration_picks_square_root_convention():
    cal = lf.calibrate_re_lambda_half()
    assert cal.convention == "sqrt"
    assert cal.spread < 1e-4
    assert cal.constant == pytest.approx(math.sqrt(math.pi), rel=1e-8)
    assert cal.spreads["printed"] > 1e-2


def test_calibration_failure():
    with pytest.raises(CalibrationError):
        lf.calibrate_re_lambda_half(tol=1e-30)


def test_closed_real_part_at_another_parameter():
    ref = float(np.real(lf.lambda_eval(1.0, 0.5, 1.0, 1.0).value))
    assert lf.re_lambda_half_closed(1.0, 1.0) == pytest.approx(ref, rel=1e-4)


def test_closed_form_terms_swap_under_inversion():
    a = 2.0
    for x in (0.25, 1.0, 4.0):
        A = lf.ARGUMENT_CONVENTIONS["sqrt"](x)
        assert A * (math.sqrt(1 + x) - math.sqrt(x)) == pytest.approx(1.0, rel=1e-14)
        assert lf._half_bracket(a, 1 / A) == pytest.approx(-lf._half_bracket(a, A), rel=1e-12)


def test_gamma_image_helper():
    assert lf.gamma_image(2.0, 0.0) == pytest.approx(1.0)
    assert abs(lf.gamma_image(2.0, 1.3)) == pytest.approx(math.exp(sf.log_gamma(2 + 1.3j).real))
