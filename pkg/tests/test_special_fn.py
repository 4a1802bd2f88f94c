import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indexhyp import oracles
from indexhyp import special_fn as sf
from indexhyp.errors import PoleError


def test_log_gamma_examples():
    assert abs(sf.log_gamma(1)) < 1e-15
    assert abs(sf.log_gamma(5) - math.log(24)) < 1e-13
    # |Gamma(i)|^2 = pi / sinh(pi)
    assert abs(math.exp(2 * sf.log_gamma(1j).real) - 0.272029054982133163) < 1e-14


def test_log_gamma_poles():
    for w in (0, -1, -7):
        with pytest.raises(PoleError):
            sf.log_gamma(w)


@given(st.floats(0.05, 40), st.floats(-40, 40))
def test_log_gamma_against_extended_precision(x, y):
    w = complex(x, y)
    if abs(w) > 50:
        return
    ref = oracles.gamma_ref(w)
    val = cmath.exp(sf.log_gamma(w))
    assert abs(val - ref) <= 1e-13 * abs(ref)


@given(st.floats(0.01, 0.99), st.floats(-30, 30))
def test_euler_reflection(x, y):
    assert sf.reflection_residual(complex(x, y)) < 1e-12


def test_hyp2f1_examples():
    assert sf.hyp2f1_line(0.7, 1.3, 2.4, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert sf.hyp2f1_line(0.0, 0.5, 1.0, 1.0) == pytest.approx(-0.190774274637259452, rel=1e-12)
    assert sf.hyp2f1_line(0.5, 1.0, 1.0, 1.0) == pytest.approx(0.490816965919228261, rel=1e-12)


@pytest.mark.parametrize("b,c,s,x,ref", [
    (0.7, 1.3, 2.4, 3.0, -0.0428514745081835059),
    (1.0, 2.0, 0.3, 50.0, 0.0929303328193111009),
    (0.3, 0.9, 7.5, 900.0, -0.0133100451644747842),
])
def test_hyp2f1_frozen_reference(b, c, s, x, ref):
    assert sf.hyp2f1_line(b, c, s, x) == pytest.approx(ref, rel=1e-11)


@given(st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0, 50), st.floats(0, 1e4))
def test_hyp2f1_against_series_oracle(b, c, s, x):
    ref = complex(oracles.hyp2f1_line_ref(b, c, s, x))
    val = complex(sf.hyp2f1_line(b, c, s, x))
    env = sf.hyp2f1_line_envelope(b, c, x) or 1.0
    assert abs(val - ref) <= 1e-11 * max(abs(ref), 1e-3 * env)


def test_hyp2f1_half_integer_degenerate_points():
    # 2is integer: the connection formula is singular there
    for s in (0.5, 1.0, 1.5):
        ref = complex(oracles.hyp2f1_line_ref(1.0, 1.0, s, 50.0))
        assert abs(sf.hyp2f1_line(1.0, 1.0, s, 50.0) - ref) < 1e-10 * abs(ref)


@given(st.floats(0.2, 2), st.floats(0.2, 2), st.floats(0, 5), st.floats(-1, 1), st.floats(0, 20))
def test_conjugate_symmetry(b, c, sr, si, x):
    s = complex(sr, si)
    lhs = complex(sf.hyp2f1_line(b, c, np.conj(s), x))
    rhs = np.conj(complex(sf.hyp2f1_line(b, c, s, x)))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_real_output_for_real_s():
    v = sf.hyp2f1_line(0.8, 1.1, np.array([0.5, 2.0]), np.array([1.0, 10.0]))
    assert not np.iscomplexobj(v)


@pytest.mark.parametrize("b,c,s,x", [(1.0, 1.0, 1.3, 0.4), (0.5, 1.5, 2.0, 3.0), (1.2, 0.8, 0.4, 20.0)])
def test_derivative_relation(b, c, s, x):
    ref = -((b * b + s * s) / (b + c)) * complex(
        oracles.hyp2f1_series(b + 1 + 1j * s, b + 1 - 1j * s, b + c + 1, -x))
    assert abs(sf.hyp2f1_line_dx(b, c, s, x) - ref) < 1e-11 * max(1.0, abs(ref))
    h = 1e-5 * (1 + x)
    fd = (sf.hyp2f1_line(b, c, s, x + h) - sf.hyp2f1_line(b, c, s, x - h)) / (2 * h)
    assert abs(fd - ref) < 1e-7 * max(1.0, abs(ref))


@given(st.floats(0, 100), st.floats(0, 10))
def test_pfaff_consistency(x, s):
    b, c = 0.9, 1.4
    ref = complex(oracles.pfaff_ref(b, c, s, x))
    assert abs(sf.hyp2f1_line(b, c, s, x) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_weight_sigma_examples():
    assert sf.weight_sigma(0.5, 0.5, 1.0) == pytest.approx(4 * math.pi * math.tanh(math.pi), rel=1e-13)
    assert sf.weight_sigma(0.5, 0.5, 1e-9) < 1e-15
    assert sf.weight_sigma(1.0, 2.0, 3.0) == pytest.approx(3392.92011006916461, rel=1e-12)


def test_weight_sigma_vanishes_like_s_squared():
    r = [sf.weight_sigma(0.7, 1.2, s) / s ** 2 for s in (1e-3, 1e-4, 1e-5)]
    assert r[1] == pytest.approx(r[2], rel=1e-6)
    assert r[0] == pytest.approx(r[2], rel=1e-4)


def test_weight_sigma_no_overflow():
    v = sf.weight_sigma(1.0, 1.0, 500.0)
    assert np.isfinite(v) and v > 0


def test_weight_abc_examples():
    ref = 2 * math.pi ** 2 * math.sinh(2 * math.pi) / math.cosh(math.pi) ** 3
    assert sf.weight_abc(0.5, 0.5, 0.5, 1.0) == pytest.approx(ref, rel=1e-13)
    assert sf.weight_abc(2, 1, 1, 1e-9) < 1e-15
    assert sf.weight_abc(2.0, 1.0, 1.0, 2.0) == pytest.approx(11.7959128509201213, rel=1e-12)
    g = abs(cmath.exp(sf.log_gamma(2 + 2j))) ** 2
    assert sf.weight_abc(2.0, 1.0, 1.0, 2.0) == pytest.approx(sf.weight_sigma(1.0, 1.0, 2.0) * g, rel=1e-13)


def test_weight_abc_tau_normalization():
    v = sf.weight_abc(2.0, 1.0, 1.5, 0.7, normalization="tau")
    ref = sf.weight_abc(2.0, 1.0, 1.5, 0.7) / (math.gamma(3.0) * math.gamma(3.5))
    assert v == pytest.approx(ref, rel=1e-13)
    with pytest.raises(ValueError):
        sf.weight_abc(2.0, 1.0, 1.5, 0.7, normalization="other")


@pytest.mark.parametrize("kind,params", [("abc", (2.0, 1.0, 1.0)), ("abc", (0.6, 0.4, 1.7)), ("lambda", (2.0, 1.0, 1.5))])
def test_tail_envelope_dominates_weight(kind, params):
    tail = sf.weight_tail(kind, params)
    a, b, c = params
    for S in (5.0, 10.0, 20.0):
        s = np.linspace(S, S + 40, 4001)
        if kind == "abc":
            w = sf.weight_abc(a, b, c, s)
        else:
            w = np.abs(np.exp(sf.log_gamma(a + 1j * s))) * sf.weight_sigma(b, c, s)
        numeric = np.trapz(w, s)
        assert tail.integral(S) >= numeric


def test_contiguous_relation_examples():
    assert sf.contiguous_residual_23(0.3, 1.7, 2.1, 0.4) < 1e-12
    assert sf.contiguous_residual_23(0.3, 1.7, 2.1, 0.0) == 0.0
    assert sf.contiguous_residual_23(1 + 1j, 2 - 1j, 3, 0.2) < 1e-12


def test_contiguous_relation_poles():
    with pytest.raises(PoleError):
        sf.contiguous_residual_23(1.0, 1.0, 2.0, 0.3)
    with pytest.raises(PoleError):
        sf.contiguous_residual_23(2.0, 1.0, 2.0, 0.3)


def test_param_triple():
    t = sf.ParamTriple(2.0, 1.0, 1.0, space_admissible=True)
    assert t.astuple() == (2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        sf.ParamTriple(1.0, 1.0, 1.0, space_admissible=True)
    with pytest.raises(ValueError):
        sf.ParamTriple(1.0, -1.0, 1.0)
