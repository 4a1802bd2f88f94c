"""Forward and inverse index hypergeometric transform.

    J f(s) = 1/Gamma(b+c) int_0^inf f(x) F_s(x) x^{b+c-1}(1+x)^{b-c} dx
    J^{-1} g(x) = 1/(2 pi Gamma(b+c)) int_0^inf g(s) F_s(x) sigma(s) ds

with F_s(x) = 2F1(b+is, b-is; b+c; -x) and sigma the Plancherel density.
With this constant the pair is mutually inverse and

    int |f|^2 x^{b+c-1}(1+x)^{b-c} dx = 1/(2 pi) int_0^inf |J f|^2 sigma ds.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import quadrature as quad
from . import special_fn as sf
from .errors import NonConvergenceError, StripViolationError
from .quadrature import DEFAULT_SPEC, HalfLineFunction, QuadratureResult

#: constant in front of every s-side integral against sigma
SPECTRAL_NORM = 1.0 / (2.0 * math.pi)


def _check_strip(f, b, s):
    im = float(np.max(np.abs(np.imag(np.asarray(s, dtype=complex)))))
    if im == 0.0:
        return
    width = f.decay_exponent - b
    if not im < width:
        raise StripViolationError("|Im s| = %g outside the strip of half-width %g" % (im, width))


def _kernel_values(b, c, s, x):
    """F_s(x) on the grid x[:, None] x s[None, :]."""
    return sf.hyp2f1_line(b, c, np.asarray(s)[None, :], np.asarray(x)[:, None])


def forward_with_error(f: HalfLineFunction, b, c, s, spec=DEFAULT_SPEC, strict=False) -> QuadratureResult:
    """J f at one or several spectral points (one shared quadrature).

    Complex ``s`` is allowed inside the strip |Im s| < decay_exponent - b.
    """
    _check_strip(f, b, s)
    scalar = np.ndim(s) == 0
    s_arr = np.atleast_1d(np.asarray(s))
    omega = 2.0 * float(np.max(np.abs(np.real(s_arr))))

    def integrand(x):
        fx = np.asarray(f(x))
        return fx[:, None] * _kernel_values(b, c, s_arr, x)

    res = quad.integrate_x(integrand, b, c, spec, oscillation=omega)
    if strict and not res.converged:
        raise NonConvergenceError("forward transform did not converge (err %g)" % np.max(res.error_estimate))
    scale = math.exp(-math.lgamma(b + c))
    value = np.asarray(res.value) * scale
    err = np.asarray(res.error_estimate) * scale
    real_out = np.all(np.imag(s_arr) == 0) and not np.iscomplexobj(f(np.array([0.5])))
    if real_out:
        value = value.real
    if scalar:
        value, err = value[0], float(err[0])
    return QuadratureResult(value, err, res.evaluations, res.converged, res.info)


def forward(f: HalfLineFunction, b, c, s, spec=DEFAULT_SPEC):
    """J f(s); array ``s`` gives an array."""
    return forward_with_error(f, b, c, s, spec).value


def inverse_with_error(g, b, c, x, spec=DEFAULT_SPEC, decay=None) -> QuadratureResult:
    """J^{-1} g at one or several x.

    ``decay`` may name the s-weight family carried by g*sigma (for instance
    ``GammaABC(a, b, c)`` when g contains |Gamma(a+is)|^2); the truncation
    point then comes from that envelope alone, so g may be a noisy
    quadrature.  By default the tail is found empirically.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if decay is None:
        decay = quad.GammaBC(b, c)
        extra = None
    else:
        extra = decay
        if spec.s_max_policy == "auto":
            S = quad.choose_s_max(decay, spec)
            if S is not None:
                spec = spec.with_(s_max_policy=S)
    base = quad.GammaBC(b, c)

    def integrand(s):
        gv = np.asarray(g(s))
        vals = gv[:, None] * sf.hyp2f1_line(b, c, s[:, None], xs[None, :])
        if extra is not None:
            vals = vals * np.exp(np.real(base.log_weight(s)) - np.real(extra.log_weight(s)))[:, None]
        return vals

    res = quad.integrate_s(integrand, decay, spec, x_osc=float(np.max(xs)))
    scale = SPECTRAL_NORM / math.gamma(b + c)
    value = np.asarray(res.value) * scale
    err = np.asarray(res.error_estimate) * scale
    if not np.iscomplexobj(g(np.array([0.5]))):
        value = value.real
    if scalar:
        value, err = value[0], float(err[0])
    return QuadratureResult(value, err, res.evaluations, res.converged, res.info)


def inverse(g, b, c, x, spec=DEFAULT_SPEC, decay=None):
    return inverse_with_error(g, b, c, x, spec, decay).value


def plancherel_pairing(f1: HalfLineFunction, f2: HalfLineFunction, b, c, spec=DEFAULT_SPEC):
    """(x-side inner product, s-side inner product of the transforms)."""
    inner = spec.with_(rel_tol=spec.rel_tol * 0.1)

    def xs_integrand(x):
        return np.asarray(f1(x)) * np.conj(np.asarray(f2(x)))

    lhs = quad.integrate_x(xs_integrand, b, c, spec).value

    def s_integrand(s):
        g1 = forward(f1, b, c, s, inner)
        g2 = g1 if f2 is f1 else forward(f2, b, c, s, inner)
        return np.asarray(g1) * np.conj(np.asarray(g2))

    rhs = quad.integrate_s(s_integrand, quad.GammaBC(b, c), spec).value * SPECTRAL_NORM
    return lhs, rhs


def spherical_params(n, r):
    """(b, c) = ((n+1)r/4 - 1/2, (n-1)r/4 + 1/2) for the rank-one ball of dimension n."""
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if r not in (1, 2, 4):
        raise ValueError("r must be 1, 2 or 4")
    b = (n + 1) * r / 4.0 - 0.5
    c = (n - 1) * r / 4.0 + 0.5
    if b <= 0 or c <= 0:
        warnings.warn("boundary case: b=%g, c=%g is not strictly positive" % (b, c), RuntimeWarning, stacklevel=2)
    return b, c


def power_family(a, b, n=0):
    """(x/(x+1))^n (1+x)^{-a-b} as a HalfLineFunction."""

    def ev(x):
        x = np.asarray(x, dtype=float)
        return (x / (x + 1.0)) ** n * (1.0 + x) ** (-a - b)

    return HalfLineFunction(ev, a + b, "pow(%g,%d)" % (a + b, n))


def power_image(a, b, c, s):
    """Closed form of J[(1+x)^{-a-b}](s) = Gamma(a+is)Gamma(a-is)/(Gamma(a+b)Gamma(a+c))."""
    s = np.asarray(s)
    lg = sf.log_gamma(a + 1j * s) + sf.log_gamma(a - 1j * s) - math.lgamma(a + b) - math.lgamma(a + c)
    val = np.exp(lg)
    if not np.iscomplexobj(s):
        val = val.real
    return val


def cauchy_mean(f: HalfLineFunction, b, c, s0, radius=0.5, nodes=32, spec=DEFAULT_SPEC):
    """Mean of J f over the circle |s - s0| = radius (equals J f(s0) inside the strip)."""
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    pts = s0 + radius * np.exp(1j * phi)
    return complex(np.mean(forward(f, b, c, pts, spec)))
