"""Independent reference evaluators.

These are deliberately simple and slow.  None of them shares code with the
production paths they check:

* series   -- extended-precision hypergeometric sums (mpmath)
* quad     -- fixed composite Gauss-Legendre, no adaptivity
* enum     -- exact rational enumeration of finite sums
* elem     -- elementary closed forms of special 2F1 members
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath as mp
import numpy as np

# ---------------------------------------------------------------- series


def hyp2f1_series(p, q, r, y, dps=30):
    with mp.workdps(dps):
        return mp.hyp2f1(p, q, r, y)


def hyp2f1_line_ref(b, c, s, x, dps=40):
    """2F1(b+is, b-is; b+c; -x) in extended precision, returned as complex."""
    with mp.workdps(dps):
        s = mp.mpc(s)
        val = mp.hyp2f1(b + 1j * s, b - 1j * s, b + c, -mp.mpf(x))
        return complex(val)


def pfaff_ref(b, c, s, x, dps=40):
    """(1+x)^{-b-is} 2F1(b+is, c+is; b+c; x/(1+x)) in extended precision."""
    with mp.workdps(dps):
        s = mp.mpc(s)
        x = mp.mpf(x)
        y = x / (1 + x)
        return complex((1 + x) ** (-b - 1j * s) * mp.hyp2f1(b + 1j * s, c + 1j * s, b + c, y))


def loggamma_ref(w, dps=40):
    with mp.workdps(dps):
        return complex(mp.loggamma(mp.mpc(w)))


def gamma_ref(w, dps=40):
    with mp.workdps(dps):
        return complex(mp.gamma(mp.mpc(w)))


# ---------------------------------------------------------------- elementary


def elem_cos(s, x):
    """2F1(is, -is; 1/2; -x) = cos(2 s arcsh sqrt x)."""
    return np.cos(2.0 * np.asarray(s) * np.arcsinh(np.sqrt(x)))


def elem_sin(s, x):
    """2F1(1/2+is, 1/2-is; 3/2; -x) = sin(2 s arcsh sqrt x) / (2 s sqrt x)."""
    s, x = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(x, dtype=float))
    t = np.arcsinh(np.sqrt(x))
    safe_s = np.where(s == 0, 1.0, s)
    safe_x = np.where(x == 0, 1.0, x)
    out = np.sin(2.0 * safe_s * t) / (2.0 * safe_s * np.sqrt(safe_x))
    out = np.where(s == 0, t / np.sqrt(safe_x), out)
    return np.where(x == 0, 1.0, out)


def sigma_half_half(s):
    """Plancherel density at b = c = 1/2 in closed form: 4 pi s tanh(pi s)."""
    s = np.asarray(s, dtype=float)
    return 4.0 * math.pi * s * np.tanh(math.pi * s)


# ---------------------------------------------------------------- quadrature

_GL_CACHE = {}


def gauss_legendre(order):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def composite_gl(fun, lo, hi, panels=200, order=20):
    """Fixed composite Gauss-Legendre rule on [lo, hi] (vectorized ``fun``)."""
    nodes, weights = gauss_legendre(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    vals = np.asarray(fun(pts))
    if vals.ndim == 1:
        return np.sum(w * vals)
    return np.tensordot(w, vals, axes=(0, 0))


def halfline_x_ref(f, b, c, t_max=40.0, panels=800, order=20):
    """int_0^inf f(x) x^{b+c-1}(1+x)^{b-c} dx through x = sh^2 t, fixed nodes."""

    def integrand(t):
        sh = np.sinh(t)
        ch = np.cosh(t)
        w = 2.0 * sh ** (2 * b + 2 * c - 1) * ch ** (2 * b - 2 * c + 1)
        return f(sh * sh) * w

    return composite_gl(integrand, 0.0, t_max, panels, order)


# ---------------------------------------------------------------- enumeration


def poch_exact(x, n):
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


def hahn_exact(n, a, b, c, s2):
    """S_n(s^2; a, b, c) exactly for rational a, b, c, s^2.

    (a+is)_k (a-is)_k = prod_{m<k} ((a+m)^2 + s^2) is rational in s^2.
    """
    a, b, c, s2 = (Fraction(v) for v in (a, b, c, s2))
    total = Fraction(0)
    for k in range(n + 1):
        num = poch_exact(Fraction(-n), k)
        pair = Fraction(1)
        for m in range(k):
            pair *= (a + m) ** 2 + s2
        den = poch_exact(a + b, k) * poch_exact(a + c, k) * math.factorial(k)
        total += num * pair / den
    return poch_exact(a + b, n) * poch_exact(a + c, n) * total


def multinomial_enum(n, p):
    """sum over k_1+...+k_n = p of prod (2k_i)!/(k_i!)^2, by brute enumeration."""
    total = 0
    for ks in itertools.product(range(p + 1), repeat=n):
        if sum(ks) != p:
            continue
        term = 1
        for k in ks:
            term *= math.comb(2 * k, k)
        total += term
    return total


def binomial_series_coeff(n, p):
    """4^p (n/2)_p / p! as an exact rational."""
    return Fraction(4) ** p * poch_exact(Fraction(n, 2), p) / math.factorial(p)
