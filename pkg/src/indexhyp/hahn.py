"""Continuous dual Hahn polynomials S_n(s^2; a, b, c).

    S_n = (a+b)_n (a+c)_n 3F2(-n, a+is, a-is; a+b, a+c; 1)

evaluated as the terminating sum.  (a+is)_k (a-is)_k = prod_{m<k} ((a+m)^2 + s^2)
is a polynomial in s^2, so exact rational coefficients are available when
the parameters are rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln, poch

from . import quadrature as quad
from . import special_fn as sf
from .index_transform import SPECTRAL_NORM
from .quadrature import DEFAULT_SPEC


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    f = Fraction(v).limit_denominator(10 ** 6)
    return f if float(f) == v else None


@dataclass(frozen=True)
class HahnPolynomial:
    """S_n as coefficients in powers of s^2 (lowest first)."""

    n: int
    params: sf.ParamTriple
    coefficients: tuple
    exact: bool

    @classmethod
    def build(cls, n, a, b, c):
        params = sf.ParamTriple(a, b, c)
        fr = [_as_fraction(v) for v in (a, b, c)]
        exact = all(v is not None for v in fr)
        if exact:
            a, b, c = fr
            one = Fraction(1)
        else:
            one = 1.0
        coeffs = [0 * one] * (n + 1)
        for k in range(n + 1):
            pref = one
            for m in range(k):
                pref *= (-n + m) / ((a + b + m) * (a + c + m) * (m + 1))
            # prod_{m<k} ((a+m)^2 + u), u = s^2, expanded
            poly = [one]
            for m in range(k):
                r = (a + m) ** 2
                nxt = [0 * one] * (len(poly) + 1)
                for i, p in enumerate(poly):
                    nxt[i] += p * r
                    nxt[i + 1] += p
                poly = nxt
            for i, p in enumerate(poly):
                coeffs[i] += pref * p
        lead = one
        for m in range(n):
            lead *= (a + b + m) * (a + c + m)
        coeffs = tuple(lead * v for v in coeffs)
        return cls(n, params, coeffs, exact)

    def __call__(self, s):
        u = np.asarray(s) ** 2
        out = np.zeros(np.shape(u), dtype=np.result_type(u, float))
        for cf in reversed(self.coefficients):
            out = out * u + float(cf)
        return out if np.ndim(out) else out[()]

    def degree(self):
        return len(self.coefficients) - 1


def hahn_eval(n, a, b, c, s):
    """S_n(s^2; a, b, c) by the terminating sum; ``s`` may be complex or an array."""
    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    s = np.asarray(s)
    u = s * s
    term = np.ones(np.shape(u), dtype=np.result_type(u, float))
    total = term.copy()
    for k in range(n):
        term = term * (-n + k) * ((a + k) ** 2 + u) / ((a + b + k) * (a + c + k) * (k + 1))
        total = total + term
    out = poch(a + b, n) * poch(a + c, n) * total
    return out if np.ndim(out) else out[()]


def hahn_norm_sq(n, a, b, c):
    """Gamma(a+b+n) Gamma(a+c+n) Gamma(b+c+n) n!."""
    return math.exp(gammaln(a + b + n) + gammaln(a + c + n) + gammaln(b + c + n)) * math.factorial(n)


def hahn_gram(N, a, b, c, spec=DEFAULT_SPEC):
    """Gram matrix 1/(2 pi) int weight_abc S_n S_m ds for 0 <= n, m < N."""
    if not 1 <= N <= 8:
        raise ValueError("N must be in 1..8")
    idx = [(n, m) for n in range(N) for m in range(n, N)]

    def g(s):
        vals = np.stack([hahn_eval(n, a, b, c, s) for n in range(N)], axis=-1)
        return np.stack([vals[..., n] * vals[..., m] for n, m in idx], axis=-1)

    floor = spec.rel_tol * min(hahn_norm_sq(n, a, b, c) for n in range(N)) / SPECTRAL_NORM
    spec = spec.with_(abs_tol=max(spec.abs_tol, floor))
    res = quad.integrate_s(g, quad.GammaABC(a, b, c), spec)
    out = np.zeros((N, N))
    for (n, m), v in zip(idx, np.atleast_1d(res.value)):
        out[n, m] = out[m, n] = SPECTRAL_NORM * np.real(v)
    return out


def image_lemma42(n, a, b, c, s):
    """|Gamma(a+is)|^2 S_n / (Gamma(a+b+n) Gamma(a+c+n)): transform of (x/(x+1))^n (1+x)^{-a-b}."""
    s = np.asarray(s)
    lg = sf.log_gamma(a + 1j * s) + sf.log_gamma(a - 1j * s) - gammaln(a + b + n) - gammaln(a + c + n)
    val = np.exp(lg) * hahn_eval(n, a, b, c, s)
    if not np.iscomplexobj(s):
        val = np.real(val)
    return val if np.ndim(val) else val[()]


def hahn_generating_coeffs(N, a, b, c, w):
    """Evaluators s -> S_k(s^2) w^k / (k! (b+c)_k), k < N."""
    if not abs(w) < 1:
        raise ValueError("|w| must be < 1")

    def make(k):
        scale = w ** k / (math.factorial(k) * poch(b + c, k))
        return lambda s: scale * hahn_eval(k, a, b, c, s)

    return [make(k) for k in range(N)]


GENERATING_EXPONENTS = {
    "-a+is": (-1, +1),
    "-a-is": (-1, -1),
    "a+is": (+1, +1),
    "a-is": (+1, -1),
}

#: exponent of (1 - w) in the closed form; fixed by :func:`pin_generating_exponent`
GENERATING_EXPONENT = "-a+is"


def generating_closed_form(a, b, c, w, s, exponent=GENERATING_EXPONENT):
    """(1-w)^{e} 2F1(b+is, c+is; b+c; w) for the chosen exponent label."""
    sa, ss = GENERATING_EXPONENTS[exponent]
    e = sa * a + ss * 1j * s
    return (1 - w) ** e * sf.gauss_series(b + 1j * s, c + 1j * s, b + c, w)


def generating_partial_sum(N, a, b, c, w, s):
    return sum(complex(f(s)) for f in hahn_generating_coeffs(N, a, b, c, w))


def pin_generating_exponent(points=((1.0, 1.0, 1.0, 0.3, 0.8), (2.0, 1.0, 1.5, 0.4, 1.3), (0.7, 1.2, 0.4, 0.25, 2.1))):
    """Return the exponent label whose closed form matches the series at every point."""
    best = None
    for label in GENERATING_EXPONENTS:
        worst = 0.0
        for a, b, c, w, s in points:
            lhs = generating_partial_sum(80, a, b, c, w, s)
            rhs = generating_closed_form(a, b, c, w, s, label)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        if best is None or worst < best[1]:
            best = (label, worst)
    return best
