"""Generalized translates and the bireflected basis.

T_z acts on the transform side as multiplication by F_s(z); that multiplier
form is the definition used here.  The closed-form integral kernel is kept
for comparison only (``kernel_K``).

The bireflected functions are

    Xi_n = J^{-1}[ Gamma(a+is) S_n(s^2) / (Gamma(a+b+n) Gamma(a+c+n)) ],

the images of z^n under the unitary composite map, so Xi_0 is Lambda
divided by Gamma(a+b) Gamma(a+c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, poch

from . import hahn
from . import index_transform as it
from . import lambda_fn as lf
from . import quadrature as quad
from . import special_fn as sf
from .errors import DomainError
from .index_transform import SPECTRAL_NORM
from .quadrature import DEFAULT_SPEC, HalfLineFunction


@dataclass(frozen=True)
class TranslateKernelParams:
    b: float
    c: float

    def __post_init__(self):
        if not (self.b > 0 and self.c > 0):
            raise ValueError("b and c must be positive")


def _t(v):
    return np.arcsinh(np.sqrt(np.asarray(v, dtype=float)))


def in_domain_J(x, y, z):
    """Whether arcsh sqrt of x, y, z satisfy the triangle inequality."""
    tx, ty, tz = _t(x), _t(y), _t(z)
    eps = 1e-12 * (1.0 + tx + ty + tz)
    return bool(abs(tx - ty) - eps <= tz <= tx + ty + eps)


def kernel_B(x, y, z):
    return (x + y + z + 2.0) / (2.0 * (1.0 + x) * (1.0 + y) * (1.0 + z))


def kernel_K(x, y, z, b, c, strict=False):
    """The closed-form translate kernel, evaluated as stated; zero outside J."""
    TranslateKernelParams(b, c)
    if not in_domain_J(x, y, z):
        if strict:
            raise DomainError("(x, y, z) is outside the triangle set")
        return 0.0
    B = kernel_B(x, y, z)
    pref = math.exp(-4 * b * math.log(2.0) + math.lgamma(b + c) - math.lgamma(b + c - 0.5))
    pref *= ((1 + x) * (1 + y) * (1 + z)) ** (c - 1) / (x * y * z) ** (b + c - 1)
    return float(pref * (1.0 - B * B) ** (b + c - 0.5) * sf.gauss_series(2 * b - 1, 2 * c - 1, b + c - 0.5, (1 - B) / 2).real)


def kernel_B_scan(samples=2000, t_max=3.0, seed=0):
    """Range of B over random points of J; ``flagged`` if it leaves [-1, 1]."""
    rng = np.random.default_rng(seed)
    tx = rng.uniform(1e-3, t_max, samples)
    ty = rng.uniform(1e-3, t_max, samples)
    lo, hi = np.abs(tx - ty), tx + ty
    tz = lo + rng.uniform(0, 1, samples) * (hi - lo)
    B = kernel_B(np.sinh(tx) ** 2, np.sinh(ty) ** 2, np.sinh(tz) ** 2)
    return {"min": float(B.min()), "max": float(B.max()), "flagged": bool(np.any(np.abs(B) > 1))}


# ---------------------------------------------------------------- translate


def _translate_multiplier(f, z, b, c, image, decay, spec):
    if image is None:
        def image(s):
            return it.forward(f, b, c, s, spec)

    def g(s):
        return sf.hyp2f1_line(b, c, s, z) * np.asarray(image(s))

    def ev(x):
        return it.inverse(g, b, c, x, spec, decay)

    return ev


def _translate_kernel(f, z, b, c, spec):
    tz = float(_t(z))

    def one(y):
        ty = float(_t(y))
        lo, hi = abs(ty - tz), ty + tz
        if hi - lo <= 0:
            return 0.0

        def integrand(t):
            x = np.sinh(t) ** 2
            k = np.array([kernel_K(xi, y, z, b, c) for xi in x])
            w = np.exp(quad.sinh_square_weight(t, b, c))
            return k * np.asarray(f(x)) * w

        return quad.adaptive(integrand, np.linspace(lo, hi, 9), spec.rel_tol, spec.abs_tol).value

    def ev(x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array([one(v) for v in xs])
        return out if np.ndim(x) else out[0]

    return ev


def translate_apply(f: HalfLineFunction, z, b, c, route="multiplier", image=None, decay=None, spec=DEFAULT_SPEC):
    """T_z f as a HalfLineFunction.

    ``image`` may supply the transform of f in closed form (with ``decay``
    naming its s-weight family); otherwise it is computed by quadrature.
    """
    if z < 0:
        raise ValueError("z must be nonnegative")
    if z == 0:
        return f
    if route == "multiplier":
        ev = _translate_multiplier(f, z, b, c, image, decay, spec)
    elif route == "kernel":
        ev = _translate_kernel(f, z, b, c, spec)
    else:
        raise ValueError("route must be 'multiplier' or 'kernel'")
    return HalfLineFunction(ev, f.decay_exponent, "T_%g[%s]" % (z, f.name))


def power_translate(a, b, c, z, route="multiplier", spec=DEFAULT_SPEC):
    """T_z (1+x)^{-a-b}, with the closed-form transform on the multiplier route."""
    f = it.power_family(a, b)
    return translate_apply(f, z, b, c, route, image=lambda s: it.power_image(a, b, c, s),
                           decay=quad.GammaABC(a, b, c), spec=spec)


def kernel_deviation(a=2.0, b=1.0, c=1.0, z=0.5, ys=(0.5, 1.0)):
    """Relative gap between the kernel and multiplier routes for T_z (1+x)^{-a-b}."""
    mult = power_translate(a, b, c, z, "multiplier")
    kern = power_translate(a, b, c, z, "kernel")
    ys = np.asarray(ys, dtype=float)
    m, k = np.asarray(mult(ys)), np.asarray(kern(ys))
    return {"y": ys.tolist(), "multiplier": m.tolist(), "kernel": k.tolist(),
            "rel_deviation": float(np.max(np.abs(k - m) / np.abs(m)))}


def lambda_translate_integral(a, b, c, z, spec=DEFAULT_SPEC):
    """(<Lambda, T_z Lambda> from the s-side, closed form)."""
    lf._check_params(a, b, c)

    def g(s):
        return sf.hyp2f1_line(b, c, s, z)

    lhs = SPECTRAL_NORM * quad.integrate_s(g, quad.GammaABC(a, b, c), spec, scale_hint=(1 + z) ** (-a - b)).value
    rhs = math.exp(gammaln(a + b) + gammaln(a + c) + gammaln(b + c)) * (1.0 + z) ** (-a - b)
    return complex(lhs), complex(rhs)


# ---------------------------------------------------------------- bireflected basis


def _hahn_multipliers(N, a, b, c):
    norms = [math.exp(gammaln(a + b + n) + gammaln(a + c + n)) for n in range(N + 1)]

    def m(s):
        return np.stack([hahn.hahn_eval(n, a, b, c, s) / norms[n] for n in range(N + 1)], axis=-1)

    return m


class BireflectedBasis:
    """Xi_0..Xi_N by the composite map, evaluated together and cached per x."""

    def __init__(self, N, a, b, c, spec=lf.LAMBDA_SPEC):
        if N < 0:
            raise ValueError("N must be nonnegative")
        self.params = sf.ParamTriple(a, b, c)
        self.N = N
        self.spec = spec
        self._mult = _hahn_multipliers(N, a, b, c)
        self._cache = {}

    def values(self, x):
        """Array of shape x.shape + (N+1,)."""
        a, b, c = self.params.astuple()
        xs = np.asarray(x, dtype=float)
        flat = xs.reshape(-1)
        missing = sorted({float(v) for v in flat if float(v) not in self._cache})
        for i in range(0, len(missing), lf._CHUNK):
            part = np.array(missing[i:i + lf._CHUNK])
            vals = lf.q_map_values(a, b, c, part, self._mult, self.spec)
            for v, row in zip(part.tolist(), vals):
                self._cache[v] = row
        out = np.array([self._cache[float(v)] for v in flat]).reshape(xs.shape + (self.N + 1,))
        return out

    def member(self, n):
        if not 0 <= n <= self.N:
            raise IndexError(n)
        return HalfLineFunction(lambda x: self.values(x)[..., n], self.params.b, "Xi_%d" % n)

    @property
    def members(self):
        return [self.member(n) for n in range(self.N + 1)]

    def gram(self, spec=lf.OUTER_SPEC):
        a, b, c = self.params.astuple()
        K = self.N + 1
        idx = [(n, m) for n in range(K) for m in range(n, K)]

        def f(x):
            v = self.values(x)
            return np.stack([np.real(v[:, n] * np.conj(v[:, m])) for n, m in idx], axis=-1)

        res = quad.integrate_x(f, b, c, spec)
        G = np.zeros((K, K))
        for (n, m), val in zip(idx, np.atleast_1d(res.value)):
            G[n, m] = G[m, n] = val
        return G


def xi_formula(n, a, b, c, x, h=None, printed_sign=False):
    """Xi_n from derivatives of Lambda^a_{b,c+j}, j <= n.

    (b+c)_n/(Gamma(a+c)Gamma(a+b+n)) sum_j (-n)_j/(j!(a+c)_j(b+c)_j)
        x^{1-b-c} d^j/dx^j [x^{b+c+j-1} Lambda^a_{b,c+j}]

    ``printed_sign=True`` inserts an extra (-1)^j.
    """
    if not 0 <= n <= 4:
        raise ValueError("the derivative route supports n <= 4")
    if not x > 0:
        raise ValueError("x must be positive")
    total = 0.0 + 0j
    for j in range(n + 1):
        step = h if h is not None else (1e-3 if j <= 2 else 1e-2)
        cj = c + j
        fun = lf._fresh(a, b, cj)

        def g(xs, cj=cj, fun=fun, j=j):
            return xs ** (b + cj - 1) * fun(xs)

        d = lf.fd_derivative(g, x, j, step)
        coef = poch(-n, j) / (math.factorial(j) * poch(a + c, j) * poch(b + c, j))
        if printed_sign:
            coef *= (-1) ** j
        total += coef * x ** (1 - b - c) * d
    return complex(total * poch(b + c, n) * math.exp(-gammaln(a + c) - gammaln(a + b + n)))


def xi_eval(n, a, b, c, x, route="Q-map"):
    if route == "Q-map":
        return complex(BireflectedBasis(n, a, b, c).values(np.array([x]))[0, n])
    if route == "lambda-derivative":
        return xi_formula(n, a, b, c, x)
    raise ValueError("route must be 'Q-map' or 'lambda-derivative'")


# ---------------------------------------------------------------- first row of T_z


PROP73_POINTS = (0.1, 0.3, 0.7, 1.5, 3.0, 7.0)


def translate_terms(a, b, c, z, N, x=PROP73_POINTS, printed=False):
    """(T_z Lambda, the N terms of its expansion) on the points x.

    Default coefficients: (1+z)^{-a-b} Gamma(a+b+k)Gamma(a+c+k)/(k!(b+c)_k) w^k
    with w = z/(z+1); ``printed=True`` uses (1+z)^{a-b} w^k/(k!(b+c)_k).
    """
    if z < 0:
        raise ValueError("z must be nonnegative")
    if not 1 <= N <= 8:
        raise ValueError("N must be in 1..8")
    w = z / (z + 1.0)
    hm = _hahn_multipliers(N - 1, a, b, c)
    if printed:
        coef = [(1 + z) ** (a - b) * w ** k / (math.factorial(k) * poch(b + c, k)) for k in range(N)]
    else:
        coef = [(1 + z) ** (-a - b) * math.exp(gammaln(a + b + k) + gammaln(a + c + k)) * w ** k
                / (math.factorial(k) * poch(b + c, k)) for k in range(N)]
    coef = np.array(coef)

    def m(s):
        return np.concatenate([sf.hyp2f1_line(b, c, s, z)[:, None], hm(s) * coef[None, :]], axis=-1)

    vals = lf.q_map_values(a, b, c, np.asarray(x, dtype=float), m)
    return vals[:, 0], vals[:, 1:]


def prop73_expansion(a, b, c, z, N, x=PROP73_POINTS, printed=False):
    """Sup residuals of the partial sums with 1..N terms."""
    target, terms = translate_terms(a, b, c, z, N, x, printed)
    partial = np.cumsum(terms, axis=1)
    return np.max(np.abs(partial - target[:, None]), axis=0)
