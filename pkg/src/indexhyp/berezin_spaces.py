"""Weighted holomorphic disk spaces W^a_{b,c} and radial Berezin norms.

W^a_{b,c} is the closure of polynomials under the radial measure

    1/(pi Gamma(2a-1)) (1-|z|^2)^{2a-2} 2F1(a-b, a-c; 2a-1; 1-|z|^2) dz

in which the monomials are orthogonal.  J^a_{b,c} maps it unitarily onto
L^2 of the three-gamma weight (with the 1/(2 pi) spectral constant).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, hyp2f1, poch

from . import hahn
from . import index_transform as it
from . import quadrature as quad
from . import special_fn as sf
from .index_transform import SPECTRAL_NORM
from .quadrature import DEFAULT_SPEC


@dataclass(frozen=True)
class DiskFunction:
    """Polynomial sum_k coefficients[k] z^k on the unit disk."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(complex(v) for v in self.coefficients))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, z):
        z = np.asarray(z)
        out = np.zeros(np.shape(z), dtype=complex)
        for cf in reversed(self.coefficients):
            out = out * z + cf
        return out if np.ndim(out) else out[()]

    @staticmethod
    def monomial(k):
        return DiskFunction((0,) * k + (1,))


def w_norm_sq(k, a, b, c):
    """<z^k, z^k> = k! Gamma(b+c+k) / (Gamma(a+b+k) Gamma(a+c+k))."""
    return math.exp(math.lgamma(k + 1) + gammaln(b + c + k) - gammaln(a + b + k) - gammaln(a + c + k))


def w_inner(f: DiskFunction, g: DiskFunction, a, b, c):
    """Inner product through the orthogonal monomial expansion."""
    n = min(len(f.coefficients), len(g.coefficients))
    return sum(f.coefficients[k] * np.conj(g.coefficients[k]) * w_norm_sq(k, a, b, c) for k in range(n))


def reproducing_kernel(a, b, c, z, u):
    """Gamma(a+b)Gamma(a+c)/Gamma(b+c) 2F1(a+b, a+c; b+c; z conj(u))."""
    pref = math.exp(gammaln(a + b) + gammaln(a + c) - gammaln(b + c))
    return pref * sf.gauss_series(a + b, a + c, b + c, complex(z) * np.conj(complex(u)))


def kernel_section(a, b, c, u, degree):
    """Truncated Taylor expansion of z -> K(z, u) as a DiskFunction."""
    cu = np.conj(complex(u))
    return DiskFunction([cu ** k / w_norm_sq(k, a, b, c) for k in range(degree + 1)])


def disk_density(a, b, c, v):
    """Radial density v^{2a-2} 2F1(a-b, a-c; 2a-1; v) / Gamma(2a-1), v = 1 - |z|^2."""
    v = np.asarray(v, dtype=float)
    return v ** (2 * a - 2) * hyp2f1(a - b, a - c, 2 * a - 1, v) / math.gamma(2 * a - 1)


def w_norm_sq_quadrature(k, a, b, c, spec=DEFAULT_SPEC):
    """<z^k, z^k> from the measure itself, reduced to int_0^1 (1-v)^k v^{2a-2} 2F1(...; v) dv."""
    if not (a > b and a > c and 2 * a > 1):
        raise ValueError("the measure needs a > b, a > c, 2a > 1")

    def f(v):
        return (1.0 - v) ** k * disk_density(a, b, c, v)

    edges = np.concatenate([[0.0, 0.5], 1.0 - np.geomspace(0.25, 1e-10, 20), [1.0]])
    return quad.adaptive(f, edges, spec.rel_tol, spec.abs_tol, spec.max_subdivisions).value


def w_norm_sq_disk(k, a, b, c, spec=quad.DEFAULT_SPEC_2D):
    """Same quantity as a genuine 2-D disk integral (polar tensor quadrature)."""

    def h(z):
        r2 = np.abs(z) ** 2
        return r2 ** k * disk_density(a, b, c, 1.0 - r2) / math.pi

    return quad.integrate_2d(h, "disk", "lebesgue", spec).value


# ---------------------------------------------------------------- J^a_{b,c}


def j_abc_monomial(k, a, b, c, s):
    """Image of z^k: S_k(s^2; a, b, c) / (Gamma(a+b+k) Gamma(a+c+k))."""
    return hahn.hahn_eval(k, a, b, c, s) * math.exp(-gammaln(a + b + k) - gammaln(a + c + k))


def _monomial_pullbacks(degree, a, b):
    """x -> (1+x)^{-a-b} (x/(x+1))^k for k = 0..degree, stacked on the last axis."""

    def ev(x):
        x = np.asarray(x, dtype=float)
        y = x / (1.0 + x)
        base = (1.0 + x) ** (-a - b)
        return np.stack([base * y ** k for k in range(degree + 1)], axis=-1)

    return ev


def j_abc_images_quadrature(degree, a, b, c, s, spec=DEFAULT_SPEC, chunk=16):
    """Images of z^0..z^degree at the points ``s`` by x-side quadrature; shape (len(s), degree+1).

    Spectral points are processed in chunks of similar size so that each
    chunk gets panels matched to its own oscillation frequency.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    ev = _monomial_pullbacks(degree, a, b)
    K = degree + 1
    order = np.argsort(s, kind="stable")
    vals = np.empty((len(s), K))
    for start in range(0, len(s), chunk):
        sel = order[start:start + chunk]
        sc = s[sel]

        def integrand(x, sc=sc):
            fx = ev(x)  # (n, K)
            ker = sf.hyp2f1_line(b, c, sc[None, :], x[:, None])  # (n, S)
            return (fx[:, :, None] * ker[:, None, :]).reshape(len(x), -1)

        res = quad.integrate_x(integrand, b, c, spec, oscillation=2.0 * float(np.max(sc)))
        vals[sel] = np.real(np.asarray(res.value)).reshape(K, len(sc)).T
    scale = np.exp(-2.0 * sf.log_gamma(a + 1j * s).real - gammaln(b + c))
    return vals * scale[:, None]


def j_abc_forward(g: DiskFunction, a, b, c, s, route="closed", spec=DEFAULT_SPEC):
    """J^a_{b,c} g at real ``s`` by the monomial closed form or by quadrature."""
    scalar = np.ndim(s) == 0
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    coeffs = np.asarray(g.coefficients)
    if route == "closed":
        imgs = np.stack([j_abc_monomial(k, a, b, c, s_arr) for k in range(len(coeffs))], axis=-1)
    elif route == "quadrature":
        imgs = j_abc_images_quadrature(len(coeffs) - 1, a, b, c, s_arr, spec)
    else:
        raise ValueError("route must be 'closed' or 'quadrature'")
    out = imgs @ coeffs
    if np.all(np.imag(coeffs) == 0):
        out = out.real
    return out[0] if scalar else out


GRAM_SPEC = quad.QuadratureSpec(rel_tol=1e-10, abs_tol=1e-14)
#: x-quadrature tolerance for the sampled images
IMAGE_SPEC = quad.QuadratureSpec(rel_tol=1e-12, abs_tol=1e-17)


@dataclass(frozen=True)
class FittedImages:
    """Quadrature images of z^0..z^degree continued as polynomials in u = s^2.

    Each image is a transform divided by |Gamma(a+is)|^2, so past s ~ 8 its
    absolute error grows like e^{pi s} and direct sampling is useless.  The
    images are sampled on Chebyshev nodes in u over [0, window^2], where the
    x-quadrature is accurate, and fitted with degree k.  ``residual`` is the
    worst fit residual on the nodes and ``excess`` the largest relative
    coefficient of u^{k+1} in a one-degree-higher fit; both should sit at
    quadrature noise level.
    """

    fits: tuple
    window: float
    residual: float
    excess: float

    def __call__(self, s):
        u = np.asarray(s, dtype=float) ** 2
        return np.stack([f(u) for f in self.fits], axis=-1)


def j_abc_images_fitted(degree, a, b, c, window=6.0, nodes=12, spec=IMAGE_SPEC):
    if nodes < degree + 3:
        raise ValueError("need at least degree+3 nodes")
    U = window * window
    u = 0.5 * U * (1.0 - np.cos(np.pi * (np.arange(nodes) + 0.5) / nodes))
    vals = j_abc_images_quadrature(degree, a, b, c, np.sqrt(u), spec)
    Cheb = np.polynomial.Chebyshev
    fits, residual, excess = [], 0.0, 0.0
    for k in range(degree + 1):
        col = vals[:, k]
        scale = max(float(np.max(np.abs(col))), 1e-300)
        fit = Cheb.fit(u, col, k, domain=[0.0, U])
        residual = max(residual, float(np.max(np.abs(fit(u) - col))) / scale)
        up = Cheb.fit(u, col, k + 1, domain=[0.0, U]).convert(kind=np.polynomial.Polynomial, domain=[0.0, U], window=[0.0, 1.0])
        excess = max(excess, abs(up.coef[-1]) / max(np.max(np.abs(up.coef)), 1e-300))
        fits.append(fit)
    return FittedImages(tuple(fits), window, residual, excess)


def thm53_gram(degree, a, b, c, route="quadrature", spec=GRAM_SPEC, window=6.0, nodes=12):
    """Gram matrix of J^a_{b,c} z^k, k <= degree, in L^2(weight_abc / (2 pi)).

    The quadrature route integrates products of :func:`j_abc_images_fitted`;
    the closed route uses the Hahn form of the images.
    """
    K = degree + 1
    idx = [(n, m) for n in range(K) for m in range(n, K)]
    if route == "quadrature":
        images = j_abc_images_fitted(degree, a, b, c, window, nodes)
    elif route == "closed":
        def images(s):
            return np.stack([j_abc_monomial(k, a, b, c, s) for k in range(K)], axis=-1)
    else:
        raise ValueError("route must be 'closed' or 'quadrature'")

    def g(s):
        imgs = images(s)
        return np.stack([imgs[:, n] * imgs[:, m] for n, m in idx], axis=-1)

    # entries that vanish cannot meet a relative tolerance; scale the absolute
    # one by the smallest diagonal entry
    floor = spec.rel_tol * min(w_norm_sq(k, a, b, c) for k in range(K)) / SPECTRAL_NORM
    spec = spec.with_(abs_tol=max(spec.abs_tol, floor))
    res = quad.integrate_s(g, quad.GammaABC(a, b, c), spec)
    out = np.zeros((K, K))
    for (n, m), v in zip(idx, np.atleast_1d(res.value)):
        out[n, m] = out[m, n] = SPECTRAL_NORM * np.real(v)
    return out


# ---------------------------------------------------------------- radial Berezin norms


def radial_berezin_norm_sq(p, theta, n):
    """p! (n/2)_p / ((theta/2)_p ((theta+1)/2)_p)."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    return math.factorial(p) * poch(n / 2.0, p) / (poch(theta / 2.0, p) * poch((theta + 1) / 2.0, p))


DICTIONARY_RULES = ("printed", "half-theta")


def dictionary_params(theta, n, rule="half-theta"):
    """(a, b, c) attached to the radial space of the n-ball at parameter theta.

    b = n/4 - 1/4, c = n/4 + 1/4 in both rules; a = theta - n/4 + 1/4
    ('printed') or theta/2 - n/4 + 1/4 ('half-theta').
    """
    b = n / 4.0 - 0.25
    c = n / 4.0 + 0.25
    if rule == "printed":
        a = theta - n / 4.0 + 0.25
    elif rule == "half-theta":
        a = theta / 2.0 - n / 4.0 + 0.25
    else:
        raise ValueError("rule must be one of %r" % (DICTIONARY_RULES,))
    return a, b, c


def dictionary_ratio(p, theta, n, rule="half-theta"):
    """w_norm_sq(p) / radial_berezin_norm_sq(p) under a dictionary rule."""
    a, b, c = dictionary_params(theta, n, rule)
    return w_norm_sq(p, a, b, c) / radial_berezin_norm_sq(p, theta, n)


def dictionary_constant(theta, n):
    """Gamma(n/2) / (Gamma(theta/2) Gamma((theta+1)/2)), the half-theta ratio."""
    return math.exp(gammaln(n / 2.0) - gammaln(theta / 2.0) - gammaln((theta + 1) / 2.0))


def _compositions(p, n):
    if n == 1:
        yield (p,)
        return
    for k in range(p + 1):
        for rest in _compositions(p - k, n - 1):
            yield (k,) + rest


def multinomial_sum_39(n, p, max_terms=10 ** 6):
    """sum over k_1+...+k_n = p of prod (2k_i)!/(k_i!)^2, enumerated."""
    if n < 1 or p < 0:
        raise ValueError("need n >= 1 and p >= 0")
    if math.comb(p + n - 1, n - 1) > max_terms:
        raise OverflowError("too many compositions to enumerate")
    central = [math.comb(2 * k, k) for k in range(p + 1)]
    total = 0
    for ks in _compositions(p, n):
        term = 1
        for k in ks:
            term *= central[k]
        total += term
    return total


def binomial_coefficient_39(n, p):
    """y^p coefficient of (1-4y)^{-n/2} as an exact integer."""
    num = 1
    for m in range(p):
        num *= n + 2 * m  # 2^p (n/2)_p
    return (2 ** p * num) // math.factorial(p)


# ---------------------------------------------------------------- V_theta monomials


def vtheta_norm_sq(ks, theta):
    """k_1!...k_n! / (theta)_{|k|}."""
    return math.prod(math.factorial(k) for k in ks) / poch(theta, sum(ks))


def vtheta_norm_sq_dirichlet(ks, theta, panels=64, order=20):
    """Same norm from the ball integral, theta > n.

    With y_j = |z_j|^2 the ball integral of |z^k|^2 (1-|z|^2)^{theta-n-1}
    becomes a Dirichlet integral over the simplex, evaluated by nested
    Gauss-Legendre rules and normalized by the k = 0 value.
    """
    n = len(ks)
    if theta <= n:
        raise ValueError("need theta > n for the integral form")
    nodes, weights = np.polynomial.legendre.leggauss(order)

    def simplex(exps, remaining_len, depth):
        # int over y_depth in [0, L] of y^k * (rest integral with L - y)
        if depth == n:
            return remaining_len ** (theta - n - 1)
        edges = np.linspace(0.0, 1.0, panels + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            u = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            w = 0.5 * (hi - lo) * weights
            y = u * remaining_len
            inner = np.array([simplex(exps, remaining_len - yy, depth + 1) for yy in y])
            total += np.sum(w * remaining_len * y ** exps[depth] * inner)
        return total

    if n > 2:
        raise ValueError("nested rule implemented for n <= 2")
    return simplex(ks, 1.0, 0) / simplex((0,) * n, 1.0, 0)


def vtheta_multi_indices(n, max_degree):
    return [ks for ks in itertools.product(range(max_degree + 1), repeat=n) if sum(ks) <= max_degree]
