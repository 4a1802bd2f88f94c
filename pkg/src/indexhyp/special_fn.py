"""Gamma machinery, the conjugate-parameter 2F1 family and the spectral weights.

Everything that involves a product of gamma functions is assembled in log
space; ``|Gamma(2is)|^{-2}`` grows like ``exp(2 pi s)`` and the naive product
overflows long before the weights become negligible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc, gammaln

from . import _core
from .errors import KernelError, NonConvergenceError, PoleError

LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class ParamTriple:
    """Positive parameters (a, b, c); ``space_admissible`` adds a>b, a>c, 2a>1."""

    a: float
    b: float
    c: float
    space_admissible: bool = False

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.c > 0):
            raise ValueError("a, b, c must be positive, got %r" % ((self.a, self.b, self.c),))
        if self.space_admissible and not (self.a > self.b and self.a > self.c and 2 * self.a > 1):
            raise ValueError("space-admissible triples need a > b, a > c, 2a > 1")

    def astuple(self):
        return (self.a, self.b, self.c)


def _is_scalar(*args):
    return all(np.ndim(v) == 0 for v in args)


def log_gamma(w):
    """Principal-branch log Gamma for complex scalars or arrays."""
    try:
        if np.ndim(w) == 0:
            return _core.loggamma(complex(w))
        return _core.loggamma_vec(np.asarray(w, dtype=complex))
    except KernelError as exc:
        raise PoleError(str(exc)) from None


def hyp2f1_line(b, c, s, x):
    """2F1(b+is, b-is; b+c; -x), broadcast over ``s`` and ``x``.

    Real ``s`` gives a real result (the parameters are conjugate).
    """
    b = float(b)
    c = float(c)
    if b + c <= 0 and b + c == math.floor(b + c):
        raise PoleError("b + c must not be a nonpositive integer")
    s_arr = np.asarray(s)
    real_s = not np.iscomplexobj(s_arr) or np.all(np.imag(s_arr) == 0)
    try:
        if _is_scalar(s, x):
            if float(x) < 0:
                raise ValueError("x must be nonnegative")
            val = _core.hyp2f1_line_scalar(b, c, complex(s), float(x))
            return val.real if real_s else val
        if np.any(np.asarray(x) < 0):
            raise ValueError("x must be nonnegative")
        val = _core.hyp2f1_line_vec(b, c, s_arr, np.asarray(x, dtype=float))
    except KernelError as exc:
        raise NonConvergenceError(str(exc)) from None
    return val.real if real_s else val


def hyp2f1_line_dx(b, c, s, x):
    """x-derivative of :func:`hyp2f1_line` via the parameter-raising rule."""
    s = np.asarray(s) if np.ndim(s) else s
    return -((b * b + s * s) / (b + c)) * hyp2f1_line(b + 1.0, c, s, x)


def gauss_series(alpha, beta, gamma, z, max_terms=20000, tol=1e-16):
    """Plain Gauss series for |z| < 1 with complex parameters."""
    z = complex(z)
    if abs(z) >= 1:
        raise NonConvergenceError("Gauss series needs |z| < 1, got %r" % abs(z))
    term = 1 + 0j
    total = 1 + 0j
    for k in range(max_terms):
        term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1)) * z
        total += term
        if abs(term) <= tol * abs(total) and k > 2:
            return total
    raise NonConvergenceError("Gauss series did not converge at |z|=%.6g" % abs(z))


def _log_inv_gamma_2is_sq(s):
    """log |Gamma(2is)|^{-2} = log(2 s sinh(2 pi s) / pi) for s > 0."""
    s = np.abs(np.asarray(s, dtype=float))
    u = 2.0 * math.pi * s
    with np.errstate(divide="ignore", invalid="ignore"):
        big = u + np.log1p(-np.exp(-2.0 * u)) - math.log(2.0)
        small = np.log(u) + u * u / 6.0
        log_sinh = np.where(u < 1e-3, small, big)
        return math.log(2.0) + np.log(s) + log_sinh - LOG_PI


def log_weight_sigma(b, c, s):
    """log of |Gamma(b+is)Gamma(c+is)/Gamma(2is)|^2 (-inf at s = 0)."""
    s = np.asarray(s, dtype=float)
    lg = log_gamma(b + 1j * s).real + log_gamma(c + 1j * s).real
    return 2.0 * lg + _log_inv_gamma_2is_sq(s)


def weight_sigma(b, c, s):
    """Plancherel density |Gamma(b+is)Gamma(c+is)/Gamma(2is)|^2."""
    val = np.exp(log_weight_sigma(b, c, s))
    return float(val) if np.ndim(val) == 0 else val


def log_weight_abc(a, b, c, s, normalization="none"):
    s = np.asarray(s, dtype=float)
    out = 2.0 * log_gamma(a + 1j * s).real + log_weight_sigma(b, c, s)
    if normalization == "tau":
        out = out - gammaln(a + b) - gammaln(a + c)
    elif normalization != "none":
        raise ValueError("normalization must be 'none' or 'tau'")
    return out


def weight_abc(a, b, c, s, normalization="none"):
    """Three-gamma weight |Gamma(a+is)Gamma(b+is)Gamma(c+is)/Gamma(2is)|^2.

    ``normalization='tau'`` divides by Gamma(a+b)Gamma(a+c), which is the
    Berezin-space density with theta = a + b.
    """
    val = np.exp(log_weight_abc(a, b, c, s, normalization))
    return float(val) if np.ndim(val) == 0 else val


def gamma_abs_bound(x, y):
    """Rigorous upper bound for |Gamma(x+iy)|, x > 0 (Binet remainder)."""
    z = math.hypot(x, y)
    return math.sqrt(2.0 * math.pi) * z ** (x - 0.5) * math.exp(-math.pi * abs(y) / 2 + 1.0 / (6.0 * z))


def hyp2f1_line_envelope(b, c, x):
    """Bound for sup over real s of |2F1(b+is, b-is; b+c; -x)|, or None.

    Jacobi-function theory gives |F| <= 1 when c >= 1/2 and b >= c - 1/2; the
    Euler transformation swaps b and c at the cost of (1+x)^{c-b}.
    """
    if c >= 0.5 and b >= c - 0.5:
        return 1.0
    if b >= 0.5 and c >= b - 0.5:
        return (1.0 + x) ** (c - b)
    return None


@dataclass(frozen=True)
class GammaTail:
    """Upper bound C * prod |p_j + is|^{e_j} * exp(-rate*s) * s^k for s >= S.

    ``centers`` and ``exponents`` describe the algebraic factors; the bound is
    turned into a pure power by bounding |p + is| between s and s*sqrt(1+p^2/S^2).
    """

    log_const: float
    centers: tuple
    exponents: tuple
    rate: float
    s_power: float = 0.0

    def integral(self, S):
        """Upper bound of the integral of the envelope over [S, inf)."""
        if S <= 0:
            raise ValueError("S must be positive")
        if self.rate <= 0:
            return math.inf
        power = self.s_power
        log_c = self.log_const
        for p, e in zip(self.centers, self.exponents):
            power += e
            if e > 0:
                log_c += 0.5 * e * math.log1p((p / S) ** 2)
        # int_S^inf s^power e^{-rate s} ds, power may be negative
        if power > -1:
            val = gammaincc(power + 1, self.rate * S) * math.exp(gammaln(power + 1))
            log_int = math.log(max(val, 1e-320)) - (power + 1) * math.log(self.rate)
        else:
            log_int = power * math.log(S) - self.rate * S - math.log(self.rate)
        return math.exp(log_c + log_int)


def sigma_tail(b, c):
    """Tail envelope of weight_sigma(b, c, s); the e^{2 pi s} growth cancels."""
    # |Gamma(b+is)|^2 <= 2 pi |b+is|^{2b-1} e^{-pi s} e^{1/(3|b+is|)}
    log_c = 2 * math.log(2 * math.pi) + 1 / (3 * b) + 1 / (3 * c) + math.log(2.0) - LOG_PI
    return GammaTail(log_c, (b, c), (2 * b - 1, 2 * c - 1), 0.0, s_power=1.0)


def weight_tail(kind, params):
    """Envelope for the s-side weights.

    kind='abc': |Gamma(a+is)|^2 sigma, decays like e^{-pi s};
    kind='lambda': |Gamma(a+is)| sigma, decays like e^{-pi s/2};
    kind='bc': sigma alone has no exponential decay (returns rate 0 envelope).
    """
    if kind == "bc":
        b, c = params
        return sigma_tail(b, c)
    a, b, c = params
    base = sigma_tail(b, c)
    if kind == "abc":
        log_c = base.log_const + math.log(2 * math.pi) + 1 / (3 * a)
        return GammaTail(log_c, (a, b, c), (2 * a - 1, 2 * b - 1, 2 * c - 1), math.pi, 1.0)
    if kind == "lambda":
        log_c = base.log_const + 0.5 * math.log(2 * math.pi) + 1 / (6 * a)
        return GammaTail(log_c, (a, b, c), (a - 0.5, 2 * b - 1, 2 * c - 1), math.pi / 2, 1.0)
    raise ValueError("unknown weight kind %r" % kind)


def contiguous_residual_23(p, q, r, y, dps=30):
    """Absolute residual of the three-term contiguous relation for 2F1(p,q;r;y).

    All three functions are summed in extended precision.
    """
    from .oracles import hyp2f1_series

    p, q, r, y = complex(p), complex(q), complex(r), complex(y)
    for k in (0, 1, -1):
        if abs(p - q - k) < 1e-14:
            raise PoleError("p - q must avoid {0, 1, -1}")
    if abs(y) >= 1:
        raise ValueError("|y| must be < 1")
    if y == 0:
        return 0.0  # every 2F1 is 1 and the coefficients cancel
    import mpmath as mp

    with mp.workdps(dps):
        P, Q, R, Y = mp.mpc(p), mp.mpc(q), mp.mpc(r), mp.mpc(y)
        f0 = hyp2f1_series(P, Q, R, Y, dps)
        fm = hyp2f1_series(P - 1, Q + 1, R, Y, dps)
        fp = hyp2f1_series(P + 1, Q - 1, R, Y, dps)
        k1 = Q * (R - P) / ((Q - P) * (1 + Q - P))
        k2 = P * (R - Q) / ((P - Q) * (1 + P - Q))
        lhs = -Y * f0
        rhs = k1 * fm - (k1 + k2) * f0 + k2 * fp
        return float(abs(lhs - rhs))


def reflection_residual(w):
    """|exp(lg(w) + lg(1-w)) sin(pi w) / pi - 1| (Euler reflection)."""
    w = complex(w)
    return abs(cmath.exp(log_gamma(w) + log_gamma(1 - w)) * cmath.sin(math.pi * w) / math.pi - 1)
