"""Pure-Python hot kernels: complex log-gamma and 2F1 on the conjugate line.

This module mirrors ``_kernels.pyx`` exactly and is used when the compiled
extension is unavailable (or when ``INDEXHYP_PURE=1``).  Both backends share
the regime thresholds defined here.
"""

import cmath
import math

import numpy as np

# B_{2k} / (2k (2k-1)), k = 1..11
STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# regime thresholds (shared with the Cython core)
PFAFF_Y_MAX = 0.8
PFAFF_GROWTH_MAX = 6.0  # bound on 2|s|sqrt(y)
CONN_GROWTH_MAX = 6.0  # bound on |s|(1-y)
DEGENERATE_DIST = 0.05  # minimal distance of 2is from the integers
CANCEL_MAX = 1e4
ODE_KAPPA = 1.5
MAX_TERMS = 4000
EPS = 1e-17


class KernelError(ArithmeticError):
    pass


def loggamma(w):
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        raise KernelError("log_gamma pole at nonpositive integer %r" % w.real)
    acc = 0j
    if w.real < 10.0:
        n = int(math.ceil(10.0 - w.real))
        for k in range(n):
            acc += cmath.log(w + k)
        w = w + n
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    p = inv
    for coef in STIRLING:
        series += coef * p
        p *= inv2
    return (w - 0.5) * cmath.log(w) - w + HALF_LOG_2PI + series - acc


def _series_direct(alpha, beta, gamma, z):
    """Gauss series at z with its z-derivative; returns (value, deriv, cancel)."""
    term = 1 + 0j
    total = 1 + 0j
    dtotal = 0j
    peak = 1.0
    for k in range(MAX_TERMS):
        term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1)) * z
        total += term
        if z != 0:
            dtotal += (k + 1) * term / z
        a = abs(term)
        if a > peak:
            peak = a
        if a <= EPS * abs(total) and k > 2:
            break
    else:
        raise KernelError("2F1 series did not converge")
    scale = abs(total)
    return total, dtotal, (peak / scale if scale > 0 else math.inf)


def _series_value(alpha, beta, gamma, z):
    term = 1 + 0j
    total = 1 + 0j
    peak = 1.0
    for k in range(MAX_TERMS):
        term *= (alpha + k) * (beta + k) / ((gamma + k) * (k + 1)) * z
        total += term
        a = abs(term)
        if a > peak:
            peak = a
        if a <= EPS * abs(total) and k > 2:
            return total, peak
    raise KernelError("2F1 series did not converge")


def _pfaff(b, c, s, x):
    y = x / (1.0 + x)
    val, peak = _series_value(b + 1j * s, c + 1j * s, b + c, y)
    scale = abs(val)
    if scale == 0.0 or peak > CANCEL_MAX * scale:
        return None
    return cmath.exp(-(b + 1j * s) * math.log1p(x)) * val


def _degenerate(s):
    t = 2j * s
    k = round(t.real)
    return abs(t - k) < DEGENERATE_DIST


def _connection(b, c, s, x):
    u = 1.0 / (1.0 + x)
    is_ = 1j * s
    lg_bc = loggamma(b + c)
    coef_a = cmath.exp(lg_bc + loggamma(-2 * is_) - loggamma(c - is_) - loggamma(b - is_))
    coef_b = cmath.exp(lg_bc + loggamma(2 * is_) - loggamma(b + is_) - loggamma(c + is_))
    f1, _ = _series_value(b + is_, c + is_, 1 + 2 * is_, u)
    f2, _ = _series_value(c - is_, b - is_, 1 - 2 * is_, u)
    lx = math.log1p(x)
    # (1+x)^{-b-is} [A F1 + (1+x)^{2is} B F2]
    t1 = cmath.exp((-b - is_) * lx) * coef_a * f1
    t2 = cmath.exp((-b + is_) * lx) * coef_b * f2
    return t1 + t2


def _ode(b, c, s, x):
    alpha = b + 1j * s
    beta = b - 1j * s
    gamma = b + c
    sa = abs(s)
    x0 = min(x, 0.25 / (1.0 + sa + abs(b)) ** 2)
    w, dw, _ = _series_direct(alpha, beta, gamma, -x0)
    z0 = -x0
    zt = -x
    q1 = alpha + beta + 1.0
    while z0 > zt:
        u = -z0
        step = min(0.5 * u, ODE_KAPPA * 2.0 * math.sqrt(u * (1.0 + u)) / (sa + 1.0))
        h = max(zt - z0, -step)
        p0 = z0 * (1.0 - z0)
        lin = 1.0 - 2.0 * z0
        q0 = gamma - q1 * z0
        d0 = w
        d1 = dw * h
        val = d0 + d1
        dval = dw
        small = 0
        for n in range(MAX_TERMS):
            d2 = ((n + alpha) * (n + beta) * d0 * h * h - (lin * n + q0) * (n + 1) * d1 * h) / (
                p0 * (n + 2) * (n + 1)
            )
            val += d2
            dval += (n + 2) * d2 / h
            d0, d1 = d1, d2
            if abs(d2) <= EPS * abs(val):
                small += 1
                if small >= 2:
                    break
            else:
                small = 0
        else:
            raise KernelError("ODE continuation did not converge")
        w, dw = val, dval
        z0 = z0 + h
    return w


def hyp2f1_line_scalar(b, c, s, x):
    """2F1(b+is, b-is; b+c; -x) for real b, c, complex s, x >= 0."""
    s = complex(s)
    x = float(x)
    if x < 0.0:
        raise KernelError("x must be nonnegative")
    if x == 0.0:
        return 1 + 0j
    y = x / (1.0 + x)
    sa = abs(s)
    if y <= PFAFF_Y_MAX and 2.0 * sa * math.sqrt(y) <= PFAFF_GROWTH_MAX:
        r = _pfaff(b, c, s, x)
        if r is not None:
            return r
    if y > PFAFF_Y_MAX and sa * (1.0 - y) <= CONN_GROWTH_MAX and not _degenerate(s):
        return _connection(b, c, s, x)
    return _ode(b, c, s, x)


def loggamma_vec(w):
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    flat_in = w.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = loggamma(flat_in[i])
    return out


def hyp2f1_line_vec(b, c, s, x):
    s, x = np.broadcast_arrays(np.asarray(s, dtype=complex), np.asarray(x, dtype=float))
    out = np.empty(s.shape, dtype=complex)
    fs = s.ravel()
    fx = x.ravel()
    fo = out.ravel()
    for i in range(fs.size):
        fo[i] = hyp2f1_line_scalar(b, c, fs[i], fx[i])
    return out
