# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log1p, floor, ceil, fabs, round as cround

from indexhyp._pykernels import KernelError

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double complex cexp(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)

cdef double[11] STIRLING = [
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0, 77683.0 / 5796.0]

cdef double HALF_LOG_2PI = 0.9189385332046727
cdef double PFAFF_Y_MAX = 0.8
cdef double PFAFF_GROWTH_MAX = 6.0
cdef double CONN_GROWTH_MAX = 6.0
cdef double DEGENERATE_DIST = 0.05
cdef double CANCEL_MAX = 1e4
cdef double ODE_KAPPA = 1.5
cdef int MAX_TERMS = 4000
cdef double EPS = 1e-17
cdef double complex I = 1j


cdef int _loggamma(double complex w, double complex* out) nogil:
    cdef double complex acc = 0
    cdef double complex inv, inv2, p, series
    cdef int n, k
    if cimag(w) == 0.0 and creal(w) <= 0.0 and creal(w) == floor(creal(w)):
        return -1
    if creal(w) < 10.0:
        n = <int>ceil(10.0 - creal(w))
        for k in range(n):
            acc = acc + clog(w + k)
        w = w + n
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0
    p = inv
    for k in range(11):
        series = series + STIRLING[k] * p
        p = p * inv2
    out[0] = (w - 0.5) * clog(w) - w + HALF_LOG_2PI + series - acc
    return 0


cdef int _series_value(double complex alpha, double complex beta, double complex gamma,
                       double complex z, double complex* val, double* peak) nogil:
    cdef double complex term = 1
    cdef double complex total = 1
    cdef double a
    cdef int k
    peak[0] = 1.0
    for k in range(MAX_TERMS):
        term = term * (alpha + k) * (beta + k) / ((gamma + k) * (k + 1)) * z
        total = total + term
        a = cabs(term)
        if a > peak[0]:
            peak[0] = a
        if a <= EPS * cabs(total) and k > 2:
            val[0] = total
            return 0
    return -1


cdef int _series_direct(double complex alpha, double complex beta, double complex gamma,
                        double complex z, double complex* val, double complex* dval) nogil:
    cdef double complex term = 1
    cdef double complex total = 1
    cdef double complex dtotal = 0
    cdef int k
    for k in range(MAX_TERMS):
        term = term * (alpha + k) * (beta + k) / ((gamma + k) * (k + 1)) * z
        total = total + term
        if z != 0:
            dtotal = dtotal + (k + 1) * term / z
        if cabs(term) <= EPS * cabs(total) and k > 2:
            val[0] = total
            dval[0] = dtotal
            return 0
    return -1


cdef int _pfaff(double b, double c, double complex s, double x, double complex* out) nogil:
    cdef double y = x / (1.0 + x)
    cdef double complex val
    cdef double peak, scale
    if _series_value(b + I * s, c + I * s, b + c, y, &val, &peak) != 0:
        return -1
    scale = cabs(val)
    if scale == 0.0 or peak > CANCEL_MAX * scale:
        return 1
    out[0] = cexp(-(b + I * s) * log1p(x)) * val
    return 0


cdef bint _degenerate(double complex s) nogil:
    cdef double complex t = 2 * I * s
    cdef double k = cround(creal(t))
    return cabs(t - k) < DEGENERATE_DIST


cdef int _connection(double b, double c, double complex s, double x, double complex* out) nogil:
    cdef double u = 1.0 / (1.0 + x)
    cdef double complex is_ = I * s
    cdef double complex lg_bc, l1, l2, l3, l4, l5, l6, f1, f2
    cdef double peak, lx
    if (_loggamma(b + c, &lg_bc) or _loggamma(-2 * is_, &l1) or _loggamma(c - is_, &l2)
            or _loggamma(b - is_, &l3) or _loggamma(2 * is_, &l4) or _loggamma(b + is_, &l5)
            or _loggamma(c + is_, &l6)):
        return -1
    if _series_value(b + is_, c + is_, 1 + 2 * is_, u, &f1, &peak) != 0:
        return -1
    if _series_value(c - is_, b - is_, 1 - 2 * is_, u, &f2, &peak) != 0:
        return -1
    lx = log1p(x)
    out[0] = (cexp((-b - is_) * lx + lg_bc + l1 - l2 - l3) * f1
              + cexp((-b + is_) * lx + lg_bc + l4 - l5 - l6) * f2)
    return 0


cdef int _ode(double b, double c, double complex s, double x, double complex* out) nogil:
    cdef double complex alpha = b + I * s
    cdef double complex beta = b - I * s
    cdef double gamma = b + c
    cdef double sa = cabs(s)
    cdef double x0 = 0.25 / ((1.0 + sa + fabs(b)) * (1.0 + sa + fabs(b)))
    cdef double z0, zt, u, step, h, p0, lin
    cdef double complex w, dw, q0, q1, d0, d1, d2, val, dval
    cdef int n, small, ok
    if x < x0:
        x0 = x
    if _series_direct(alpha, beta, gamma, -x0, &w, &dw) != 0:
        return -1
    z0 = -x0
    zt = -x
    q1 = alpha + beta + 1.0
    while z0 > zt:
        u = -z0
        step = 0.5 * u
        if ODE_KAPPA * 2.0 * sqrt(u * (1.0 + u)) / (sa + 1.0) < step:
            step = ODE_KAPPA * 2.0 * sqrt(u * (1.0 + u)) / (sa + 1.0)
        h = zt - z0
        if h < -step:
            h = -step
        p0 = z0 * (1.0 - z0)
        lin = 1.0 - 2.0 * z0
        q0 = gamma - q1 * z0
        d0 = w
        d1 = dw * h
        val = d0 + d1
        dval = dw
        small = 0
        ok = 0
        for n in range(MAX_TERMS):
            d2 = ((n + alpha) * (n + beta) * d0 * h * h - (lin * n + q0) * (n + 1) * d1 * h) / (
                p0 * (n + 2) * (n + 1))
            val = val + d2
            dval = dval + (n + 2) * d2 / h
            d0 = d1
            d1 = d2
            if cabs(d2) <= EPS * cabs(val):
                small += 1
                if small >= 2:
                    ok = 1
                    break
            else:
                small = 0
        if not ok:
            return -1
        w = val
        dw = dval
        z0 = z0 + h
    out[0] = w
    return 0


cdef int _hyp2f1_line(double b, double c, double complex s, double x, double complex* out) nogil:
    cdef double y, sa
    cdef int r
    if x < 0.0:
        return -1
    if x == 0.0:
        out[0] = 1
        return 0
    y = x / (1.0 + x)
    sa = cabs(s)
    if y <= PFAFF_Y_MAX and 2.0 * sa * sqrt(y) <= PFAFF_GROWTH_MAX:
        r = _pfaff(b, c, s, x, out)
        if r == 0:
            return 0
    if y > PFAFF_Y_MAX and sa * (1.0 - y) <= CONN_GROWTH_MAX and not _degenerate(s):
        return _connection(b, c, s, x, out)
    return _ode(b, c, s, x, out)


def loggamma(w):
    cdef double complex out
    if _loggamma(complex(w), &out) != 0:
        raise KernelError("log_gamma pole at nonpositive integer %r" % complex(w).real)
    return out


def hyp2f1_line_scalar(double b, double c, s, double x):
    cdef double complex out
    if _hyp2f1_line(b, c, complex(s), x, &out) != 0:
        raise KernelError("hyp2f1_line failed at b=%r c=%r s=%r x=%r" % (b, c, s, x))
    return out


def loggamma_vec(w):
    arr = np.ascontiguousarray(w, dtype=np.complex128)
    res = np.empty(arr.shape, dtype=np.complex128)
    cdef double complex[::1] fin = arr.reshape(-1)
    cdef double complex[::1] fout = res.reshape(-1)
    cdef Py_ssize_t i, n = fin.shape[0]
    cdef int bad = 0
    with nogil:
        for i in range(n):
            if _loggamma(fin[i], &fout[i]) != 0:
                bad = 1
                break
    if bad:
        raise KernelError("log_gamma pole at nonpositive integer")
    return res


def hyp2f1_line_vec(double b, double c, s, x):
    sb, xb = np.broadcast_arrays(np.asarray(s, dtype=np.complex128), np.asarray(x, dtype=np.float64))
    sc = np.ascontiguousarray(sb)
    xc = np.ascontiguousarray(xb)
    res = np.empty(sc.shape, dtype=np.complex128)
    cdef double complex[::1] fs = sc.reshape(-1)
    cdef double[::1] fx = xc.reshape(-1)
    cdef double complex[::1] fo = res.reshape(-1)
    cdef Py_ssize_t i, n = fs.shape[0]
    cdef Py_ssize_t bad = -1
    with nogil:
        for i in range(n):
            if _hyp2f1_line(b, c, fs[i], fx[i], &fo[i]) != 0:
                bad = i
                break
    if bad >= 0:
        raise KernelError("hyp2f1_line failed at b=%r c=%r s=%r x=%r" % (b, c, fs[bad], fx[bad]))
    return res
