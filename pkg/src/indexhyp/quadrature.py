"""Error-controlled quadrature on the half-line (x- and s-side) and in 2-D.

The workhorse is a vectorized adaptive Gauss-Kronrod (7/15) rule: all panels
that need refinement are evaluated in one call of the integrand, so callers
should supply functions that accept node arrays.  Integrands may be vector
valued (``fun(nodes)`` of shape ``(n, m)``), which lets a family of integrals
share one panel structure; each component is held to its own tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import special_fn as sf

_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 nodes, ascending
W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
W_GAUSS = np.zeros(15)
W_GAUSS[[1, 3, 5, 9, 11, 13]] = np.concatenate([_WG[:3], _WG[:3][::-1]])
W_GAUSS[7] = _WG[3]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-13
    max_subdivisions: int = 4000
    s_max_policy: object = "auto"  # "auto" or a fixed float S
    x_substitution: str = "sinh-square"  # or "none"

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.x_substitution not in ("sinh-square", "none"):
            raise ValueError("x_substitution must be 'sinh-square' or 'none'")

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT_SPEC = QuadratureSpec()
DEFAULT_SPEC_2D = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-10)


@dataclass
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool
    info: dict = field(default_factory=dict)

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(np.real(self.value))


@dataclass(frozen=True)
class HalfLineFunction:
    """Function on x >= 0 with the caller's decay exponent: f(x) = o(x^{-alpha-eps})."""

    evaluator: Callable
    decay_exponent: float
    name: str = ""

    def __call__(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    def strip_halfwidth(self, b):
        return self.decay_exponent - b

    @staticmethod
    def from_scalar(func, decay_exponent, name=""):
        vec = np.vectorize(func, otypes=[complex])
        return HalfLineFunction(vec, decay_exponent, name)

    def scaled(self, k):
        ev = self.evaluator
        return HalfLineFunction(lambda x: k * ev(x), self.decay_exponent, self.name)

    def __add__(self, other):
        e1, e2 = self.evaluator, other.evaluator
        return HalfLineFunction(lambda x: e1(x) + e2(x), min(self.decay_exponent, other.decay_exponent))


ZERO = HalfLineFunction(lambda x: np.zeros(np.shape(x)), math.inf, "zero")


# ----------------------------------------------------------------- core rule


def _gk15(fun, lo, hi):
    """Apply GK15 on panels [lo_i, hi_i]; returns (integral, error, abs integral)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    vals = np.asarray(fun(pts))
    if vals.shape[0] != pts.size:
        raise ValueError("integrand returned %d values for %d nodes" % (vals.shape[0], pts.size))
    vals = vals.reshape((lo.size, 15) + vals.shape[1:])
    wk = W_KRONROD.reshape((1, 15) + (1,) * (vals.ndim - 2))
    wg = W_GAUSS.reshape(wk.shape)
    hh = half.reshape((-1,) + (1,) * (vals.ndim - 2))
    kron = np.sum(wk * vals, axis=1)
    gauss = np.sum(wg * vals, axis=1)
    absv = np.abs(vals)
    resabs = np.sum(wk * absv, axis=1)
    mean = kron / 2.0
    resasc = np.sum(wk * np.abs(vals - mean[:, None]), axis=1)
    err = np.abs(kron - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where((resasc != 0) & (err != 0),
                          resasc * np.minimum(1.0, (200.0 * err / np.where(resasc == 0, 1, resasc)) ** 1.5),
                          err)
    scaled = np.maximum(scaled, 50.0 * _EPS * resabs)
    ah = np.abs(hh)
    return kron * hh, scaled * ah, resabs * ah


def adaptive(fun, breakpoints, rel_tol=1e-9, abs_tol=1e-13, max_subdivisions=4000):
    """Adaptive GK15 over the union of panels given by ``breakpoints``.

    Panels whose normalized error exceeds their length share of the
    tolerance are bisected, all in one batch per sweep.  Sums are taken in
    panel order so results are bit-stable.
    """
    edges = np.asarray(breakpoints, dtype=float)
    lo, hi = edges[:-1].copy(), edges[1:].copy()
    val, err, _ = _gk15(fun, lo, hi)
    evaluations = 15 * lo.size
    total_len = float(np.sum(hi - lo))
    converged = False
    while True:
        total = np.sum(val, axis=0)
        tol = np.maximum(abs_tol, rel_tol * np.abs(total))
        total_err = np.sum(err, axis=0)
        if np.all(total_err <= tol):
            converged = True
            break
        norm_err = err / tol
        if norm_err.ndim > 1:
            norm_err = np.max(norm_err.reshape(norm_err.shape[0], -1), axis=1)
        share = (hi - lo) / total_len
        mark = norm_err > share
        width_ok = (hi - lo) > 1e-13 * max(1.0, np.max(np.abs(edges)))
        mark &= width_ok
        if not np.any(mark):
            cand = np.where(width_ok, norm_err, -1.0)
            k = int(np.argmax(cand))
            if cand[k] <= 0:
                break
            mark[k] = True
        if lo.size + int(np.sum(mark)) > max_subdivisions:
            break
        m_lo, m_hi = lo[mark], hi[mark]
        m_mid = 0.5 * (m_lo + m_hi)
        new_lo = np.concatenate([m_lo, m_mid])
        new_hi = np.concatenate([m_mid, m_hi])
        nv, ne, _ = _gk15(fun, new_lo, new_hi)
        evaluations += 15 * new_lo.size
        keep = ~mark
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        order = np.argsort(lo, kind="stable")
        lo, hi, val, err = lo[order], hi[order], val[order], err[order]
    total = np.sum(val, axis=0)
    total_err = np.sum(err, axis=0)
    value = total if np.ndim(total) else complex(total) if np.iscomplexobj(total) else float(total)
    errv = total_err if np.ndim(total_err) else float(total_err)
    return QuadratureResult(value, errv, evaluations, converged, {"panels": lo.size})


def wynn_epsilon(partials):
    """Wynn epsilon extrapolation of a sequence of partial sums.

    Returns (estimate, error) where the error is the spread of the last two
    even-column estimates.
    """
    seq = [complex(p) for p in partials]
    n = len(seq)
    if n < 3:
        return seq[-1], abs(seq[-1] - seq[-2]) if n > 1 else math.inf
    prev = [0j] * (n + 1)
    cur = list(seq)
    estimates = [seq[-1]]
    col = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if d == 0:
                nxt.append(complex(1e300))
            else:
                nxt.append(prev[i + 1] + 1.0 / d)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0:
            estimates.append(cur[-1])
    best = estimates[-1]
    spread = abs(estimates[-1] - estimates[-2]) if len(estimates) > 1 else math.inf
    return best, spread


# ----------------------------------------------------------------- x side


def _log_sinh(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(t > 1e-3, t + np.log1p(-np.exp(-2.0 * t)) - math.log(2.0),
                        np.log(np.where(t > 0, t, 1e-300)) + t * t / 6.0)


def _log_cosh(t):
    t = np.asarray(t, dtype=float)
    return t + np.log1p(np.exp(-2.0 * t)) - math.log(2.0)


def x_of_t(t):
    sh = np.sinh(np.asarray(t, dtype=float))
    return sh * sh


def t_of_x(x):
    return np.arcsinh(np.sqrt(x))


def sinh_square_weight(t, b, c):
    """Mapped weight 2 sh^{2b+2c-1}(t) ch^{2b-2c+1}(t) of x^{b+c-1}(1+x)^{b-c} dx."""
    t = np.asarray(t, dtype=float)
    lw = math.log(2.0) + (2 * b + 2 * c - 1) * _log_sinh(t) + (2 * b - 2 * c + 1) * _log_cosh(t)
    return np.where(t > 0, np.exp(lw), 0.0 if 2 * b + 2 * c - 1 > 0 else np.exp(lw))


def _mapped_integrand(f, b, c):
    def g(t):
        vals = np.asarray(f(x_of_t(t)))
        w = sinh_square_weight(t, b, c)
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    return g


def _tail_probe(g, T):
    v = np.asarray(g(np.array([T])))
    return float(np.max(np.abs(v)))


def integrate_x(f, b, c, spec: QuadratureSpec = DEFAULT_SPEC, oscillation=0.0, tail="truncate",
                t_start=4.0, t_limit=300.0, x_max=None):
    """int_0^inf f(x) x^{b+c-1}(1+x)^{b-c} dx.

    ``oscillation`` is the angular frequency of the integrand in t = arcsh sqrt x
    (2|s| for a transform kernel); it caps the initial panel width at pi/(2 omega).
    ``tail='truncate'`` extends the range until the mapped integrand drops
    below tol/(10 T); ``tail='oscillatory'`` accelerates half-period partial
    sums with Wynn's epsilon.  ``x_max`` integrates over [0, x_max] only.
    """
    import warnings

    if b + c <= 0:
        raise ValueError("b + c must be positive")
    if b + c < 0.5:
        warnings.warn("b + c < 1/2: the mapped weight is singular at t = 0", RuntimeWarning, stacklevel=2)
    if spec.x_substitution == "none":
        return _integrate_x_plain(f, b, c, spec, x_max)
    g = _mapped_integrand(f, b, c)
    width = 1.0 if oscillation <= 0 else min(1.0, math.pi / (2.0 * oscillation))

    def run(lo, hi):
        n = max(1, int(math.ceil((hi - lo) / width)))
        return adaptive(g, np.linspace(lo, hi, n + 1), spec.rel_tol, spec.abs_tol, spec.max_subdivisions)

    if x_max is not None:
        res = run(0.0, float(t_of_x(x_max)))
        res.info["t_max"] = float(t_of_x(x_max))
        return res

    T = t_start
    res = run(0.0, T)
    total, err, evals, conv = res.value, res.error_estimate, res.evaluations, res.converged
    if tail == "oscillatory" and oscillation > 0:
        return _oscillatory_tail(g, total, err, evals, conv, T, oscillation, spec, width)
    while True:
        tol = max(spec.abs_tol, spec.rel_tol * float(np.max(np.abs(total))))
        probe = _tail_probe(g, T)
        if probe * T * 10.0 < tol or T >= t_limit:
            break
        T_new = min(t_limit, T * 1.5)
        r = run(T, T_new)
        total = total + r.value
        err = err + r.error_estimate
        evals += r.evaluations
        conv = conv and r.converged
        T = T_new
    probe = _tail_probe(g, T)
    tail_err = probe * T
    return QuadratureResult(total, err + tail_err, evals, conv and T < t_limit,
                            {"t_max": T, "tail_estimate": tail_err})


def _oscillatory_tail(g, total, err, evals, conv, T, omega, spec, width):
    half = math.pi / omega
    partials = [total]
    run_total = total
    best_prev = None
    best, spread = total, math.inf
    for k in range(60):
        lo, hi = T + k * half, T + (k + 1) * half
        n = max(1, int(math.ceil((hi - lo) / width)))
        r = adaptive(g, np.linspace(lo, hi, n + 1), spec.rel_tol, spec.abs_tol * 1e-2, spec.max_subdivisions)
        evals += r.evaluations
        err = err + r.error_estimate
        conv = conv and r.converged
        run_total = run_total + r.value
        partials.append(run_total)
        if len(partials) >= 5:
            best, spread = _wynn_any(partials)
            tol = max(spec.abs_tol, spec.rel_tol * float(np.max(np.abs(best))))
            if best_prev is not None and float(np.max(np.abs(best - best_prev))) < tol and spread < tol * 10:
                return QuadratureResult(best, err + float(np.max(np.abs(best - best_prev))), evals, conv,
                                        {"t_max": hi, "half_periods": k + 1})
            best_prev = best
    return QuadratureResult(best, err + spread, evals, False, {"t_max": T + 60 * half})


def _wynn_any(partials):
    arr = [np.atleast_1d(np.asarray(p)) for p in partials]
    m = arr[0].size
    out = np.empty(m, dtype=complex)
    spread = 0.0
    for j in range(m):
        est, sp = wynn_epsilon([a[j] for a in arr])
        out[j] = est
        spread = max(spread, sp)
    if np.ndim(partials[0]) == 0:
        out0 = out[0]
        return (out0.real if not np.iscomplexobj(partials[0]) else out0), spread
    return out, spread


def _integrate_x_plain(f, b, c, spec, x_max):
    """Substitution-free variant: x = u/(1-u) on [0, 1) with the raw weight."""

    def g(u):
        u = np.asarray(u, dtype=float)
        x = u / (1.0 - u)
        vals = np.asarray(f(x))
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(x > 0, x ** (b + c - 1) * (1 + x) ** (b - c), 0.0) / (1.0 - u) ** 2
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    hi = 1.0 if x_max is None else x_max / (1.0 + x_max)
    edges = np.concatenate([[0.0], 1.0 - np.geomspace(0.5, 1e-12, 40)]) if x_max is None else np.linspace(0, hi, 9)
    edges = edges[edges <= hi]
    return adaptive(g, edges, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)


# ----------------------------------------------------------------- s side


@dataclass(frozen=True)
class GammaABC:
    """s-weight |Gamma(a+is)Gamma(b+is)Gamma(c+is)/Gamma(2is)|^2."""

    a: float
    b: float
    c: float

    def log_weight(self, s):
        return sf.log_weight_abc(self.a, self.b, self.c, s)

    def tail(self):
        return sf.weight_tail("abc", (self.a, self.b, self.c))

    def s_min_default(self):
        return max(30.0, self.a + self.b + self.c + 8.0)


@dataclass(frozen=True)
class GammaBC:
    """s-weight |Gamma(b+is)Gamma(c+is)/Gamma(2is)|^2 (Plancherel density)."""

    b: float
    c: float

    def log_weight(self, s):
        return sf.log_weight_sigma(self.b, self.c, s)

    def tail(self):
        return sf.weight_tail("bc", (self.b, self.c))

    def s_min_default(self):
        return max(30.0, self.b + self.c + 8.0)


@dataclass(frozen=True)
class GammaLambda:
    """Weight Gamma(a+is) sigma(s) of the Lambda integral (complex valued)."""

    a: float
    b: float
    c: float

    def log_weight(self, s):
        s = np.asarray(s, dtype=float)
        return sf.log_gamma(self.a + 1j * s) + sf.log_weight_sigma(self.b, self.c, s)

    def tail(self):
        return sf.weight_tail("lambda", (self.a, self.b, self.c))

    def s_min_default(self):
        return max(30.0, self.a + self.b + self.c + 8.0)


def choose_s_max(decay, spec, g=None, scale=1.0):
    """Truncation point: the default S, raised until the tail bound is small.

    The weight envelope is rigorous; the factor ``g`` is modelled as a power
    of s fitted through g(S) and g(2S), with a safety factor ten.  None
    when no finite S works (the integrand does not decay).
    """
    if spec.s_max_policy != "auto":
        return float(spec.s_max_policy)
    S = decay.s_min_default()
    tail = decay.tail()
    target = max(spec.abs_tol, spec.rel_tol * scale) / 10.0

    def bound(S):
        if g is None:
            return tail.integral(S)
        # |g| is modelled as |g(S)| (s/S)^p with p read off from g(2S)/g(S);
        # the power is folded into the envelope and a factor 10 covers wiggles
        g1 = float(np.max(np.abs(g(np.array([S])))))
        g2 = float(np.max(np.abs(g(np.array([2 * S])))))
        p = max(0.0, math.log2(g2 / g1)) if g1 > 0 and g2 > 0 else 0.0
        g0 = max(g1, g2 * 2.0 ** -p, 1e-300)
        grown = replace(tail, s_power=tail.s_power + p, log_const=tail.log_const - p * math.log(S))
        try:
            return 10.0 * g0 * grown.integral(S)
        except OverflowError:  # g is noise-dominated at S; no usable power law
            return math.inf

    for _ in range(60):
        bS = bound(S)
        if math.isinf(bS):
            return _empirical_s_max(decay, spec, g, S, target)
        if S > 1e4:
            return None
        if bS < target:
            break
        S *= 1.25
    # tighten: the default start is generous for fast-decaying weights
    while S * 0.9 > 4.0 and bound(S * 0.9) < target:
        S *= 0.9
    return S


def _empirical_s_max(decay, spec, g, S, target):
    """Smallest probed S with |g w| S below target, or None if the integrand does not decay."""
    if g is None:
        g = np.ones_like
    for _ in range(60):
        probe = np.array([S, 1.5 * S])
        gv = np.abs(np.asarray(g(probe))).reshape(2, -1)
        v = gv * np.exp(np.real(decay.log_weight(probe)))[:, None]
        if float(np.max(v)) * S < target:
            return S
        if S > 1e4:
            break
        S *= 1.25
    return None


def s_breakpoints(S, x_osc=None, base_width=1.0):
    """Panel edges on [0, S]; width capped at pi/(2 arcsh sqrt x) for x > 1."""
    width = base_width
    if x_osc is not None and x_osc > 1:
        width = min(width, math.pi / (2.0 * math.asinh(math.sqrt(x_osc))))
    n = max(1, int(math.ceil(S / width)))
    return np.linspace(0.0, S, n + 1)


def integrate_s(g, decay, spec: QuadratureSpec = DEFAULT_SPEC, x_osc=None, scale_hint=1.0, g_bound=None):
    """int_0^inf g(s) weight(s) ds for a weight family ``decay``.

    ``g_bound`` (same signature as g) replaces g in the truncation choice;
    useful when g is itself a noisy quadrature with a known closed-form size.
    """
    S = choose_s_max(decay, spec, g if g_bound is None else g_bound, scale_hint)
    truncation_ok = S is not None
    if not truncation_ok:
        S = decay.s_min_default()

    def integrand(s):
        vals = np.asarray(g(s))
        w = np.exp(decay.log_weight(s))
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    res = adaptive(integrand, s_breakpoints(S, x_osc), spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    res.info["s_max"] = S
    if not truncation_ok:
        res.converged = False
        res.info["reason"] = "integrand does not decay in s"
    return res


# ----------------------------------------------------------------- 2-D


def integrate_2d(h, domain="half-lines", weights=None, spec: QuadratureSpec = DEFAULT_SPEC_2D,
                 t_max=None, outer_breaks=None):
    """Iterated adaptive quadrature.

    domain='half-lines': int_0^inf int_0^inf h(x, y) w(x, y) dx dy, each axis
    mapped by x = sh^2 t; ``weights`` is a pair of (b, c) tuples for the
    index-transform weights or None for Lebesgue.
    domain='disk': int_{|z|<1} h(z) w(z) dz in polar form; ``weights`` is
    'lebesgue' (default) or 'invariant' ((1-|z|^2)^{-2}, handled with r = tanh t).
    """
    inner_spec = spec.with_(rel_tol=spec.rel_tol * 0.1, abs_tol=spec.abs_tol * 0.1)
    if domain == "half-lines":
        wx, wy = weights if weights is not None else (None, None)

        def axis_weight(t, w):
            if w is None:
                sh = np.sinh(t)
                return 2.0 * sh * np.cosh(t)
            return sinh_square_weight(t, *w)

        T = t_max or 30.0

        def outer(ty):
            y = x_of_t(ty)

            def inner(tx):
                x = x_of_t(tx)
                vals = h(x[:, None], y[None, :])
                return vals * axis_weight(tx, wx)[:, None]

            r = adaptive(inner, np.linspace(0, T, int(T) + 1), inner_spec.rel_tol, inner_spec.abs_tol,
                         inner_spec.max_subdivisions)
            return np.asarray(r.value) * axis_weight(ty, wy)

        return adaptive(outer, outer_breaks if outer_breaks is not None else np.linspace(0, T, int(T) + 1),
                        spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    if domain == "disk":
        invariant = weights == "invariant"

        def outer(rad):
            if invariant:
                r = np.tanh(rad)
                jac = np.sinh(rad) * np.cosh(rad)
            else:
                r = rad
                jac = rad if weights in (None, "lebesgue") else rad * weights(rad)

            def inner(phi):
                z = r[None, :] * np.exp(1j * phi)[:, None]
                return h(z)

            res = adaptive(inner, np.linspace(0, 2 * math.pi, 9), inner_spec.rel_tol, inner_spec.abs_tol,
                           inner_spec.max_subdivisions)
            return np.asarray(res.value) * jac

        if invariant:
            T = t_max or 12.0
            breaks = outer_breaks if outer_breaks is not None else np.linspace(0, T, int(2 * T) + 1)
        else:
            breaks = outer_breaks if outer_breaks is not None else np.linspace(0, 1, 9)
        return adaptive(outer, breaks, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)
    raise ValueError("domain must be 'half-lines' or 'disk'")
