"""Identity-check registry.

Each entry owns a default grid of parameter points and a runner that maps
one point to a residual plus a dict of side values.  Entries in ``assert``
mode pass iff residual <= tolerance; ``adjudicate`` entries only record the
measured discrepancy and never fail a suite.
"""

from __future__ import annotations

import itertools
import json
import math
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from . import berezin_spaces as bz
from . import difference_ops as dops
from . import hahn
from . import index_transform as it
from . import lambda_fn as lf
from . import matrix_ball as mb
from . import oracles
from . import quadrature as quad
from . import special_fn as sf
from . import translate_bireflected as tb
from .errors import NonConvergenceError, StripViolationError, UnknownCheckError

MODES = ("assert", "adjudicate")
OUTCOMES = ("pass", "fail", "adjudicated", "nonconvergence")


@dataclass(frozen=True)
class CheckEntry:
    id: str
    description: str
    subject: str
    grid: tuple
    tolerance: float
    mode: str
    tags: frozenset
    runner: object = field(repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError("mode must be one of %r" % (MODES,))


@dataclass
class CheckReport:
    id: str
    point: dict
    residual: float
    tolerance: float
    outcome: str
    wall_time: float
    mode: str = "assert"
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.outcome in ("pass", "adjudicated")


@dataclass(frozen=True)
class RunContext:
    spec: quad.QuadratureSpec = quad.DEFAULT_SPEC
    seed: int = 0


REGISTRY = {}


def register(id, description, subject, grid, tolerance, mode="assert", tags=()):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError("duplicate check id %s" % id)
        REGISTRY[id] = CheckEntry(id, description, subject, tuple(grid), tolerance, mode, frozenset(tags), fn)
        return fn

    return deco


def _rel(x, y, floor=0.0):
    return float(abs(x - y) / max(abs(y), floor))


def _num(v):
    """JSON-friendly copy of a value (complex as [re, im])."""
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.ndarray):
        return [_num(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _num(x) for k, x in v.items()}
    return v


# ================================================================ transform


@register("INV-ROUNDTRIP", "inverse of forward is the identity on (1+x)^{-a-b}",
          "inversion formula for the transform pair",
          [dict(a=1.0, b=1.0, c=1.0), dict(a=1.5, b=0.5, c=1.0), dict(a=2.5, b=1.0, c=1.5)],
          1e-6, tags=("transform",))
def _roundtrip(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    f = it.power_family(a, b)
    xs = np.linspace(0.0, 10.0, 20)
    vals = it.inverse(lambda s: it.forward(f, b, c, s, ctx.spec), b, c, xs, ctx.spec, quad.GammaABC(a, b, c))
    err = np.abs(vals - f(xs))
    return float(err.max()), {"worst_x": float(xs[np.argmax(err)])}


@register("PLANCHEREL", "x-side and s-side inner products agree",
          "unitarity of the transform",
          [dict(a=2.0, b=1.0, c=1.0, n1=0, n2=0), dict(a=2.0, b=1.0, c=1.0, n1=1, n2=1),
           dict(a=2.0, b=1.0, c=1.0, n1=0, n2=1)],
          1e-6, tags=("transform",))
def _plancherel(p, ctx):
    a, b, c, n1, n2 = p["a"], p["b"], p["c"], p["n1"], p["n2"]
    f1, f2 = it.power_family(a, b, n1), it.power_family(a, b, n2)
    lhs, rhs = it.plancherel_pairing(f1, f2 if n1 != n2 else f1, b, c, ctx.spec)

    def beta(n, m):
        # x-side pairing of the family is a Beta integral
        return math.exp(gammaln(b + c + n + m) + gammaln(2 * a) - gammaln(2 * a + b + c + n + m))

    scale = math.sqrt(beta(n1, n1) * beta(n2, n2))
    return float(abs(lhs - rhs) / scale), {"x_side": lhs, "s_side": rhs, "beta": beta(n1, n2),
                                           "x_side_vs_beta": abs(lhs - beta(n1, n2)) / scale}


def _elem_points(seed, n=200):
    rng = np.random.default_rng(seed)
    return rng.uniform(0, 10, n), rng.uniform(0, 100, n)


@register("ELEM-COS", "2F1(is,-is;1/2;-x) against cos(2s arcsh sqrt x)",
          "elementary case b=0, c=1/2", [dict(samples=200)], 1e-10, tags=("fast", "special"))
def _elem_cos(p, ctx):
    s, x = _elem_points(ctx.seed, p["samples"])
    v = sf.hyp2f1_line(0.0, 0.5, s, x)
    ref = oracles.elem_cos(s, x)
    return float(np.max(np.abs(v - ref) / np.abs(ref))), {}


@register("ELEM-SIN", "2F1(1/2+is,1/2-is;3/2;-x) against sin(2s arcsh sqrt x)/(2s sqrt x)",
          "elementary case b=1/2, c=1", [dict(samples=200)], 1e-10, tags=("fast", "special"))
def _elem_sin(p, ctx):
    s, x = _elem_points(ctx.seed + 1, p["samples"])
    v = sf.hyp2f1_line(0.5, 1.0, s, x)
    ref = oracles.elem_sin(s, x)
    return float(np.max(np.abs(v - ref) / np.abs(ref))), {}


@register("STRIP", "transform of (1+x)^{-4} is holomorphic in its strip (Cauchy mean)",
          "analytic continuation in s", [dict(re=1.0, im=1.0), dict(re=0.5, im=2.0)], 1e-6,
          tags=("transform",))
def _strip(p, ctx):
    f = quad.HalfLineFunction(lambda x: (1.0 + x) ** -4.0, 4.0, "pow4")
    s0 = complex(p["re"], p["im"])
    direct = complex(it.forward(f, 1.0, 1.0, s0, ctx.spec))
    mean = it.cauchy_mean(f, 1.0, 1.0, s0, 0.5, 32, ctx.spec)
    try:
        it.forward(f, 1.0, 1.0, complex(1.0, 3.0), ctx.spec)
        guarded = False
    except StripViolationError:
        guarded = True
    return _rel(mean, direct), {"direct": direct, "cauchy_mean": mean, "outside_strip_rejected": guarded}


# ---------------------------------------------------------------- difference operators

_TEST_FUNCS = {
    # name: (f, x f, x(x+1) f', decay of f)
    "pow4": (lambda x: (1 + x) ** -4.0, lambda x: x * (1 + x) ** -4.0, lambda x: -4 * x * (1 + x) ** -4.0, 4.0),
    "ratio_pow": (lambda x: x * (1 + x) ** -5.0, lambda x: x * x * (1 + x) ** -5.0,
              lambda x: x * (1 + x) ** -4.0 - 5 * x * x * (1 + x) ** -5.0, 4.0),
}


def _diff_op_point(p, ctx, op):
    f, xf, dxf, dec = _TEST_FUNCS[p["f"]]
    b, c, s = 1.0, 1.0, p["s"]
    F = quad.HalfLineFunction(f, dec)
    spec = ctx.spec.with_(rel_tol=min(ctx.spec.rel_tol, 1e-10))

    def geval(z):
        return complex(it.forward(F, b, c, z, spec))

    if op == "P":
        lhs = dops.apply_P(geval, b, c, s)
        rhs = complex(it.forward(quad.HalfLineFunction(xf, dec - 1), b, c, s, spec))
        extra = {}
    else:
        lhs = dops.apply_H(geval, b, c, s)
        rhs = complex(it.forward(quad.HalfLineFunction(dxf, dec - 1), b, c, s, spec))
        printed = dops.apply_H(geval, b, c, s, printed=True)
        extra = {"printed_residual": abs(printed - rhs)}
    return float(abs(lhs - rhs)), dict(operator_side=lhs, direct=rhs, **extra)


_DIFF_GRID = [dict(f=f, s=s) for f in ("pow4", "ratio_pow") for s in (0.5, 1.0, 2.0)]


@register("THM21", "operator P on transforms equals the transform of x f",
          "difference operator for multiplication by x", _DIFF_GRID, 1e-6, tags=("difference",))
def _thm21(p, ctx):
    return _diff_op_point(p, ctx, "P")


@register("REL23", "three-term contiguous relation of 2F1",
          "contiguous relation behind the operator P", [dict(samples=100)], 1e-12, tags=("fast", "special"))
def _rel23(p, ctx):
    rng = np.random.default_rng(ctx.seed + 23)
    worst = 0.0
    n = 0
    while n < p["samples"]:
        pp = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        qq = complex(rng.uniform(-2, 3), rng.uniform(-2, 2))
        rr = complex(rng.uniform(0.5, 4), rng.uniform(-1, 1))
        y = 0.9 * rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * math.pi))
        if min(abs(pp - qq - k) for k in (0, 1, -1)) < 0.1:
            continue
        worst = max(worst, sf.contiguous_residual_23(pp, qq, rr, y))
        n += 1
    return worst, {}


@register("THM22", "operator H on transforms equals the transform of x(x+1) f'",
          "difference operator for x(x+1) d/dx", _DIFF_GRID, 1e-6, tags=("difference",))
def _thm22(p, ctx):
    return _diff_op_point(p, ctx, "H")


# ================================================================ Berezin radial


@register("VTHETA-NORM", "monomial norms in V_theta against the Dirichlet integral",
          "orthogonal monomial basis of the weighted ball space",
          [dict(n=2, theta=4.0, max_degree=3), dict(n=2, theta=6.0, max_degree=3)], 1e-6, tags=("fast", "berezin"))
def _vtheta(p, ctx):
    worst, rows = 0.0, {}
    for ks in bz.vtheta_multi_indices(p["n"], p["max_degree"]):
        ref = bz.vtheta_norm_sq_dirichlet(ks, p["theta"], panels=16)
        val = bz.vtheta_norm_sq(ks, p["theta"])
        worst = max(worst, _rel(val, ref))
        rows[str(ks)] = val
    return worst, {"norms": rows}


@register("RADIAL-NORM", "radial Berezin norms are proportional to disk-space norms",
          "radial norms and the parameter dictionary",
          [dict(theta=4.0, n=2), dict(theta=6.5, n=3), dict(theta=9.0, n=5)], 1e-12, tags=("fast", "berezin"))
def _radial(p, ctx):
    th, n = p["theta"], p["n"]
    ratios = [bz.dictionary_ratio(k, th, n, "half-theta") for k in range(6)]
    printed = [bz.dictionary_ratio(k, th, n, "printed") for k in range(6)]
    const = bz.dictionary_constant(th, n)
    resid = max(abs(r / const - 1.0) for r in ratios)
    spread = max(abs(r / printed[0] - 1.0) for r in printed)
    return resid, {"constant": const, "printed_rule_spread": spread}


@register("SUM39", "multinomial sum equals the binomial-series coefficient",
          "generating function of central binomial products",
          [dict(n=n, p=q) for n in range(1, 7) for q in range(0, 9)], 0.0, tags=("fast", "berezin"))
def _sum39(p, ctx):
    lhs = bz.multinomial_sum_39(p["n"], p["p"])
    rhs = bz.binomial_coefficient_39(p["n"], p["p"])
    return float(abs(lhs - rhs)), {"value": lhs}


# ================================================================ Hahn


@register("HAHN-ORTHO", "Gram matrix of S_0..S_4 is diagonal with the closed-form norms",
          "orthogonality of continuous dual Hahn polynomials",
          [dict(a=1.0, b=1.0, c=1.0, N=5), dict(a=0.5, b=1.0, c=1.5, N=5)], 1e-6, tags=("hahn",))
def _hahn_ortho(p, ctx):
    a, b, c, N = p["a"], p["b"], p["c"], p["N"]
    G = hahn.hahn_gram(N, a, b, c, ctx.spec.with_(rel_tol=min(ctx.spec.rel_tol, 1e-10)))
    norms = np.array([hahn.hahn_norm_sq(n, a, b, c) for n in range(N)])
    diag = np.max(np.abs(np.diag(G) / norms - 1.0))
    off = G / np.sqrt(np.outer(norms, norms))
    np.fill_diagonal(off, 0.0)
    return float(max(diag, np.max(np.abs(off)))), {"diag_rel": float(diag), "offdiag_rel": float(np.max(np.abs(off)))}


@register("HAHN-EIGEN", "S_n are eigenfunctions of the difference operator with eigenvalue n",
          "difference equation of Hahn polynomials",
          [dict(a=1.0, b=1.0, c=1.0, s=0.9), dict(a=2.0, b=0.7, c=1.3, s=1.7)], 1e-10, tags=("fast", "hahn"))
def _hahn_eigen(p, ctx):
    a, b, c, s = p["a"], p["b"], p["c"], p["s"]
    worst = 0.0
    for n in range(6):
        lhs = dops.apply_L(lambda z: hahn.hahn_eval(n, a, b, c, z), a, b, c, s)
        rhs = n * hahn.hahn_eval(n, a, b, c, s)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(hahn.hahn_eval(n, a, b, c, s))))
    return float(worst), {}


@register("HAHN-SYM", "S_n is symmetric in (a, b, c)",
          "permutation invariance of Hahn polynomials",
          [dict(a=1.0, b=2.0, c=3.0), dict(a=0.5, b=1.2, c=2.3)], 1e-10, tags=("fast", "hahn"))
def _hahn_sym(p, ctx):
    base = (p["a"], p["b"], p["c"])
    worst = 0.0
    for n in range(6):
        for s in (0.4, 1.1, 2.5):
            ref = hahn.hahn_eval(n, *base, s)
            for perm in itertools.permutations(base):
                worst = max(worst, abs(hahn.hahn_eval(n, *perm, s) - ref) / max(1.0, abs(ref)))
    return float(worst), {}


@register("LEM41", "transform of (1+x)^{-a-b} is Gamma(a+is)Gamma(a-is)/(Gamma(a+b)Gamma(a+c))",
          "image of the power function", [dict(a=2.0, b=1.0, c=1.0), dict(a=1.5, b=0.5, c=1.0)], 1e-8,
          tags=("fast", "hahn"))
def _lem41(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    s = np.linspace(0.0, 6.0, 20)
    spec = ctx.spec.with_(rel_tol=min(ctx.spec.rel_tol, 1e-11), abs_tol=1e-16)
    v = it.forward(it.power_family(a, b), b, c, s, spec)
    ref = it.power_image(a, b, c, s)
    return float(np.max(np.abs(v - ref) / np.abs(ref))), {}


@register("LEM42", "transform of (x/(x+1))^n (1+x)^{-a-b} is the Hahn image",
          "images of the polynomial family", [dict(a=2.0, b=1.0, c=1.0), dict(a=2.5, b=0.5, c=1.5)], 1e-6,
          tags=("fast", "hahn"))
def _lem42(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    s = np.array([0.0, 0.5, 1.0, 2.0])
    worst = 0.0
    for n in range(5):
        v = it.forward(it.power_family(a, b, n), b, c, s, ctx.spec)
        ref = hahn.image_lemma42(n, a, b, c, s)
        worst = max(worst, float(np.max(np.abs(v - ref)) / np.max(np.abs(ref))))
    return worst, {}


# ================================================================ disk spaces


@register("W-NORM", "monomial norms from the disk measure",
          "orthogonal monomials of the weighted disk space",
          [dict(a=2.0, b=1.0, c=1.0), dict(a=2.5, b=1.0, c=1.5)], 1e-6, tags=("fast", "berezin"))
def _w_norm(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    worst, disk = 0.0, 0.0
    for k in range(4):
        ref = bz.w_norm_sq(k, a, b, c)
        worst = max(worst, _rel(bz.w_norm_sq_quadrature(k, a, b, c), ref))
        if k <= 2:
            disk = max(disk, _rel(bz.w_norm_sq_disk(k, a, b, c), ref))
    return max(worst, disk), {"radial_route": worst, "disk_route": disk}


@register("RK", "reproducing property of the kernel",
          "reproducing kernel of the disk space", [dict(a=2.0, b=1.0, c=1.0, u=0.3), dict(a=2.5, b=1.0, c=1.5, u=0.5)],
          1e-10, tags=("fast", "berezin"))
def _rk(p, ctx):
    a, b, c, u = p["a"], p["b"], p["c"], p["u"]
    f = bz.DiskFunction((1.0, 0.0, 2.0))
    pair = bz.w_inner(f, bz.kernel_section(a, b, c, u, 60), a, b, c)
    repro = abs(pair - f(u))
    z = 0.2 + 0.1j
    sym = abs(bz.reproducing_kernel(a, b, c, z, u) - np.conj(bz.reproducing_kernel(a, b, c, u, z)))
    series = abs(bz.kernel_section(a, b, c, u, 200)(z) - bz.reproducing_kernel(a, b, c, z, u))
    return float(max(repro, sym, series / abs(bz.reproducing_kernel(a, b, c, z, u)))), {
        "reproduction": repro, "symmetry": sym, "series": series}


@register("THM53", "images of z^0..z^4 have Gram matrix diag of the disk norms",
          "unitarity of the disk-to-spectral map", [dict(a=2.0, b=1.0, c=1.0, degree=4)], 1e-6, tags=("berezin",))
def _thm53(p, ctx):
    a, b, c, k = p["a"], p["b"], p["c"], p["degree"]
    G = bz.thm53_gram(k, a, b, c, "quadrature")
    norms = np.array([bz.w_norm_sq(n, a, b, c) for n in range(k + 1)])
    diag = np.max(np.abs(np.diag(G) / norms - 1.0))
    off = G / np.sqrt(np.outer(norms, norms))
    np.fill_diagonal(off, 0.0)
    return float(max(diag, np.max(np.abs(off)))), {"diag_rel": float(diag)}


@register("PROP54", "images of z^k are eigenfunctions of the difference operator",
          "the disk operator z d/dz on the spectral side",
          [dict(a=2.0, b=1.0, c=1.0, s=s) for s in (0.7, 1.5)], 1e-8, tags=("berezin",))
def _prop54(p, ctx):
    a, b, c, s = p["a"], p["b"], p["c"], p["s"]
    spec = ctx.spec.with_(rel_tol=min(ctx.spec.rel_tol, 1e-11), abs_tol=1e-16)
    worst = 0.0
    for k in range(4):
        f = it.power_family(a, b, k)

        def geval(z, f=f):
            g = complex(it.forward(f, b, c, z, spec))
            return g / complex(np.exp(sf.log_gamma(a + 1j * z) + sf.log_gamma(a - 1j * z)))

        lhs = dops.apply_L(geval, a, b, c, s)
        ref = bz.j_abc_monomial(k, a, b, c, s)
        worst = max(worst, abs(lhs - k * ref) / max(abs(ref), bz.j_abc_monomial(k, a, b, c, 0.0)))
    return float(worst), {}


# ================================================================ Lambda


@register("LAM-IMG", "transform of Lambda is Gamma(a+is)",
          "Lambda as an inverse transform", [dict(a=2.0, b=1.0, c=1.0, s=s) for s in (0.5, 1.0, 2.0)], 1e-4,
          tags=("lambda",))
def _lam_img(p, ctx):
    a, b, c, s = p["a"], p["b"], p["c"], p["s"]
    v = lf.lambda_image(a, b, c, s)
    ref = lf.gamma_image(a, s)
    return _rel(v, ref), {"image": v, "gamma": ref}


@register("LAM-NORM", "squared norm of Lambda is Gamma(a+b)Gamma(a+c)Gamma(b+c)",
          "Plancherel for Lambda", [dict(a=2.0, b=1.0, c=1.0), dict(a=2.5, b=0.5, c=1.0)], 1e-4,
          tags=("fast", "lambda"))
def _lam_norm(p, ctx):
    a, b, c = p["a"], p["b"], p["c"]
    v = lf.lambda_norm_sq(a, b, c)
    ref = lf.lambda_norm_sq_exact(a, b, c)
    return _rel(v, ref), {"quadrature": v, "exact": ref}


_SYM_GRID = [dict(a=2.0, b=b, c=c, x=x) for b in (0.5, 1.0, 1.5) for c in (0.5, 1.0, 1.5) if b != c
             for x in (0.3, 1.0, 3.0)]


@register("SYM67", "Lambda^a_{b,c} = (1+x)^{c-b} Lambda^a_{c,b}",
          "swap symmetry of Lambda", _SYM_GRID, 1e-6, tags=("fast", "lambda"))
def _sym67(p, ctx):
    a, b, c, x = p["a"], p["b"], p["c"], p["x"]
    return float(lf.symmetry_67(a, b, c, x) / abs(lf.lambda_eval(a, b, c, x).value)), {}


@register("DER68", "d/dx Lambda^a_{b,c} = -Lambda^a_{b+1,c}",
          "derivative of Lambda", [dict(a=2.0, b=b, c=c, x=x) for b in (0.5, 1.0, 1.5) for c in (0.5, 1.0, 1.5)
                                    for x in (0.3, 1.0, 3.0)], 1e-5, tags=("fast", "lambda"))
def _der68(p, ctx):
    a, b, c, x = p["a"], p["b"], p["c"], p["x"]
    return float(lf.derivative_68(a, b, c, x)), {"h_half": lf.derivative_68(a, b, c, x, h=5e-5)}


@register("ITER69", "Lambda^a_{b+k,c+l} from iterated derivatives",
          "iterated derivative formula",
          [dict(a=2.0, b=1.0, c=1.0, k=k, l=l, x=0.8) for k, l in ((1, 0), (0, 1), (1, 1), (2, 0))], 1e-4,
          tags=("fast", "lambda"))
def _iter69(p, ctx):
    a, b, c, k, l, x = p["a"], p["b"], p["c"], p["k"], p["l"], p["x"]
    v, degraded = lf.iterated_69(a, b, c, k, l, x)
    ref = lf.lambda_eval(a, b + k, c + l, x).value
    return _rel(v, ref), {"degraded": degraded}


@register("REC610", "first-order differential relation in the a-shift (finite differences)",
          "differential recurrence of Lambda",
          [dict(a=2.0, b=1.0, c=1.0, x=x) for x in (0.0, 0.5, 1.0, 3.0)] + [dict(a=2.5, b=0.5, c=1.5, x=1.0)],
          1e-5, tags=("fast", "lambda"))
def _rec610(p, ctx):
    a, b, c, x = p["a"], p["b"], p["c"], p["x"]
    return float(lf.recurrence_610(a, b, c, x)), {"printed_residual": lf.recurrence_610(a, b, c, x, printed=True)}


@register("REC611", "four-term recurrence of Lambda in a",
          "algebraic recurrence of Lambda",
          [dict(a=2.0, b=1.0, c=1.0, x=x) for x in (0.0, 0.5, 1.0, 3.0)] + [dict(a=2.5, b=0.5, c=1.5, x=1.0)],
          1e-5, tags=("fast", "lambda"))
def _rec611(p, ctx):
    a, b, c, x = p["a"], p["b"], p["c"], p["x"]
    return float(lf.recurrence_611(a, b, c, x)), {"printed_residual": lf.recurrence_611(a, b, c, x, printed=True)}


@register("PROP61", "integral of Lambda^a times Lambda^{a+n} against the finite-sum formula",
          "pairing of Lambda functions with shifted a",
          [dict(a=2.0, b=1.0, c=1.0, n=n) for n in (0, 1, 2)], math.inf, mode="adjudicate", tags=("lambda",))
def _prop61(p, ctx):
    a, b, c, n = p["a"], p["b"], p["c"], p["n"]
    lhs, rhs4, alt = lf.prop61_pair(a, b, c, n)
    norm = lf.lambda_norm_sq_exact(a, b, c)
    exact = lf.lambda_pair_exact(a, b, c, n)
    disc = abs(lhs - rhs4) / abs(lhs) if np.isfinite(rhs4) else math.inf
    lem = [(lf.pochhammer_lhs(n, a, s), lf.pochhammer_printed(n, a, s)) for s in (0.5, 1.0)]
    return float(disc), {"lhs": lhs, "lhs_normalized": lhs / norm, "exact": exact,
                         "quadrature_vs_exact": abs(lhs - exact) / abs(exact),
                         "finite_sum": rhs4, "expanded_sum": alt,
                         "ratio_to_finite_sum": lhs / rhs4 if np.isfinite(rhs4) and rhs4 else None,
                         "pochhammer_expansion": lem}


@register("RELAM-HALF", "closed form of Re Lambda^a_{1/2,1} after calibration",
          "explicit real part for b=1/2, c=1",
          [dict(a=2.0), dict(a=1.0), dict(a=3.0)], math.inf, mode="adjudicate", tags=("fast", "lambda"))
def _relam_half(p, ctx):
    a = p["a"]
    cal = lf.calibrate_re_lambda_half()
    xs = np.asarray(lf.CALIBRATION_POINTS)
    ref = np.real(lf.lambda_values(a, 0.5, 1.0, xs)[0])
    closed = np.array([lf.re_lambda_half_closed(a, x, cal) for x in xs])
    err = float(np.max(np.abs(closed - ref) / np.abs(ref)))
    return err, {"convention": cal.convention, "constant": cal.constant, "spreads": cal.spreads,
                 "sqrt_pi": math.sqrt(math.pi)}


@register("LSTAR-DECOMP", "Lambda^a_{1/2,1} from four Volterra lambda* values",
          "Volterra-type reduction for b=1/2, c=1",
          [dict(a=a, x=x) for a in (2.0, 2.5) for x in (0.5, 2.0)], math.inf, mode="adjudicate",
          tags=("fast", "lambda"))
def _lstar(p, ctx):
    a, x = p["a"], p["x"]
    ref = lf.lambda_eval(a, 0.5, 1.0, x).value
    v = lf.lstar_decomposition(a, x)
    printed = lf.lstar_decomposition(a, x, printed=True)
    z, b0, h = 2.0, 0.5, 1e-4
    d = (lf.volterra_lambda_star(z + h, b0) - lf.volterra_lambda_star(z - h, b0)) / (2 * h)
    ident = d - (-lf.volterra_lambda_star(z, b0 + 1) + lf.volterra_lambda_star(z, b0) / z)
    return _rel(v, ref), {"decomposition": v, "quadrature": ref, "printed_form_rel_error": _rel(printed, ref),
                          "derivative_identity": abs(ident)}


# ================================================================ translates


@register("GEN-HAHN", "generating function of S_k w^k/(k!(b+c)_k)",
          "Hahn generating function",
          [dict(a=1.0, b=1.0, c=1.0, w=0.3, s=0.8), dict(a=2.0, b=1.0, c=1.5, w=0.4, s=1.3)], 1e-8,
          tags=("fast", "hahn"))
def _gen_hahn(p, ctx):
    a, b, c, w, s = p["a"], p["b"], p["c"], p["w"], p["s"]
    lhs = hahn.generating_partial_sum(60, a, b, c, w, s)
    others = {lab: abs(lhs - hahn.generating_closed_form(a, b, c, w, s, lab)) for lab in hahn.GENERATING_EXPONENTS}
    rhs = hahn.generating_closed_form(a, b, c, w, s)
    return float(abs(lhs - rhs) / max(1.0, abs(rhs))), {"exponent": hahn.GENERATING_EXPONENT, "by_exponent": others}


@register("KERNEL-K", "closed-form translate kernel against the multiplier definition",
          "integral kernel of the generalized translate",
          [dict(a=2.0, b=1.0, c=1.0, z=0.5)], math.inf, mode="adjudicate", tags=("translate",))
def _kernel_k(p, ctx):
    dev = tb.kernel_deviation(p["a"], p["b"], p["c"], p["z"])
    scan = tb.kernel_B_scan()
    return dev["rel_deviation"], {"routes": dev, "B_range": scan}


@register("MULT71", "transform of T_z f is F_s(z) times the transform of f",
          "multiplier property of the translate",
          [dict(a=2.0, b=1.0, c=1.0, z=0.5), dict(a=2.5, b=0.5, c=1.0, z=2.0)], 1e-8, tags=("translate",))
def _mult71(p, ctx):
    a, b, c, z = p["a"], p["b"], p["c"], p["z"]
    spec = ctx.spec.with_(rel_tol=min(ctx.spec.rel_tol, 1e-11), abs_tol=1e-15)
    Tf = tb.power_translate(a, b, c, z, spec=spec)
    s = np.array([0.5, 1.0, 2.0])
    lhs = it.forward(Tf, b, c, s, spec)
    rhs = sf.hyp2f1_line(b, c, s, z) * it.power_image(a, b, c, s)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))), {}


@register("LAM-TRANS", "<Lambda, T_z Lambda> = (1+z)^{-a-b} Gamma(a+b)Gamma(a+c)Gamma(b+c)",
          "translate of Lambda paired with Lambda",
          [dict(a=a, b=b, c=c, z=z) for a, b, c in ((2.0, 1.0, 1.0), (2.5, 0.5, 1.0)) for z in (0.0, 0.5, 1.0, 3.0)],
          1e-4, tags=("fast", "translate"))
def _lam_trans(p, ctx):
    lhs, rhs = tb.lambda_translate_integral(p["a"], p["b"], p["c"], p["z"], ctx.spec)
    return _rel(lhs, rhs), {"lhs": lhs, "rhs": rhs}


@register("XI-ORTHO", "Gram matrix of Xi_0..Xi_3 is diag of the disk norms",
          "orthogonality of the bireflected basis", [dict(a=2.0, b=1.0, c=1.0, N=3)], 1e-4, tags=("translate",))
def _xi_ortho(p, ctx):
    a, b, c, N = p["a"], p["b"], p["c"], p["N"]
    G = tb.BireflectedBasis(N, a, b, c).gram()
    norms = np.array([bz.w_norm_sq(n, a, b, c) for n in range(N + 1)])
    diag = np.max(np.abs(np.diag(G) / norms - 1.0))
    off = G / np.sqrt(np.outer(norms, norms))
    np.fill_diagonal(off, 0.0)
    return float(max(diag, np.max(np.abs(off)))), {"diag_rel": float(diag), "offdiag_rel": float(np.max(np.abs(off)))}


@register("XI-FORMULA", "Xi_n from derivatives of Lambda agrees with the composite-map route",
          "Lambda-derivative expression of the bireflected basis",
          [dict(a=2.0, b=1.0, c=1.0, n=n, x=x) for n in (0, 1, 2) for x in (0.7, 2.0)], 1e-3,
          tags=("fast", "translate"))
def _xi_formula(p, ctx):
    a, b, c, n, x = p["a"], p["b"], p["c"], p["n"], p["x"]
    ref = tb.xi_eval(n, a, b, c, x)
    v = tb.xi_formula(n, a, b, c, x)
    printed = tb.xi_formula(n, a, b, c, x, printed_sign=True)
    return _rel(v, ref), {"q_map": ref, "formula": v, "printed_sign_rel_error": _rel(printed, ref)}


@register("PROP73", "partial sums of the bireflected expansion of T_z Lambda converge at rate z/(z+1)",
          "first row of the translate in the bireflected basis",
          [dict(a=2.0, b=1.0, c=1.0, z=0.5, N=6)], 0.5, tags=("translate",))
def _prop73(p, ctx):
    a, b, c, z, N = p["a"], p["b"], p["c"], p["z"], p["N"]
    res = tb.prop73_expansion(a, b, c, z, N + 1)
    w = z / (1.0 + z)
    ratio = res[N - 1] / res[N - 2]
    lam_norm = math.sqrt(lf.lambda_norm_sq_exact(a, b, c))
    printed = tb.prop73_expansion(a, b, c, z, N, printed=True)
    return float(abs(ratio / w - 1.0)), {"residuals": res, "ratio": ratio, "w": w,
                                         "residual_over_norm": res[N - 1] / lam_norm,
                                         "printed_residuals": printed}


# ================================================================ matrix ball


@register("MOBIUS-LAW", "Mobius action is a group action; invariant measure on the disk",
          "linear fractional action on matrix balls",
          [dict(p=1, q=1), dict(p=2, q=2), dict(p=2, q=3)], 1e-10, tags=("fast", "matrix"))
def _mobius(p, ctx):
    rng = np.random.default_rng(ctx.seed + 81)
    P, Q = p["p"], p["q"]
    worst = 0.0
    for _ in range(5):
        z = rng.normal(size=(P, Q)) + 1j * rng.normal(size=(P, Q))
        z *= 0.7 / np.linalg.norm(z, 2)
        g = mb.random_pseudo_unitary(P, Q, rng)
        h = mb.random_pseudo_unitary(P, Q, rng)
        worst = max(worst, mb.group_law_residual(g, h, mb.MatrixBallPoint(z)))
    details = {}
    if P == Q == 1:
        details["invariant_measure_residual"] = mb.invariant_measure_residual(0.7)
    return worst, details


@register("DET82", "determinant Lambda-function: rank-one reduction, antisymmetry, kernel at u=0",
          "Lambda-function of the matrix ball",
          [dict(theta=6.0, p=1, q=1), dict(theta=7.0, p=1, q=2), dict(theta=6.0, p=2, q=2)], 1e-3,
          tags=("matrix",))
def _det82(p, ctx):
    P, Q = p["p"], p["q"]
    params = mb.MatrixBallParams(p["theta"], P, Q)
    a, b, c = params.triple()
    sb, sc = it.spherical_params(Q, 2) if P == 1 else (b, c)
    out = {"triple": [a, b, c]}
    resid = abs(sb - b) + abs(sc - c)
    rng = np.random.default_rng(ctx.seed + 82)
    z = rng.normal(size=(P, Q)) + 1j * rng.normal(size=(P, Q))
    z *= 0.6 / np.linalg.norm(z, 2)
    zpt = mb.MatrixBallPoint(z)
    xs = mb.singular_x(zpt)
    at_zero = mb.kernel_L(params, zpt, mb.MatrixBallPoint(np.zeros((P, Q))))
    direct = mb.lambda_det(params, xs)
    resid = max(resid, abs(at_zero - direct) / abs(direct))
    if P == 1:
        xi = tb.xi_eval(0, a, b, c, float(xs[0]))
        resid = max(resid, abs(direct - xi) / abs(xi))
    else:
        swapped = mb.lambda_det(params, xs[::-1])
        resid = max(resid, abs(direct + swapped) / abs(direct))
        # derivative route for Xi_1
        xi = np.array([[tb.xi_eval(0, a, b, c, float(x)), tb.xi_formula(1, a, b, c, float(x))] for x in xs])
        other = complex(np.linalg.det(xi.T))
        out["derivative_route"] = other
        resid = max(resid, abs(other - direct) / abs(direct))
    out["lambda_det"] = direct
    return float(resid), out


_T81 = {}


def _pairing_ratio(theta, t, rule):
    key = (theta, t, rule)
    if key not in _T81:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            lhs, rhs = mb.theorem81_check_p1q1(theta, t, rule)
        _T81[key] = (lhs, rhs)
    return _T81[key]


@register("THM81-P1Q1", "pairing of Lambda with its Mobius translate is proportional to (1-|u|^2)^{theta/2}",
          "invariance of the Lambda pairing on the disk",
          [dict(theta=6.0, t=t) for t in (0.2, 0.4, 0.8)], math.inf, mode="adjudicate", tags=("matrix",))
def _thm81(p, ctx):
    th, t = p["theta"], p["t"]
    l0, r0 = _pairing_ratio(th, 0.0, "half-theta")
    lhs, rhs = _pairing_ratio(th, t, "half-theta")
    base = (l0 / r0).real
    ratio = (lhs / rhs).real
    pl0, pr0 = _pairing_ratio(th, 0.0, "printed")
    pl, pr = _pairing_ratio(th, t, "printed")
    return float(abs(ratio / base - 1.0)), {"ratio": ratio, "ratio_identity": base, "lhs": lhs, "rhs": rhs,
                                            "printed_rule_variation": abs((pl / pr).real / (pl0 / pr0).real - 1.0),
                                            "pi_norm_sq": math.pi * bz.w_norm_sq(0, *mb.MatrixBallParams(th, 1, 1).triple())}


# ================================================================ running


def reset_caches():
    """Drop memoised evaluations so each check starts from the same state."""
    lf._FUNCTIONS.clear()
    lf._CALIBRATIONS.clear()
    mb._BASES.clear()
    mb._TABLES.clear()
    _T81.clear()


def get_entry(id):
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownCheckError("unknown check id %r" % id) from None


def _run_one(entry, point, tolerance, ctx):
    t0 = time.perf_counter()
    try:
        residual, details = entry.runner(dict(point), ctx)
        residual = float(residual)
        if entry.mode == "adjudicate":
            outcome = "adjudicated"
        else:
            outcome = "pass" if residual <= tolerance else "fail"
    except NonConvergenceError as exc:
        residual, details, outcome = math.nan, {"error": str(exc)}, "nonconvergence"
    return CheckReport(entry.id, dict(point), residual, tolerance, outcome, time.perf_counter() - t0,
                       entry.mode, _num(details))


def run_check(id, overrides=None, config=None):
    """Run one registry entry over its grid (or over a single overridden point)."""
    from .config import Config

    entry = get_entry(id)
    config = config or Config()
    ctx = config.context()
    grid = config.grid_for(id, entry.grid)
    if overrides:
        grid = [dict(grid[0], **overrides)]
    tol = config.tolerance_for(id, entry.tolerance)
    reset_caches()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return [_run_one(entry, pt, tol, ctx) for pt in grid]


def select(tags=None):
    """Registry ids in order, restricted to entries carrying any of ``tags``."""
    if not tags:
        return list(REGISTRY)
    tags = set(tags)
    return [k for k, e in REGISTRY.items() if e.tags & tags or k in tags]


def _run_id(args):
    id, config = args
    return run_check(id, config=config)


@dataclass
class SuiteResult:
    reports: list
    exit_code: int
    wall_time: float

    def summary(self):
        counts = {o: 0 for o in OUTCOMES}
        for r in self.reports:
            counts[r.outcome] += 1
        failing = sorted({r.id for r in self.reports if r.outcome in ("fail", "nonconvergence")})
        return {"checks": len({r.id for r in self.reports}), "reports": len(self.reports), "outcomes": counts,
                "failing": failing, "exit_code": self.exit_code, "wall_time": round(self.wall_time, 3)}


def exit_code_for(reports):
    if any(r.outcome == "fail" for r in reports):
        return 1
    if any(r.outcome == "nonconvergence" for r in reports):
        return 3
    return 0


def run_suite(tags=None, config=None, ids=None, progress=None):
    """Run the selected checks; reports come back in registry order."""
    from .config import Config

    config = config or Config()
    chosen = list(ids) if ids is not None else select(tags)
    for id in chosen:
        get_entry(id)
    t0 = time.perf_counter()
    reports = []
    if config.workers > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for id, reps in zip(chosen, pool.map(_run_id, [(id, config) for id in chosen])):
                reports.extend(reps)
                if progress:
                    progress(id, reps)
    else:
        for id in chosen:
            reps = run_check(id, config=config)
            reports.extend(reps)
            if progress:
                progress(id, reps)
    return SuiteResult(reports, exit_code_for(reports), time.perf_counter() - t0)


CSV_FIELDS = ("id", "point", "residual", "tolerance", "outcome", "mode", "details")


def report_row(r: CheckReport):
    """CSV row: floats in round-trip repr, structured fields as sorted JSON."""
    return {
        "id": r.id,
        "point": json.dumps(r.point, sort_keys=True),
        "residual": repr(float(r.residual)),
        "tolerance": repr(float(r.tolerance)),
        "outcome": r.outcome,
        "mode": r.mode,
        "details": json.dumps(r.details, sort_keys=True),
    }
