"""Matrix balls B_{p,q} = U(p,q)/U(p)xU(q): Mobius action, the determinant
Lambda function built from the bireflected basis, its two-point kernel, and
the disk (p = q = 1) check of the pairing with translates.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from . import quadrature as quad
from .errors import DomainError
from .translate_bireflected import BireflectedBasis

PARAM_RULES = ("half-theta", "printed")


@dataclass(frozen=True)
class MatrixBallPoint:
    z: np.ndarray

    def __post_init__(self):
        z = np.atleast_2d(np.asarray(self.z, dtype=complex))
        object.__setattr__(self, "z", z)
        p, q = z.shape
        if p > q:
            raise ValueError("need p <= q (pass the transpose)")
        if np.linalg.norm(z, 2) >= 1.0:
            raise DomainError("operator norm must be < 1")

    @property
    def p(self):
        return self.z.shape[0]

    @property
    def q(self):
        return self.z.shape[1]


@dataclass(frozen=True)
class MatrixBallParams:
    """theta and the ball shape; ``triple()`` gives (a, b, c) of the basis.

    b = c = (q-p+1)/2.  The 'half-theta' rule takes a = theta/2 - (q+p-1)/2,
    the scaling under which the disk pairing is proportional to
    (1-|u|^2)^{theta/2}; 'printed' takes a = theta - (q+p-1)/2.
    """

    theta: float
    p: int
    q: int
    rule: str = "half-theta"

    def __post_init__(self):
        if not (1 <= self.p <= self.q):
            raise ValueError("need 1 <= p <= q")
        if self.rule not in PARAM_RULES:
            raise ValueError("rule must be one of %r" % (PARAM_RULES,))
        if self.triple()[0] <= 0:
            raise ValueError("theta too small: a must be positive")

    def triple(self):
        shift = (self.q + self.p - 1) / 2.0
        a = (self.theta / 2.0 if self.rule == "half-theta" else self.theta) - shift
        b = (self.q - self.p + 1) / 2.0
        return a, b, b


def singular_x(zpt: MatrixBallPoint):
    """x_j = lambda_j^2 / (1 - lambda_j^2) over the singular values, descending."""
    lam = np.linalg.svd(zpt.z, compute_uv=False)
    if np.any(lam >= 1):
        raise DomainError("singular value >= 1")
    return lam ** 2 / (1.0 - lam ** 2)


# ---------------------------------------------------------------- the group


def _form(p, q):
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)]))


def pseudo_unitary_defect(g, p, q):
    J = _form(p, q)
    return float(np.max(np.abs(g @ J @ g.conj().T - J)))


def random_pseudo_unitary(p, q, rng, scale=0.5):
    """Cayley image (1+X)(1-X)^{-1} of a random X with X* J + J X = 0."""
    def skew(n):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        return scale * (m - m.conj().T) / 2

    B = scale * (rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q)))
    X = np.block([[skew(p), B], [B.conj().T, skew(q)]])
    I = np.eye(p + q)
    return (I + X) @ np.linalg.inv(I - X)


def boost(t, p=1, q=1):
    """cosh t / sinh t blocks pairing the first p coordinates of each side."""
    g = np.eye(p + q, dtype=complex)
    ch, sh = math.cosh(t), math.sinh(t)
    for i in range(p):
        g[i, i] = g[p + i, p + i] = ch
        g[i, p + i] = g[p + i, i] = sh
    return g


def mobius(g, zpt: MatrixBallPoint, tol=1e-10):
    """z -> (a + z c)^{-1} (b + z d)."""
    p, q = zpt.p, zpt.q
    g = np.asarray(g, dtype=complex)
    if g.shape != (p + q, p + q):
        raise ValueError("g must be (p+q) x (p+q)")
    if pseudo_unitary_defect(g, p, q) > tol * max(1.0, float(np.max(np.abs(g))) ** 2):
        raise ValueError("g is not pseudo-unitary")
    a, b = g[:p, :p], g[:p, p:]
    c, d = g[p:, :p], g[p:, p:]
    left = a + zpt.z @ c
    if np.linalg.cond(left) > 1e12:
        raise np.linalg.LinAlgError("a + z c is singular")
    return MatrixBallPoint(np.linalg.solve(left, b + zpt.z @ d))


def group_law_residual(g, h, zpt):
    lhs = mobius(h, mobius(g, zpt)).z
    rhs = mobius(g @ h, zpt).z
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------- Lambda^theta


_BASES = {}


def _basis(params: MatrixBallParams):
    a, b, c = params.triple()
    key = (params.p, a, b, c)
    if key not in _BASES:
        _BASES[key] = BireflectedBasis(params.p - 1, a, b, c)
    return _BASES[key]


def lambda_det(params: MatrixBallParams, xs):
    """det [Xi_{i}(x_j)], i, j < p."""
    xs = np.asarray(xs, dtype=float)
    if xs.shape != (params.p,):
        raise ValueError("need p coordinates")
    if params.p > 3:
        raise ValueError("p <= 3 supported")
    if params.p > 1:
        gaps = np.abs(xs[:, None] - xs[None, :])[np.triu_indices(params.p, 1)]
        if np.min(gaps) < 1e-6 * (1 + np.max(np.abs(xs))):
            warnings.warn("nearly coincident coordinates: determinant is ill-conditioned", RuntimeWarning, stacklevel=2)
    M = _basis(params).values(xs).T  # rows: Xi_i, columns: x_j
    return complex(np.linalg.det(M))


def _inv_sqrt_psd(h):
    w, v = np.linalg.eigh(h)
    return (v / np.sqrt(w)) @ v.conj().T


def cross_matrix(zpt: MatrixBallPoint, upt: MatrixBallPoint):
    """(1 - zz*)^{-1/2} (1 - zu*) (1 - uu*)^{-1/2}."""
    z, u = zpt.z, upt.z
    I = np.eye(zpt.p)
    return _inv_sqrt_psd(I - z @ z.conj().T) @ (I - z @ u.conj().T) @ _inv_sqrt_psd(I - u @ u.conj().T)


def kernel_coordinates(zpt, upt):
    """x_j = lambda_j^2 - 1 over the singular values of the cross matrix.

    All lambda_j are >= 1; this reproduces |z-u|^2/((1-|z|^2)(1-|u|^2)) on
    the disk, singular_x(z) at u = 0 and zero at z = u.
    """
    lam = np.linalg.svd(cross_matrix(zpt, upt), compute_uv=False)
    return np.maximum(lam ** 2 - 1.0, 0.0)


def kernel_L(params: MatrixBallParams, zpt, upt):
    return lambda_det(params, kernel_coordinates(zpt, upt))


# ---------------------------------------------------------------- the disk


def _disk_x(tau, t, phi):
    # x of the Mobius image of tanh(tau) e^{i phi} under the boost by t
    return 0.5 * (np.cosh(2 * tau) * math.cosh(2 * t) + np.sinh(2 * tau) * math.sinh(2 * t) * np.cos(phi) - 1.0)


class RadialTable:
    """Xi_0(sh^2 tau) on a tau grid, splined after scaling by ch^{2b} tau."""

    def __init__(self, a, b, c, tau_max=20.0, step=0.05):
        self.b = b
        self.tau = np.arange(0.0, tau_max + step / 2, step)
        basis = BireflectedBasis(0, a, b, c)
        vals = basis.values(np.sinh(self.tau) ** 2)[:, 0]
        scaled = vals * np.cosh(self.tau) ** (2 * b)
        self._spline = CubicSpline(self.tau, scaled, bc_type=((1, 0.0), "not-a-knot"))
        self.tau_max = tau_max

    def __call__(self, x):
        tau = np.arcsinh(np.sqrt(np.asarray(x, dtype=float)))
        if np.any(tau > self.tau_max):
            raise ValueError("point beyond the tabulated range")
        return self._spline(tau) / np.cosh(tau) ** (2 * self.b)


_TABLES = {}


def _radial_table(a, b, c, tau_max):
    key = (a, b, c, tau_max)
    if key not in _TABLES:
        _TABLES[key] = RadialTable(a, b, c, tau_max)
    return _TABLES[key]


def theorem81_check_p1q1(theta, t, rule="half-theta", tau_max=16.0, spec=quad.DEFAULT_SPEC_2D):
    """(lhs, rhs) for g the boost by t on the unit disk.

    lhs = int Lambda(z) conj(Lambda(z^[g])) dm(z) in hyperbolic polar
    coordinates, z = tanh(tau) e^{i phi}, dm = sh(tau) ch(tau) dtau dphi;
    rhs = (1 - tanh^2 t)^{theta/2}.
    """
    params = MatrixBallParams(theta, 1, 1, rule)
    a, b, c = params.triple()
    if a + b < 1.0:
        warnings.warn("small theta: the pairing converges slowly", RuntimeWarning, stacklevel=2)
    table = _radial_table(a, b, c, tau_max + t + 1.0)
    inner_spec = spec.with_(rel_tol=spec.rel_tol * 0.1, abs_tol=spec.abs_tol * 0.1)

    def outer(tau):
        first = table(np.sinh(tau) ** 2)

        def inner(phi):
            return np.conj(table(_disk_x(tau[None, :], t, phi[:, None])))

        r = quad.adaptive(inner, np.linspace(0.0, math.pi, 5), inner_spec.rel_tol, inner_spec.abs_tol)
        return 2.0 * first * np.asarray(r.value) * np.sinh(tau) * np.cosh(tau)

    res = quad.adaptive(outer, np.linspace(0.0, tau_max, int(2 * tau_max) + 1), spec.rel_tol, spec.abs_tol)
    u = math.tanh(t)
    return complex(res.value), (1.0 - u * u) ** (theta / 2.0)


def invariant_measure_residual(t, center=0.3 + 0.2j, width=0.6):
    """|int f(z^[g]) dm - int f dm| / int f dm for a bump f on the disk."""
    g = boost(t)

    def dist2(z, w):
        # sh^2 of the hyperbolic half-distance
        return np.abs(z - w) ** 2 / ((1 - np.abs(z) ** 2) * (1 - np.abs(w) ** 2))

    def f(z):
        d = dist2(z, center) / width ** 2
        out = np.zeros(np.shape(d))
        inside = d < 1
        out[inside] = np.exp(-1.0 / (1.0 - d[inside]))
        return out

    def moved(z):
        a, b, c, d = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
        return f((b + z * d) / (a + z * c))

    spec = quad.QuadratureSpec(rel_tol=1e-7, abs_tol=1e-12)
    base = quad.integrate_2d(f, "disk", "invariant", spec, t_max=6.0).value
    mov = quad.integrate_2d(moved, "disk", "invariant", spec, t_max=6.0).value
    return abs(mov - base) / abs(base)
