"""Difference operators in the spectral variable acting by unit imaginary shifts.

Each operator takes ``geval``, a callable accepting complex spectral points;
shifts g(s +- i) are obtained by evaluating it off the real line (for a
transform this means forward() with complex s, never extrapolation).
"""

from __future__ import annotations

import numpy as np

POLE_EPS = 1e-4
_POLE_TOL = 1e-8


def _guarded(op):
    def wrapped(geval, *params, s):
        s = complex(s)
        # the shared denominators (2is)(1 +- 2is) vanish at s = 0 and s = +-i/2
        if min(abs(s), abs(s - 0.5j), abs(s + 0.5j)) < _POLE_TOL:
            return 0.5 * (op(geval, *params, s + POLE_EPS) + op(geval, *params, s - POLE_EPS))
        return op(geval, *params, s)

    return wrapped


def _shift_combo(geval, s, up, down, const=0.0):
    g0 = complex(geval(s))
    gp = complex(geval(s + 1j))
    gm = complex(geval(s - 1j))
    return up * (gp - g0) + down * (gm - g0) - const * g0


def _p(geval, b, c, s):
    up = (b - 1j * s) * (c - 1j * s) / ((-2j * s) * (1 - 2j * s))
    down = (b + 1j * s) * (c + 1j * s) / ((2j * s) * (1 + 2j * s))
    return _shift_combo(geval, s, up, down)


def _h_coeffs(b, c, s):
    up = (b - 1j * s) * (b + 1 - 1j * s) * (c - 1j * s) / ((-2j * s) * (1 - 2j * s))
    down = (b + 1j * s) * (b + 1 + 1j * s) * (c + 1j * s) / ((2j * s) * (1 + 2j * s))
    return up, down


def _h(geval, b, c, s):
    # the shifted differences enter with a minus sign; checked against the
    # contiguous identity for x(x+1)F' + ((2b+1)x + b + c)F
    up, down = _h_coeffs(b, c, s)
    return _shift_combo(geval, s, -up, -down, b + c)


def _h_printed(geval, b, c, s):
    up, down = _h_coeffs(b, c, s)
    return _shift_combo(geval, s, up, down, b + c)


def coeff_B(a, b, c, s):
    return (a - 1j * s) * (b - 1j * s) * (c - 1j * s) / ((-2j * s) * (1 - 2j * s))


def coeff_D(a, b, c, s):
    return (a + 1j * s) * (b + 1j * s) * (c + 1j * s) / ((2j * s) * (1 + 2j * s))


def _l(geval, a, b, c, s):
    B = coeff_B(a, b, c, s)
    D = coeff_D(a, b, c, s)
    return B * complex(geval(s + 1j)) - (B + D) * complex(geval(s)) + D * complex(geval(s - 1j))


_P = _guarded(_p)
_H = _guarded(_h)
_H_PRINTED = _guarded(_h_printed)
_L = _guarded(_l)


def apply_P(geval, b, c, s):
    """Transform-side image of multiplication by x."""
    return _P(geval, b, c, s=s)


def apply_H(geval, b, c, s, printed=False):
    """Transform-side image of x(x+1) d/dx.

    ``printed=True`` uses the opposite sign on the shifted differences; that
    variant does not reproduce the transform of x(x+1)f' and is kept only for
    the comparison in the verification registry.
    """
    return (_H_PRINTED if printed else _H)(geval, b, c, s=s)


def apply_L(geval, a, b, c, s):
    """B(s) y(s+i) - (B(s)+D(s)) y(s) + D(s) y(s-i)."""
    return _L(geval, a, b, c, s=s)
