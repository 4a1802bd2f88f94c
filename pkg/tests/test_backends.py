import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from indexhyp import _core, _pykernels

backends = _core.backends()
compiled = backends.get("compiled")
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled core not built")


def test_python_backend_always_present():
    assert backends["python"] is _pykernels
    assert _core.BACKEND in ("python", "compiled")


@needs_compiled
def test_compiled_backend_is_default():
    if not os.environ.get("INDEXHYP_PURE"):
        assert _core.BACKEND == "compiled"


@needs_compiled
@given(st.floats(0.05, 40), st.floats(-60, 60))
def test_loggamma_parity(re, im):
    a = compiled.loggamma(complex(re, im))
    b = _pykernels.loggamma(complex(re, im))
    assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


@needs_compiled
@given(st.floats(0.1, 4), st.floats(0.1, 4), st.floats(0, 30), st.floats(0, 200))
def test_hyp2f1_parity(b, c, s, x):
    p = _pykernels.hyp2f1_line_scalar(b, c, s, x)
    q = compiled.hyp2f1_line_scalar(b, c, s, x)
    assert abs(p - q) <= 1e-11 * max(1.0, abs(p))


@needs_compiled
def test_vector_parity():
    xs = np.geomspace(1e-4, 1e4, 200)
    p = _pykernels.hyp2f1_line_vec(1.3, 0.7, 2.5, xs)
    q = compiled.hyp2f1_line_vec(1.3, 0.7, 2.5, xs)
    np.testing.assert_allclose(q, p, rtol=1e-11, atol=1e-300)
    w = np.array([0.5 + 1j, 3 - 7j, 25 + 0.1j])
    np.testing.assert_allclose(compiled.loggamma_vec(w), _pykernels.loggamma_vec(w), rtol=1e-14)


@pytest.mark.parametrize("mod", list(backends.values()), ids=list(backends))
def test_pole_raises(mod):
    with pytest.raises(mod.KernelError):
        mod.loggamma(-2.0)


def test_pure_env_selects_python():
    env = dict(os.environ, INDEXHYP_PURE="1")
    code = "import indexhyp; print(indexhyp.BACKEND); print(indexhyp.hyp2f1_line(1, 1, 0.5, 2.0))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    lines = out.stdout.split()
    assert lines[0] == "python"
    from indexhyp import hyp2f1_line

    assert complex(lines[1]) == pytest.approx(complex(hyp2f1_line(1, 1, 0.5, 2.0)), rel=1e-12)
