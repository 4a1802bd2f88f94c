"""Select the kernel backend at import time.

The compiled extension is preferred; ``INDEXHYP_PURE=1`` forces the
pure-Python kernels (used by the benchmark and the backend-parity tests).
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("INDEXHYP_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "compiled"

loggamma = _impl.loggamma
loggamma_vec = _impl.loggamma_vec
hyp2f1_line_scalar = _impl.hyp2f1_line_scalar
hyp2f1_line_vec = _impl.hyp2f1_line_vec
KernelError = _impl.KernelError


def backends():
    """Return every importable backend as a name -> module mapping."""
    found = {"python": _pykernels}
    try:
        from . import _kernels

        found["compiled"] = _kernels
    except ImportError:
        pass
    return found
