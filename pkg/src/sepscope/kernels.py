"""Backend selection for the bipartite index kernels.

The compiled extension ``sepscope._kernels`` is used when it was built;
otherwise the numpy implementation in ``sepscope._kernels_py`` is used.
Setting ``SEPSCOPE_PURE_PYTHON=1`` forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("SEPSCOPE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"


def _c(m):
    return np.ascontiguousarray(m, dtype=np.complex128)


def partial_trace(m, da, db, over):
    return _impl.partial_trace(_c(m), da, db, over)


def partial_transpose(m, da, db, over):
    return _impl.partial_transpose(_c(m), da, db, over)


def gamma_lift(m, da, db, mode):
    return _impl.gamma_lift(_c(m), da, db, mode)


def regroup4(m, d1, d2, d3, d4):
    return _impl.regroup4(_c(m), d1, d2, d3, d4)
