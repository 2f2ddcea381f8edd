"""Backend selection for the numeric inner loops.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded. Setting ``POLYANALYTIC_PURE=1`` forces the fallback.
"""
import os

import numpy as np

if os.environ.get("POLYANALYTIC_PURE", "") not in ("", "0"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

__all__ = ["BACKEND", "eval_matrix", "extreme_abs", "conv2", "series_reciprocal"]


def _mat(C):
    return np.ascontiguousarray(C, dtype=np.complex128)


def _vec(v):
    return np.ascontiguousarray(np.atleast_1d(v), dtype=np.complex128)


def eval_matrix(C, shift, points):
    return _impl.eval_matrix(_mat(C), complex(shift), _vec(points))


def extreme_abs(C, shift, points, want_max=True):
    return _impl.extreme_abs(_mat(C), complex(shift), _vec(points), bool(want_max))


def conv2(A, B, max_rows=-1, max_cols=-1):
    return _impl.conv2(_mat(A), _mat(B), int(max_rows), int(max_cols))


def series_reciprocal(c):
    return _impl.series_reciprocal(_vec(c))
