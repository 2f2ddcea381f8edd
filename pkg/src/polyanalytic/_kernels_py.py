"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def eval_matrix(C, shift, points):
    points = np.asarray(points, dtype=np.complex128)
    u = points - shift
    zb = np.conj(points)
    acc = np.zeros_like(points)
    # overflow is reported by callers through finiteness checks, as in the compiled path
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(C.shape[0] - 1, -1, -1):
            inner = np.zeros_like(points)
            for k in range(C.shape[1] - 1, -1, -1):
                inner = inner * u + C[j, k]
            acc = acc * zb + inner
    return acc


def extreme_abs(C, shift, points, want_max):
    if len(points) == 0:
        raise ValueError("empty point set")
    mags = np.abs(eval_matrix(C, shift, points))
    i = int(np.argmax(mags) if want_max else np.argmin(mags))
    return i, float(mags[i])


def conv2(A, B, max_rows, max_cols):
    rows = A.shape[0] + B.shape[0] - 1
    cols = A.shape[1] + B.shape[1] - 1
    if 0 <= max_rows < rows:
        rows = max_rows
    if 0 <= max_cols < cols:
        cols = max_cols
    out = np.zeros((max(rows, 1), max(cols, 1)), dtype=np.complex128)
    if rows <= 0 or cols <= 0:
        return out
    for j in range(min(A.shape[0], rows)):
        for k in range(min(B.shape[0], rows - j)):
            out[j + k] += np.convolve(A[j], B[k])[:cols]
    return out


def series_reciprocal(c):
    c = np.asarray(c, dtype=np.complex128)
    n = len(c)
    r = np.zeros(n, dtype=np.complex128)
    r[0] = 1.0 / c[0]
    for k in range(1, n):
        r[k] = -np.dot(c[1:k + 1], r[k - 1::-1]) / c[0]
    return r
