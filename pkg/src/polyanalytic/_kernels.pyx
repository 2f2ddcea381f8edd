# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Every function here has a numpy twin in ``_kernels_py`` with the same
signature; ``polyanalytic.kernels`` picks one at import time.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport hypot

cnp.import_array()


cdef inline double complex _horner2(const double complex[:, ::1] C,
                                    double complex shift,
                                    double complex z) noexcept nogil:
    # real arithmetic throughout: C99 complex multiply goes through a slow
    # inf/nan-checking helper, and the inputs here are always finite
    cdef Py_ssize_t rows = C.shape[0], cols = C.shape[1]
    cdef Py_ssize_t j, k
    cdef double ur = z.real - shift.real, ui = z.imag - shift.imag
    cdef double zr = z.real, zi = -z.imag
    cdef double ar = 0.0, ai = 0.0, ir, ii, t
    for j in range(rows - 1, -1, -1):
        ir = 0.0
        ii = 0.0
        for k in range(cols - 1, -1, -1):
            t = ir * ur - ii * ui + C[j, k].real
            ii = ir * ui + ii * ur + C[j, k].imag
            ir = t
        t = ar * zr - ai * zi + ir
        ai = ar * zi + ai * zr + ii
        ar = t
    return ar + 1j * ai


cdef inline double _cabs(double complex w) noexcept nogil:
    return hypot(w.real, w.imag)


def eval_matrix(const double complex[:, ::1] C, double complex shift,
                const double complex[::1] points):
    """Values of sum_j conj(z)^j sum_k C[j, k] (z - shift)^k at each point."""
    cdef Py_ssize_t n = points.shape[0], i
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _horner2(C, shift, points[i])
    return out


def extreme_abs(const double complex[:, ::1] C, double complex shift,
                const double complex[::1] points, bint want_max):
    """(index, |value|) of the largest (or smallest) modulus over points.

    Ties resolve to the lowest index, so the result is order independent
    for a fixed point list.
    """
    cdef Py_ssize_t n = points.shape[0], i, best_i = 0
    cdef double best, v
    if n == 0:
        raise ValueError("empty point set")
    best = _cabs(_horner2(C, shift, points[0]))
    with nogil:
        for i in range(1, n):
            v = _cabs(_horner2(C, shift, points[i]))
            if (want_max and v > best) or (not want_max and v < best):
                best = v
                best_i = i
    return int(best_i), float(best)


def conv2(const double complex[:, ::1] A, const double complex[:, ::1] B,
          Py_ssize_t max_rows, Py_ssize_t max_cols):
    """Two-dimensional Cauchy product truncated to max_rows x max_cols.

    Negative limits mean "no truncation" on that axis.
    """
    cdef Py_ssize_t ra = A.shape[0], ca = A.shape[1]
    cdef Py_ssize_t rb = B.shape[0], cb = B.shape[1]
    cdef Py_ssize_t rows = ra + rb - 1, cols = ca + cb - 1
    cdef Py_ssize_t j, k, p, r, jmax, pmax
    if max_rows >= 0 and max_rows < rows:
        rows = max_rows
    if max_cols >= 0 and max_cols < cols:
        cols = max_cols
    out = np.zeros((max(rows, 1), max(cols, 1)), dtype=np.complex128)
    if rows <= 0 or cols <= 0:
        return out
    cdef double complex[:, ::1] o = out
    cdef double complex a
    with nogil:
        for j in range(ra):
            if j >= rows:
                break
            for k in range(rb):
                if j + k >= rows:
                    break
                for p in range(ca):
                    if p >= cols:
                        break
                    a = A[j, p]
                    for r in range(cb):
                        if p + r >= cols:
                            break
                        o[j + k, p + r] = o[j + k, p + r] + a * B[k, r]
    return out


def series_reciprocal(const double complex[::1] c):
    """Coefficients of 1/s through the length of c (c[0] must be nonzero)."""
    cdef Py_ssize_t n = c.shape[0], k, i
    out = np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] r = out
    cdef double complex c0 = c[0], acc
    r[0] = 1.0 / c0
    with nogil:
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                acc = acc + c[i] * r[k - i]
            r[k] = -acc / c0
    return out
