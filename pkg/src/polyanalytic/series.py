"""Truncated Taylor series about a fixed center.

A series of cap ``D`` stores the coefficients of ``(z - center)^k`` for
``k = 0..D``. Products are truncated at ``D``, which is exact arithmetic in
the ring of series modulo ``(z - center)^(D+1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CenterMismatchError, InputError, NotInvertibleError

DEFAULT_CAP = 64
INVERTIBILITY_FLOOR = 1e-9


def _finite_array(values, name="coefficients"):
    arr = np.array(values, dtype=np.complex128).ravel()
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    center: complex
    coeffs: np.ndarray

    def __post_init__(self):
        c = complex(self.center)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise InputError("center must be finite")
        object.__setattr__(self, "center", c)
        coeffs = _finite_array(self.coeffs)
        if coeffs.size == 0:
            raise InputError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def cap(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def unit(cls, center=0j, cap=DEFAULT_CAP):
        c = np.zeros(cap + 1, dtype=np.complex128)
        c[0] = 1.0
        return cls(center, c)

    def __call__(self, z):
        M = self.coeffs.reshape(1, -1)
        out = kernels.eval_matrix(M, self.center, z)
        return complex(out[0]) if np.ndim(z) == 0 else out

    def __eq__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return self.center == other.center and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"TaylorSeries(center={self.center!r}, cap={self.cap})"


def recenter(coeffs, center, cap):
    """Coefficients in powers of (z - center) of the polynomial sum coeffs[k] z^k.

    Uses the binomial expansion c_m = sum_{k>=m} C(k, m) p_k center^(k-m), so
    the result is exact up to rounding. Entries past the polynomial degree
    are zero.
    """
    p = np.asarray(coeffs, dtype=np.complex128).ravel()
    nz = np.flatnonzero(p)
    degree = int(nz[-1]) if nz.size else 0
    if cap < degree:
        raise InputError(f"series cap {cap} is below polynomial degree {degree}")
    a = complex(center)
    out = np.zeros(cap + 1, dtype=np.complex128)
    for m in range(degree + 1):
        acc = 0j
        for k in range(m, degree + 1):
            acc += math.comb(k, m) * p[k] * a ** (k - m)
        out[m] = acc
    return out


def series_from_polynomial(p, center, cap=DEFAULT_CAP) -> TaylorSeries:
    """Re-expand a polynomial component (or plain coefficient list) about ``center``."""
    kind = getattr(p, "kind", "polynomial")
    if kind != "polynomial":
        raise InputError("series_from_polynomial needs a polynomial-kind component")
    coeffs = getattr(p, "coeffs", p)
    return TaylorSeries(center, recenter(coeffs, center, cap))


def _check_compatible(s: TaylorSeries, t: TaylorSeries):
    if s.center != t.center:
        raise CenterMismatchError(f"series centers differ: {s.center} vs {t.center}")
    if s.cap != t.cap:
        raise InputError(f"series caps differ: {s.cap} vs {t.cap}")


def series_mul(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    _check_compatible(s, t)
    out = kernels.conv2(s.coeffs.reshape(1, -1), t.coeffs.reshape(1, -1), 1, s.cap + 1)
    return TaylorSeries(s.center, out[0])


def series_add(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    _check_compatible(s, t)
    return TaylorSeries(s.center, s.coeffs + t.coeffs)


def series_reciprocal(s: TaylorSeries, floor=INVERTIBILITY_FLOOR) -> TaylorSeries:
    """1/s through degree ``s.cap``.

    Raises NotInvertibleError when the constant term is below
    ``floor * max|coeffs|``.
    """
    scale = float(np.max(np.abs(s.coeffs)))
    c0 = abs(s.coeffs[0])
    if scale == 0.0 or c0 <= floor * scale:
        raise NotInvertibleError(
            f"constant term {c0:.3g} is below the invertibility floor", margin=c0)
    return TaylorSeries(s.center, kernels.series_reciprocal(s.coeffs))


def tail_bound(s: TaylorSeries, r: float) -> float:
    """Ratio-test estimate of |sum_{k>D} c_k (z - center)^k| for |z - center| <= r.

    Heuristic only: the decay rate is read off the last two nonzero
    coefficients. Returns 0 when the top coefficient vanishes and inf when
    the estimated ratio is at least one.
    """
    if r <= 0:
        raise InputError("radius must be positive")
    c = np.abs(s.coeffs)
    D = s.cap
    if c[D] == 0.0:
        return 0.0
    prev = np.flatnonzero(c[:D])
    if prev.size == 0:
        return math.inf
    i = int(prev[-1])
    rho = (c[D] / c[i]) ** (1.0 / (D - i)) * r
    if rho >= 1.0:
        return math.inf
    return float(c[D] * r ** D * rho / (1.0 - rho))
