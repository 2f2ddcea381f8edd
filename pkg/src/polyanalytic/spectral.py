"""Inverses, resolvents and spectra in PA_q(K), plus the two-variable lift.

For f = sum_j a_j zbar^j, the class lambda - f is invertible exactly when
lambda - a_0 is invertible in A_1(K). The inverse h = sum_j c_j zbar^j is
then produced by the triangular recursion

    c_0 = (lambda - a_0)^{-1},
    c_j = (lambda - a_0)^{-1} * sum_{i=1..j} a_i c_{j-i},

computed here with every c_j a truncated Taylor series about the region's
centroid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from . import kernels
from .algebra import PolyElement, QuotientElement
from .errors import InputError, NotInvertibleError, NumericalError, TaylorDomainError
from .region import Region, SamplingConfig, min_modulus, sup_norm
from .series import DEFAULT_CAP, TaylorSeries, tail_bound

VERIFY_POINTS = 50


def margin_floor(lam) -> float:
    return 1e-6 * (1.0 + abs(complex(lam)))


@dataclass(frozen=True)
class Invertibility:
    invertible: bool
    margin: float

    def __bool__(self):
        return self.invertible


@dataclass(frozen=True)
class ResolventResult:
    inverse: QuotientElement
    residual: float
    lam: complex
    margin: float
    tail: float


@dataclass(frozen=True)
class SpectrumEstimate:
    points: np.ndarray
    bound_radius: float
    sample_n: int

    def hausdorff_to(self, other) -> float:
        return hausdorff(self.points, other)


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two finite point sets in the plane."""
    A = np.column_stack([np.real(a), np.imag(a)])
    B = np.column_stack([np.real(b), np.imag(b)])
    return max(directed_hausdorff(A, B)[0], directed_hausdorff(B, A)[0])


def _as_quotient(f) -> QuotientElement:
    if not isinstance(f, QuotientElement):
        raise InputError("expected a QuotientElement (use truncate_to_order first)")
    return f


def is_invertible(f: QuotientElement, region: Region,
                  cfg: SamplingConfig = SamplingConfig()) -> Invertibility:
    """Invertible iff a_0 stays away from zero on the region (sampled)."""
    f = _as_quotient(f)
    est = min_modulus(f.component(0), 0j, region, cfg)
    return Invertibility(est.value > margin_floor(0), est.value)


def verification_points(region: Region, count: int = VERIFY_POINTS) -> np.ndarray:
    pts = region.sample(8)
    idx = np.unique(np.linspace(0, len(pts) - 1, count).round().astype(int))
    return pts[idx]


def _component_values(M, shift, pts):
    return np.stack([kernels.eval_matrix(row.reshape(1, -1), shift, pts) for row in M])


def diamond_residual(g: PolyElement, h: PolyElement, q: int, pts) -> float:
    """max |(g diamond_q h)(z) - 1| over pts, built from pointwise component values.

    Working from values instead of the truncated coefficient product keeps the
    series truncation error visible.
    """
    G = _component_values(g.matrix, g.center if g.center is not None else 0j, pts)
    H = _component_values(h.matrix, h.center if h.center is not None else 0j, pts)
    zb = np.conj(pts)
    total = np.zeros(len(pts), dtype=np.complex128)
    for ell in range(q - 1, -1, -1):
        s = np.zeros(len(pts), dtype=np.complex128)
        for i in range(min(ell, G.shape[0] - 1) + 1):
            j = ell - i
            if j < H.shape[0]:
                s += G[i] * H[j]
        total = total * zb + s
    return float(np.max(np.abs(total - 1.0)))


def _recursion(T, pivot, sign, q, cap):
    """Rows c_0..c_{q-1}: c_0 = 1/pivot, c_j = sign * c_0 * sum_{i>=1} T[i] c_{j-i}."""
    r = kernels.series_reciprocal(pivot)
    C = np.zeros((q, cap + 1), dtype=np.complex128)
    C[0] = r
    for j in range(1, q):
        acc = np.zeros((1, cap + 1), dtype=np.complex128)
        for i in range(1, min(j, T.shape[0] - 1) + 1):
            acc += kernels.conv2(T[i:i + 1], C[j - i:j - i + 1], 1, cap + 1)
        C[j] = sign * kernels.conv2(r.reshape(1, -1), acc, 1, cap + 1)[0]
    return C


def _finish(f, C, region, g, lam, margin, cap):
    center, radius = region.centroid, region.circumradius
    inverse = QuotientElement(f.order_bound, PolyElement.from_matrix(C, center, radius))
    residual = diamond_residual(g, inverse.rep, f.order_bound, verification_points(region))
    if not math.isfinite(residual) or not np.all(np.isfinite(C)):
        raise NumericalError("inverse series produced non-finite values")
    tail = max(tail_bound(TaylorSeries(center, row), radius) for row in C)
    return ResolventResult(inverse, residual, complex(lam), margin, tail)


def resolvent(f: QuotientElement, lam, region: Region, D: int = DEFAULT_CAP,
              cfg: SamplingConfig = SamplingConfig()) -> ResolventResult:
    """(lam - f)^{-1} in PA_q(K), components as Taylor series of cap D."""
    f = _as_quotient(f)
    lam = complex(lam)
    margin = min_modulus(f.component(0), lam, region, cfg).value
    if margin <= margin_floor(lam):
        raise NotInvertibleError(
            f"lambda={lam} lies within {margin:.3g} of a_0(K)", margin=margin)
    center = region.centroid
    T = f.rep.as_taylor(center, D).matrix
    pivot = -T[0].copy()
    pivot[0] += lam
    C = _recursion(T, pivot, +1.0, f.order_bound, D)
    g = (PolyElement.constant(lam) - f.rep)
    return _finish(f, C, region, g, lam, margin, D)


def invert(f: QuotientElement, region: Region, D: int = DEFAULT_CAP,
           cfg: SamplingConfig = SamplingConfig()) -> ResolventResult:
    """f^{-1} with f diamond f^{-1} = 1, via the recursion with a_0^{-1} as pivot."""
    f = _as_quotient(f)
    inv = is_invertible(f, region, cfg)
    if not inv:
        raise NotInvertibleError(f"a_0 comes within {inv.margin:.3g} of zero on the region",
                                 margin=inv.margin)
    T = f.rep.as_taylor(region.centroid, D).matrix
    C = _recursion(T, T[0], -1.0, f.order_bound, D)
    return _finish(f, C, region, f.rep, 0j, inv.margin, D)


def spectrum(f: QuotientElement, region: Region, n: int = 200) -> SpectrumEstimate:
    """Sampled image a_0(K) and the radius bound ||a_0||_K = ||F(., 0)||_K."""
    f = _as_quotient(f)
    if n < 2:
        raise InputError("n must be at least 2")
    a0 = f.component(0)
    pts = region.sample(n)
    values = np.asarray(a0(pts))
    bound = sup_norm(a0, region, SamplingConfig(grid_n=n)).value
    return SpectrumEstimate(values, bound, n)


@dataclass(frozen=True)
class TwoVarLift:
    """F(z, w) = sum_j a_j(z) w^j; agrees with f on the graph w = conj(z)."""

    element: PolyElement

    @property
    def components(self):
        return self.element.components

    def __call__(self, z, w):
        return lift_eval(self, z, w)


def lift(f) -> TwoVarLift:
    if isinstance(f, QuotientElement):
        f = f.rep
    return TwoVarLift(f)


def lift_eval(F: TwoVarLift, z, w):
    e = F.element
    z_arr = np.asarray(z, dtype=np.complex128)
    w_arr = np.broadcast_to(np.asarray(w, dtype=np.complex128), z_arr.shape)
    if e.center is not None and math.isfinite(e.radius):
        if np.any(np.abs(z_arr - e.center) > e.radius * (1 + 1e-12)):
            raise TaylorDomainError("z outside the taylor validity radius")
    shift = e.center if e.center is not None else 0j
    vals = _component_values(e.matrix, shift, z_arr.ravel())
    w_flat = w_arr.ravel()
    acc = np.zeros(z_arr.size, dtype=np.complex128)
    for j in range(vals.shape[0] - 1, -1, -1):
        acc = acc * w_flat + vals[j]
    if z_arr.ndim == 0:
        return complex(acc[0])
    return acc.reshape(z_arr.shape)
