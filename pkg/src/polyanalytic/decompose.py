"""Recovering analytic components from data.

Two routes: a least-squares fit in the monomials z^k conj(z)^j, and peeling,
which reads off the top component with repeated Wirtinger derivatives
(d/dzbar = (d/dx + i d/dy) / 2, central differences) and recurses on the
remainder.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import PolyElement, QuotientElement
from .errors import InputError, OrderMismatchError, RankDeficientError
from .region import Region, SamplingConfig, sup_norm

RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SampleSet:
    z: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=np.complex128).ravel()
        v = np.array(self.values, dtype=np.complex128).ravel()
        if z.size == 0:
            raise InputError("a sample set needs at least one point")
        if z.shape != v.shape:
            raise InputError("points and values differ in length")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(v))):
            raise InputError("samples must be finite")
        if np.unique(z).size != z.size:
            raise InputError("sample points must be distinct")
        z.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.z.size

    @classmethod
    def from_function(cls, f, points) -> "SampleSet":
        points = np.asarray(points, dtype=np.complex128)
        return cls(points, _call_vectorized(f, points))

    @classmethod
    def from_csv(cls, path) -> "SampleSet":
        """Read lines ``re(z),im(z),re(f),im(f)``; a non-numeric first line is a header."""
        rows = []
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh)):
                if not row or all(not c.strip() for c in row):
                    continue
                try:
                    vals = [float(c) for c in row]
                except ValueError:
                    if lineno == 0:
                        continue
                    raise InputError(f"line {lineno + 1}: non-numeric field") from None
                if len(vals) != 4:
                    raise InputError(f"line {lineno + 1}: expected 4 fields, got {len(vals)}")
                rows.append(vals)
        if not rows:
            raise InputError("no samples in file")
        a = np.array(rows)
        return cls(a[:, 0] + 1j * a[:, 1], a[:, 2] + 1j * a[:, 3])

    def to_csv(self, path, header=True):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            if header:
                w.writerow(["re_z", "im_z", "re_f", "im_f"])
            for z, v in zip(self.z, self.values):
                w.writerow([repr(float(x)) for x in (z.real, z.imag, v.real, v.imag)])


@dataclass(frozen=True)
class FitResult:
    element: QuotientElement
    residual: float
    singular_values: tuple = field(repr=False, default=())


def _call_vectorized(f, points):
    try:
        out = np.asarray(f(points), dtype=np.complex128)
        if out.shape == points.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(complex(p))) for p in points.ravel()]).reshape(points.shape)


def design_matrix(z, q: int, deg: int) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    zb = np.conj(z)
    return np.stack([zb ** j * z ** k for j in range(q) for k in range(deg + 1)], axis=1)


def fit_components(samples: SampleSet, q: int, deg: int) -> FitResult:
    """Least-squares fit of sum_{j<q, k<=deg} c_jk z^k zbar^j to the samples.

    Columns are scaled to unit norm before an SVD-based solve. A smallest
    singular value below ``RANK_TOL`` times the largest raises
    RankDeficientError; nothing is regularized.
    """
    if q < 1 or deg < 0:
        raise InputError("need q >= 1 and deg >= 0")
    ncols = q * (deg + 1)
    if len(samples) < ncols:
        raise InputError(f"{len(samples)} samples cannot determine {ncols} coefficients")
    A = design_matrix(samples.z, q, deg)
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    As = A / scale
    x, _, rank, sv = np.linalg.lstsq(As, samples.values, rcond=None)
    if sv[-1] <= RANK_TOL * sv[0]:
        raise RankDeficientError(
            f"design matrix is rank deficient (sigma_min/sigma_max = {sv[-1] / sv[0]:.3g}); "
            "check q, deg and the sample placement")
    coeffs = (x / scale).reshape(q, deg + 1)
    fitted = A @ (x / scale)
    residual = float(np.max(np.abs(fitted - samples.values)))
    elem = QuotientElement(q, PolyElement.from_matrix(coeffs))
    return FitResult(elem, residual, tuple(float(s) for s in sv))


def wirtinger_dzbar(f, h: float):
    """Central-difference d/dzbar of a vectorized callable."""
    def df(z):
        z = np.asarray(z, dtype=np.complex128)
        dx = (_call_vectorized(f, z + h) - _call_vectorized(f, z - h)) / (2 * h)
        dy = (_call_vectorized(f, z + 1j * h) - _call_vectorized(f, z - 1j * h)) / (2 * h)
        return 0.5 * (dx + 1j * dy)
    return df


def _dzbar_power(f, m: int, h: float, z, richardson: bool):
    def once(step):
        g = f
        for _ in range(m):
            g = wirtinger_dzbar(g, step)
        return _call_vectorized(g, z)
    if m == 0:
        return _call_vectorized(f, z)
    coarse = once(h)
    if not richardson:
        return coarse
    return (4.0 * once(h / 2) - coarse) / 3.0


def interior_points(region: Region, margin: float, n: int = 12) -> np.ndarray:
    pts = region.sample(n)
    keep = np.ones(pts.size, dtype=bool)
    for d in (1, -1, 1j, -1j):
        keep &= region.contains(pts + margin * d, tol=0.0)
    return pts[keep]


def peel_components(f, region: Region, q: int, h: float | None = None, deg: int = 6,
                    *, n: int = 12, richardson: bool = False) -> QuotientElement:
    """Components of a q-analytic black box, top one first.

    a_{q-1} = d^{q-1}f/dzbar^{q-1} / (q-1)!, fitted as a degree-``deg``
    polynomial; then the same is done to f - zbar^{q-1} a_{q-1}, and so on.
    Central differences make the error O(h^2) for smooth data.
    """
    if q < 1:
        raise InputError("q must be at least 1")
    if h is None:
        h = 1e-3 * region.diameter
    if not (h > 0) or h > region.diameter / 10:
        raise InputError(f"step h={h} must lie in (0, diameter/10]")
    pts = interior_points(region, q * h, n)
    if pts.size < deg + 1:
        raise InputError("too few interior sample points for the requested degree")

    rows = [None] * q
    remainder = f
    for j in range(q - 1, -1, -1):
        vals = _dzbar_power(remainder, j, h, pts, richardson) / math.factorial(j)
        fit = fit_components(SampleSet(pts, vals), 1, deg)
        a_j = fit.element.component(0)
        rows[j] = np.array(a_j.coeffs)

        def remainder(z, prev=remainder, a=a_j, j=j):
            z = np.asarray(z, dtype=np.complex128)
            return _call_vectorized(prev, z) - np.conj(z) ** j * a(z)

    width = max(len(r) for r in rows)
    M = np.zeros((q, width), dtype=np.complex128)
    for j, r in enumerate(rows):
        M[j, : len(r)] = r
    return QuotientElement(q, PolyElement.from_matrix(M))


@dataclass(frozen=True)
class ConvergenceReport:
    sup_dists: list
    component_dists: list
    ratios: list

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=0.0)


def convergence_check(seq, region: Region,
                      cfg: SamplingConfig = SamplingConfig()) -> ConvergenceReport:
    """Successive sup distances of a sequence and of each of its components.

    ratios[i] = max_k component_dists[i][k] / sup_dists[i]; bounded ratios
    mean that uniform Cauchy behaviour carries over to the components.
    """
    seq = list(seq)
    if not seq:
        return ConvergenceReport([], [], [])
    q = seq[0].order_bound
    kinds = {(e.rep.center is None) for e in seq}
    if any(e.order_bound != q for e in seq):
        raise OrderMismatchError("all elements must share one order bound")
    if len(kinds) > 1:
        raise InputError("all elements must share one component kind")
    sup_d, comp_d, ratios = [], [], []
    for a, b in zip(seq, seq[1:]):
        diff = b - a
        s = sup_norm(diff, region, cfg).value
        comps = [sup_norm(diff.component(k), region, cfg).value for k in range(q)]
        sup_d.append(s)
        comp_d.append(comps)
        top = max(comps)
        if s > 0:
            ratios.append(top / s)
        else:
            ratios.append(0.0 if top == 0 else math.inf)
    return ConvergenceReport(sup_d, comp_d, ratios)
