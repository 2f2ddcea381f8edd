"""Regular compact sets, sampling, and sup-norm / seminorm estimation.

All estimates are sample based: a deterministic grid is scanned for the
extreme modulus, then optionally polished by a compass search that stays
inside the region. Nothing here is a certified bound.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from . import kernels
from .algebra import AnalyticComponent, PolyElement, QuotientElement
from .errors import InputError, RegionSyntaxError, TaylorDomainError

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class SamplingConfig:
    grid_n: int = 200
    refine: bool = True
    refine_iters: int = 60

    def __post_init__(self):
        if self.grid_n < 2:
            raise InputError("grid_n must be at least 2")
        if self.refine_iters < 0:
            raise InputError("refine_iters must be nonnegative")


@dataclass(frozen=True)
class NormEstimate:
    value: float
    argmax: complex
    grid_n: int
    refined: bool
    upper_bound: bool = False
    witness: PolyElement | None = None


class Region:
    """Base class; subclasses are closed discs and axis-aligned rectangles."""

    def contains(self, z, tol=MEMBERSHIP_TOL):
        raise NotImplementedError

    def project(self, z) -> complex:
        raise NotImplementedError

    def sample(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def spacing(self, n: int) -> float:
        raise NotImplementedError

    @property
    def centroid(self) -> complex:
        raise NotImplementedError

    @property
    def circumradius(self) -> float:
        """Radius of the smallest disc about the centroid containing the region."""
        raise NotImplementedError

    @property
    def diameter(self) -> float:
        return 2.0 * self.circumradius


@dataclass(frozen=True)
class Disc(Region):
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InputError("disc radius must be positive and finite")
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise InputError("disc center must be finite")

    def contains(self, z, tol=MEMBERSHIP_TOL):
        return np.abs(np.asarray(z) - self.center) <= self.radius * (1 + tol)

    def project(self, z) -> complex:
        d = complex(z) - self.center
        r = abs(d)
        if r <= self.radius:
            return complex(z)
        return self.center + d * (self.radius / r)

    def sample(self, n: int) -> np.ndarray:
        """Center, n-1 area-uniform interior rings of n angles, and a 4n-point boundary ring.

        The grid for 2n contains the grid for n.
        """
        if n < 2:
            raise InputError("n must be at least 2")
        radii = self.radius * np.sqrt(np.arange(1, n) / n)
        angles = np.exp(2j * np.pi * np.arange(n) / n)
        rim = self.radius * np.exp(2j * np.pi * np.arange(4 * n) / (4 * n))
        pts = np.concatenate(([0j], np.outer(radii, angles).ravel(), rim))
        return self.center + pts

    def spacing(self, n: int) -> float:
        return self.radius / n

    @property
    def centroid(self) -> complex:
        return self.center

    @property
    def circumradius(self) -> float:
        return self.radius

    def __str__(self):
        return f"disc:{self.center.real!r},{self.center.imag!r},{self.radius!r}"


@dataclass(frozen=True)
class Rect(Region):
    corner_lo: complex
    corner_hi: complex

    def __post_init__(self):
        lo, hi = complex(self.corner_lo), complex(self.corner_hi)
        object.__setattr__(self, "corner_lo", lo)
        object.__setattr__(self, "corner_hi", hi)
        if not all(map(math.isfinite, (lo.real, lo.imag, hi.real, hi.imag))):
            raise InputError("rectangle corners must be finite")
        if not (lo.real < hi.real and lo.imag < hi.imag):
            raise InputError("rectangle needs corner_lo < corner_hi componentwise")

    def contains(self, z, tol=MEMBERSHIP_TOL):
        z = np.asarray(z)
        ex = tol * max(1.0, self.diameter)
        lo, hi = self.corner_lo, self.corner_hi
        return ((z.real >= lo.real - ex) & (z.real <= hi.real + ex)
                & (z.imag >= lo.imag - ex) & (z.imag <= hi.imag + ex))

    def project(self, z) -> complex:
        z = complex(z)
        lo, hi = self.corner_lo, self.corner_hi
        return complex(min(max(z.real, lo.real), hi.real), min(max(z.imag, lo.imag), hi.imag))

    def sample(self, n: int) -> np.ndarray:
        """n x n grid including all four edges (nested for n -> 2n - 1)."""
        if n < 2:
            raise InputError("n must be at least 2")
        xs = np.linspace(self.corner_lo.real, self.corner_hi.real, n)
        ys = np.linspace(self.corner_lo.imag, self.corner_hi.imag, n)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        return (X + 1j * Y).ravel()

    def spacing(self, n: int) -> float:
        d = self.corner_hi - self.corner_lo
        return min(d.real, d.imag) / (n - 1)

    @property
    def centroid(self) -> complex:
        return 0.5 * (self.corner_lo + self.corner_hi)

    @property
    def circumradius(self) -> float:
        return 0.5 * abs(self.corner_hi - self.corner_lo)

    def __str__(self):
        lo, hi = self.corner_lo, self.corner_hi
        return f"rect:{lo.real!r},{lo.imag!r},{hi.real!r},{hi.imag!r}"


_NUM = r"\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"


def parse_region(text: str) -> Region:
    """Parse ``disc:<cx>,<cy>,<r>`` or ``rect:<x0>,<y0>,<x1>,<y1>``."""
    text = text.strip()
    m = re.fullmatch(r"disc:" + ",".join([_NUM] * 3), text)
    if m:
        cx, cy, r = map(float, m.groups())
        return Disc(complex(cx, cy), r)
    m = re.fullmatch(r"rect:" + ",".join([_NUM] * 4), text)
    if m:
        x0, y0, x1, y1 = map(float, m.groups())
        return Rect(complex(x0, y0), complex(x1, y1))
    head = text.split(":", 1)[0]
    offset = 0 if head not in ("disc", "rect") else len(head) + 1
    raise RegionSyntaxError(f"cannot parse region {text!r}", offset=offset)


def sample(region: Region, n: int) -> np.ndarray:
    return region.sample(n)


def _matrix_of(f):
    """(matrix, shift, element-or-None) for anything with analytic components."""
    if isinstance(f, QuotientElement):
        f = f.rep
    if isinstance(f, PolyElement):
        return f.matrix, (f.center if f.center is not None else 0j), f
    if isinstance(f, AnalyticComponent):
        M = np.array(f.coeffs or (0j,), dtype=np.complex128).reshape(1, -1)
        return M, (f.center if f.kind == "taylor" else 0j), None
    raise InputError(f"cannot take the norm of {type(f).__name__}")


def _check_taylor_domain(f, region: Region):
    if isinstance(f, QuotientElement):
        f = f.rep
    if isinstance(f, PolyElement) and f.center is not None and math.isfinite(f.radius):
        reach = abs(region.centroid - f.center) + region.circumradius
        if reach > f.radius * (1 + 1e-12):
            raise TaylorDomainError(
                f"region reaches {reach:.6g} from the series center; validity radius is {f.radius:.6g}")


def _compass(M, shift, region: Region, z0: complex, v0: float, step: float, iters: int,
             want_max: bool):
    """Coordinate pattern search on |value|, projected onto the region."""
    directions = np.array([1, -1, 1j, -1j])
    best_z, best_v = z0, v0
    for _ in range(iters):
        cand = np.array([region.project(best_z + step * d) for d in directions])
        mags = np.abs(kernels.eval_matrix(M, shift, cand))
        i = int(np.argmax(mags) if want_max else np.argmin(mags))
        if (want_max and mags[i] > best_v) or (not want_max and mags[i] < best_v):
            best_z, best_v = complex(cand[i]), float(mags[i])
        else:
            step *= 0.5
    return best_z, best_v


def _extreme(M, shift, region: Region, cfg: SamplingConfig, want_max: bool) -> NormEstimate:
    pts = region.sample(cfg.grid_n)
    i, v = kernels.extreme_abs(M, shift, pts, want_max)
    z = complex(pts[i])
    if cfg.refine and cfg.refine_iters > 0:
        z, v = _compass(M, shift, region, z, v, region.spacing(cfg.grid_n),
                        cfg.refine_iters, want_max)
    v = float(abs(kernels.eval_matrix(M, shift, np.array([z]))[0]))
    return NormEstimate(v, z, cfg.grid_n, cfg.refine)


def sup_norm(f, region: Region, cfg: SamplingConfig = SamplingConfig()) -> NormEstimate:
    """Estimate max |f| over the region; never below the grid maximum."""
    _check_taylor_domain(f, region)
    M, shift, _ = _matrix_of(f)
    return _extreme(M, shift, region, cfg, want_max=True)


def min_modulus(a, shift, region: Region, cfg: SamplingConfig = SamplingConfig()) -> NormEstimate:
    """Estimate min |shift - a(z)| over the region for an analytic component ``a``."""
    _check_taylor_domain(a, region)
    M, center, _ = _matrix_of(a)
    M = -np.array(M[:1], dtype=np.complex128)
    M[0, 0] += complex(shift)
    return _extreme(M, center, region, cfg, want_max=False)


def _h_basis(q: int, h_order: int, h_degree: int):
    return [(q + j, k) for j in range(h_order) for k in range(h_degree + 1)]


def _perturbation(basis, coeffs) -> PolyElement:
    rows = max(j for j, _ in basis) + 1
    cols = max(k for _, k in basis) + 1
    M = np.zeros((rows, cols), dtype=np.complex128)
    for (j, k), c in zip(basis, coeffs):
        M[j, k] = c
    return PolyElement.from_matrix(M)


def quotient_seminorm(f, region: Region, h_degree: int = 6, h_order: int = 2,
                      cfg: SamplingConfig = SamplingConfig(), *, q: int | None = None,
                      starts: int = 4, seed: int = 0, opt_grid: int = 24) -> NormEstimate:
    """Upper bound for inf ||f + zbar^q h||_K over polyanalytic polynomials h.

    The search family is h with zbar-order below ``h_order`` and z-degree at
    most ``h_degree``. Candidates come from derivative-free local searches
    (Powell) on a coarse grid, one from h = 0, one from the seed that cancels
    the representative's zbar^q tail, and ``starts`` random ones; each is then
    re-measured with ``sup_norm`` at ``cfg`` and the smallest wins. The
    unperturbed representative is always a candidate, so the result never
    exceeds ``sup_norm(f)``. ``witness`` holds the winning perturbation
    zbar^q h.
    """
    if h_degree < 0 or h_order < 0:
        raise InputError("h_degree and h_order must be nonnegative")
    if isinstance(f, QuotientElement):
        if q is not None and q != f.order_bound:
            raise InputError("q disagrees with the element's order bound")
        q, rep = f.order_bound, f.rep
    else:
        if q is None:
            raise InputError("q is required when passing a representative")
        rep = f
    if q < 1:
        raise InputError("q must be at least 1")
    _check_taylor_domain(rep, region)

    base = sup_norm(rep, region, cfg)
    if base.value == 0.0 or h_order == 0:
        return NormEstimate(base.value, base.argmax, cfg.grid_n, cfg.refine, True,
                            PolyElement())

    basis = _h_basis(q, h_order, h_degree)
    pts = region.sample(min(cfg.grid_n, opt_grid))
    fvals = np.asarray(rep(pts))
    B = np.stack([np.conj(pts) ** j * pts ** k for j, k in basis], axis=1)
    P = len(basis)

    def objective(x):
        return float(np.max(np.abs(fvals + B @ (x[:P] + 1j * x[P:]))))

    seeds = [np.zeros(2 * P)]
    tail = np.zeros(P, dtype=np.complex128)
    R = rep.matrix
    if rep.center is None:
        for i, (j, k) in enumerate(basis):
            if j < R.shape[0] and k < R.shape[1]:
                tail[i] = -R[j, k]
    if np.any(tail):
        seeds.append(np.concatenate([tail.real, tail.imag]))
    rng = np.random.default_rng(seed)
    col_scale = np.max(np.abs(B), axis=0)
    col_scale[col_scale == 0] = 1.0
    for _ in range(starts):
        w = rng.standard_normal(P) + 1j * rng.standard_normal(P)
        w *= base.value / (col_scale * math.sqrt(P))
        seeds.append(np.concatenate([w.real, w.imag]))

    opts = {"xtol": 1e-6, "ftol": 1e-9, "maxfev": 20000}
    best, best_h = base, PolyElement()
    for x0 in seeds:
        x = x0 if objective(x0) == 0.0 else optimize.minimize(
            objective, x0, method="Powell", options=opts).x
        h = _perturbation(basis, x[:P] + 1j * x[P:])
        est = sup_norm(rep + h, region, cfg)
        if est.value < best.value:
            best, best_h = est, h
    return NormEstimate(best.value, best.argmax, cfg.grid_n, cfg.refine, True, best_h)
