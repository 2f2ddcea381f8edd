"""Elements of PA(K) and of the quotient algebras PA(K)/<zbar^q>.

An element is stored as a coefficient matrix ``C`` with
``f(z) = sum_j conj(z)^j a_j(z)`` and ``a_j(z) = sum_k C[j, k] u^k``, where
``u = z`` for polynomial components and ``u = z - center`` for truncated
Taylor components. Every element is either all-polynomial or all-Taylor
about one center; mixing converts the polynomial side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CenterMismatchError, InputError, OrderMismatchError, TaylorDomainError
from .series import recenter

TRIM_TOL = 1e-12

__all__ = [
    "AnalyticComponent", "PolyElement", "QuotientElement", "TRIM_TOL",
    "add", "full_mul", "diamond_mul", "diamond_pow", "truncate_to_order",
    "evaluate", "exact_order", "canonicalize", "poly_mul",
]


def _as_complex(value, name="value") -> complex:
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise InputError(f"{name} must be finite, got {value!r}")
    return c


def _canonical_matrix(M, taylor: bool, tol: float = TRIM_TOL) -> np.ndarray:
    M = np.array(M, dtype=np.complex128, ndmin=2, copy=True)
    cols = M.shape[1] if taylor else 1
    if M.size == 0:
        return np.zeros((1, cols), dtype=np.complex128)
    mags = np.abs(M)
    scale = float(mags.max())
    if scale == 0.0:
        return np.zeros((1, cols), dtype=np.complex128)
    cut = tol * scale
    big = mags > cut
    live_rows = np.flatnonzero(big.any(axis=1))
    M = M[: live_rows[-1] + 1]
    big = big[: live_rows[-1] + 1]
    if not taylor:
        for j in range(M.shape[0]):
            idx = np.flatnonzero(big[j])
            M[j, (idx[-1] + 1 if idx.size else 0):] = 0
        live_cols = np.flatnonzero((M != 0).any(axis=0))
        M = M[:, : live_cols[-1] + 1]
    return M


@dataclass(frozen=True)
class AnalyticComponent:
    """One analytic coefficient a_j: a polynomial in z or a Taylor series about ``center``."""

    coeffs: tuple
    kind: str = "polynomial"
    center: complex = 0j
    degree_cap: int | None = None

    def __call__(self, z):
        shift = self.center if self.kind == "taylor" else 0j
        M = np.array(self.coeffs or (0j,), dtype=np.complex128).reshape(1, -1)
        out = kernels.eval_matrix(M, shift, z)
        return complex(out[0]) if np.ndim(z) == 0 else out

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else 0

    def is_zero(self) -> bool:
        return not any(c != 0 for c in self.coeffs)


class PolyElement:
    """An element sum_j a_j(z) conj(z)^j of PA(K).

    Build polynomial elements from nested lists, ``PolyElement([[1, 1], [0, 0, 1]])``
    being ``1 + z + z^2 zbar``, or from the ``z``/``zbar``/``constant`` helpers.
    Instances are immutable and canonical: trailing coefficients below
    ``TRIM_TOL`` times the largest modulus are dropped.
    """

    __slots__ = ("_m", "_center", "_radius")

    def __init__(self, components=((0j,),), *, center=None, radius=math.inf):
        rows = [np.atleast_1d(np.asarray(getattr(c, "coeffs", c), dtype=np.complex128))
                for c in components]
        if not rows:
            rows = [np.zeros(1, dtype=np.complex128)]
        width = max(len(r) for r in rows)
        M = np.zeros((len(rows), max(width, 1)), dtype=np.complex128)
        for j, r in enumerate(rows):
            M[j, : len(r)] = r
        self._init(M, center, radius)

    def _init(self, M, center, radius):
        if not np.all(np.isfinite(M)):
            raise InputError("coefficients must be finite")
        if center is not None:
            center = _as_complex(center, "center")
            if not radius > 0:
                raise InputError("taylor validity radius must be positive")
        m = _canonical_matrix(M, taylor=center is not None)
        m.setflags(write=False)
        self._m = m
        self._center = center
        self._radius = float(radius) if center is not None else math.inf

    @classmethod
    def from_matrix(cls, M, center=None, radius=math.inf) -> "PolyElement":
        obj = cls.__new__(cls)
        obj._init(np.array(M, dtype=np.complex128, ndmin=2), center, radius)
        return obj

    @classmethod
    def constant(cls, c) -> "PolyElement":
        return cls.from_matrix([[_as_complex(c)]])

    @classmethod
    def monomial(cls, zbar_power: int, z_power: int = 0, coeff=1.0) -> "PolyElement":
        M = np.zeros((zbar_power + 1, z_power + 1), dtype=np.complex128)
        M[zbar_power, z_power] = _as_complex(coeff)
        return cls.from_matrix(M)

    @classmethod
    def z(cls) -> "PolyElement":
        return cls.monomial(0, 1)

    @classmethod
    def zbar(cls) -> "PolyElement":
        return cls.monomial(1, 0)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def kind(self) -> str:
        return "polynomial" if self._center is None else "taylor"

    @property
    def center(self):
        return self._center

    @property
    def radius(self) -> float:
        return self._radius

    @property
    def degree_cap(self):
        return None if self._center is None else self._m.shape[1] - 1

    @property
    def components(self) -> tuple:
        if self._center is None:
            return tuple(AnalyticComponent(tuple(np.trim_zeros(row, "b").tolist()) or (0j,))
                         for row in self._m)
        cap = self._m.shape[1] - 1
        return tuple(AnalyticComponent(tuple(row.tolist()), "taylor", self._center, cap)
                     for row in self._m)

    def component(self, j: int) -> AnalyticComponent:
        comps = self.components
        if j < len(comps):
            return comps[j]
        if self._center is None:
            return AnalyticComponent((0j,))
        cap = self._m.shape[1] - 1
        return AnalyticComponent((0j,) * (cap + 1), "taylor", self._center, cap)

    def is_zero(self) -> bool:
        return not self._m.any()

    def with_matrix(self, M) -> "PolyElement":
        return PolyElement.from_matrix(M, self._center, self._radius)

    def as_taylor(self, center, cap, radius=math.inf) -> "PolyElement":
        """The same element with every component re-expanded about ``center``."""
        center = _as_complex(center, "center")
        if self._center is not None:
            if self._center != center:
                raise CenterMismatchError(f"taylor centers differ: {self._center} vs {center}")
            M = self._m
            if M.shape[1] > cap + 1:
                M = M[:, : cap + 1]
            elif M.shape[1] < cap + 1:
                M = np.pad(M, ((0, 0), (0, cap + 1 - M.shape[1])))
            return PolyElement.from_matrix(M, center, min(radius, self._radius))
        M = np.array([recenter(row, center, cap) for row in self._m])
        return PolyElement.from_matrix(M, center, radius)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __neg__(self):
        return self.with_matrix(-self._m)

    def __sub__(self, other):
        return add(self, -_coerce(other, self))

    def __rsub__(self, other):
        return add(_coerce(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, PolyElement):
            return full_mul(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.with_matrix(self._m * _as_complex(other))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative powers are not polynomial")
        result, base = PolyElement.constant(1.0), self
        while n:
            if n & 1:
                result = full_mul(result, base)
            n >>= 1
            if n:
                base = full_mul(base, base)
        return result

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            return NotImplemented
        return (self._center == other._center and self._m.shape == other._m.shape
                and bool(np.all(self._m == other._m)))

    def __hash__(self):
        return hash((self._center, self._m.shape, self._m.tobytes()))

    def __repr__(self):
        if self._center is None:
            rows = [np.trim_zeros(r, "b").tolist() or [0j] for r in self._m]
            return f"PolyElement({rows!r})"
        return (f"PolyElement(<taylor center={self._center!r} cap={self.degree_cap} "
                f"components={self._m.shape[0]}>)")


def _coerce(value, like: PolyElement) -> PolyElement:
    if isinstance(value, PolyElement):
        return value
    if isinstance(value, QuotientElement):
        return value.rep
    return PolyElement.constant(value)


def _unify(f: PolyElement, g: PolyElement):
    """Bring f and g to a common kind; returns (F, G, center, radius, cap)."""
    if f.center is None and g.center is None:
        return f.matrix, g.matrix, None, math.inf, None
    if f.center is not None and g.center is not None and f.center != g.center:
        raise CenterMismatchError(f"taylor centers differ: {f.center} vs {g.center}")
    center = f.center if f.center is not None else g.center
    caps = [e.degree_cap for e in (f, g) if e.center is not None]
    cap = min(caps)
    radius = min(f.radius, g.radius)
    return (f.as_taylor(center, cap).matrix, g.as_taylor(center, cap).matrix,
            center, radius, cap)


def canonicalize(f: PolyElement) -> PolyElement:
    return PolyElement.from_matrix(f.matrix, f.center, f.radius)


def add(f: PolyElement, g: PolyElement) -> PolyElement:
    F, G, center, radius, _ = _unify(f, g)
    rows = max(F.shape[0], G.shape[0])
    cols = max(F.shape[1], G.shape[1])
    S = np.zeros((rows, cols), dtype=np.complex128)
    S[: F.shape[0], : F.shape[1]] += F
    S[: G.shape[0], : G.shape[1]] += G
    return PolyElement.from_matrix(S, center, radius)


def _ordered(F, G):
    # fixed operand order makes every product bitwise commutative
    if (G.shape, G.tobytes()) < (F.shape, F.tobytes()):
        return G, F
    return F, G


def _product_matrix(f: PolyElement, g: PolyElement, max_rows: int) -> PolyElement:
    F, G, center, radius, cap = _unify(f, g)
    max_cols = -1 if cap is None else cap + 1
    F, G = _ordered(F, G)
    return PolyElement.from_matrix(kernels.conv2(F, G, max_rows, max_cols), center, radius)


def poly_mul(a, b) -> np.ndarray:
    """Product of two polynomials in z given as coefficient vectors (the A_1 product)."""
    prod = full_mul(PolyElement([a]), PolyElement([b]))
    return np.array(prod.matrix[0])


def full_mul(f: PolyElement, g: PolyElement) -> PolyElement:
    """Pointwise product in PA(K): the zbar^l coefficient is sum_{j+k=l} a_j b_k."""
    return _product_matrix(f, g, -1)


def truncate_to_order(f: PolyElement, q: int) -> "QuotientElement":
    if q < 1:
        raise InputError("order bound q must be at least 1")
    return QuotientElement(q, f)


def evaluate(f, z):
    """Value of f at z (scalar or array); Horner in zbar around Horner in z."""
    if isinstance(f, QuotientElement):
        f = f.rep
    points = np.asarray(z, dtype=np.complex128)
    if f.center is not None and math.isfinite(f.radius):
        dist = np.abs(points - f.center)
        if np.any(dist > f.radius * (1 + 1e-12)):
            raise TaylorDomainError(
                f"point outside the taylor validity radius {f.radius} about {f.center}")
    shift = f.center if f.center is not None else 0j
    out = kernels.eval_matrix(f.matrix, shift, points.ravel())
    if points.ndim == 0:
        return complex(out[0])
    return out.reshape(points.shape)


def exact_order(f, tol: float = TRIM_TOL):
    """Largest j with a_j not identically zero (relative to ``tol``), or None for 0."""
    if isinstance(f, QuotientElement):
        f = f.rep
    mags = np.abs(f.matrix)
    scale = float(mags.max()) if mags.size else 0.0
    if scale == 0.0:
        return None
    rows = np.flatnonzero((mags > tol * scale).any(axis=1))
    return int(rows[-1])


@dataclass(frozen=True)
class QuotientElement:
    """A class of PA(K)/<zbar^q>, represented by its components a_0..a_{q-1}."""

    order_bound: int
    rep: PolyElement

    def __post_init__(self):
        q = int(self.order_bound)
        if q < 1:
            raise InputError("order bound q must be at least 1")
        object.__setattr__(self, "order_bound", q)
        rep = self.rep
        if not isinstance(rep, PolyElement):
            rep = PolyElement(rep)
        if rep.matrix.shape[0] > q:
            rep = rep.with_matrix(rep.matrix[:q])
        object.__setattr__(self, "rep", rep)

    @property
    def q(self) -> int:
        return self.order_bound

    @classmethod
    def one(cls, q: int) -> "QuotientElement":
        return cls(q, PolyElement.constant(1.0))

    def component(self, j: int) -> AnalyticComponent:
        return self.rep.component(j)

    def __call__(self, z):
        return evaluate(self.rep, z)

    def _other(self, other):
        if isinstance(other, QuotientElement):
            if other.order_bound != self.order_bound:
                raise OrderMismatchError(
                    f"order bounds differ: {self.order_bound} vs {other.order_bound}")
            return other
        return QuotientElement(self.order_bound, _coerce(other, self.rep))

    def __add__(self, other):
        return QuotientElement(self.order_bound, add(self.rep, self._other(other).rep))

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement(self.order_bound, -self.rep)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return QuotientElement(self.order_bound, self.rep * other)
        return diamond_mul(self, self._other(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return diamond_pow(self, n)


def diamond_mul(f: QuotientElement, g: QuotientElement) -> QuotientElement:
    """Product in PA(K)/<zbar^q>: the full product with every zbar^j, j >= q, dropped."""
    if f.order_bound != g.order_bound:
        raise OrderMismatchError(f"order bounds differ: {f.order_bound} vs {g.order_bound}")
    q = f.order_bound
    return QuotientElement(q, _product_matrix(f.rep, g.rep, q))


def diamond_pow(f: QuotientElement, n: int) -> QuotientElement:
    if n < 0:
        raise InputError("exponent must be nonnegative")
    result = QuotientElement.one(f.order_bound)
    base = f
    while n:
        if n & 1:
            result = diamond_mul(result, base)
        n >>= 1
        if n:
            base = diamond_mul(base, base)
    return result
