"""Scalar fields on R^n and differential forms built from them.

A *scalar field* is anything that maps a batch of points ``(m, n)`` to values
``(m,)`` and can optionally report an exact partial derivative::

    field(points)  -> ndarray (m,)
    field.partial(k) -> field or None     # k is 1-based

``partial`` returning ``None`` means no closed form is available; consumers
fall back to central finite differences with an explicit step.  A
*differential form* of degree l is a tuple of scalar fields indexed by the
lexicographic rank of the ordered multi-indices (see ``exterior``).

The exterior derivative reuses the interior-product table: the coefficient of
``dx_K`` in ``du`` is the signed sum of ``d(u_J)/dx_k`` over ways of removing
one index ``k`` from ``K``, which is exactly the transpose of contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Protocol, runtime_checkable

import numpy as np

from . import expressions as ex
from .errors import DegreeError, ExpressionError, InvalidInputError, OutOfDomainError
from .exterior import (CovectorValue, MultiIndex, _contraction_table, _star_table,
                       index_rank, multi_indices, num_components)

__all__ = [
    "ScalarField", "ConstantField", "ExprField", "CallableField", "BumpField",
    "RadialPowerField", "GridField", "DifferentialForm", "as_field",
    "codifferential", "evaluate", "check_analytic_partials",
]


@runtime_checkable
class ScalarField(Protocol):
    def __call__(self, points: np.ndarray) -> np.ndarray: ...

    def partial(self, k: int) -> Optional["ScalarField"]: ...


def _pts(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    return pts


@dataclass(frozen=True)
class ConstantField:
    value: float

    def __call__(self, points):
        return np.full(_pts(points).shape[0], float(self.value))

    def partial(self, k):
        return ConstantField(0.0)


class ExprField:
    """Field defined by an expression in variables x1..xn.

    Partials are exact: the expression is differentiated symbolically, so
    chains of ``partial`` calls never lose accuracy.
    """

    def __init__(self, source, dims: int):
        self.node = ex.parse(source) if isinstance(source, str) else source
        self.dims = dims
        allowed = {f"x{i}" for i in range(1, dims + 1)}
        extra = ex.free_variables(self.node) - allowed
        if extra:
            raise ExpressionError(
                f"unknown variables {sorted(extra)}; expected subset of x1..x{dims}")

    def __call__(self, points):
        pts = _pts(points)
        env = {f"x{i + 1}": pts[:, i] for i in range(self.dims)}
        out = ex.evaluate(self.node, env)
        return np.broadcast_to(np.asarray(out, dtype=np.float64), (pts.shape[0],)).copy()

    def partial(self, k):
        if not 1 <= k <= self.dims:
            raise InvalidInputError(f"axis {k} outside 1..{self.dims}")
        return ExprField(self.node.diff(f"x{k}"), self.dims)

    def __repr__(self):
        return f"ExprField({str(self.node)!r}, dims={self.dims})"


class CallableField:
    """Field wrapping a plain callable; exact partials are optional."""

    def __init__(self, fn: Callable, dims: int, partials=None):
        self.fn, self.dims, self._partials = fn, dims, partials

    def __call__(self, points):
        pts = _pts(points)
        return np.asarray(self.fn(pts), dtype=np.float64).reshape(pts.shape[0])

    def partial(self, k):
        if self._partials is None:
            return None
        return self._partials[k - 1]


class FDPartialField:
    """Central-difference partial of another field; .partial chains one level deeper."""

    def __init__(self, base, k: int, step: float):
        if not step > 0:
            raise InvalidInputError(f"finite-difference step must be positive, got {step}")
        self.base, self.k, self.step = base, k, step

    def __call__(self, points):
        pts = _pts(points)
        h = np.zeros(pts.shape[1])
        h[self.k - 1] = self.step
        return (self.base(pts + h) - self.base(pts - h)) / (2.0 * self.step)

    def partial(self, k):
        return FDPartialField(self, k, self.step)


class LinearCombinationField:
    """Signed sum of fields; partials distribute over the terms."""

    def __init__(self, terms):
        self.terms = [(float(c), f) for c, f in terms]

    def __call__(self, points):
        pts = _pts(points)
        out = np.zeros(pts.shape[0])
        for c, f in self.terms:
            out += c * f(pts)
        return out

    def partial(self, k):
        parts = []
        for c, f in self.terms:
            g = f.partial(k)
            if g is None:
                return None
            parts.append((c, g))
        return LinearCombinationField(parts)


class BumpField:
    """Smooth compactly supported mollifier exp(-1 / (1 - |z|^2)) on |z| < 1.

    ``z = (x - center) / radius``.  First and second partials are closed form;
    beyond that ``partial`` chains return ``None``.
    """

    def __init__(self, center, radius: float):
        self.center = np.asarray(center, dtype=np.float64).reshape(-1)
        if not radius > 0:
            raise InvalidInputError(f"bump radius must be positive, got {radius}")
        self.radius = float(radius)
        self.dims = self.center.size

    def _zw(self, pts):
        z = (pts - self.center) / self.radius
        w = np.sum(z * z, axis=1)
        return z, w

    def __call__(self, points):
        z, w = self._zw(_pts(points))
        out = np.zeros(w.shape)
        inside = w < 1.0
        out[inside] = np.exp(-1.0 / (1.0 - w[inside]))
        return out

    def partial(self, k):
        return _BumpGrad(self, k)


class _BumpGrad:
    def __init__(self, bump: BumpField, k: int):
        self.bump, self.k = bump, k

    def __call__(self, points):
        pts = _pts(points)
        z, w = self.bump._zw(pts)
        out = np.zeros(w.shape)
        inside = w < 1.0
        g = 1.0 - w[inside]
        out[inside] = (np.exp(-1.0 / g) / g ** 2) * (-2.0 * z[inside, self.k - 1]
                                                     / self.bump.radius)
        return out

    def partial(self, j):
        return _BumpHess(self.bump, self.k, j)


class _BumpHess:
    def __init__(self, bump: BumpField, k: int, j: int):
        self.bump, self.k, self.j = bump, k, j

    def __call__(self, points):
        pts = _pts(points)
        z, w = self.bump._zw(pts)
        out = np.zeros(w.shape)
        inside = w < 1.0
        g = 1.0 - w[inside]
        e = np.exp(-1.0 / g)
        zk = 2.0 * z[inside, self.k - 1] / self.bump.radius
        zj = 2.0 * z[inside, self.j - 1] / self.bump.radius
        term = (e / g ** 4 - 2.0 * e / g ** 3) * zk * zj
        if self.k == self.j:
            term -= (e / g ** 2) * (2.0 / self.bump.radius ** 2)
        out[inside] = term
        return out

    def partial(self, j):
        return None


class RadialPowerField:
    """|x - x0|^a; the gradient a r^(a-2) (x - x0) is closed form.

    For 1 < a < 2 the gradient is continuous but not differentiable at x0,
    making this the standard mildly rough test input.  The singular point is
    mapped to 0.
    """

    def __init__(self, center, exponent: float):
        self.center = np.asarray(center, dtype=np.float64).reshape(-1)
        self.exponent = float(exponent)
        self.dims = self.center.size

    def __call__(self, points):
        d = _pts(points) - self.center
        r2 = np.sum(d * d, axis=1)
        return r2 ** (self.exponent / 2.0)

    def partial(self, k):
        return _RadialPowerGrad(self, k)


class _RadialPowerGrad:
    def __init__(self, base: RadialPowerField, k: int):
        self.base, self.k = base, k

    def __call__(self, points):
        d = _pts(points) - self.base.center
        r2 = np.sum(d * d, axis=1)
        out = np.zeros(r2.shape)
        nz = r2 > 0
        a = self.base.exponent
        out[nz] = a * r2[nz] ** (a / 2.0 - 1.0) * d[nz, self.k - 1]
        return out

    def partial(self, k):
        return None


class GridField:
    """Cubic interpolant of samples on a uniform tensor grid over a box.

    Used to materialize expensive fields once and reuse them; queries slightly
    outside the grid extrapolate so finite-difference stencils at the boundary
    stay usable.  No exact partials.
    """

    def __init__(self, axes, values):
        from scipy.interpolate import RegularGridInterpolator
        self.axes = [np.asarray(a, dtype=np.float64) for a in axes]
        self.dims = len(self.axes)
        self._interp = RegularGridInterpolator(
            self.axes, np.asarray(values, dtype=np.float64),
            method="cubic", bounds_error=False, fill_value=None)

    def __call__(self, points):
        return self._interp(_pts(points))

    def partial(self, k):
        return None


def as_field(obj, dims: int) -> ScalarField:
    """Coerce numbers, expression strings, and callables into scalar fields."""
    if isinstance(obj, (int, float)):
        return ConstantField(float(obj))
    if isinstance(obj, str):
        return ExprField(obj, dims)
    if isinstance(obj, (ex.Num, ex.Var, ex.BinOp, ex.Call)):
        return ExprField(obj, dims)
    if callable(obj):
        if isinstance(obj, (ExprField, CallableField, BumpField, RadialPowerField,
                            ConstantField, GridField, LinearCombinationField,
                            FDPartialField)):
            return obj
        if hasattr(obj, "partial"):
            return obj
        return CallableField(obj, dims)
    raise InvalidInputError(f"cannot interpret {obj!r} as a scalar field")


@dataclass(frozen=True)
class DifferentialForm:
    """Degree-l form: one scalar field per ordered multi-index, rank order."""

    dims: int
    degree: int
    components: tuple

    def __post_init__(self):
        if not 0 <= self.degree <= self.dims:
            raise DegreeError(f"degree {self.degree} outside 0..{self.dims}")
        comps = tuple(as_field(c, self.dims) for c in self.components)
        if len(comps) != num_components(self.dims, self.degree):
            raise InvalidInputError(
                f"expected {num_components(self.dims, self.degree)} components, "
                f"got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_components(cls, dims: int, degree: int, entries: dict) -> "DifferentialForm":
        """Build from {index tuple: field-like}; omitted components are zero."""
        comps: list = [ConstantField(0.0)] * num_components(dims, degree)
        for key, val in entries.items():
            mi = key if isinstance(key, MultiIndex) else MultiIndex(dims, tuple(key))
            if mi.degree != degree:
                raise InvalidInputError(f"index {key} has degree {mi.degree}, expected {degree}")
            comps[index_rank(mi)] = as_field(val, dims)
        return cls(dims, degree, tuple(comps))

    @classmethod
    def scalar(cls, dims: int, field) -> "DifferentialForm":
        return cls(dims, 0, (as_field(field, dims),))

    def evaluate(self, points) -> np.ndarray:
        """Coefficient array of shape (num_components, m) at the given points."""
        pts = _pts(points)
        return np.stack([f(pts) for f in self.components], axis=0)

    def value_at(self, point) -> CovectorValue:
        vals = self.evaluate(np.asarray(point).reshape(1, -1))[:, 0]
        return CovectorValue(self.dims, self.degree, vals)

    def modulus_values(self, points) -> np.ndarray:
        """Pointwise Euclidean modulus at each point, shape (m,)."""
        coeffs = self.evaluate(points)
        return np.sqrt(np.sum(coeffs * coeffs, axis=0))

    def _partial_field(self, rank: int, axis: int, fd_step):
        f = self.components[rank]
        g = f.partial(axis)
        if g is not None:
            return g
        if fd_step is None:
            raise InvalidInputError(
                "some components lack exact partials; pass fd_step to "
                "differentiate by central finite differences")
        return FDPartialField(f, axis, fd_step)

    def d(self, fd_step: float | None = None) -> "DifferentialForm":
        """Exterior derivative.

        Exact partials are used whenever a component provides them; otherwise
        central differences with ``fd_step`` are substituted (an error if no
        step is given).
        """
        n, l = self.dims, self.degree
        if l == n:
            raise DegreeError(f"cannot take d of a top-degree ({n}) form")
        io, ii, ax, sg = _contraction_table(n, l + 1)
        terms: list[list] = [[] for _ in range(num_components(n, l + 1))]
        for idx in range(io.shape[0]):
            field = self._partial_field(int(io[idx]), int(ax[idx]) + 1, fd_step)
            terms[int(ii[idx])].append((float(sg[idx]), field))
        comps = tuple(LinearCombinationField(t) if t else ConstantField(0.0) for t in terms)
        return DifferentialForm(n, l + 1, comps)

    def __add__(self, other):
        self._check(other)
        comps = tuple(LinearCombinationField([(1.0, a), (1.0, b)])
                      for a, b in zip(self.components, other.components))
        return DifferentialForm(self.dims, self.degree, comps)

    def __sub__(self, other):
        self._check(other)
        comps = tuple(LinearCombinationField([(1.0, a), (-1.0, b)])
                      for a, b in zip(self.components, other.components))
        return DifferentialForm(self.dims, self.degree, comps)

    def __mul__(self, scalar):
        comps = tuple(LinearCombinationField([(float(scalar), f)]) for f in self.components)
        return DifferentialForm(self.dims, self.degree, comps)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def _check(self, other):
        if self.dims != other.dims or self.degree != other.degree:
            raise InvalidInputError("dimension or degree mismatch between forms")

    def star(self) -> "DifferentialForm":
        """Hodge dual: component fields permuted and signed by the star table."""
        n, l = self.dims, self.degree
        src, signs = _star_table(n, l)
        comps = tuple(LinearCombinationField([(float(signs[j]), self.components[int(src[j])])])
                      for j in range(num_components(n, n - l)))
        return DifferentialForm(n, n - l, comps)

    def index_labels(self) -> tuple[str, ...]:
        return tuple(str(mi) for mi in multi_indices(self.dims, self.degree))


def codifferential(u: DifferentialForm, fd_step: float | None = None) -> DifferentialForm:
    """Formal adjoint of d: (-1)^{n(l+1)+1} * star(d(star(u))) for an l-form.

    Lowers the degree by one.  With this sign, the 0-form x1^2 - x2^2 and the
    2-form (2 x1 x2) dx1^dx2 on the plane satisfy codifferential(v) = du
    exactly (the Cauchy-Riemann equations).
    """
    n, l = u.dims, u.degree
    if l < 1:
        raise DegreeError("codifferential needs degree >= 1")
    sign = -1.0 if (n * (l + 1) + 1) % 2 else 1.0
    return sign * u.star().d(fd_step).star()


def evaluate(u: DifferentialForm, domain, x) -> CovectorValue:
    """Pointwise covector value of ``u`` at ``x``, which must lie in the
    closure of ``domain``."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != u.dims:
        raise InvalidInputError(f"point has dim {x.shape[0]}, form has {u.dims}")
    if not domain.contains(x.reshape(1, -1))[0]:
        raise OutOfDomainError(f"point {x.tolist()} lies outside the domain")
    return u.value_at(x)


def check_analytic_partials(u: DifferentialForm, domain, *, step: float = 1e-4,
                            tol: float = 1e-4, count: int = 20, seed: int = 0) -> float:
    """Cross-check declared partial derivatives against central differences.

    Samples interior points and compares every component's exact ``partial``
    (where one is declared) with a second-order stencil of step ``step``.
    Returns the worst absolute discrepancy; raises if it exceeds ``tol``
    scaled by the derivative magnitude.
    """
    rng = np.random.default_rng(seed)
    lo, hi = domain.bounding_box()
    c = domain.centroid()
    pts = []
    while len(pts) < count:
        cand = lo + rng.random(u.dims) * (hi - lo)
        cand = c + 0.9 * (cand - c)  # pull inward so the stencil stays inside
        if domain.contains(cand.reshape(1, -1))[0]:
            pts.append(cand)
    pts = np.array(pts)
    worst = 0.0
    scale = 1.0
    for f in u.components:
        for k in range(1, u.dims + 1):
            g = f.partial(k)
            if g is None:
                continue
            fd = FDPartialField(f, k, step)
            exact = g(pts)
            approx = fd(pts)
            worst = max(worst, float(np.max(np.abs(exact - approx))))
            scale = max(scale, float(np.max(np.abs(exact))))
    if worst > tol * scale:
        raise InvalidInputError(
            f"declared partials disagree with finite differences: "
            f"max error {worst:.3e} exceeds {tol:g} * scale {scale:.3g}")
    return worst
