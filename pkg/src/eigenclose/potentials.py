"""Complex potentials, their factorizations ``q = a b`` and numerical L^r norms."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate
from scipy.interpolate import RegularGridInterpolator

from .specfun import gamma_fn

INF = math.inf
_TAIL_RTOL = 1e-14
_MAX_DOUBLINGS = 1000
_QUAD_EPSREL = 1e-11


class DivergenceError(ValueError):
    """An L^r integral does not converge."""


class Representation(str, enum.Enum):
    RADIAL = "RADIAL"
    SEPARABLE = "SEPARABLE"
    GRID = "GRID"


class Factorization(str, enum.Enum):
    SQRT_SIGN = "SQRT_SIGN"
    WEIGHTED = "WEIGHTED"
    EXPLICIT = "EXPLICIT"


class NormMethod(str, enum.Enum):
    QUADRATURE = "QUADRATURE"
    GRID_SUM = "GRID_SUM"
    CLOSED_FORM = "CLOSED_FORM"


@dataclass(frozen=True)
class NormReport:
    exponent: float
    value: float
    error_estimate: float
    method: NormMethod

    def __float__(self):
        return float(self.value)

    def power(self) -> float:
        """``value**exponent`` (the integral itself for finite exponents)."""
        return self.value if math.isinf(self.exponent) else self.value ** self.exponent


@dataclass(frozen=True, eq=False)
class GridData:
    """Samples on the cell-centred grid of the box ``[-L, L]**n``.

    Node ``j`` on an axis with ``N`` samples sits at ``-L + (j + 1/2) 2L/N``.
    """

    half_width: float
    counts: tuple
    samples: np.ndarray

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        arr = np.asarray(self.samples, dtype=complex).reshape(counts)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if any(c < 8 for c in counts):
            raise ValueError(f"at least 8 samples per axis required, got {counts}")

    @property
    def dimension(self) -> int:
        return len(self.counts)

    def axis(self, i: int) -> np.ndarray:
        n = self.counts[i]
        h = 2 * self.half_width / n
        return -self.half_width + (np.arange(n) + 0.5) * h

    def spacing(self, i: int) -> float:
        return 2 * self.half_width / self.counts[i]

    def radii(self) -> np.ndarray:
        mesh = np.meshgrid(*[self.axis(i) for i in range(self.dimension)], indexing="ij")
        return np.sqrt(sum(m * m for m in mesh))

    def with_samples(self, samples) -> "GridData":
        return GridData(self.half_width, self.counts, samples)

    def interpolate(self, points: np.ndarray) -> np.ndarray:
        """Linear interpolation at ``points`` (shape ``(..., n)``), zero outside the grid."""
        interp = RegularGridInterpolator(
            [self.axis(i) for i in range(self.dimension)], self.samples,
            bounds_error=False, fill_value=0.0)
        pts = np.asarray(points, dtype=float)
        return interp(pts.reshape(-1, self.dimension)).reshape(pts.shape[:-1])


def _call(f, x):
    x = np.asarray(x, dtype=float)
    try:
        out = np.asarray(f(x), dtype=complex)
        if out.shape == x.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(float(t))) for t in x.ravel()]).reshape(x.shape)


@dataclass(frozen=True)
class Component:
    """A function on R^n in one of the three representations.

    ``profile`` is a callable of ``|x|`` (RADIAL), ``factors`` a tuple of
    per-axis callables whose product is the function (SEPARABLE), ``grid``
    holds samples (GRID).
    """

    kind: Representation
    dimension: int
    profile: Optional[Callable] = None
    factors: Optional[tuple] = None
    grid: Optional[GridData] = None

    def __call__(self, points) -> np.ndarray:
        """Evaluate at ``points`` of shape ``(..., n)``."""
        pts = np.asarray(points, dtype=float)
        if pts.shape[-1] != self.dimension:
            raise ValueError(f"points must have trailing dimension {self.dimension}")
        if self.kind is Representation.RADIAL:
            return _call(self.profile, np.linalg.norm(pts, axis=-1))
        if self.kind is Representation.SEPARABLE:
            out = np.ones(pts.shape[:-1], dtype=complex)
            for i, f in enumerate(self.factors):
                out = out * _call(f, pts[..., i])
            return out
        return self.grid.interpolate(pts)

    def on_axes(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate on the tensor grid spanned by ``axes`` (index order ``ij``)."""
        if self.kind is Representation.SEPARABLE:
            out = np.ones(tuple(len(a) for a in axes), dtype=complex)
            for i, (f, a) in enumerate(zip(self.factors, axes)):
                shape = [1] * len(axes)
                shape[i] = len(a)
                out = out * _call(f, a).reshape(shape)
            return out
        mesh = np.meshgrid(*axes, indexing="ij")
        if self.kind is Representation.RADIAL:
            return _call(self.profile, np.sqrt(sum(m * m for m in mesh)))
        return self.grid.interpolate(np.stack(mesh, axis=-1))

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "Component":
        """Pointwise ``fn`` applied to the values (GRID and RADIAL only)."""
        if self.kind is Representation.RADIAL:
            prof = self.profile
            return Component(self.kind, self.dimension, profile=lambda r: fn(_call(prof, r)))
        if self.kind is Representation.GRID:
            return Component(self.kind, self.dimension, grid=self.grid.with_samples(fn(self.grid.samples)))
        raise ValueError("map is not defined for SEPARABLE components")


def complex_sign(z):
    """``z/|z|`` with ``sign(0) = 0``."""
    z = np.asarray(z, dtype=complex)
    mag = np.abs(z)
    out = np.zeros_like(z)
    nz = mag > 0
    with np.errstate(over="ignore", invalid="ignore"):
        q = z[nz] / mag[nz]
    # z/|z| overflows for subnormal |z|; fall back to the angle there
    bad = ~np.isfinite(q)
    q[bad] = np.exp(1j * np.angle(z[nz][bad]))
    out[nz] = q
    return out


def _sqrt_abs(v):
    return np.sqrt(np.abs(np.asarray(v, dtype=complex))).astype(complex)


def _signed_sqrt(v):
    v = np.asarray(v, dtype=complex)
    return complex_sign(v) * np.sqrt(np.abs(v))


@dataclass(frozen=True)
class PotentialSpec:
    """A complex potential with a representation and a factorization rule.

    Build instances with :meth:`radial`, :meth:`separable` or :meth:`from_grid`.
    ``explicit`` holds the ``(a, b)`` pair for the EXPLICIT rule, each in the
    same representation as the potential (profile, factor tuple or sample
    array).
    """

    dimension: int
    representation: Representation
    q: Component
    factorization: Factorization = Factorization.SQRT_SIGN
    tau: Optional[float] = None
    explicit: Optional[tuple] = None
    name: str = ""

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.factorization is Factorization.WEIGHTED:
            if self.tau is None or not self.tau > 0:
                raise ValueError("WEIGHTED factorization needs tau > 0")
            if self.representation is Representation.SEPARABLE:
                raise ValueError("WEIGHTED factorization needs a RADIAL or GRID potential")
        if self.factorization is Factorization.EXPLICIT and self.explicit is None:
            raise ValueError("EXPLICIT factorization needs (a, b)")

    @classmethod
    def radial(cls, dimension, profile, **kw) -> "PotentialSpec":
        return cls(dimension, Representation.RADIAL,
                   Component(Representation.RADIAL, dimension, profile=profile), **kw)

    @classmethod
    def separable(cls, factors, **kw) -> "PotentialSpec":
        factors = tuple(factors)
        return cls(len(factors), Representation.SEPARABLE,
                   Component(Representation.SEPARABLE, len(factors), factors=factors), **kw)

    @classmethod
    def from_grid(cls, grid: GridData, **kw) -> "PotentialSpec":
        return cls(grid.dimension, Representation.GRID,
                   Component(Representation.GRID, grid.dimension, grid=grid), **kw)

    def __call__(self, points) -> np.ndarray:
        return self.q(points)

    def scaled(self, c: complex) -> "PotentialSpec":
        """The potential ``c q`` (EXPLICIT factors are scaled symmetrically by sqrt(c))."""
        q = self.q
        if q.kind is Representation.SEPARABLE:
            f0 = q.factors[0]
            newq = Component(q.kind, q.dimension,
                             factors=(lambda x, f0=f0: c * _call(f0, x),) + q.factors[1:])
        else:
            newq = q.map(lambda v: c * v)
        explicit = self.explicit
        if explicit is not None:
            k = complex(c) ** 0.5
            explicit = tuple(_scale_raw(self.representation, e, k) for e in explicit)
        return PotentialSpec(self.dimension, self.representation, newq, self.factorization,
                             self.tau, explicit, self.name)


def _scale_raw(rep, raw, k):
    if rep is Representation.GRID:
        return k * np.asarray(raw, dtype=complex)
    if rep is Representation.SEPARABLE:
        f0 = raw[0]
        return (lambda x, f0=f0: k * _call(f0, x),) + tuple(raw[1:])
    return lambda r, f=raw: k * _call(f, r)


def _weight_profile(tau, sign):
    return lambda r: (1.0 + np.asarray(r, dtype=float) ** 2) ** (sign * tau / 2)


def factorize(pot: PotentialSpec) -> tuple:
    """Split ``q = a b`` according to the potential's factorization rule."""
    q, n = pot.q, pot.dimension
    rule = pot.factorization
    if rule is Factorization.EXPLICIT:
        a, b = pot.explicit
        if pot.representation is Representation.RADIAL:
            return (Component(q.kind, n, profile=a), Component(q.kind, n, profile=b))
        if pot.representation is Representation.SEPARABLE:
            return (Component(q.kind, n, factors=tuple(a)), Component(q.kind, n, factors=tuple(b)))
        return (Component(q.kind, n, grid=q.grid.with_samples(a)),
                Component(q.kind, n, grid=q.grid.with_samples(b)))
    if rule is Factorization.SQRT_SIGN:
        if q.kind is Representation.SEPARABLE:
            a = tuple((lambda x, f=f: _sqrt_abs(_call(f, x))) for f in q.factors)
            b = tuple((lambda x, f=f: _signed_sqrt(_call(f, x))) for f in q.factors)
            return Component(q.kind, n, factors=a), Component(q.kind, n, factors=b)
        return q.map(_sqrt_abs), q.map(_signed_sqrt)
    # WEIGHTED
    tau = pot.tau
    if q.kind is Representation.RADIAL:
        prof = q.profile
        a = Component(q.kind, n, profile=lambda r: _weight_profile(tau, -1)(r).astype(complex))
        b = Component(q.kind, n, profile=lambda r: _weight_profile(tau, 1)(r) * _call(prof, r))
        return a, b
    w = _weight_profile(tau, 1)(q.grid.radii())
    return (Component(q.kind, n, grid=q.grid.with_samples(1.0 / w)),
            Component(q.kind, n, grid=q.grid.with_samples(w * q.grid.samples)))


# ---------------------------------------------------------------------------
# norms


def sphere_area(n: int) -> float:
    """``mes(S^{n-1}) = 2 pi**(n/2) / Gamma(n/2)``."""
    return 2 * math.pi ** (n / 2) / gamma_fn(n / 2).value


def _half_line(g: Callable[[float], float]) -> tuple:
    """``int_0^inf g`` by dyadic pieces with a geometric tail test.

    Returns ``(value, error)``; raises :class:`DivergenceError` when the
    pieces stop decreasing.
    """
    total, err = 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v, e = integrate.quad(g, 0.0, 1.0, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=200)
        total, err = v, e
        lo, prev, stalls = 1.0, None, 0
        for _ in range(_MAX_DOUBLINGS):
            hi = 2 * lo
            v, e = integrate.quad(g, lo, hi, epsabs=0.0, epsrel=_QUAD_EPSREL, limit=200)
            if not math.isfinite(v):
                raise DivergenceError(f"non-finite integrand on [{lo:g}, {hi:g}]")
            total += v
            err += e
            lo = hi
            if prev is not None and prev > 0:
                ratio = v / prev
                stalls = stalls + 1 if ratio >= 0.99 else 0
                if stalls >= 8:
                    raise DivergenceError(
                        f"tail pieces not decreasing (ratio {ratio:.4g} at |x| ~ {lo:g})")
                if ratio < 0.99:
                    tail = v * ratio / (1 - ratio)
                    if tail <= _TAIL_RTOL * abs(total):
                        return total, err + tail
            if v == 0.0 and (prev == 0.0 or total > 0):
                return total, err
            prev = v
    raise DivergenceError("no convergence before the floating-point range was exhausted")


def _line(g: Callable[[float], float]) -> tuple:
    v1, e1 = _half_line(g)
    v2, e2 = _half_line(lambda x: g(-x))
    return v1 + v2, e1 + e2


def _weight(tau, r):
    return (1.0 + r * r) ** (tau / 2)


def _sup_radial(f, weight):
    """Essential sup on refining radial samples."""
    best, prev = 0.0, None
    for k in range(4):
        rho = np.concatenate([[0.0], np.logspace(-8, 6, 2000 * 2 ** k),
                              np.linspace(0, 50, 2000 * 2 ** k)])
        vals = np.abs(_call(f, rho))
        if weight:
            vals = vals * _weight(weight, rho)
        best = float(np.nanmax(vals))
        if not math.isfinite(best):
            raise DivergenceError("unbounded profile")
        if prev is not None and abs(best - prev) <= 1e-12 * max(best, 1e-300):
            break
        prev = best
    return best


def _grid_sum(arr, spacings, t):
    return float(np.sum(np.abs(arr) ** t)) * math.prod(spacings)


def lp_norm(component: Component, exponent: float, weight: Optional[float] = None) -> NormReport:
    """``(int |w f|**exponent)**(1/exponent)`` over R^n, ``w = (1+|x|^2)**(weight/2)``.

    ``exponent = inf`` gives the essential supremum.
    """
    t = float(exponent)
    if not t > 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    n = component.dimension
    if component.kind is Representation.GRID:
        grid = component.grid
        arr = grid.samples
        if weight:
            arr = arr * _weight(weight, grid.radii())
        if math.isinf(t):
            v = float(np.max(np.abs(arr)))
            coarse = float(np.max(np.abs(arr[(slice(None, None, 2),) * n])))
            return NormReport(t, v, abs(v - coarse), NormMethod.GRID_SUM)
        h = [grid.spacing(i) for i in range(n)]
        fine = _grid_sum(arr, h, t)
        coarse = _grid_sum(arr[(slice(None, None, 2),) * n], [2 * x for x in h], t)
        # midpoint rule is second order: Richardson difference estimates the error
        err_int = abs(fine - coarse) / 3.0
        value = fine ** (1 / t)
        err = value * err_int / (t * fine) if fine > 0 else err_int ** (1 / t)
        return NormReport(t, value, err, NormMethod.GRID_SUM)

    if component.kind is Representation.SEPARABLE:
        if weight:
            raise ValueError("weighted norms need a RADIAL or GRID component")
        if math.isinf(t):
            value = 1.0
            for f in component.factors:
                value *= max(_sup_radial(f, None), _sup_radial(lambda x, f=f: _call(f, -x), None))
            return NormReport(t, value, 0.0, NormMethod.QUADRATURE)
        integral, rel = 1.0, 0.0
        for f in component.factors:
            v, e = _line(lambda x, f=f: float(abs(complex(f(x)))) ** t)
            if v == 0:
                return NormReport(t, 0.0, 0.0, NormMethod.QUADRATURE)
            integral *= v
            rel += e / v
        value = integral ** (1 / t)
        return NormReport(t, value, value * rel / t, NormMethod.QUADRATURE)

    f = component.profile
    if math.isinf(t):
        return NormReport(t, _sup_radial(f, weight), 0.0, NormMethod.QUADRATURE)
    area = sphere_area(n)
    if weight:
        g = lambda r: r ** (n - 1) * (abs(complex(f(r))) * _weight(weight, r)) ** t
    else:
        g = lambda r: r ** (n - 1) * abs(complex(f(r))) ** t
    v, e = _half_line(g)
    if v == 0:
        return NormReport(t, 0.0, 0.0, NormMethod.QUADRATURE)
    value = (area * v) ** (1 / t)
    return NormReport(t, value, value * e / (t * v), NormMethod.QUADRATURE)


def weight_norm_closed(n: int, tau: float, r: float) -> NormReport:
    """``||(1+|x|^2)**(-tau/2)||_r`` from ``pi**(n/2) Gamma((tau r - n)/2) / Gamma(tau r/2)``."""
    if math.isinf(r):
        return NormReport(r, 1.0, 0.0, NormMethod.CLOSED_FORM)
    if not tau * r > n:
        raise DivergenceError(f"tau r > n required for convergence, got tau r = {tau * r:g}, n = {n}")
    g1 = gamma_fn((tau * r - n) / 2)
    g2 = gamma_fn(tau * r / 2)
    power = math.pi ** (n / 2) * g1.value / g2.value
    rel = g1.abs_error_estimate / g1.value + g2.abs_error_estimate / g2.value
    value = power ** (1 / r)
    return NormReport(r, value, value * rel / r, NormMethod.CLOSED_FORM)


@dataclass
class PotentialNorms:
    """Norm provider for the certificates, caching every evaluated norm.

    ``factor_norms(r, s)`` gives ``(||a||_r, ||b||_s)`` for the potential's own
    factorization; ``moment(t)`` is ``int |q|**t``; ``q_norm(t)`` is
    ``||q||_t``; ``weighted_moment(tau, r)`` is
    ``int |(1+|x|^2)**(tau/2) q|**r``.
    """

    pot: PotentialSpec
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.a, self.b = factorize(self.pot)

    def _norm(self, key, comp, t, weight=None) -> NormReport:
        k = (key, float(t), weight)
        if k not in self._cache:
            self._cache[k] = lp_norm(comp, t, weight)
        return self._cache[k]

    def report(self, which: str, t: float, weight=None) -> NormReport:
        comp = {"a": self.a, "b": self.b, "q": self.pot.q}[which]
        return self._norm(which, comp, t, weight)

    def factor_norms(self, r, s):
        return self.report("a", r).value, self.report("b", s).value

    def moment(self, t):
        return self.report("q", t).power()

    def q_norm(self, t):
        return self.report("q", t).value

    def weighted_moment(self, tau, r):
        return self.report("q", r, weight=tau).power()

    def reports(self) -> list:
        """All cached reports as ``(component, exponent, weight, NormReport)``."""
        return [(k[0], k[1], k[2], v) for k, v in sorted(self._cache.items(),
                                                         key=lambda kv: (kv[0][0], kv[0][1], kv[0][2] or 0))]
