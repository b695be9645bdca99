"""Reference spectra and Birman-Schwinger norms on a truncated box.

``H = (-Delta)**m + q`` is discretized in the L^2 realization either by the
second-order finite-difference Laplacian on a Dirichlet box (m = 1) or by a
Fourier multiplier on a periodic box (any m > 0). Eigenvalues come from a
complete dense non-Hermitian solve (LAPACK ``zgeev``: Hessenberg reduction
and shifted QR). Potentials that are even in every coordinate are split
into parity sectors first, which keeps 3-D grids at desk scale.

``Q(lambda) = B R(lambda; H_0) A`` is assembled as a convolution with the
free Green function on the same nodes and its 2-norm estimated by power
iteration on ``Q* Q`` with FFT matvecs.
"""

from __future__ import annotations

import enum
import itertools
import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, linalg

from .kernels import LambdaPolar
from .potentials import PotentialSpec, factorize

log = logging.getLogger(__name__)

MAX_DENSE = 20000

# cell integrals over the centred unit cube / square
CUBE_INV_R = 3 * math.log(2 + math.sqrt(3)) - math.pi / 2   # int 1/|x|
CUBE_R = 0.4802959782275265                                  # int |x|
SQUARE_LOG_R = math.pi / 4 - 1.5 - math.log(2) / 2           # int ln|x|
EULER_GAMMA = 0.5772156649015329


class Scheme(str, enum.Enum):
    FINITE_DIFFERENCE = "FINITE_DIFFERENCE"
    FOURIER_SPECTRAL = "FOURIER_SPECTRAL"


class KernelRoute(str, enum.Enum):
    GREEN_1D = "GREEN_1D"
    GREEN_3D = "GREEN_3D"
    HEAT_LAPLACE = "HEAT_LAPLACE"


class OracleError(ValueError):
    """Refused computation (size guard, incompatible scheme, lambda too close to [0, inf))."""


@dataclass(frozen=True)
class Discretization:
    """Grid parameters.

    Finite differences use the interior nodes ``-L + j h``, ``j = 1..N``,
    ``h = 2L/(N+1)``; the Fourier scheme uses ``-L + 2L j/N``, ``j = 0..N-1``.
    """

    dimension: int
    scheme: Scheme
    half_width: float
    points: int

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise OracleError(f"dimension must be 1, 2 or 3, got {self.dimension}")
        if not self.half_width > 0 or self.points < 2:
            raise OracleError("half_width > 0 and points >= 2 required")

    @property
    def spacing(self) -> float:
        if self.scheme is Scheme.FINITE_DIFFERENCE:
            return 2 * self.half_width / (self.points + 1)
        return 2 * self.half_width / self.points

    def axis(self) -> np.ndarray:
        h = self.spacing
        if self.scheme is Scheme.FINITE_DIFFERENCE:
            return -self.half_width + h * np.arange(1, self.points + 1)
        return -self.half_width + h * np.arange(self.points)

    @property
    def size(self) -> int:
        return self.points ** self.dimension

    @property
    def continuum_spacing(self) -> float:
        """Lowest Dirichlet level ``(pi/2L)**2`` of the box."""
        return (math.pi / (2 * self.half_width)) ** 2

    def with_points(self, points: int) -> "Discretization":
        return Discretization(self.dimension, self.scheme, self.half_width, points)


def _check_size(dim):
    if dim > MAX_DENSE:
        raise OracleError(f"dense matrix of size {dim} exceeds the guard {MAX_DENSE}; "
                          f"use fewer points per axis")


def _fd_1d(n_pts, h):
    main = np.full(n_pts, 2.0 / h ** 2)
    off = np.full(n_pts - 1, -1.0 / h ** 2)
    return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)


def _kron_sum(blocks):
    out = blocks[0].astype(complex)
    for b in blocks[1:]:
        out = np.kron(out, np.eye(b.shape[0])) + np.kron(np.eye(out.shape[0]), b)
    return out


def _fourier_1d_symbol(disc, m):
    k = (math.pi / disc.half_width) * np.fft.fftfreq(disc.points, d=1.0 / disc.points)
    return np.abs(k)


def _fourier_operator(disc, m):
    n, N = disc.dimension, disc.points
    k1 = _fourier_1d_symbol(disc, m)
    grids = np.meshgrid(*([k1] * n), indexing="ij")
    sym = sum(g * g for g in grids) ** m
    dim = N ** n
    eye = np.eye(dim, dtype=complex).reshape((N,) * n + (dim,))
    axes = tuple(range(n))
    cols = np.fft.ifftn(sym[..., None] * np.fft.fftn(eye, axes=axes), axes=axes)
    return cols.reshape(dim, dim)


def sample_potential(pot: PotentialSpec, disc: Discretization) -> np.ndarray:
    """q on the tensor grid of ``disc`` (shape ``(N,)*n``)."""
    x = disc.axis()
    return pot.q.on_axes([x] * disc.dimension)


def discretize(pot: PotentialSpec, disc: Discretization, m: float = 1.0) -> np.ndarray:
    """Dense matrix of ``(-Delta)**m + q`` on the grid (row-major node order)."""
    if pot.dimension != disc.dimension:
        raise OracleError("potential and grid dimensions differ")
    if disc.scheme is Scheme.FINITE_DIFFERENCE and m != 1:
        raise OracleError("the finite-difference scheme needs m = 1")
    if not m > 0:
        raise OracleError(f"m must be positive, got {m}")
    _check_size(disc.size)
    if disc.scheme is Scheme.FINITE_DIFFERENCE:
        lap = _kron_sum([_fd_1d(disc.points, disc.spacing)] * disc.dimension)
    else:
        lap = _fourier_operator(disc, m)
    return lap + np.diag(sample_potential(pot, disc).ravel())


def _is_even(q: np.ndarray) -> bool:
    scale = max(float(np.max(np.abs(q))), 1e-300)
    return all(np.max(np.abs(q - np.flip(q, axis=i))) <= 1e-12 * scale for i in range(q.ndim))


def _permutation_invariant(q: np.ndarray) -> bool:
    scale = max(float(np.max(np.abs(q))), 1e-300)
    for perm in itertools.permutations(range(q.ndim)):
        if np.max(np.abs(q - np.transpose(q, perm))) > 1e-12 * scale:
            return False
    return True


def parity_sectors(pot: PotentialSpec, disc: Discretization) -> Optional[list]:
    """Finite-difference blocks for the 2**n parity sectors, or ``None``.

    Needs an even number of points and a potential even in each coordinate.
    Returns ``[(labels, matrix), ...]``; ``labels`` lists every sign pattern
    sharing the block, which happens when the potential is also invariant
    under permutations of the axes.
    """
    if disc.scheme is not Scheme.FINITE_DIFFERENCE or disc.points % 2:
        return None
    q = sample_potential(pot, disc)
    if not _is_even(q):
        return None
    half = disc.points // 2
    h = disc.spacing
    qh = q[(slice(half, None),) * disc.dimension]
    symmetric = _permutation_invariant(qh)
    groups: dict = {}
    for signs in itertools.product((1, -1), repeat=disc.dimension):
        key = tuple(sorted(signs, reverse=True)) if symmetric else signs
        groups.setdefault(key, []).append("".join("+" if s > 0 else "-" for s in signs))
    out = []
    for signs, labels in groups.items():
        blocks = []
        for sgn in signs:
            t = _fd_1d(half, h)
            # mirror neighbour of the node closest to 0 carries the same (even) or opposite value
            t[0, 0] -= sgn / h ** 2
            blocks.append(t)
        out.append((tuple(labels), _kron_sum(blocks) + np.diag(qh.ravel())))
    return out


def eigen_spectrum(matrix: np.ndarray, vectors: bool = False):
    """All eigenvalues of a dense matrix.

    With ``vectors=True`` returns ``(values, residuals)`` where
    ``residuals[k] = ||H v - lambda v|| / ||v||``.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    _check_size(a.shape[0])
    if not vectors:
        return linalg.eigvals(a, overwrite_a=False, check_finite=True)
    w, v = linalg.eig(a)
    res = np.linalg.norm(a @ v - v * w, axis=0) / np.linalg.norm(v, axis=0)
    return w, res


@dataclass
class SpectrumReport:
    """Discrete-spectrum candidates with two-resolution error estimates."""

    eigenvalues: np.ndarray
    errors: np.ndarray
    candidates: np.ndarray
    extrapolated: np.ndarray
    sectors: list
    delta: float
    meta: dict = field(default_factory=dict)
    outer_fraction: Optional[np.ndarray] = None

    def candidate_list(self) -> list:
        """``[(lambda, error, extrapolated, sector)]`` for the candidates, sorted."""
        idx = [i for i in np.flatnonzero(self.candidates)]
        rows = [(complex(self.eigenvalues[i]), float(self.errors[i]),
                 complex(self.extrapolated[i]), self.sectors[i]) for i in idx]
        return sorted(rows, key=lambda r: (r[0].real, r[0].imag))

    def to_tsv(self) -> str:
        order = np.lexsort((self.eigenvalues.imag, self.eigenvalues.real))
        lines = ["re\tim\terror\tcandidate"]
        for i in order:
            z = self.eigenvalues[i]
            lines.append(f"{z.real:.12g}\t{z.imag:.12g}\t{self.errors[i]:.6g}\t"
                         f"{int(self.candidates[i])}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        order = np.lexsort((self.eigenvalues.imag, self.eigenvalues.real))
        return {
            "grid": self.meta,
            "delta": self.delta,
            "eigenvalues": [
                {"re": float(self.eigenvalues[i].real), "im": float(self.eigenvalues[i].imag),
                 "error": float(self.errors[i]), "candidate": bool(self.candidates[i])}
                for i in order],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _outer_mask(axis, dim, half_width):
    """Nodes outside the inner half-box ``max |x_i| <= L/2``."""
    mesh = np.meshgrid(*([np.abs(axis)] * dim), indexing="ij")
    return (np.maximum.reduce(mesh) > half_width / 2).ravel()


def _sector_spectra(pot, disc, m):
    """``[(label, eigenvalues, matrix, outer_mask)]``; equivalent labels share the matrix."""
    if disc.scheme is Scheme.FINITE_DIFFERENCE:
        sec = parity_sectors(pot, disc)
        if sec is not None:
            mask = _outer_mask(disc.axis()[disc.points // 2:], disc.dimension, disc.half_width)
            out = []
            for labels, mat in sec:
                w = eigen_spectrum(mat)
                out.extend((label, w, mat, mask) for label in labels)
            return out
    mat = discretize(pot, disc, m)
    mask = _outer_mask(disc.axis(), disc.dimension, disc.half_width)
    return [("all", eigen_spectrum(mat), mat, mask)]


def outer_mass_fraction(matrix: np.ndarray, lam: complex, outer: np.ndarray,
                        iterations: int = 3, seed: int = 0) -> float:
    """Fraction of the eigenvector's mass on ``outer`` nodes, by inverse iteration."""
    shift = lam + 1e-10 * max(1.0, abs(lam)) * (1 + 1j)
    lu = linalg.lu_factor(matrix - shift * np.eye(matrix.shape[0]), check_finite=False)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(matrix.shape[0]) + 0j
    for _ in range(iterations):
        v = linalg.lu_solve(lu, v, check_finite=False)
        v /= np.linalg.norm(v)
    mass = np.abs(v) ** 2
    return float(mass[outer].sum() / mass.sum())


def _default_coarse(points, scheme):
    c = int(round(points * 2 / 3))
    if scheme is Scheme.FINITE_DIFFERENCE and points % 2 == 0 and c % 2:
        c += 1
    return max(c, 4)


def compute_spectrum(pot: PotentialSpec, disc: Discretization, m: float = 1.0,
                     coarse_points: Optional[int] = None, continuum_factor: float = 10.0,
                     max_outer_fraction: float = 0.2) -> SpectrumReport:
    """Spectrum on ``disc`` with errors from a coarser companion grid.

    Each fine eigenvalue is matched to the nearest coarse one in the same
    parity sector. For finite differences the error estimate is the
    Richardson correction ``|d| rho**2/(1 - rho**2)`` with
    ``rho = h_fine/h_coarse``; the Fourier scheme reports ``|d|``.

    An eigenvalue is a discrete candidate when its distance to ``[0, inf)``
    exceeds ``delta = max(5 error, continuum_factor (pi/2L)**2)`` and its
    eigenvector keeps at most ``max_outer_fraction`` of its mass outside the
    inner half-box. The second test removes box states of the continuum,
    which a complex potential pushes off the real axis by about
    ``||q||_1 / (2L)**n``.
    """
    _check_size(disc.size)
    if coarse_points is None:
        coarse_points = _default_coarse(disc.points, disc.scheme)
    coarse = disc.with_points(coarse_points)
    fine_sp = _sector_spectra(pot, disc, m)
    coarse_sp = {label: w for label, w, _, _ in _sector_spectra(pot, coarse, m)}
    # grids of different parity split differently; fall back to the pooled spectrum
    coarse_all = np.concatenate(list(coarse_sp.values()))
    if disc.scheme is Scheme.FINITE_DIFFERENCE:
        rho = disc.spacing / coarse.spacing
        factor = rho ** 2 / (1 - rho ** 2)
    else:
        factor = 1.0
    delta_c = continuum_factor * disc.continuum_spacing
    vals, errs, extr, labels, outer, cand = [], [], [], [], [], []
    loc_cache: dict = {}
    for label, w, mat, mask in fine_sp:
        wc = coarse_sp.get(label, coarse_all)
        for z in w:
            d = z - wc[np.argmin(np.abs(wc - z))]
            err = abs(d) * factor + 1e-10 * max(1.0, abs(z))
            dist = abs(z.imag) if z.real > 0 else abs(z)
            frac = math.nan
            ok = dist > max(5 * err, delta_c)
            if ok:
                key = (id(mat), complex(z))
                if key not in loc_cache:
                    loc_cache[key] = outer_mass_fraction(mat, z, mask)
                frac = loc_cache[key]
                ok = frac <= max_outer_fraction
            vals.append(z)
            errs.append(err)
            extr.append(z + d * factor)
            labels.append(label)
            outer.append(frac)
            cand.append(ok)
    meta = {"dimension": disc.dimension, "scheme": disc.scheme.value,
            "half_width": disc.half_width, "points": disc.points,
            "points_coarse": coarse_points, "m": m,
            "sectors": sorted(set(labels))}
    return SpectrumReport(np.array(vals, dtype=complex), np.array(errs), np.array(cand, dtype=bool),
                          np.array(extr, dtype=complex), labels, delta_c, meta,
                          np.array(outer))


# ---------------------------------------------------------------------------
# Birman-Schwinger operator


def _heat_integral(lam, r, n):
    """``(4 pi)**(-n/2) int_0^inf exp(lam t - r^2/4t) t**(-n/2) dt`` for r > 0, Re lam < 0."""
    # t = (r^2/4) s puts the peak of exp(-1/s) near s ~ 1
    c = r * r / 4

    def f(s):
        return np.exp(lam * c * s - 1.0 / s) * s ** (-n / 2)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        a = integrate.quad(f, 0.0, 1.0, complex_func=True, epsabs=0, epsrel=1e-10, limit=200)[0]
        b = integrate.quad(f, 1.0, np.inf, complex_func=True, epsabs=0, epsrel=1e-10, limit=400)[0]
    return (4 * math.pi) ** (-n / 2) * c ** (1 - n / 2) * (a + b)


def _heat_regular_part(lam, n):
    """``lim_{r->0} (G(r) - S_n(r))`` with ``S_3 = 1/(4 pi r)``, ``S_2 = -ln r/(2 pi)``, ``S_1 = 0``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if n == 1:
            v = integrate.quad(lambda t: np.exp(lam * t) * t ** -0.5, 0, np.inf,
                               complex_func=True, epsrel=1e-11, limit=400)[0]
            return v / math.sqrt(4 * math.pi)
        if n == 3:
            v = integrate.quad(lambda t: np.expm1(lam * t) * t ** -1.5, 0, np.inf,
                               complex_func=True, epsrel=1e-11, limit=400)[0]
            return v * (4 * math.pi) ** -1.5
        # n = 2: compare with lam = -1, whose kernel K0(r)/2pi ~ (ln 2 - gamma - ln r)/2pi
        v = integrate.quad(lambda t: (np.exp(lam * t) - np.exp(-t)) / t, 0, np.inf,
                           complex_func=True, epsrel=1e-11, limit=400)[0]
        return v / (4 * math.pi) + (math.log(2) - EULER_GAMMA) / (2 * math.pi)


def _kernel_on_offsets(route, lam, n, h, shape):
    """Green function on integer offset lattice ``h * k`` (k >= 0 per axis), self cell averaged."""
    mu = LambdaPolar.from_complex(lam).mu
    idx = np.meshgrid(*[np.arange(s) for s in shape], indexing="ij")
    k2 = sum(i * i for i in idx)
    r = h * np.sqrt(k2)
    out = np.empty(k2.shape, dtype=complex)
    nz = k2 > 0
    if route is KernelRoute.GREEN_1D:
        out[nz] = np.exp(-mu * r[nz]) / (2 * mu)
        out[~nz] = (1 - np.exp(-mu * h / 2)) / (mu * mu * h)
        return out
    if route is KernelRoute.GREEN_3D:
        out[nz] = np.exp(-mu * r[nz]) / (4 * math.pi * r[nz])
        out[~nz] = (CUBE_INV_R / h - mu + mu * mu * h * CUBE_R / 2) / (4 * math.pi)
        return out
    # heat-kernel route: one quadrature per distinct |k|^2
    table = {}
    for key in np.unique(k2[nz]):
        table[int(key)] = _heat_integral(lam, h * math.sqrt(key), n)
    flat = out.ravel()
    for i, key in enumerate(k2.ravel()):
        if key:
            flat[i] = table[int(key)]
    reg = _heat_regular_part(lam, n)
    if n == 1:
        flat[0] = reg
    elif n == 2:
        flat[0] = -(math.log(h) + SQUARE_LOG_R) / (2 * math.pi) + reg
    else:
        flat[0] = CUBE_INV_R / (4 * math.pi * h) + reg
    return out


def _circulant_kernel(half):
    """Embed the even kernel given on offsets ``0..N-1`` per axis into a ``2N`` circulant."""
    n = half.ndim
    full = half
    for ax in range(n):
        N = full.shape[ax]
        zero = np.zeros_like(np.take(full, [0], axis=ax))
        mirror = np.flip(np.take(full, np.arange(1, N), axis=ax), axis=ax)
        full = np.concatenate([full, zero, mirror], axis=ax)
    return np.fft.fftn(full)


@dataclass(frozen=True)
class BirmanSchwingerReport:
    lam: complex
    norm_estimate: float
    iterations: int
    kernel_route: KernelRoute
    converged: bool = True
    minus_one_distance: Optional[float] = None


def default_route(n: int, lam: complex) -> KernelRoute:
    if n == 1:
        return KernelRoute.GREEN_1D
    if n == 3:
        return KernelRoute.GREEN_3D
    if complex(lam).real < 0:
        return KernelRoute.HEAT_LAPLACE
    raise OracleError(f"no kernel for n = {n} with Re lambda >= 0; "
                      f"the heat-kernel representation needs Re lambda < 0")


class BirmanSchwingerOperator:
    """``Q(lambda) = b G(lambda) a`` on the nodes of a discretization."""

    def __init__(self, pot: PotentialSpec, lam: complex, disc: Discretization,
                 route: Optional[KernelRoute] = None):
        lam = complex(lam)
        n = disc.dimension
        dist = abs(lam.imag) if lam.real > 0 else abs(lam)
        if dist < disc.continuum_spacing:
            raise OracleError(f"lambda = {lam} lies within {dist:.3g} of [0, inf), closer than "
                              f"the box continuum spacing {disc.continuum_spacing:.3g}")
        self.route = route or default_route(n, lam)
        if self.route is KernelRoute.HEAT_LAPLACE and lam.real >= 0:
            raise OracleError("the heat-kernel route needs Re lambda < 0")
        if self.route is KernelRoute.GREEN_1D and n != 1:
            raise OracleError("GREEN_1D needs n = 1")
        if self.route is KernelRoute.GREEN_3D and n != 3:
            raise OracleError("GREEN_3D needs n = 3")
        self.lam = lam
        self.disc = disc
        a, b = factorize(pot)
        axes = [disc.axis()] * n
        self.a = a.on_axes(axes)
        self.b = b.on_axes(axes)
        N, h = disc.points, disc.spacing
        half = _kernel_on_offsets(self.route, lam, n, h, (N,) * n)
        self.weight = h ** n
        self.khat = _circulant_kernel(half)
        # G(-x) = G(x) with complex values, so G* convolves with conj(G)
        self.khat_adj = _circulant_kernel(np.conj(half))
        self.shape = (N,) * n

    def _conv(self, v, khat):
        n = len(self.shape)
        padded = np.zeros(tuple(2 * s for s in self.shape), dtype=complex)
        padded[tuple(slice(0, s) for s in self.shape)] = v
        out = np.fft.ifftn(np.fft.fftn(padded) * khat)
        return out[tuple(slice(0, s) for s in self.shape)] * self.weight

    def matvec(self, v):
        return self.b * self._conv(self.a * v, self.khat)

    def rmatvec(self, v):
        return np.conj(self.a) * self._conv(np.conj(self.b) * v, self.khat_adj)

    def dense(self) -> np.ndarray:
        """Explicit matrix (small grids only)."""
        dim = int(np.prod(self.shape))
        _check_size(dim)
        eye = np.eye(dim, dtype=complex)
        return np.stack([self.matvec(eye[:, j].reshape(self.shape)).ravel()
                         for j in range(dim)], axis=1)


def birman_schwinger_norm(pot: PotentialSpec, lam: complex, disc: Discretization,
                          route: Optional[KernelRoute] = None, rtol: float = 1e-6,
                          max_iter: int = 2000, seed: int = 0,
                          minus_one_check: bool = False) -> BirmanSchwingerReport:
    """``||Q(lambda)||_2`` by power iteration on ``Q* Q``.

    The Ritz estimates ``||Q v_k||`` are non-decreasing; iteration stops when
    the relative increment drops below ``rtol``. With ``minus_one_check`` the
    distance from -1 to the spectrum of the discretized Q is also reported
    (dense, small grids only).
    """
    op = BirmanSchwingerOperator(pot, lam, disc, route)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(op.shape) + 1j * rng.standard_normal(op.shape)
    v /= np.linalg.norm(v)
    best, converged, it = 0.0, False, 0
    for it in range(1, max_iter + 1):
        w = op.matvec(v)
        est = float(np.linalg.norm(w))
        if est == 0.0:
            converged = True
            best = 0.0
            break
        u = op.rmatvec(w)
        nu = np.linalg.norm(u)
        v = u / nu
        prev, best = best, max(best, est)
        if it > 3 and best - prev <= rtol * best:
            converged = True
            break
    dist = None
    if minus_one_check:
        ev = np.linalg.eigvals(op.dense())
        dist = float(np.min(np.abs(ev + 1)))
    return BirmanSchwingerReport(complex(lam), best, it, op.route, converged, dist)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    eigenvalue: complex
    error: float
    constraint: str
    measure: str
    radius: float
    margin: float
    inside: bool
    bs_norm: Optional[float] = None

    def to_dict(self) -> dict:
        return {"re": self.eigenvalue.real, "im": self.eigenvalue.imag, "error": self.error,
                "certificate": self.constraint, "measure": self.measure, "radius": self.radius,
                "margin": self.margin, "inside": self.inside, "bs_norm": self.bs_norm}


def verify_certificates(report: SpectrumReport, region, bs_norms: Optional[dict] = None,
                        tolerance: float = 5.0) -> list:
    """Check every discrete candidate against every constraint of ``region``.

    A candidate is inside a constraint when ``margin >= -tolerance * error``.
    ``bs_norms`` maps candidate eigenvalues to Birman-Schwinger norms.
    """
    from .regions import constraint_margins

    out = []
    for lam, err, _, _ in report.candidate_list():
        bs = None if bs_norms is None else bs_norms.get(lam)
        for cid, measure, radius, margin in constraint_margins(region, lam):
            out.append(Verdict(lam, err, cid, measure, radius, margin,
                               margin >= -tolerance * err, bs))
    return out


def verdicts_tsv(verdicts: Sequence[Verdict]) -> str:
    lines = ["re\tim\terror\tcertificate\tmeasure\tradius\tmargin\tinside\tbs_norm"]
    for v in verdicts:
        bs = "" if v.bs_norm is None else f"{v.bs_norm:.6g}"
        lines.append(f"{v.eigenvalue.real:.12g}\t{v.eigenvalue.imag:.12g}\t{v.error:.6g}\t"
                     f"{v.constraint}\t{v.measure}\t{v.radius:.12g}\t{v.margin:.6g}\t"
                     f"{int(v.inside)}\t{bs}")
    return "\n".join(lines) + "\n"
