"""Lebesgue norms of the free resolvent kernels.

Three families are covered:

* the n = 3 Green function ``exp(-mu|x|) / (4 pi |x|)``;
* the heat-kernel (Laplace transform) majorant of the Green function in
  general dimension, valid for ``Re lambda < 0``;
* the resolvent symbol ``h_m(xi; lambda) = (|xi|**(2m) - lambda)**-1`` of
  ``(-Delta)**m``.

Each routine returns a closed form next to an independent quadrature of
the defining integral, so every constant that reaches a bound has been
cross-checked.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import _backend
from .specfun import DomainError, beta_fn, gamma_fn, legendre_p

log = logging.getLogger(__name__)

QUAD_EPSREL = 1e-12
QUAD_LIMIT = 2000
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LambdaPolar:
    """Spectral parameter ``lambda = modulus * exp(i theta)``, 0 < theta < 2 pi.

    ``theta = pi`` is the negative real axis; the ray ``[0, inf)`` (theta = 0)
    is excluded.
    """

    modulus: float
    theta: float

    def __post_init__(self):
        if not (self.modulus > 0 and math.isfinite(self.modulus)):
            raise DomainError("modulus", f"must be positive and finite, got {self.modulus}")
        if not (0.0 < self.theta < TWO_PI):
            raise DomainError("theta", f"must lie in (0, 2 pi), got {self.theta}")

    @classmethod
    def from_complex(cls, z: complex) -> "LambdaPolar":
        z = complex(z)
        theta = math.atan2(z.imag, z.real) % TWO_PI
        return cls(abs(z), theta)

    @property
    def re(self) -> float:
        return self.modulus * math.cos(self.theta)

    @property
    def im(self) -> float:
        return self.modulus * math.sin(self.theta)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def mu(self) -> complex:
        """``-i * sqrt(lambda)`` on the branch with ``Im sqrt(lambda) > 0``."""
        half = 0.5 * self.theta
        root = math.sqrt(self.modulus)
        return complex(root * math.sin(half), -root * math.cos(half))


@dataclass(frozen=True)
class KernelNormResult:
    """Closed form and quadrature of one kernel norm.

    ``closed_form`` is ``None`` when no closed form is available or the
    special-function evaluation failed.
    """

    closed_form: Optional[float]
    quadrature: float
    quadrature_error: float
    agreement: bool
    route: str = ""
    notes: tuple = field(default_factory=tuple)

    @property
    def value(self) -> float:
        """The authoritative number: closed form when it agrees, else quadrature."""
        if self.agreement and self.closed_form is not None:
            return self.closed_form
        return self.quadrature

    @property
    def relative_gap(self) -> float:
        if self.closed_form is None:
            return math.inf
        return abs(self.closed_form - self.quadrature) / max(abs(self.quadrature), 1e-300)


def agrees(closed_form, quadrature, quadrature_error) -> bool:
    if closed_form is None or not math.isfinite(closed_form):
        return False
    tol = max(1e-8 * abs(quadrature), 10.0 * quadrature_error)
    return abs(closed_form - quadrature) <= tol


def _root(value, err, alpha):
    """(value**(1/alpha), propagated error)."""
    v = value ** (1.0 / alpha)
    return v, v * err / (alpha * value) if value > 0 else math.inf


def _finish(closed, quad, qerr, route, params, notes=()):
    ok = agrees(closed, quad, qerr)
    if closed is not None and not ok:
        log.warning("%s: closed form %.17g disagrees with quadrature %.17g (+-%.2g) at %s",
                    route, closed, quad, qerr, params)
    return KernelNormResult(closed, quad, qerr, ok, route, tuple(notes))


# ---------------------------------------------------------------------------


def green3d_norm(alpha: float, lam: LambdaPolar) -> KernelNormResult:
    """L_alpha norm of the three-dimensional Green function.

    The closed form is
    ``(4 pi)**((1-alpha)/alpha) (alpha Re mu)**((alpha-3)/alpha) Gamma(3-alpha)**(1/alpha)``
    with ``Re mu = |lambda|**(1/2) sin(theta/2)``. The quadrature integrates
    ``rho**(2-alpha) exp(-alpha Re(mu) rho)`` over the half line.

    Raises
    ------
    DomainError
        Unless ``1 <= alpha < 3``.
    """
    alpha = float(alpha)
    if not (1.0 <= alpha < 3.0):
        raise DomainError("alpha", f"green3d_norm requires 1 <= alpha < 3, got {alpha}")
    re_mu = lam.mu.real
    closed = ((4 * math.pi) ** ((1 - alpha) / alpha)
              * (alpha * re_mu) ** ((alpha - 3) / alpha)
              * gamma_fn(3 - alpha).value ** (1 / alpha))
    radial, rerr, ok = _backend.power_exp_integral(3.0 - alpha, alpha * re_mu,
                                                   QUAD_EPSREL, QUAD_LIMIT)
    pref = 4 * math.pi * (4 * math.pi) ** (-alpha)
    quad, qerr = _root(pref * radial, pref * rerr, alpha)
    notes = () if ok else ("quadrature hit the subdivision limit",)
    return _finish(closed, quad, qerr, "green3d", dict(alpha=alpha, lam=lam), notes)


def heat_bound_norm(n: int, alpha: float, re_lambda: float) -> KernelNormResult:
    """Heat-kernel majorant of ``||g(.; lambda)||_alpha`` for ``Re lambda < 0``.

    Minkowski's inequality under the Laplace integral gives
    ``(4pi)**(-n/2a') alpha**(-n/2a) |Re lambda|**(-1+n/2a') Gamma(1-n/2a')``
    with ``1/a' = 1 - 1/alpha``. The quadrature integrates the t-integrand
    directly, so the two agree exactly.

    Raises
    ------
    DomainError
        If ``alpha`` is outside ``[1, n/(n-2))`` or ``re_lambda >= 0``.
    """
    n = int(n)
    alpha = float(alpha)
    if n < 1:
        raise DomainError("n", f"dimension must be >= 1, got {n}")
    upper = n / (n - 2) if n > 2 else math.inf
    if not (1.0 <= alpha < upper):
        raise DomainError("alpha", f"requires 1 <= alpha < n/(n-2) = {upper:g}, got {alpha}")
    if not re_lambda < 0:
        raise DomainError("re_lambda", f"requires Re lambda < 0, got {re_lambda}")
    inv_dual = 1.0 - 1.0 / alpha
    s = 1.0 - n * inv_dual / 2.0
    b = -float(re_lambda)
    closed = ((4 * math.pi) ** (-n * inv_dual / 2)
              * alpha ** (-n / (2 * alpha))
              * b ** (-s)
              * gamma_fn(s).value)
    t_int, terr, ok = _backend.power_exp_integral(s, b, QUAD_EPSREL, QUAD_LIMIT)
    pref = (4 * math.pi) ** (-n / 2) * (4 * math.pi / alpha) ** (n / (2 * alpha))
    notes = () if ok else ("quadrature hit the subdivision limit",)
    return _finish(closed, pref * t_int, pref * terr, "heat",
                   dict(n=n, alpha=alpha, re_lambda=re_lambda), notes)


def sphere_area(n: int) -> float:
    """Surface measure of the unit sphere in R^n, ``2 pi**(n/2) / Gamma(n/2)``."""
    return 2 * math.pi ** (n / 2) / gamma_fn(n / 2).value


def symbol_integral_closed(n, m, alpha, theta, legendre=legendre_p, variant="corrected"):
    """``int_0^inf t**(n/2m-1) (t**2 - 2t cos(theta) + 1)**(-alpha/2) dt``.

    ``variant="corrected"`` uses the Ferrers-function evaluation with
    prefactor ``(2/sin theta)**(alpha/2-1/2)``, which matches quadrature.
    ``variant="printed"`` uses ``(2 sin theta)**(alpha/2-1/2)`` instead;
    it is kept only to exhibit the discrepancy. ``theta`` in (pi, 2 pi) is
    reflected to ``2 pi - theta`` (the integrand depends on cos theta only);
    at theta = pi the Beta-function value is returned.
    """
    k = n / (2.0 * m)
    if theta > math.pi:
        theta = TWO_PI - theta
    beta = beta_fn(k, alpha - k).value
    if theta == math.pi:
        return beta
    sin_t = math.sin(theta)
    power = alpha / 2 - 0.5
    pref = (2 / sin_t) ** power if variant == "corrected" else (2 * sin_t) ** power
    leg = legendre(k - alpha / 2 - 0.5, 0.5 - alpha / 2, -math.cos(theta))
    leg = leg.value if hasattr(leg, "value") else float(leg)
    return pref * gamma_fn(alpha / 2 + 0.5).value * beta * leg


def symbol_norm(n: int, m: float, alpha: float, lam: LambdaPolar, *,
                legendre: Callable = legendre_p, variant: str = "corrected") -> KernelNormResult:
    """L_alpha norm of the resolvent symbol ``(|xi|**(2m) - lambda)**-1`` on R^n.

    Parameters
    ----------
    n : int
        Dimension.
    m : float
        Order of ``(-Delta)**m``, any positive real.
    alpha : float
        Lebesgue exponent, ``alpha > n/(2m)``.
    lam : LambdaPolar
        Spectral parameter.
    legendre : callable, optional
        Ferrers-function implementation; replaceable for perturbation tests.
    variant : {"corrected", "printed"}
        Prefactor convention for the closed form (see
        :func:`symbol_integral_closed`).

    Returns
    -------
    KernelNormResult
        ``closed_form`` from the Ferrers/Beta evaluation, ``quadrature`` from
        the radial integral. Both are the norm itself (alpha-th root).
    """
    n = int(n)
    m, alpha = float(m), float(alpha)
    if n < 1:
        raise DomainError("n", f"dimension must be >= 1, got {n}")
    if not m > 0:
        raise DomainError("m", f"order must be positive, got {m}")
    if not alpha > n / (2 * m):
        raise DomainError("alpha", f"requires alpha > n/(2m) = {n / (2 * m):g}, got {alpha}")
    area = sphere_area(n)
    radial, rerr, ok = _backend.power_rational_integral(
        float(n), 2.0 * m, -math.cos(lam.theta), lam.modulus, alpha / 2.0,
        QUAD_EPSREL, QUAD_LIMIT)
    quad, qerr = _root(area * radial, area * rerr, alpha)
    notes = [] if ok else ["quadrature hit the subdivision limit"]

    scale = area / (2 * m) * lam.modulus ** (n / (2 * m) - alpha)
    route = "symbol-beta" if lam.theta == math.pi else "symbol-legendre"
    try:
        integral = symbol_integral_closed(n, m, alpha, lam.theta, legendre, variant)
        closed = (scale * integral) ** (1.0 / alpha) if integral > 0 else None
        if closed is None:
            notes.append("closed form not positive")
    except (DomainError, OverflowError, ValueError, ZeroDivisionError) as exc:
        closed = None
        notes.append(f"closed form unavailable: {exc}")
    if lam.theta > math.pi:
        notes.append("theta reflected to 2 pi - theta")
    return _finish(closed, quad, qerr, route,
                   dict(n=n, m=m, alpha=alpha, lam=lam, variant=variant), notes)


def real_axis_symbol_power(n: int, m: float, alpha: float, re_lambda: float) -> float:
    """``||h_m||_alpha**alpha`` at ``lambda = re_lambda < 0`` in closed form.

    ``(2 pi**(n/2)/Gamma(n/2)) (1/2m) |Re lambda|**(n/2m - alpha) B(n/2m, alpha - n/2m)``;
    for m = 1 this is ``pi**(n/2) |Re lambda|**(n/2-alpha) Gamma(alpha-n/2)/Gamma(alpha)``,
    which also majorizes the norm at any lambda with the same real part.
    """
    if not re_lambda < 0:
        raise DomainError("re_lambda", f"requires Re lambda < 0, got {re_lambda}")
    k = n / (2.0 * m)
    if not alpha > k:
        raise DomainError("alpha", f"requires alpha > n/(2m) = {k:g}, got {alpha}")
    return sphere_area(n) / (2 * m) * (-re_lambda) ** (k - alpha) * beta_fn(k, alpha - k).value


def sup_symbol_norm(re_lambda: float) -> float:
    """Sup norm bound ``|Re lambda|**-1`` of the m = 1 symbol for Re lambda < 0."""
    if not re_lambda < 0:
        raise DomainError("re_lambda", f"requires Re lambda < 0, got {re_lambda}")
    return 1.0 / abs(re_lambda)


def schrodinger_symbol_factor(n: int, alpha: float, theta: float,
                              legendre: Callable = legendre_p) -> float:
    """``I(n, alpha, theta)**alpha`` for the m = 1 symbol.

    Defined by ``||h(.; lambda)||_alpha**alpha = pi**(n/2) |lambda|**(n/2-alpha) I**alpha``
    and evaluated as
    ``(2/sin theta)**(alpha/2-1/2) Gamma(alpha/2+1/2) Gamma(alpha-n/2)/Gamma(alpha)``
    ``* P^{1/2-alpha/2}_{n/2-alpha/2-1/2}(-cos theta)``.
    At theta = pi the Ferrers factor degenerates and the limit
    ``Gamma(alpha-n/2)/Gamma(alpha)`` is returned.
    """
    if not alpha > n / 2:
        raise DomainError("alpha", f"requires alpha > n/2 = {n / 2:g}, got {alpha}")
    if theta > math.pi:
        theta = TWO_PI - theta
    ratio = gamma_fn(alpha - n / 2).value / gamma_fn(alpha).value
    if theta == math.pi:
        return ratio
    leg = legendre(n / 2 - alpha / 2 - 0.5, 0.5 - alpha / 2, -math.cos(theta))
    leg = leg.value if hasattr(leg, "value") else float(leg)
    return ((2 / math.sin(theta)) ** (alpha / 2 - 0.5)
            * gamma_fn(alpha / 2 + 0.5).value * ratio * leg)
