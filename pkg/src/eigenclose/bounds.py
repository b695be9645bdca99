"""Eigenvalue bounds as evaluated certificates.

Every bound has the shape ``X**exponent <= constant * norm_product`` where
``X`` is ``|lambda|``, ``|Re lambda|`` or ``|Im lambda|``. A
:class:`BoundCertificate` records the admissibility of the index
configuration, the three numbers, and the implied radius
``(constant * norm_product)**(1/exponent)``.

Index conventions: ``1/inf == 0``; ``alpha_conv = (1 - 1/r - 1/s)**-1``
for the Young-route bounds, ``alpha_sym = (1/r + 1/s)**-1`` for the
Fourier-route bounds and ``alpha_im = 1 - n(1/r + 1/s)/2`` for the
imaginary-part bound.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Protocol, Sequence

from . import kernels
from .kernels import LambdaPolar
from .specfun import babenko_factor, beta_fn, gamma_fn

INF = math.inf
FOUR_PI = 4.0 * math.pi
_TOL = 1e-12


class TheoremId(str, enum.Enum):
    RES1 = "RES1"
    COR1 = "COR1"
    CORQ1 = "CORQ1"
    CORQ2 = "CORQ2"
    RES2 = "RES2"
    CORRES21 = "CORRES21"
    CORRES22 = "CORRES22"
    CORRES2W = "CORRES2W"
    RES3 = "RES3"
    CORIM = "CORIM"
    CORIM1 = "CORIM1"
    RESULT4 = "RESULT4"
    RELAM1 = "RELAM1"
    CORGEN = "CORGEN"
    RESULT5 = "RESULT5"
    RESULT6 = "RESULT6"
    CORRES6 = "CORRES6"


class Measure(str, enum.Enum):
    MODULUS = "MODULUS"
    NEG_REAL_PART = "NEG_REAL_PART"
    ABS_IMAG_PART = "ABS_IMAG_PART"


class Sharpening(str, enum.Enum):
    NONE = "NONE"
    BECKNER_YOUNG = "BECKNER_YOUNG"
    BABENKO_HY = "BABENKO_HY"


YOUNG_ROUTE = frozenset({TheoremId.RES1, TheoremId.COR1, TheoremId.CORQ1, TheoremId.CORQ2,
                         TheoremId.RES2, TheoremId.CORRES21, TheoremId.CORRES22,
                         TheoremId.CORRES2W})
FOURIER_ROUTE = frozenset({TheoremId.RESULT4, TheoremId.RELAM1, TheoremId.CORGEN,
                           TheoremId.RESULT5, TheoremId.RESULT6, TheoremId.CORRES6})
BABENKO_ROUTE = frozenset({TheoremId.RES3, TheoremId.CORIM, TheoremId.CORIM1})

MEASURE = {
    **{t: Measure.MODULUS for t in (TheoremId.RES1, TheoremId.COR1, TheoremId.CORQ1,
                                    TheoremId.CORQ2, TheoremId.CORRES22, TheoremId.RESULT5,
                                    TheoremId.RESULT6, TheoremId.CORRES6)},
    **{t: Measure.NEG_REAL_PART for t in (TheoremId.RES2, TheoremId.CORRES21,
                                          TheoremId.CORRES2W, TheoremId.RESULT4,
                                          TheoremId.RELAM1, TheoremId.CORGEN)},
    **{t: Measure.ABS_IMAG_PART for t in BABENKO_ROUTE},
}

THETA_DEPENDENT = frozenset(t for t, m in MEASURE.items() if m is Measure.MODULUS)


def inv(x: float) -> float:
    """Reciprocal with ``1/inf = 0``."""
    return 0.0 if math.isinf(x) else 1.0 / x


@dataclass(frozen=True)
class ProblemParams:
    """Scalar parameters of one bound instance.

    Attributes
    ----------
    n : int
        Dimension.
    p : float
        Lebesgue index of the realization, ``1 < p < inf``.
    r, s : float
        Exponents with ``a in L_r``, ``b in L_s``; ``inf`` allowed.
    m : float
        Order of ``(-Delta)**m``.
    theta : float, optional
        Argument of lambda in (0, 2 pi) for the modulus bounds.
    tau : float, optional
        Weight exponent for ``a = (1 + |x|**2)**(-tau/2)``.
    gamma_moment : float, optional
        The ``gamma`` of the ``int |q|**(gamma + n/2m)`` corollaries.
    """

    n: int
    p: float = 2.0
    r: float = INF
    s: float = INF
    m: float = 1.0
    theta: Optional[float] = None
    tau: Optional[float] = None
    gamma_moment: Optional[float] = None

    def replace(self, **changes) -> "ProblemParams":
        return dataclasses.replace(self, **changes)

    @property
    def inv_sum(self) -> float:
        return inv(self.r) + inv(self.s)

    @property
    def alpha_conv(self) -> float:
        d = 1.0 - self.inv_sum
        return INF if d == 0 else 1.0 / d

    @property
    def alpha_sym(self) -> float:
        return INF if self.inv_sum == 0 else 1.0 / self.inv_sum

    @property
    def alpha_im(self) -> float:
        return 1.0 - self.n * self.inv_sum / 2.0


@dataclass(frozen=True)
class BoundCertificate:
    """One evaluated bound ``X**exponent <= constant * norm_product``.

    ``norm_power`` is the power of ``||a|| ||b||`` contained in
    ``norm_product``; sharpening multiplies ``constant`` by
    ``factor**norm_power``.
    """

    theorem_id: TheoremId
    measure: Measure
    admissible: bool
    exponent: Optional[float] = None
    constant: Optional[float] = None
    norm_product: Optional[float] = None
    violated_conditions: tuple = ()
    sharpening_applied: Sharpening = Sharpening.NONE
    sharpening_factor: float = 1.0
    norm_power: float = 1.0
    theta: Optional[float] = None
    notes: tuple = ()

    @property
    def radius(self) -> Optional[float]:
        if not self.admissible:
            return None
        value = self.constant * self.norm_product
        if value == 0:
            return 0.0
        return value ** (1.0 / self.exponent)

    def holds_at(self, lam: complex, slack: float = 0.0) -> Optional[float]:
        """Signed margin ``radius - X(lam)``, or ``None`` if not applicable to ``lam``."""
        x = measured_quantity(self.measure, lam)
        if x is None or not self.admissible:
            return None
        return self.radius - x + slack

    def to_dict(self) -> dict:
        out = {
            "theorem_id": self.theorem_id.value,
            "measure": self.measure.value,
            "admissible": self.admissible,
            "exponent": self.exponent,
            "constant": self.constant,
            "norm_product": self.norm_product,
            "norm_power": self.norm_power,
            "radius": self.radius,
            "theta": self.theta,
            "violated_conditions": list(self.violated_conditions),
            "sharpening_applied": self.sharpening_applied.value,
            "sharpening_factor": self.sharpening_factor,
            "notes": list(self.notes),
        }
        return out


def measured_quantity(measure: Measure, lam: complex) -> Optional[float]:
    """The quantity a certificate of ``measure`` constrains, or ``None`` if n/a."""
    lam = complex(lam)
    if measure is Measure.MODULUS:
        return abs(lam)
    if measure is Measure.NEG_REAL_PART:
        return -lam.real if lam.real < 0 else None
    return abs(lam.imag) if lam.imag != 0 else None


class NormSource(Protocol):
    """What the certificates need from a potential."""

    def factor_norms(self, r: float, s: float) -> tuple: ...

    def moment(self, t: float) -> float: ...

    def q_norm(self, t: float) -> float: ...

    def weighted_moment(self, tau: float, r: float) -> float: ...


@dataclass
class FixedNorms:
    """A :class:`NormSource` backed by explicit numbers (tests and CLI overrides)."""

    norm_a: float = 1.0
    norm_b: float = 1.0
    moments: dict = field(default_factory=dict)
    q_norms: dict = field(default_factory=dict)
    weighted: dict = field(default_factory=dict)

    def factor_norms(self, r, s):
        return self.norm_a, self.norm_b

    def moment(self, t):
        return self.moments[t]

    def q_norm(self, t):
        return self.q_norms[t]

    def weighted_moment(self, tau, r):
        return self.weighted[(tau, r)]


# ---------------------------------------------------------------------------
# admissibility


def _theta_ok(params, out):
    if params.theta is None:
        out.append("theta (arg lambda) is required")
    elif not (0.0 < params.theta < 2 * math.pi):
        out.append(f"theta must lie in (0, 2 pi), got {params.theta}")


def _p_ok(params, out):
    if not (1.0 < params.p < INF):
        out.append(f"1 < p < inf required, got p={params.p}")


def _positive(name, value, out):
    if not value > 0:
        out.append(f"{name} must be positive, got {value}")


def _young_windows(params, out, limit):
    """Shared by the Young-route bounds (3-D Green function, heat kernel)."""
    if not params.r > 0:
        out.append(f"0 < r required, got r={params.r}")
    if not params.s >= params.p:
        out.append(f"p <= s required, got s={params.s} < p={params.p}")
    if not params.inv_sum < limit - _TOL:
        out.append(f"1/r + 1/s < {limit:.6g} required, got {params.inv_sum:.6g}")
    if inv(params.r) + inv(params.p) > 1.0 + _TOL:
        out.append(f"1/r + 1/p <= 1 required for the Hoelder exponent beta >= 1, "
                   f"got {inv(params.r) + inv(params.p):.6g}")


def _equal_rs(params, out):
    if params.r != params.s:
        out.append(f"r = s required, got r={params.r}, s={params.s}")


def _r_window(params, dim, out):
    """``r > dim`` if ``p <= dim``, ``p <= r`` if ``p > dim``."""
    if params.p <= dim:
        if not params.r > dim:
            out.append(f"r > {dim} required for p <= {dim}, got r={params.r}")
    elif not params.r >= params.p:
        out.append(f"p <= r required for p > {dim}, got r={params.r}")


def _gamma_window(params, dim, out):
    g = params.gamma_moment
    if g is None:
        out.append("gamma_moment is required")
        return
    if params.p <= dim:
        if not g > 0:
            out.append(f"gamma > 0 required, got {g}")
    elif not 2 * g >= params.p - dim - _TOL:
        out.append(f"2 gamma >= p - {dim} required for p > {dim}, got gamma={g}")


def _fourier_windows(params, out, limit, limit_label):
    ir, is_ = inv(params.r), inv(params.s)
    ip = inv(params.p)
    if not params.r > 0 or not params.s > 0:
        out.append("0 < r, s required")
    if not (0.5 - ip - _TOL <= ir <= 1.0 - ip + _TOL):
        out.append(f"1/2 - 1/p <= 1/r <= 1 - 1/p required (1 <= beta <= 2), got 1/r={ir:.6g}")
    if not (-0.5 + ip - _TOL <= is_ <= ip + _TOL):
        out.append(f"-1/2 + 1/p <= 1/s <= 1/p required (1 <= gamma' <= 2), got 1/s={is_:.6g}")
    if not params.inv_sum < limit - _TOL:
        out.append(f"1/r + 1/s < {limit_label} required, got {params.inv_sum:.6g}")


def _conditions(tid: TheoremId, params: ProblemParams) -> list:
    out: list = []
    n = params.n
    _p_ok(params, out)
    if tid is TheoremId.RES1:
        if n != 3:
            out.append(f"n = 3 required, got n={n}")
        _young_windows(params, out, 2.0 / 3.0)
        _theta_ok(params, out)
    elif tid is TheoremId.COR1:
        if n != 3:
            out.append(f"n = 3 required, got n={n}")
        _equal_rs(params, out)
        _r_window(params, 3, out)
        _theta_ok(params, out)
    elif tid is TheoremId.CORQ1:
        if n != 3:
            out.append(f"n = 3 required, got n={n}")
        _gamma_window(params, 3, out)
        _theta_ok(params, out)
    elif tid is TheoremId.CORQ2:
        if n != 3:
            out.append(f"n = 3 required, got n={n}")
        _r_window(params, 3, out)
        if params.tau is None:
            out.append("tau is required")
        elif not params.tau * params.r > 3:
            out.append(f"tau r > 3 required, got {params.tau * params.r:.6g}")
        _theta_ok(params, out)
    elif tid is TheoremId.RES2:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        _young_windows(params, out, 2.0 / n)
    elif tid is TheoremId.CORRES21:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        _equal_rs(params, out)
        _r_window(params, n, out)
    elif tid is TheoremId.CORRES22:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        _gamma_window(params, n, out)
        _theta_ok(params, out)
        if params.theta is not None and not (math.pi / 2 < params.theta < 1.5 * math.pi):
            out.append("Re lambda < 0 required: theta in (pi/2, 3 pi/2)")
    elif tid is TheoremId.CORRES2W:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        _r_window(params, n, out)
        if params.tau is None:
            out.append("tau is required")
        elif not params.tau * params.r > n:
            out.append(f"tau r > n = {n} required for ||a||_r < inf, "
                       f"got {params.tau * params.r:.6g}")
    elif tid is TheoremId.RES3:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        if not params.r > 0:
            out.append(f"0 < r required, got r={params.r}")
        if not params.s >= params.p:
            out.append(f"p <= s required, got s={params.s} < p={params.p}")
        ir, ip = inv(params.r), inv(params.p)
        resid = ir - inv(params.s) - (1.0 - 2.0 * ip)
        if abs(resid) > _TOL:
            out.append(f"1/r - 1/s = 1 - 2/p required, residual {resid:.6g}")
        if not (0.5 - ip - _TOL <= ir <= 1.0 - ip + _TOL):
            out.append(f"1/2 - 1/p <= 1/r <= 1 - 1/p required, got 1/r={ir:.6g}")
        if not params.inv_sum < 2.0 / n - _TOL:
            out.append(f"1/r + 1/s < 2/n required, got {params.inv_sum:.6g}")
    elif tid is TheoremId.CORIM:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        if params.p != 2:
            out.append(f"p = 2 required, got p={params.p}")
        _equal_rs(params, out)
        if not params.r > n:
            out.append(f"r > n required, got r={params.r}")
        if math.isinf(params.r):
            out.append("finite r required (||q||_{r/2})")
    elif tid is TheoremId.CORIM1:
        if n < 3:
            out.append(f"n >= 3 required, got n={n}")
        if params.p != 2:
            out.append(f"p = 2 required, got p={params.p}")
        g = params.gamma_moment
        if g is None or not g > 0:
            out.append(f"gamma > 0 required, got {g}")
    elif tid is TheoremId.RESULT4:
        _fourier_windows(params, out, 2.0 / n, "2/n")
        if params.inv_sum == 0:
            out.append("alpha = inf (r = s = inf): see RELAM1")
    elif tid is TheoremId.RELAM1:
        if not (math.isinf(params.r) and math.isinf(params.s)):
            out.append("r = s = inf required")
        _fourier_windows(params, out, 2.0 / n, "2/n")
    elif tid is TheoremId.CORGEN:
        if params.p != 2:
            out.append(f"p = 2 required, got p={params.p}")
        g = params.gamma_moment
        if g is None:
            out.append("gamma_moment is required")
        elif n == 1 and not g >= 0.5 - _TOL:
            out.append(f"gamma >= 1/2 required for n = 1, got {g}")
        elif not g > 0:
            out.append(f"gamma > 0 required, got {g}")
    elif tid is TheoremId.RESULT5:
        _fourier_windows(params, out, 2.0 / n, "2/n")
        if params.inv_sum == 0:
            out.append("alpha = inf (r = s = inf): no modulus bound")
        _theta_ok(params, out)
    elif tid is TheoremId.RESULT6:
        _positive("m", params.m, out)
        if params.m > 0:
            _fourier_windows(params, out, 2.0 * params.m / n, "2m/n")
        if params.inv_sum == 0:
            out.append("alpha = inf (r = s = inf): no modulus bound")
        _theta_ok(params, out)
    elif tid is TheoremId.CORRES6:
        _positive("m", params.m, out)
        if params.p != 2:
            out.append(f"p = 2 required, got p={params.p}")
        g = params.gamma_moment
        if g is None:
            out.append("gamma_moment is required")
        elif params.m > 0:
            k = n / (2.0 * params.m)
            if not g > 0:
                out.append(f"gamma > 0 required, got {g}")
            elif k < 1 and not g >= 1 - k - _TOL:
                out.append(f"gamma >= 1 - n/2m = {1 - k:.6g} required for n < 2m, got {g}")
        _theta_ok(params, out)
    return out


def applicable_theorems(params: ProblemParams) -> list:
    """``[(theorem_id, admissible, violated_conditions), ...]`` in TheoremId order."""
    out = []
    for tid in TheoremId:
        v = _conditions(tid, params)
        out.append((tid, not v, tuple(v)))
    return out


def _refuse(tid, params, violations, notes=()):
    return BoundCertificate(tid, MEASURE[tid], False, violated_conditions=tuple(violations),
                            theta=params.theta if tid in THETA_DEPENDENT else None,
                            notes=tuple(notes))


def _make(tid, params, exponent, constant, norm_product, norm_power, notes=()):
    return BoundCertificate(tid, MEASURE[tid], True, exponent, constant, norm_product,
                            norm_power=norm_power,
                            theta=params.theta if tid in THETA_DEPENDENT else None,
                            notes=tuple(notes))


def _g(x):
    return gamma_fn(x).value


# ---------------------------------------------------------------------------
# constants (exposed for cross-checks)


def res1_constant(alpha: float, theta: float) -> float:
    """``(4 pi)**(1-alpha) Gamma(3-alpha) (alpha sin(theta/2))**(alpha-3)``."""
    return FOUR_PI ** (1 - alpha) * _g(3 - alpha) * (alpha * math.sin(theta / 2)) ** (alpha - 3)


def res2_constant(n: int, alpha: float) -> float:
    """``(4 pi)**(-n/2a') alpha**(-n/2a) Gamma(1 - n/2a')``."""
    inv_dual = 1.0 - 1.0 / alpha
    return (FOUR_PI ** (-n * inv_dual / 2) * alpha ** (-n / (2 * alpha))
            * _g(1 - n * inv_dual / 2))


def res3_constant(alpha_im: float) -> float:
    return FOUR_PI ** (alpha_im - 1) * _g(alpha_im)


def result4_constant(n: int, alpha: float) -> float:
    """``(4 pi)**(-n/2) Gamma(alpha - n/2) / Gamma(alpha)``."""
    return FOUR_PI ** (-n / 2) * _g(alpha - n / 2) / _g(alpha)


def weight_norm_power(n: int, tau: float, r: float) -> float:
    """``||(1+|x|**2)**(-tau/2)||_r**r = pi**(n/2) Gamma((tau r - n)/2) / Gamma(tau r/2)``."""
    return math.pi ** (n / 2) * _g((tau * r - n) / 2) / _g(tau * r / 2)


def result5_constant(n: int, alpha: float, theta: float, legendre=None) -> tuple:
    """``(4 pi)**(-n/2) I(n, alpha, theta)**alpha``, quadrature-validated.

    Returns ``(constant, notes)``. The closed form goes through
    :func:`kernels.schrodinger_symbol_factor`; it is used only if it matches
    the quadrature of the symbol norm, otherwise the quadrature value is.
    """
    lam = LambdaPolar(1.0, theta)
    ref = kernels.symbol_norm(n, 1.0, alpha, lam)
    quad = ref.quadrature ** alpha / math.pi ** (n / 2)
    qerr = alpha * ref.quadrature_error / ref.quadrature * quad
    notes = []
    try:
        kw = {} if legendre is None else {"legendre": legendre}
        closed = kernels.schrodinger_symbol_factor(n, alpha, theta, **kw)
    except (ValueError, OverflowError) as exc:
        closed = None
        notes.append(f"closed form unavailable: {exc}")
    if kernels.agrees(closed, quad, qerr):
        factor = closed
    else:
        factor = quad
        notes.append("closed form rejected, quadrature used")
    return FOUR_PI ** (-n / 2) * factor, notes


def result6_constant(n: int, m: float, alpha: float, theta: float, legendre=None) -> tuple:
    """``(4 pi)**(-n/2) (m Gamma(n/2))**-1 I_m(n, alpha, theta)``, quadrature-validated."""
    lam = LambdaPolar(1.0, theta)
    kw = {} if legendre is None else {"legendre": legendre}
    res = kernels.symbol_norm(n, m, alpha, lam, **kw)
    notes = list(res.notes)
    if not res.agreement:
        notes.append("closed form rejected, quadrature used")
    power = res.value ** alpha
    # power = (2 pi**(n/2)/Gamma(n/2)) (1/2m) I_m
    return (2 * math.pi) ** (-n) * power, notes


# ---------------------------------------------------------------------------
# certificates


def certify_res1(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """Modulus bound in R^3 from the explicit Green function."""
    tid = TheoremId.RES1
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_conv
    return _make(tid, params, (3 - a) / 2, res1_constant(a, params.theta),
                 (norm_a * norm_b) ** a, a)


def certify_cor1(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """RES1 with ``r = s``, raised to the power ``r - 2``."""
    tid = TheoremId.COR1
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    r = params.r
    if math.isinf(r):
        # the r-th power form degenerates; state the bound in RES1 form
        c = res1_constant(1.0, params.theta)
        return _make(tid, params, 1.0, c, norm_a * norm_b, 1.0,
                     notes=("r = inf: stated in the alpha = 1 form",))
    alpha = r / (r - 2)
    c = res1_constant(alpha, params.theta) ** (r - 2)
    return _make(tid, params, r - 3, c, (norm_a * norm_b) ** r, r)


def certify_corq1(params: ProblemParams, moment: float) -> BoundCertificate:
    """``|lambda|**gamma <= C(gamma, theta) int |q|**(gamma + 3/2)``."""
    tid = TheoremId.CORQ1
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    g = params.gamma_moment
    r = 2 * g + 3
    c = math.sqrt(res1_constant(r / (r - 2), params.theta) ** (r - 2))
    return _make(tid, params, g, c, moment, r / 2)


def certify_corq2(params: ProblemParams, weighted_moment: float) -> BoundCertificate:
    """COR1 with ``a = (1 + |x|**2)**(-tau/2)``; norm is ``int |(1+|x|^2)^(tau/2) q|**r``."""
    tid = TheoremId.CORQ2
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    r, tau = params.r, params.tau
    if math.isinf(r):
        return _refuse(tid, params, ["finite r required for the weighted moment"])
    weight = 2 * math.pi * beta_fn(1.5, tau * r / 2 - 1.5).value
    c = weight * res1_constant(r / (r - 2), params.theta) ** (r - 2)
    return _make(tid, params, r - 3, c, weighted_moment, r)


def certify_cor_3d(params: ProblemParams, norms: NormSource) -> BoundCertificate:
    """Dispatch to the R^3 corollary selected by the parameter pattern.

    ``tau`` given selects CORQ2, ``gamma_moment`` given selects CORQ1,
    otherwise COR1 (which needs ``r = s``).
    """
    if params.tau is not None:
        if math.isinf(params.r) or _conditions(TheoremId.CORQ2, params):
            return certify_corq2(params, math.nan)
        return certify_corq2(params, norms.weighted_moment(params.tau, params.r))
    if params.gamma_moment is not None:
        if _conditions(TheoremId.CORQ1, params):
            return certify_corq1(params, math.nan)
        return certify_corq1(params, norms.moment(params.gamma_moment + 1.5))
    if _conditions(TheoremId.COR1, params):
        return certify_cor1(params, math.nan, math.nan)
    return certify_cor1(params, *norms.factor_norms(params.r, params.r))


def certify_res2(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """``|Re lambda|**(1 - n/2a') <= C(n, r, s) ||a||_r ||b||_s`` via the heat kernel."""
    tid = TheoremId.RES2
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_conv
    exponent = 1 - params.n * params.inv_sum / 2
    return _make(tid, params, exponent, res2_constant(params.n, a), norm_a * norm_b, 1.0)


def certify_corres21(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """RES2 with ``r = s``, raised to the power r."""
    tid = TheoremId.CORRES21
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, r = params.n, params.r
    if math.isinf(r):
        return _make(tid, params, 1.0, 1.0, norm_a * norm_b, 1.0,
                     notes=("r = inf: stated in the alpha = 1 form",))
    c = FOUR_PI ** (-n) * (1 - 2 / r) ** (n * (r - 2) / 2) * _g(1 - n / r) ** r
    return _make(tid, params, r - n, c, (norm_a * norm_b) ** r, r)


def certify_corres22(params: ProblemParams, moment: float) -> BoundCertificate:
    """``|lambda|**gamma <= C(n, gamma, theta) int |q|**(gamma + n/2)`` for Re lambda < 0.

    ``|Re lambda| = |lambda| |cos theta|`` converts the real-part bound; the
    constant carries ``|cos theta|**-gamma``.
    """
    tid = TheoremId.CORRES22
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, g = params.n, params.gamma_moment
    r = 2 * g + n
    c21 = FOUR_PI ** (-n) * (1 - 2 / r) ** (n * (r - 2) / 2) * _g(1 - n / r) ** r
    c = math.sqrt(c21) / abs(math.cos(params.theta)) ** g
    return _make(tid, params, g, c, moment, r / 2,
                 notes=("|cos theta|**gamma from |Re lambda| = |lambda| |cos theta|",))


def certify_corres2w(params: ProblemParams, weighted_moment: float) -> BoundCertificate:
    """CORRES21 with ``a = (1 + |x|**2)**(-tau/2)``."""
    tid = TheoremId.CORRES2W
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, r, tau = params.n, params.r, params.tau
    if math.isinf(r):
        return _refuse(tid, params, ["finite r required for the weighted moment"])
    c21 = FOUR_PI ** (-n) * (1 - 2 / r) ** (n * (r - 2) / 2) * _g(1 - n / r) ** r
    c = weight_norm_power(n, tau, r) * c21
    return _make(tid, params, r - n, c, weighted_moment, r)


def certify_res3(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """``|Im lambda|**alpha <= (4 pi)**(alpha-1) Gamma(alpha) ||a||_r ||b||_s``."""
    tid = TheoremId.RES3
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_im
    return _make(tid, params, a, res3_constant(a), norm_a * norm_b, 1.0)


def certify_corim(params: ProblemParams, q_norm_half_r: float) -> BoundCertificate:
    """``|Im lambda|**(1-n/r) <= (4 pi)**(-n/r) Gamma(1-n/r) ||q||_{r/2}``, p = 2."""
    tid = TheoremId.CORIM
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = 1 - params.n / params.r
    return _make(tid, params, a, res3_constant(a), q_norm_half_r, 1.0)


def certify_corim1(params: ProblemParams, moment: float) -> BoundCertificate:
    """``|Im lambda|**gamma <= (4pi)**(-n/2) Gamma(2g/(2g+n))**(g+n/2) int |q|**(g+n/2)``."""
    tid = TheoremId.CORIM1
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, g = params.n, params.gamma_moment
    c = FOUR_PI ** (-n / 2) * _g(2 * g / (2 * g + n)) ** (g + n / 2)
    return _make(tid, params, g, c, moment, g + n / 2)


def certify_result4(params: ProblemParams, norm_a: float, norm_b: float) -> BoundCertificate:
    """``|Re lambda|**(alpha - n/2) <= C(n, alpha) (||a||_r ||b||_s)**alpha``.

    With ``r = s = inf`` the sup-norm branch ``|Re lambda| <= ||a|| ||b||``
    (RELAM1) is returned.
    """
    if math.isinf(params.r) and math.isinf(params.s):
        tid = TheoremId.RELAM1
        v = _conditions(tid, params)
        if v:
            return _refuse(tid, params, v)
        return _make(tid, params, 1.0, 1.0, norm_a * norm_b, 1.0)
    tid = TheoremId.RESULT4
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_sym
    return _make(tid, params, a - params.n / 2, result4_constant(params.n, a),
                 (norm_a * norm_b) ** a, a)


def certify_corgen(params: ProblemParams, moment: float) -> BoundCertificate:
    """``|Re lambda|**gamma <= (4pi)**(-n/2) Gamma(g)/Gamma(g+n/2) int |q|**(g+n/2)``."""
    tid = TheoremId.CORGEN
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, g = params.n, params.gamma_moment
    return _make(tid, params, g, result4_constant(n, g + n / 2), moment, g + n / 2)


def certify_result5(params: ProblemParams, norm_a: float, norm_b: float,
                    legendre=None) -> BoundCertificate:
    """``|lambda|**(alpha - n/2) <= (4 pi)**(-n/2) I(n, alpha, theta)**alpha (||a|| ||b||)**alpha``."""
    tid = TheoremId.RESULT5
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_sym
    c, notes = result5_constant(params.n, a, params.theta, legendre)
    return _make(tid, params, a - params.n / 2, c, (norm_a * norm_b) ** a, a, notes)


def certify_result6(params: ProblemParams, norm_a: float, norm_b: float,
                    legendre=None) -> BoundCertificate:
    """``|lambda|**(alpha - n/2m) <= C(n, m, alpha, theta) (||a|| ||b||)**alpha``."""
    tid = TheoremId.RESULT6
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    a = params.alpha_sym
    c, notes = result6_constant(params.n, params.m, a, params.theta, legendre)
    return _make(tid, params, a - params.n / (2 * params.m), c, (norm_a * norm_b) ** a, a,
                 notes)


def certify_corres6(params: ProblemParams, moment: float, legendre=None) -> BoundCertificate:
    """RESULT6 with ``r = s = 2(gamma + n/2m)`` and ``a = |q|**(1/2)``, p = 2."""
    tid = TheoremId.CORRES6
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n, m, g = params.n, params.m, params.gamma_moment
    a = g + n / (2 * m)
    c, notes = result6_constant(n, m, a, params.theta, legendre)
    return _make(tid, params, g, c, moment, a, notes)


# ---------------------------------------------------------------------------
# sharp constants


def _effective_rs(tid: TheoremId, params: ProblemParams) -> tuple:
    """(r, s) actually used by the Hoelder/Young steps of ``tid``."""
    n, g = params.n, params.gamma_moment
    if tid is TheoremId.CORQ1:
        return 2 * g + 3, 2 * g + 3
    if tid in (TheoremId.CORRES22, TheoremId.CORIM1, TheoremId.CORGEN):
        return 2 * g + n, 2 * g + n
    if tid is TheoremId.CORRES6:
        r = 2 * (g + n / (2 * params.m))
        return r, r
    if tid in (TheoremId.COR1, TheoremId.CORQ2, TheoremId.CORRES21, TheoremId.CORRES2W,
               TheoremId.CORIM):
        return params.r, params.r
    return params.r, params.s


def sharpening_factor(tid: TheoremId, params: ProblemParams) -> tuple:
    """``(kind, factor, reason)`` for the sharp Young / Hausdorff-Young constants.

    Young route: ``(A_alpha A_beta A_gamma')**n``; Fourier route:
    ``(A_beta A_gamma')**n``; imaginary-part route: ``A_beta**n``, with
    ``1/beta = 1/r + 1/p`` and ``1/gamma' = 1 - 1/p + 1/s``. Every index must
    lie in [1, 2]; otherwise the factor is 1 and ``reason`` says why.
    """
    r, s = _effective_rs(tid, params)
    ip = inv(params.p)
    n = params.n
    inv_beta = inv(r) + ip
    inv_gdual = 1.0 - ip + inv(s)
    idx = {}
    if tid in YOUNG_ROUTE:
        kind = Sharpening.BECKNER_YOUNG
        idx["alpha"] = 1.0 - inv(r) - inv(s)
        idx["beta"] = inv_beta
        idx["gamma'"] = inv_gdual
    elif tid in FOURIER_ROUTE:
        kind = Sharpening.BABENKO_HY
        idx["beta"] = inv_beta
        idx["gamma'"] = inv_gdual
    else:
        kind = Sharpening.BABENKO_HY
        idx["beta"] = inv_beta
    factor = 1.0
    for name, iv in idx.items():
        # index in [1, 2]  <=>  reciprocal in [1/2, 1]
        if not (0.5 - _TOL <= iv <= 1.0 + _TOL):
            idx_val = INF if iv == 0 else 1.0 / iv
            return Sharpening.NONE, 1.0, f"{name} = {idx_val:.6g} outside [1, 2]"
        factor *= babenko_factor(min(max(1.0 / iv, 1.0), 2.0))
    return kind, factor ** n, ""


def sharpen(cert: BoundCertificate, params: ProblemParams) -> BoundCertificate:
    """Apply the sharp-constant refinement appropriate to the certificate's route.

    The constant is multiplied by ``factor**cert.norm_power``. Inadmissible
    certificates and out-of-window indices are returned unchanged (factor 1)
    with a note.
    """
    if not cert.admissible:
        return cert
    kind, factor, reason = sharpening_factor(cert.theorem_id, params)
    if kind is Sharpening.NONE:
        return dataclasses.replace(cert, notes=cert.notes + (f"sharpening refused: {reason}",))
    return dataclasses.replace(cert, constant=cert.constant * factor ** cert.norm_power,
                               sharpening_applied=kind, sharpening_factor=factor)


# ---------------------------------------------------------------------------
# batch evaluation


def certify(tid: TheoremId, params: ProblemParams, norms: NormSource,
            legendre=None) -> BoundCertificate:
    """Evaluate one theorem, pulling the norms it needs from ``norms``."""
    v = _conditions(tid, params)
    if v:
        return _refuse(tid, params, v)
    n = params.n
    g = params.gamma_moment
    if tid is TheoremId.RES1:
        return certify_res1(params, *norms.factor_norms(params.r, params.s))
    if tid is TheoremId.COR1:
        return certify_cor1(params, *norms.factor_norms(params.r, params.r))
    if tid is TheoremId.CORQ1:
        return certify_corq1(params, norms.moment(g + 1.5))
    if tid is TheoremId.CORQ2:
        if math.isinf(params.r):
            return certify_corq2(params, math.nan)
        return certify_corq2(params, norms.weighted_moment(params.tau, params.r))
    if tid is TheoremId.RES2:
        return certify_res2(params, *norms.factor_norms(params.r, params.s))
    if tid is TheoremId.CORRES21:
        return certify_corres21(params, *norms.factor_norms(params.r, params.r))
    if tid is TheoremId.CORRES22:
        return certify_corres22(params, norms.moment(g + n / 2))
    if tid is TheoremId.CORRES2W:
        if math.isinf(params.r):
            return certify_corres2w(params, math.nan)
        return certify_corres2w(params, norms.weighted_moment(params.tau, params.r))
    if tid is TheoremId.RES3:
        return certify_res3(params, *norms.factor_norms(params.r, params.s))
    if tid is TheoremId.CORIM:
        return certify_corim(params, norms.q_norm(params.r / 2))
    if tid is TheoremId.CORIM1:
        return certify_corim1(params, norms.moment(g + n / 2))
    if tid in (TheoremId.RESULT4, TheoremId.RELAM1):
        return certify_result4(params, *norms.factor_norms(params.r, params.s))
    if tid is TheoremId.CORGEN:
        return certify_corgen(params, norms.moment(g + n / 2))
    if tid is TheoremId.RESULT5:
        return certify_result5(params, *norms.factor_norms(params.r, params.s), legendre)
    if tid is TheoremId.RESULT6:
        return certify_result6(params, *norms.factor_norms(params.r, params.s), legendre)
    if tid is TheoremId.CORRES6:
        return certify_corres6(params, norms.moment(g + n / (2 * params.m)), legendre)
    raise ValueError(f"unknown theorem {tid}")


def certify_all(params: ProblemParams, norms: NormSource, *, sharpen_constants: bool = False,
                theorems: Optional[Iterable[TheoremId]] = None) -> list:
    """Certificates for every theorem (inadmissible ones carry their reasons)."""
    out = []
    for tid in (theorems or TheoremId):
        cert = certify(tid, params, norms)
        if sharpen_constants:
            cert = sharpen(cert, params)
        out.append(cert)
    return out


def theta_family(tid: TheoremId, params: ProblemParams, norms: NormSource,
                 thetas: Sequence[float], *, sharpen_constants: bool = False) -> list:
    """Certificates of one modulus bound on a theta grid."""
    out = []
    for t in thetas:
        p = params.replace(theta=float(t))
        cert = certify(tid, p, norms)
        if sharpen_constants:
            cert = sharpen(cert, p)
        out.append(cert)
    return out
