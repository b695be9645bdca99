"""Real-parameter special functions.

Gamma, log-Gamma, Beta, the Gauss hypergeometric function on [0, 1),
Ferrers functions of fractional degree and order, and the sharp
Babenko-Beckner constants ``A_p``. Every public routine returns a
:class:`SpecfunResult` carrying an error estimate, except
:func:`babenko_factor`, which is a closed expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend

_EPS = 2.220446049250313e-16
MAX_TERMS = 1_000_000

# c - a - b closer than this to an integer is treated by interpolation
# through the logarithmic limit formula (the direct connection formula
# loses about eps/|d| to cancellation).
_DEGENERATE_WINDOW = 0.02


class DomainError(ValueError):
    """Argument outside the domain of a special function.

    Parameters
    ----------
    param : str
        Name of the offending parameter.
    message : str
        Human-readable explanation.
    """

    def __init__(self, param: str, message: str):
        super().__init__(f"{param}: {message}")
        self.param = param


@dataclass(frozen=True)
class SpecfunResult:
    """A value together with an absolute error estimate."""

    value: float
    abs_error_estimate: float
    converged: bool

    def __float__(self) -> float:
        return float(self.value)


def _result(value, err, ok=True):
    err = abs(err)
    if not math.isfinite(err):
        return SpecfunResult(value, math.inf, False)
    converged = bool(ok) and err <= 1e-12 * max(1.0, abs(value))
    return SpecfunResult(value, err, converged)


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


# ---------------------------------------------------------------------------
# Gamma family (internal real-line helpers, then the public positive-axis API)


def _gamma_real(x: float) -> float:
    """Gamma on the real line; raises at the poles."""
    if _is_nonpositive_int(x):
        raise DomainError("x", f"Gamma has a pole at {x}")
    if x >= 0.5:
        return _backend.lanczos_gamma(x)
    return math.pi / (math.sin(math.pi * x) * _backend.lanczos_gamma(1.0 - x))


def _rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if _is_nonpositive_int(x):
        return 0.0
    if x >= 0.5:
        g = _backend.lanczos_gamma(x)
        return 0.0 if math.isinf(g) else 1.0 / g
    return math.sin(math.pi * x) * _backend.lanczos_gamma(1.0 - x) / math.pi


def _gamma_rel_err(x: float) -> float:
    # Lanczos truncation plus rounding in t**(x - 1/2)
    t = abs(x) + 5.5
    return 2e-15 + 4.0 * _EPS * abs((abs(x) + 0.5) * math.log(t))


_BERN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)


def _digamma(x: float) -> float:
    """psi(x) for real x off the poles."""
    if _is_nonpositive_int(x):
        raise DomainError("x", f"digamma has a pole at {x}")
    if x < 0.5:
        return _digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for k, b in enumerate(_BERN, start=1):
        series += b / (2 * k) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def gamma_fn(x: float) -> SpecfunResult:
    """Gamma function for positive real arguments.

    Parameters
    ----------
    x : float
        Argument, must be positive.

    Raises
    ------
    DomainError
        If ``x <= 0``. Upstream this signals an inadmissible exponent.
    """
    x = float(x)
    if not x > 0:
        raise DomainError("x", f"gamma_fn requires x > 0, got {x}")
    v = _gamma_real(x)
    if math.isinf(v):
        return SpecfunResult(v, math.inf, False)
    return _result(v, abs(v) * _gamma_rel_err(x))


def lgamma_fn(x: float) -> SpecfunResult:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError("x", f"lgamma_fn requires x > 0, got {x}")
    if x >= 0.5:
        v = _backend.lanczos_lgamma(x)
    else:
        v = _backend.lanczos_lgamma(x + 1.0) - math.log(x)
    err = 4.0 * _EPS * (abs(v) + abs(x * math.log(x + 5.5))) + 2e-15
    return _result(v, err)


def beta_fn(x: float, y: float) -> SpecfunResult:
    """Euler Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x, y > 0."""
    x, y = float(x), float(y)
    if not x > 0:
        raise DomainError("x", f"beta_fn requires x > 0, got {x}")
    if not y > 0:
        raise DomainError("y", f"beta_fn requires y > 0, got {y}")
    rel = _gamma_rel_err(x) + _gamma_rel_err(y) + _gamma_rel_err(x + y)
    if x + y < 170.0:
        v = _gamma_real(x) * _gamma_real(y) * _rgamma(x + y)
    else:
        lg = lgamma_fn(x).value + lgamma_fn(y).value - lgamma_fn(x + y).value
        v = math.exp(lg)
        rel += 4.0 * _EPS * abs(lg)
    return _result(v, abs(v) * rel)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


def _series(a, b, c, x):
    v, err, ok, _ = _backend.hyp2f1_series(a, b, c, x, MAX_TERMS)
    return v, err, ok


def _connection_generic(a, b, c, x):
    """1 - x transformation for non-integer c - a - b."""
    y = 1.0 - x
    d = c - a - b
    f1, e1, ok1 = _series(a, b, 1.0 - d, y)
    f2, e2, ok2 = _series(c - a, c - b, 1.0 + d, y)
    g1 = _gamma_real(c) * _gamma_real(d) * _rgamma(c - a) * _rgamma(c - b)
    g2 = y**d * _gamma_real(c) * _gamma_real(-d) * _rgamma(a) * _rgamma(b)
    t1, t2 = g1 * f1, g2 * f2
    value = t1 + t2
    rel_g = 4 * _gamma_rel_err(max(abs(c), abs(d), abs(a), abs(b)) + 1.0)
    err = abs(g1) * e1 + abs(g2) * e2 + (abs(t1) + abs(t2)) * (rel_g + 8 * _EPS)
    return value, err, ok1 and ok2


def _log_series(coef_fn, y, start_scale):
    """Sum coef_fn(n) * y**n until the tail is negligible."""
    total = 0.0
    abs_sum = 0.0
    yn = start_scale
    last = math.inf
    for n in range(MAX_TERMS):
        t = coef_fn(n) * yn
        total += t
        abs_sum += abs(t)
        yn *= y
        if n > 4 and abs(t) <= _EPS * abs(total) * 0.25 and abs(t) <= last:
            return total, 8 * _EPS * abs_sum + abs(t), True
        last = abs(t)
    return total, math.inf, False


def _connection_integer(a, b, m, x):
    """F(a, b; a + b + m; x) for integer m by the logarithmic limit formulas."""
    y = 1.0 - x
    ly = math.log(y)
    c = a + b + m
    if m == 0:
        pref = _gamma_real(a + b) * _rgamma(a) * _rgamma(b)
        state = {"p": 1.0}

        def coef(n):
            if n > 0:
                state["p"] *= (a + n - 1) * (b + n - 1) / (n * n)
            return state["p"] * (
                2 * _digamma(n + 1.0) - _digamma(a + n) - _digamma(b + n) - ly
            )

        s, e, ok = _log_series(coef, y, 1.0)
        return pref * s, abs(pref) * e + abs(pref * s) * 64 * _EPS, ok

    k = abs(m)
    if m > 0:
        head_pref = _gamma_real(k) * _gamma_real(c) * _rgamma(a + k) * _rgamma(b + k)
        aa, bb = a, b
        head_scale = 1.0
        tail_pref = (-1.0) ** k * y**k * _gamma_real(c) * _rgamma(a) * _rgamma(b)
        ta, tb = a + k, b + k
    else:
        head_pref = _gamma_real(k) * _gamma_real(c) * _rgamma(a) * _rgamma(b)
        aa, bb = a - k, b - k
        head_scale = y ** (-k)
        tail_pref = (-1.0) ** k * _gamma_real(c) * _rgamma(a - k) * _rgamma(b - k)
        ta, tb = a, b

    head = 0.0
    head_abs = 0.0
    p = 1.0
    for n in range(k):
        t = p * y**n
        head += t
        head_abs += abs(t)
        if n + 1 < k:
            p *= (aa + n) * (bb + n) / ((n + 1.0) * (1.0 - k + n))
    head *= head_pref * head_scale
    head_abs *= abs(head_pref * head_scale)

    state = {"p": 1.0 / math.factorial(k)}

    def coef(n):
        if n > 0:
            state["p"] *= (ta + n - 1) * (tb + n - 1) / (n * (n + k))
        return state["p"] * (
            ly
            - _digamma(n + 1.0)
            - _digamma(n + k + 1.0)
            + _digamma(ta + n)
            + _digamma(tb + n)
        )

    s, e, ok = _log_series(coef, y, 1.0)
    value = head - tail_pref * s
    err = abs(tail_pref) * e + (head_abs + abs(tail_pref * s)) * 64 * _EPS
    return value, err, ok


def _connection_near_integer(a, b, c, x, m):
    """Interpolate in ``a`` through the exact-integer point and generic nodes.

    2F1 is entire in ``a``, so a degree-8 interpolant on nodes spaced
    ``_DEGENERATE_WINDOW`` apart (where the connection formula is well
    conditioned) plus the logarithmic formula at ``c - a - b = m`` is
    accurate to near rounding level.
    """
    d = c - a - b
    h = _DEGENERATE_WINDOW
    offsets = range(-4, 5)
    nodes = []
    vals = []
    errs = []
    ok = True
    for j in offsets:
        dj = m + j * h
        aj = c - b - dj
        if j == 0:
            v, e, okj = _connection_integer(aj, b, m, x)
        else:
            v, e, okj = _connection_generic(aj, b, c, x)
        nodes.append(dj)
        vals.append(v)
        errs.append(e)
        ok = ok and okj

    def lagrange(idx):
        total = 0.0
        lebesgue = 0.0
        for i in idx:
            w = 1.0
            for j in idx:
                if j != i:
                    w *= (d - nodes[j]) / (nodes[i] - nodes[j])
            total += w * vals[i]
            lebesgue += abs(w) * errs[i]
        return total, lebesgue

    full, propagated = lagrange(range(9))
    low, _ = lagrange(range(1, 8))
    err = abs(full - low) + propagated
    return full, err, ok


def hyp2f1(a: float, b: float, c: float, x: float) -> SpecfunResult:
    """Gauss hypergeometric function 2F1(a, b; c; x) for 0 <= x < 1.

    For ``x <= 1/2`` the defining series is summed directly. Otherwise the
    ``1 - x`` connection formula is used so every series argument is at
    most 1/2; when ``c - a - b`` is an integer (or nearly so) the
    logarithmic limit form is used instead.

    Parameters
    ----------
    a, b, c : float
        Parameters; ``c`` must not be a non-positive integer.
    x : float
        Argument in ``[0, 1)``.

    Returns
    -------
    SpecfunResult
        ``converged`` is false when a series needed more than a million
        terms or the error estimate exceeds ``1e-12`` relative.
    """
    a, b, c, x = float(a), float(b), float(c), float(x)
    if _is_nonpositive_int(c):
        raise DomainError("c", f"c must not be a non-positive integer, got {c}")
    if not (0.0 <= x < 1.0):
        raise DomainError("x", f"hyp2f1 requires 0 <= x < 1, got {x}")
    if x == 0.0:
        return SpecfunResult(1.0, 0.0, True)
    if x <= 0.5 or _is_nonpositive_int(a) or _is_nonpositive_int(b):
        return _result(*_series(a, b, c, x))
    d = c - a - b
    m = round(d)
    if abs(d - m) < _DEGENERATE_WINDOW:
        if d == m:
            return _result(*_connection_integer(a, b, int(m), x))
        return _result(*_connection_near_integer(a, b, c, x, int(m)))
    return _result(*_connection_generic(a, b, c, x))


# ---------------------------------------------------------------------------
# Ferrers functions


def legendre_p(degree: float, order: float, x: float) -> SpecfunResult:
    """Ferrers function of the first kind ``P_nu^mu(x)`` on (-1, 1).

    Evaluated as ``((1+x)/(1-x))**(mu/2) / Gamma(1-mu)``
    ``* 2F1(-nu, nu+1; 1-mu; (1-x)/2)``; degree and order may be any reals
    with ``1 - mu`` not a non-positive integer.

    Raises
    ------
    DomainError
        At a pole of ``Gamma(1 - mu)`` or for ``x`` outside (-1, 1).
    OverflowError
        When the value is not representable (``|x|`` too close to 1 with
        positive order).
    """
    nu, mu, x = float(degree), float(order), float(x)
    if not (-1.0 < x < 1.0):
        raise DomainError("x", f"legendre_p requires -1 < x < 1, got {x}")
    if _is_nonpositive_int(1.0 - mu):
        raise DomainError("order", f"Gamma(1 - order) has a pole at order={mu}")
    z = 0.5 * (1.0 - x)
    f = hyp2f1(-nu, nu + 1.0, 1.0 - mu, z)
    try:
        pref = ((1.0 + x) / (1.0 - x)) ** (0.5 * mu) * _rgamma(1.0 - mu)
    except OverflowError:
        pref = math.inf
    value = pref * f.value
    if not math.isfinite(value):
        raise OverflowError(f"P^{mu}_{nu}({x}) is not representable")
    rel = _gamma_rel_err(1.0 - mu) + 4 * _EPS * (1.0 + abs(0.5 * mu * math.log((1 + x) / (1 - x))))
    err = abs(pref) * f.abs_error_estimate + abs(value) * rel
    return _result(value, err, f.converged)


# ---------------------------------------------------------------------------
# Sharp Young / Hausdorff-Young constants


def babenko_factor(p: float) -> float:
    """Babenko-Beckner constant ``A_p = (p**(1/p) / q**(1/q))**(1/2)``.

    ``q = p/(p-1)`` is the dual index; at ``p = 1`` the ``q**(1/q)`` factor
    is taken as 1, so ``A_1 = 1``.

    Raises
    ------
    DomainError
        If ``p`` lies outside ``[1, 2]``.
    """
    p = float(p)
    if not (1.0 <= p <= 2.0):
        raise DomainError("p", f"babenko_factor requires 1 <= p <= 2, got {p}")
    if p == 1.0:
        return 1.0
    q = p / (p - 1.0)
    return math.sqrt(p ** (1.0 / p) / q ** (1.0 / q))
