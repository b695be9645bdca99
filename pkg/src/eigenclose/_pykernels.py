"""Pure-Python implementation of the hot numerical kernels.

This module mirrors ``_ckernels.pyx`` function for function; ``_backend``
imports the compiled module when available and falls back to this one.
Everything here works on Python floats only (no numpy) so that the two
implementations follow exactly the same arithmetic path.
"""

import math

# QUADPACK qk21 abscissae (positive half, descending) and weights.
XGK = (
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
)
WGK = (
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208969053191,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
)
WG = (
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
)

# Lanczos approximation, g = 607/128, 15 terms (Godfrey).
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.91893853320467274178
_EPS = 2.220446049250313e-16


def _lanczos_sum(z):
    # z = x - 1
    acc = LANCZOS_COEF[0]
    for k in range(1, 15):
        acc += LANCZOS_COEF[k] / (z + k)
    return acc


def lanczos_lgamma(x):
    """log Gamma(x) for x >= 0.5."""
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


def lanczos_gamma(x):
    """Gamma(x) for x >= 0.5; overflows to inf past x ~ 171.6."""
    if x > 140.0:
        lg = lanczos_lgamma(x)
        return math.exp(lg) if lg < 709.7 else math.inf
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    # split the power to delay overflow
    half = t ** ((z + 0.5) / 2.0)
    return 2.5066282746310005024 * half * math.exp(-t) * half * _lanczos_sum(z)


def hyp2f1_series(a, b, c, x, max_terms):
    """Direct Gauss series. Returns (value, abs_error, converged, terms)."""
    term = 1.0
    total = 1.0
    abs_sum = 1.0
    k = 0
    tail = math.inf
    while k < max_terms:
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        term *= ratio
        total += term
        abs_sum += abs(term)
        k += 1
        if term == 0.0:
            tail = 0.0
            break
        # ratio of successive terms tends to x < 1 once k exceeds |a|,|b|,|c|
        nxt = abs((a + k) * (b + k) / ((c + k) * (k + 1.0)) * x)
        if nxt < 1.0 and k > abs(a) + abs(b) + abs(c):
            tail = abs(term) * nxt / (1.0 - nxt)
            if tail <= _EPS * abs(total) * 0.5:
                break
    err = tail + 4.0 * _EPS * abs_sum
    converged = tail < math.inf and err <= 1e-12 * max(1.0, abs(total))
    return total, err, converged, k


def _gk21(f, args, lo, hi):
    centr = 0.5 * (lo + hi)
    hlgth = 0.5 * (hi - lo)
    fc = f(centr, args)
    resk = fc * WGK[10]
    resg = 0.0
    for j in range(10):
        dx = hlgth * XGK[j]
        fsum = f(centr - dx, args) + f(centr + dx, args)
        resk += WGK[j] * fsum
        if j % 2 == 1:
            resg += WG[j // 2] * fsum
    return resk * hlgth, abs((resk - resg) * hlgth)


def _adaptive(f, args, lo, hi, epsrel, epsabs, limit):
    res, err = _gk21(f, args, lo, hi)
    intervals = [(lo, hi, res, err)]
    total, total_err = res, err
    while total_err > max(epsabs, epsrel * abs(total)):
        if len(intervals) >= limit:
            return total, total_err, False
        imax = max(range(len(intervals)), key=lambda i: intervals[i][3])
        a, b, _, _ = intervals[imax]
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            return total, total_err, False
        r1, e1 = _gk21(f, args, a, mid)
        r2, e2 = _gk21(f, args, mid, b)
        intervals[imax] = (a, mid, r1, e1)
        intervals.append((mid, b, r2, e2))
        # re-sum to avoid drift
        total = math.fsum(iv[2] for iv in intervals)
        total_err = math.fsum(iv[3] for iv in intervals)
    return total, total_err, True


def _rational_piece(w, args):
    inv_pow, k, c, nu = args
    y = w ** inv_pow
    yk = y ** k
    return (1.0 + 2.0 * c * yk + yk * yk) ** (-nu)


def power_rational_integral(s, k, c, scale, nu, epsrel, limit):
    """Integral over (0, inf) of x**(s-1) * (x**(2k) + 2 c R x**k + R**2)**(-nu).

    Requires s > 0, 2*k*nu > s, R = scale > 0 and c > -1. The half line is
    split at R**(1/k); both halves are mapped onto (0, 1) with a power
    substitution that removes the algebraic endpoint behaviour.
    Returns (value, abs_error, ok).
    """
    sigma = 2.0 * k * nu - s
    x0 = scale ** (1.0 / k)
    pref = x0 ** s * scale ** (-2.0 * nu)
    r1, e1, ok1 = _adaptive(_rational_piece, (1.0 / s, k, c, nu), 0.0, 1.0, epsrel, 0.0, limit)
    r2, e2, ok2 = _adaptive(_rational_piece, (1.0 / sigma, k, c, nu), 0.0, 1.0, epsrel, 0.0, limit)
    value = pref * (r1 / s + r2 / sigma)
    err = pref * (e1 / s + e2 / sigma)
    return value, err, ok1 and ok2


def _exp_head(w, args):
    return math.exp(-(w ** args[0]))


def _exp_tail(u, args):
    return (1.0 - math.log(u)) ** args[0]


def power_exp_integral(s, b, epsrel, limit):
    """Integral over (0, inf) of x**(s-1) * exp(-b x) for s > 0, b > 0.

    Split at 1/b; the head uses x = w**(1/s)/b, the tail x = (1 - log u)/b.
    Returns (value, abs_error, ok).
    """
    x0 = 1.0 / b
    r1, e1, ok1 = _adaptive(_exp_head, (1.0 / s,), 0.0, 1.0, epsrel, 0.0, limit)
    r2, e2, ok2 = _adaptive(_exp_tail, (s - 1.0,), 0.0, 1.0, epsrel, 0.0, limit)
    pref = x0 ** s
    value = pref * (r1 / s + r2 * math.exp(-1.0))
    err = pref * (e1 / s + e2 * math.exp(-1.0))
    return value, err, ok1 and ok2
