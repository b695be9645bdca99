# cython: language_level=3
"""Compiled versions of the kernels in ``_pykernels``.

Same algorithms, same constants, same return conventions; only the
arithmetic runs in C. Integrands are fixed C functions selected by the
entry point, so the adaptive loop never calls back into Python.
"""

from libc.math cimport exp, log, fabs, pow, INFINITY
from libc.stdlib cimport malloc, free

from eigenclose._pykernels import XGK, WGK, WG, LANCZOS_G, LANCZOS_COEF

cdef double _XGK[11]
cdef double _WGK[11]
cdef double _WG[5]
cdef double _LC[15]
cdef double _G = LANCZOS_G
cdef double _LOG_SQRT_2PI = 0.91893853320467274178
cdef double _EPS = 2.220446049250313e-16

for _i in range(11):
    _XGK[_i] = XGK[_i]
    _WGK[_i] = WGK[_i]
for _i in range(5):
    _WG[_i] = WG[_i]
for _i in range(15):
    _LC[_i] = LANCZOS_COEF[_i]

ctypedef double (*integrand_t)(double, double*) noexcept nogil


cdef inline double _lanczos_sum(double z) noexcept nogil:
    cdef double acc = _LC[0]
    cdef int k
    for k in range(1, 15):
        acc += _LC[k] / (z + k)
    return acc


cpdef double lanczos_lgamma(double x):
    """log Gamma(x) for x >= 0.5."""
    cdef double z = x - 1.0
    cdef double t = z + _G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * log(t) - t + log(_lanczos_sum(z))


cpdef double lanczos_gamma(double x):
    """Gamma(x) for x >= 0.5; overflows to inf past x ~ 171.6."""
    cdef double z, t, half, lg
    if x > 140.0:
        lg = lanczos_lgamma(x)
        return exp(lg) if lg < 709.7 else INFINITY
    z = x - 1.0
    t = z + _G + 0.5
    half = pow(t, (z + 0.5) / 2.0)
    return 2.5066282746310005024 * half * exp(-t) * half * _lanczos_sum(z)


def hyp2f1_series(double a, double b, double c, double x, long max_terms):
    """Direct Gauss series. Returns (value, abs_error, converged, terms)."""
    cdef double term = 1.0, total = 1.0, abs_sum = 1.0
    cdef double ratio, nxt, err
    cdef double tail = INFINITY
    cdef long k = 0
    cdef double bound = fabs(a) + fabs(b) + fabs(c)
    while k < max_terms:
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        term *= ratio
        total += term
        abs_sum += fabs(term)
        k += 1
        if term == 0.0:
            tail = 0.0
            break
        nxt = fabs((a + k) * (b + k) / ((c + k) * (k + 1.0)) * x)
        if nxt < 1.0 and k > bound:
            tail = fabs(term) * nxt / (1.0 - nxt)
            if tail <= _EPS * fabs(total) * 0.5:
                break
    err = tail + 4.0 * _EPS * abs_sum
    converged = tail < INFINITY and err <= 1e-12 * max(1.0, fabs(total))
    return total, err, bool(converged), k


cdef void _gk21(integrand_t f, double* args, double lo, double hi,
                double* res, double* err) noexcept nogil:
    cdef double centr = 0.5 * (lo + hi)
    cdef double hlgth = 0.5 * (hi - lo)
    cdef double resk = f(centr, args) * _WGK[10]
    cdef double resg = 0.0
    cdef double dx, fsum
    cdef int j
    for j in range(10):
        dx = hlgth * _XGK[j]
        fsum = f(centr - dx, args) + f(centr + dx, args)
        resk += _WGK[j] * fsum
        if j % 2 == 1:
            resg += _WG[j // 2] * fsum
    res[0] = resk * hlgth
    err[0] = fabs((resk - resg) * hlgth)


cdef int _adaptive(integrand_t f, double* args, double lo, double hi,
                   double epsrel, double epsabs, int limit,
                   double* out_res, double* out_err) noexcept nogil:
    cdef double* a = <double*> malloc(limit * sizeof(double))
    cdef double* b = <double*> malloc(limit * sizeof(double))
    cdef double* r = <double*> malloc(limit * sizeof(double))
    cdef double* e = <double*> malloc(limit * sizeof(double))
    cdef int n = 1, i, imax, ok = 1
    cdef double total, total_err, mid, emax, r1, e1, r2, e2
    a[0] = lo
    b[0] = hi
    _gk21(f, args, lo, hi, &r[0], &e[0])
    total = r[0]
    total_err = e[0]
    while total_err > max(epsabs, epsrel * fabs(total)):
        if n >= limit:
            ok = 0
            break
        imax = 0
        emax = e[0]
        for i in range(1, n):
            if e[i] > emax:
                emax = e[i]
                imax = i
        mid = 0.5 * (a[imax] + b[imax])
        if mid <= a[imax] or mid >= b[imax]:
            ok = 0
            break
        _gk21(f, args, a[imax], mid, &r1, &e1)
        _gk21(f, args, mid, b[imax], &r2, &e2)
        a[n] = mid
        b[n] = b[imax]
        r[n] = r2
        e[n] = e2
        b[imax] = mid
        r[imax] = r1
        e[imax] = e1
        n += 1
        total = 0.0
        total_err = 0.0
        for i in range(n):
            total += r[i]
            total_err += e[i]
    out_res[0] = total
    out_err[0] = total_err
    free(a)
    free(b)
    free(r)
    free(e)
    return ok


cdef double _rational_piece(double w, double* args) noexcept nogil:
    # args: inv_pow, k, c, nu
    cdef double y = pow(w, args[0])
    cdef double yk = pow(y, args[1])
    return pow(1.0 + 2.0 * args[2] * yk + yk * yk, -args[3])


cdef double _exp_head(double w, double* args) noexcept nogil:
    return exp(-pow(w, args[0]))


cdef double _exp_tail(double u, double* args) noexcept nogil:
    return pow(1.0 - log(u), args[0])


def power_rational_integral(double s, double k, double c, double scale,
                            double nu, double epsrel, int limit):
    """Integral over (0, inf) of x**(s-1) * (x**(2k) + 2 c R x**k + R**2)**(-nu).

    See ``_pykernels.power_rational_integral``. Returns (value, abs_error, ok).
    """
    cdef double sigma = 2.0 * k * nu - s
    cdef double x0 = pow(scale, 1.0 / k)
    cdef double pref = pow(x0, s) * pow(scale, -2.0 * nu)
    cdef double args[4]
    cdef double r1, e1, r2, e2
    cdef int ok1, ok2
    args[1] = k
    args[2] = c
    args[3] = nu
    with nogil:
        args[0] = 1.0 / s
        ok1 = _adaptive(_rational_piece, args, 0.0, 1.0, epsrel, 0.0, limit, &r1, &e1)
        args[0] = 1.0 / sigma
        ok2 = _adaptive(_rational_piece, args, 0.0, 1.0, epsrel, 0.0, limit, &r2, &e2)
    return (pref * (r1 / s + r2 / sigma), pref * (e1 / s + e2 / sigma),
            bool(ok1 and ok2))


def power_exp_integral(double s, double b, double epsrel, int limit):
    """Integral over (0, inf) of x**(s-1) * exp(-b x) for s > 0, b > 0.

    See ``_pykernels.power_exp_integral``. Returns (value, abs_error, ok).
    """
    cdef double x0 = 1.0 / b
    cdef double args[1]
    cdef double r1, e1, r2, e2, pref
    cdef int ok1, ok2
    with nogil:
        args[0] = 1.0 / s
        ok1 = _adaptive(_exp_head, args, 0.0, 1.0, epsrel, 0.0, limit, &r1, &e1)
        args[0] = s - 1.0
        ok2 = _adaptive(_exp_tail, args, 0.0, 1.0, epsrel, 0.0, limit, &r2, &e2)
    pref = pow(x0, s)
    return (pref * (r1 / s + r2 * exp(-1.0)), pref * (e1 / s + e2 * exp(-1.0)),
            bool(ok1 and ok2))
