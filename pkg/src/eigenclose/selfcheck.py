"""Closed-form versus quadrature grid and corollary consistency checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import bounds, kernels
from .bounds import ProblemParams
from .kernels import LambdaPolar
from .specfun import legendre_p

GRID_N = (1, 2, 3, 5)
GRID_M = (0.5, 1.0, 2.0)
GRID_THETA = (math.pi / 6, math.pi / 2, math.pi, 3 * math.pi / 2)
ALPHA_OFFSETS = (0.25, 0.5, 1.0, 2.0, 4.0)
GREEN_ALPHAS = (1.0, 1.5, 2.0, 2.5, 2.9)
MODULI = (1.0, 4.0)


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def kernel_grid(legendre: Callable = legendre_p) -> list:
    """Symbol, Green-function and heat-bound norms: closed form against quadrature.

    Every symbol-norm point must agree (the closed form is quadrature
    validated); at theta = pi the quadrature must also reproduce the
    real-axis Beta formula to 1e-8.
    """
    items = []
    for n in GRID_N:
        for m in GRID_M:
            k = n / (2 * m)
            for off in ALPHA_OFFSETS:
                alpha = k + off
                for theta in GRID_THETA:
                    for mod in MODULI:
                        lam = LambdaPolar(mod, theta)
                        res = kernels.symbol_norm(n, m, alpha, lam, legendre=legendre)
                        name = f"symbol n={n} m={m:g} alpha={alpha:g} theta={theta:.4f} |lam|={mod:g}"
                        ok = res.agreement
                        detail = f"gap={res.relative_gap:.2e}"
                        if theta == math.pi:
                            ref = kernels.real_axis_symbol_power(n, m, alpha, -mod)
                            gap = _rel(res.quadrature ** alpha, ref)
                            ok = ok and gap <= 1e-8
                            detail += f" real-axis gap={gap:.2e}"
                        items.append(CheckItem(name, ok, detail))
    for alpha in GREEN_ALPHAS:
        for theta in GRID_THETA:
            for mod in MODULI:
                res = kernels.green3d_norm(alpha, LambdaPolar(mod, theta))
                items.append(CheckItem(f"green3d alpha={alpha:g} theta={theta:.4f} |lam|={mod:g}",
                                       res.agreement, f"gap={res.relative_gap:.2e}"))
    for n in (3, 5):
        upper = n / (n - 2)
        for j in range(5):
            alpha = 1 + (upper - 1) * j / 5
            for re in (-1.0, -4.0):
                res = kernels.heat_bound_norm(n, alpha, re)
                items.append(CheckItem(f"heat n={n} alpha={alpha:g} re={re:g}",
                                       res.relative_gap <= 1e-8, f"gap={res.relative_gap:.2e}"))
    return items


def _radius_pair(name, a, b, tol=1e-12):
    if not (a.admissible and b.admissible):
        return CheckItem(name, False, f"inadmissible: {a.violated_conditions} {b.violated_conditions}")
    gap = _rel(a.radius, b.radius)
    return CheckItem(name, gap <= tol, f"rel gap={gap:.2e}")


def corollary_suite() -> list:
    """Corollary certificates against their parent theorems under the stated substitution."""
    items = []
    thetas = (0.4, math.pi / 2, 2.0, math.pi, 4.5)
    na, nb = 0.8, 1.3
    # COR1 from RES1 with r = s
    for r in (3.5, 4.0, 6.0, 10.0):
        for t in thetas:
            p = ProblemParams(3, 2.0, r, r, theta=t)
            items.append(_radius_pair(f"COR1<RES1 r={r:g} theta={t:.3f}",
                                      bounds.certify_cor1(p, na, nb), bounds.certify_res1(p, na, nb)))
    # CORQ1 from COR1, r = 2 gamma + 3, ||a|| = ||b|| = ||q||_{gamma+3/2}^(1/2)
    for g in (0.25, 0.5, 1.0, 2.5):
        mom = 2.7
        r = 2 * g + 3
        qn = mom ** (1 / (g + 1.5))
        for t in thetas:
            p = ProblemParams(3, 2.0, r, r, theta=t, gamma_moment=g)
            items.append(_radius_pair(f"CORQ1<COR1 gamma={g:g} theta={t:.3f}",
                                      bounds.certify_corq1(p, mom),
                                      bounds.certify_cor1(p, qn ** 0.5, qn ** 0.5)))
    # CORQ2 from COR1 with a = (1+|x|^2)^(-tau/2)
    for tau, r in ((2.0, 4.0), (1.0, 5.0), (1.5, 3.5)):
        wm = 1.9
        wa = kernels_weight(3, tau, r)
        for t in thetas:
            p = ProblemParams(3, 2.0, r, r, theta=t, tau=tau)
            items.append(_radius_pair(f"CORQ2<COR1 tau={tau:g} r={r:g} theta={t:.3f}",
                                      bounds.certify_corq2(p, wm),
                                      bounds.certify_cor1(p, wa, wm ** (1 / r))))
    # CORRES21 from RES2 with r = s
    for n in (3, 4, 5):
        for r in (n + 0.5, 2 * n, 3 * n):
            p = ProblemParams(n, 2.0, r, r)
            items.append(_radius_pair(f"CORRES21<RES2 n={n} r={r:g}",
                                      bounds.certify_corres21(p, na, nb),
                                      bounds.certify_res2(p, na, nb)))
    # CORRES22 from CORRES21 through |Re lambda| = |lambda| |cos theta|
    for n in (3, 5):
        for g in (0.5, 1.0, 2.0):
            mom = 1.7
            r = 2 * g + n
            qn = mom ** (1 / (g + n / 2))
            for t in (1.8, math.pi, 4.0):
                p = ProblemParams(n, 2.0, r, r, theta=t, gamma_moment=g)
                c22 = bounds.certify_corres22(p, mom)
                c21 = bounds.certify_corres21(p, qn ** 0.5, qn ** 0.5)
                name = f"CORRES22<CORRES21 n={n} gamma={g:g} theta={t:.3f}"
                if not (c22.admissible and c21.admissible):
                    items.append(CheckItem(name, False, "inadmissible"))
                    continue
                gap = _rel(c22.radius, c21.radius / abs(math.cos(t)))
                items.append(CheckItem(name, gap <= 1e-12, f"rel gap={gap:.2e}"))
    # CORRES2W from CORRES21 with a = (1+|x|^2)^(-tau/2)
    for n, tau, r in ((3, 1.0, 4.0), (4, 1.0, 6.0), (5, 2.0, 6.0)):
        wm = 2.2
        p = ProblemParams(n, 2.0, r, r, tau=tau)
        items.append(_radius_pair(f"CORRES2W<CORRES21 n={n} tau={tau:g} r={r:g}",
                                  bounds.certify_corres2w(p, wm),
                                  bounds.certify_corres21(p, kernels_weight(n, tau, r), wm ** (1 / r))))
    # CORIM / CORIM1 from RES3 at p = 2, r = s
    for n in (3, 4):
        for r in (n + 1.0, 2 * n):
            qn = 1.4
            p = ProblemParams(n, 2.0, r, r)
            items.append(_radius_pair(f"CORIM<RES3 n={n} r={r:g}", bounds.certify_corim(p, qn),
                                      bounds.certify_res3(p, qn ** 0.5, qn ** 0.5)))
        for g in (0.5, 1.0, 3.0):
            mom = 2.1
            r = 2 * g + n
            qn = mom ** (1 / (g + n / 2))
            p = ProblemParams(n, 2.0, r, r, gamma_moment=g)
            items.append(_radius_pair(f"CORIM1<RES3 n={n} gamma={g:g}",
                                      bounds.certify_corim1(p, mom),
                                      bounds.certify_res3(p, qn ** 0.5, qn ** 0.5)))
    # CORGEN from RESULT4, r = s = 2 gamma + n
    for n in (1, 2, 3):
        for g in (0.5, 1.0, 2.0):
            mom = 3.1
            r = 2 * g + n
            qn = mom ** (1 / (g + n / 2))
            p = ProblemParams(n, 2.0, r, r, gamma_moment=g)
            items.append(_radius_pair(f"CORGEN<RESULT4 n={n} gamma={g:g}",
                                      bounds.certify_corgen(p, mom),
                                      bounds.certify_result4(p, qn ** 0.5, qn ** 0.5)))
    # CORRES6 from RESULT6, r = s = 2 (gamma + n/2m)
    for n, m, g in ((1, 1.0, 1.0), (1, 2.0, 1.0), (3, 1.0, 0.5), (3, 2.0, 1.0), (2, 0.75, 1.5)):
        mom = 1.6
        a = g + n / (2 * m)
        r = 2 * a
        qn = mom ** (1 / a)
        for t in (0.7, math.pi, 5.0):
            p = ProblemParams(n, 2.0, r, r, m=m, theta=t, gamma_moment=g)
            items.append(_radius_pair(f"CORRES6<RESULT6 n={n} m={m:g} gamma={g:g} theta={t:.3f}",
                                      bounds.certify_corres6(p, mom),
                                      bounds.certify_result6(p, qn ** 0.5, qn ** 0.5)))
    return items


def kernels_weight(n, tau, r):
    from .potentials import weight_norm_closed

    return weight_norm_closed(n, tau, r).value


def constant_consistency(legendre: Callable = legendre_p) -> list:
    """RESULT5 at theta = pi against RESULT4, and RESULT6 at m = 1 against RESULT5 (1e-8)."""
    items = []
    for n in (1, 2, 3, 5):
        for off in ALPHA_OFFSETS:
            # 1/r + 1/s <= 1 in the index window, so alpha >= 1
            alpha = max(n / 2, 1.0) + off
            r = 2 * alpha
            for t in GRID_THETA + (0.3, 2.5):
                p = ProblemParams(n, 2.0, r, r, theta=t)
                c5 = bounds.certify_result5(p, 1.0, 1.0, legendre)
                c6 = bounds.certify_result6(p, 1.0, 1.0, legendre)
                if not (c5.admissible and c6.admissible):
                    items.append(CheckItem(f"RESULT5/6 n={n} alpha={alpha:g}", False, "inadmissible"))
                    continue
                gap = _rel(c6.constant, c5.constant)
                items.append(CheckItem(f"RESULT6(m=1)=RESULT5 n={n} alpha={alpha:g} theta={t:.3f}",
                                       gap <= 1e-8, f"rel gap={gap:.2e}"))
                if t == math.pi:
                    c4 = bounds.certify_result4(p, 1.0, 1.0)
                    gap = _rel(c5.constant, c4.constant)
                    items.append(CheckItem(f"RESULT5(pi)=RESULT4 n={n} alpha={alpha:g}",
                                           gap <= 1e-8, f"rel gap={gap:.2e}"))
    return items


def perturbed_legendre(factor: float) -> Callable:
    """A Ferrers function scaled by ``factor`` (for the failure-injection check)."""

    def leg(degree, order, x):
        res = legendre_p(degree, order, x)
        return res.value * factor

    return leg


def run_all(legendre: Optional[Callable] = None) -> list:
    leg = legendre or legendre_p
    return [("kernel grid", kernel_grid(leg)),
            ("corollary consistency", corollary_suite()),
            ("constant consistency", constant_consistency(leg))]
