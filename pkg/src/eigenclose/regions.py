"""Enclosure regions in the complex plane assembled from certificates."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .bounds import BoundCertificate, Measure

TWO_PI = 2 * math.pi


class ExportFormat(str, enum.Enum):
    CSV = "CSV"
    SVG = "SVG"
    STRUCTURED = "STRUCTURED"


def theta_grid(points: int) -> np.ndarray:
    """``points`` cell-centred angles in ``(0, 2 pi)``."""
    return (np.arange(points) + 0.5) * TWO_PI / points


@dataclass(frozen=True)
class EnclosureRegion:
    """Constraints on eigenvalues implied by a set of certificates.

    ``family_radii`` maps a modulus-bound id to its radius on ``theta_grid``
    (NaN where it is inadmissible). ``halfplane`` and ``strip`` map ids to
    the radii of real-part and imaginary-part bounds.
    """

    theta_grid: np.ndarray
    family_radii: dict
    halfplane: dict
    strip: dict
    notes: tuple = ()

    @property
    def is_empty(self) -> bool:
        return not (self.family_radii or self.halfplane or self.strip)

    @property
    def radius_at_theta(self) -> np.ndarray:
        if not self.family_radii:
            return np.full(len(self.theta_grid), np.nan)
        stack = np.vstack(list(self.family_radii.values()))
        with np.errstate(all="ignore"):
            out = np.nanmin(np.where(np.isnan(stack), np.inf, stack), axis=0)
        return np.where(np.isinf(out), np.nan, out)

    @property
    def theta_provenance(self) -> list:
        if not self.family_radii:
            return [None] * len(self.theta_grid)
        ids = list(self.family_radii)
        stack = np.vstack([self.family_radii[k] for k in ids])
        stack = np.where(np.isnan(stack), np.inf, stack)
        best = np.argmin(stack, axis=0)
        return [ids[b] if np.isfinite(stack[b, j]) else None for j, b in enumerate(best)]

    @property
    def halfplane_cap(self) -> Optional[float]:
        return min(self.halfplane.values()) if self.halfplane else None

    @property
    def halfplane_source(self) -> Optional[str]:
        return min(self.halfplane, key=self.halfplane.get) if self.halfplane else None

    @property
    def strip_cap(self) -> Optional[float]:
        return min(self.strip.values()) if self.strip else None

    @property
    def strip_source(self) -> Optional[str]:
        return min(self.strip, key=self.strip.get) if self.strip else None

    def scaled(self, c: float) -> "EnclosureRegion":
        """All radii multiplied by ``c``."""
        return EnclosureRegion(self.theta_grid, {k: v * c for k, v in self.family_radii.items()},
                               {k: v * c for k, v in self.halfplane.items()},
                               {k: v * c for k, v in self.strip.items()}, self.notes)

    def to_dict(self) -> dict:
        def clean(a):
            return [None if not np.isfinite(x) else float(x) for x in a]

        return {
            "theta_grid": [float(t) for t in self.theta_grid],
            "radius_at_theta": clean(self.radius_at_theta),
            "theta_provenance": self.theta_provenance,
            "families": {k: clean(v) for k, v in sorted(self.family_radii.items())},
            "halfplane_cap": self.halfplane_cap,
            "halfplane_source": self.halfplane_source,
            "halfplane": dict(sorted(self.halfplane.items())),
            "strip_cap": self.strip_cap,
            "strip_source": self.strip_source,
            "strip": dict(sorted(self.strip.items())),
            "notes": list(self.notes),
        }


def build_region(certs: Iterable[BoundCertificate], grid: Sequence[float]) -> EnclosureRegion:
    """Pointwise-minimum composition of admissible certificates.

    Modulus certificates contribute at the grid node matching their theta;
    real- and imaginary-part certificates contribute caps. Inadmissible
    certificates are skipped and counted in ``notes``. With no admissible
    certificate the region is empty (``is_empty``) and constrains nothing.
    """
    grid = np.asarray(sorted(float(t) for t in grid))
    if np.any((grid <= 0) | (grid >= TWO_PI)):
        raise ValueError("theta grid must lie in (0, 2 pi)")
    families: dict = {}
    halfplane: dict = {}
    strip: dict = {}
    skipped: dict = {}
    offgrid = 0
    for c in certs:
        cid = c.theorem_id.value
        if not c.admissible:
            skipped[cid] = skipped.get(cid, 0) + 1
            continue
        r = c.radius
        if c.measure is Measure.MODULUS:
            j = int(np.argmin(np.abs(grid - c.theta))) if len(grid) else -1
            if j < 0 or abs(grid[j] - c.theta) > 1e-12:
                offgrid += 1
                continue
            arr = families.setdefault(cid, np.full(len(grid), np.nan))
            arr[j] = r if np.isnan(arr[j]) else min(arr[j], r)
        elif c.measure is Measure.NEG_REAL_PART:
            halfplane[cid] = min(halfplane.get(cid, math.inf), r)
        else:
            strip[cid] = min(strip.get(cid, math.inf), r)
    notes = [f"{cid}: {k} inadmissible certificate(s) ignored" for cid, k in sorted(skipped.items())]
    if offgrid:
        notes.append(f"{offgrid} modulus certificate(s) off the theta grid ignored")
    if not (families or halfplane or strip):
        notes.append("no enclosure: no admissible certificate")
    return EnclosureRegion(grid, families, halfplane, strip, tuple(notes))


def principal_arg(lam: complex) -> float:
    t = math.atan2(lam.imag, lam.real)
    return t if t > 0 else t + TWO_PI


def _interp_log(grid, radii, theta) -> float:
    """Linear interpolation of log-radius; NaN outside the grid or next to a gap."""
    if len(grid) == 0 or theta < grid[0] or theta > grid[-1]:
        return math.nan
    j = int(np.searchsorted(grid, theta))
    if j < len(grid) and grid[j] == theta:
        return float(radii[j])
    r0, r1 = radii[j - 1], radii[j]
    if not (np.isfinite(r0) and np.isfinite(r1)):
        return math.nan
    w = (theta - grid[j - 1]) / (grid[j] - grid[j - 1])
    return float(math.exp((1 - w) * math.log(r0) + w * math.log(r1)))


def _check_lambda(lam) -> complex:
    lam = complex(lam)
    if lam.imag == 0 and lam.real >= 0:
        raise ValueError(f"lambda = {lam} lies on the essential spectrum [0, inf)")
    return lam


def constraint_margins(region: EnclosureRegion, lam: complex) -> list:
    """``[(id, measure, radius, margin)]`` for every constraint applicable at ``lam``."""
    lam = _check_lambda(lam)
    theta = principal_arg(lam)
    out = []
    for cid in sorted(region.family_radii):
        r = _interp_log(region.theta_grid, region.family_radii[cid], theta)
        if math.isfinite(r):
            out.append((cid, Measure.MODULUS.value, r, r - abs(lam)))
    if lam.real < 0:
        for cid in sorted(region.halfplane):
            r = region.halfplane[cid]
            out.append((cid, Measure.NEG_REAL_PART.value, r, r - abs(lam.real)))
    if lam.imag != 0:
        for cid in sorted(region.strip):
            r = region.strip[cid]
            out.append((cid, Measure.ABS_IMAG_PART.value, r, r - abs(lam.imag)))
    return out


@dataclass(frozen=True)
class Containment:
    inside: bool
    margin: float
    binding: Optional[str]
    margins: tuple = field(default=())


def contains(region: EnclosureRegion, lam: complex) -> Containment:
    """Membership of ``lam`` (off ``[0, inf)``) with the smallest margin.

    ``margin`` is ``radius - measured quantity`` for the tightest applicable
    constraint; ``inf`` if none applies.
    """
    m = constraint_margins(region, lam)
    if not m:
        return Containment(True, math.inf, None, ())
    cid, measure, radius, margin = min(m, key=lambda t: t[3])
    return Containment(margin >= 0, margin, f"{cid}:{measure}", tuple(m))


def _csv(region: EnclosureRegion) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "radius", "constraint"])
    for t, r, p in zip(region.theta_grid, region.radius_at_theta, region.theta_provenance):
        if np.isfinite(r):
            w.writerow([repr(float(t)), repr(float(r)), p])
    for cid, r in sorted(region.halfplane.items()):
        w.writerow(["", repr(float(r)), f"halfplane:{cid}"])
    for cid, r in sorted(region.strip.items()):
        w.writerow(["", repr(float(r)), f"strip:{cid}"])
    return buf.getvalue().encode()


def _svg(region: EnclosureRegion, size: int = 480) -> bytes:
    radii = region.radius_at_theta
    finite = radii[np.isfinite(radii)]
    scales = [float(np.min(finite)) * 3] if finite.size else []
    scales += [c for c in (region.halfplane_cap, region.strip_cap) if c]
    top = max(scales, default=0.0)
    extent = 1.2 * top if top > 0 else 1.0
    half = size / 2

    def px(z: complex) -> str:
        return f"{half + z.real / extent * half:.3f},{half - z.imag / extent * half:.3f}"

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<title>{escape("enclosure region")}</title>',
             f'<rect width="{size}" height="{size}" fill="white"/>',
             f'<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#bbb"/>',
             f'<line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#bbb"/>',
             f'<line x1="{half}" y1="{half}" x2="{size}" y2="{half}" stroke="red" '
             f'stroke-width="3"><title>essential spectrum [0, inf)</title></line>']
    if finite.size:
        pts = [px(min(float(r), extent) * complex(math.cos(t), math.sin(t)))
               for t, r in zip(region.theta_grid, radii) if np.isfinite(r)]
        parts.append(f'<polyline fill="none" stroke="navy" stroke-width="1.5" '
                     f'points="{" ".join(pts)}"/>')
    if region.halfplane_cap:
        x = half - region.halfplane_cap / extent * half
        parts.append(f'<line x1="{x:.3f}" y1="0" x2="{x:.3f}" y2="{size}" stroke="darkgreen" '
                     f'stroke-dasharray="6,3"><title>{escape(region.halfplane_source)}</title></line>')
    if region.strip_cap:
        for sgn in (1, -1):
            y = half - sgn * region.strip_cap / extent * half
            parts.append(f'<line x1="0" y1="{y:.3f}" x2="{size}" y2="{y:.3f}" stroke="purple" '
                         f'stroke-dasharray="2,3"><title>{escape(region.strip_source)}</title></line>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode()


def export_region(region: EnclosureRegion, fmt) -> bytes:
    fmt = ExportFormat(str(fmt).upper() if not isinstance(fmt, ExportFormat) else fmt)
    if fmt is ExportFormat.CSV:
        return _csv(region)
    if fmt is ExportFormat.SVG:
        return _svg(region)
    return (json.dumps(region.to_dict(), indent=2, sort_keys=True) + "\n").encode()
