"""Command-line entry point: ``eigenclose {bound,region,validate,selfcheck}``.

Exit codes: 0 success, 1 a check failed (no admissible certificate, an
eigenvalue outside its enclosure, a self-check item failed), 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
from typing import Optional

from . import __version__, bounds, gridio, regions, selfcheck
from .bounds import THETA_DEPENDENT, TheoremId
from .catalog import build_potential
from .config import ConfigError, RunConfig, load_config
from .oracle import (MAX_DENSE, Discretization, OracleError, birman_schwinger_norm,
                     compute_spectrum, verdicts_tsv, verify_certificates)
from .potentials import PotentialNorms, PotentialSpec

log = logging.getLogger("eigenclose")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("EIGENCLOSE_WORKERS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    """Order-preserving map, fanned out over ``EIGENCLOSE_WORKERS`` threads."""
    items = list(items)
    w = _workers()
    if w == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, items))


def load_potential(cfg: RunConfig) -> PotentialSpec:
    pb = cfg.potential
    if pb.grid:
        grid = gridio.read_grid(pb.grid)
        if grid.dimension != pb.dimension:
            raise ConfigError(f"grid file has dimension {grid.dimension}, config says {pb.dimension}")
        return PotentialSpec.from_grid(grid, factorization=pb.factorization, tau=pb.tau,
                                       name=Path(pb.grid).name)
    try:
        return build_potential(pb.name, pb.dimension, pb.coupling, pb.shape, pb.width,
                               pb.factorization, pb.tau)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _adjust(cert, sharpen, params, corrupt):
    if sharpen:
        cert = bounds.sharpen(cert, params)
    if corrupt != 1.0 and cert.admissible:
        cert = dataclasses.replace(cert, constant=cert.constant * corrupt,
                                   notes=cert.notes + (f"constant corrupted by x{corrupt:g}",))
    return cert


def point_certificates(params, norms, sharpen=False, corrupt=1.0) -> list:
    return [_adjust(bounds.certify(t, params, norms), sharpen, params, corrupt) for t in TheoremId]


def region_certificates(params, norms, grid, sharpen=False, corrupt=1.0) -> list:
    """Every theorem; theta-dependent ones at each node of ``grid``."""
    certs = [_adjust(bounds.certify(t, params, norms), sharpen, params, corrupt)
             for t in TheoremId if t not in THETA_DEPENDENT]
    fam = [t for t in TheoremId if t in THETA_DEPENDENT]

    def at(theta):
        p = params.replace(theta=float(theta))
        return [_adjust(bounds.certify(t, p, norms), sharpen, p, corrupt) for t in fam]

    # the first node fills the norm cache before any fan-out
    grid = list(grid)
    rows = [at(grid[0])] + _map(at, grid[1:]) if grid else []
    for row in rows:
        certs.extend(row)
    return certs


def _fmt(x, width=12):
    if x is None:
        return "-".ljust(width)
    return f"{x:<{width}.6g}"


def certificate_table(certs) -> str:
    lines = [f"{'theorem':<10}{'measure':<15}{'adm':<5}{'exponent':<12}{'constant':<12}"
             f"{'norms':<12}{'radius':<12}"]
    bad = []
    for c in certs:
        if c.admissible:
            lines.append(f"{c.theorem_id.value:<10}{c.measure.value:<15}{'yes':<5}"
                         f"{_fmt(c.exponent)}{_fmt(c.constant)}{_fmt(c.norm_product)}{_fmt(c.radius)}")
        else:
            bad.append(c)
    if bad:
        lines.append("inadmissible:")
        for c in bad:
            lines.append(f"  {c.theorem_id.value}: " + "; ".join(c.violated_conditions))
    return "\n".join(lines) + "\n"


def _write(out: Path, name: str, data) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data, encoding="utf-8")
    return path


def _metadata(out: Path, command: str, cfg: RunConfig) -> None:
    # timestamps live here so the result files stay byte-identical across runs
    meta = {"command": command, "version": __version__, "timestamp": time.time(),
            "config": cfg.to_ini()}
    _write(out, "metadata.json", json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


# ---------------------------------------------------------------------------


def cmd_bound(cfg: RunConfig, out: Path, corrupt: float = 1.0) -> int:
    params = cfg.problem_params()
    norms = PotentialNorms(load_potential(cfg))
    certs = point_certificates(params, norms, cfg.run.sharpen, corrupt)
    sys.stdout.write(certificate_table(certs))
    _write(out, "certificates.json", _json([c.to_dict() for c in certs]))
    _metadata(out, "bound", cfg)
    if not any(c.admissible for c in certs):
        sys.stdout.write("no admissible certificate\n")
        return EXIT_FAIL
    return EXIT_OK


def _export(region, out: Path, formats) -> list:
    names = {"csv": ("region.csv", regions.ExportFormat.CSV),
             "svg": ("region.svg", regions.ExportFormat.SVG),
             "json": ("region.json", regions.ExportFormat.STRUCTURED)}
    return [_write(out, names[f][0], regions.export_region(region, names[f][1])) for f in formats]


def cmd_region(cfg: RunConfig, out: Path, corrupt: float = 1.0) -> int:
    params = cfg.problem_params()
    norms = PotentialNorms(load_potential(cfg))
    grid = regions.theta_grid(cfg.theta.points)
    certs = region_certificates(params, norms, grid, cfg.run.sharpen, corrupt)
    region = regions.build_region(certs, grid)
    paths = _export(region, out, cfg.output.formats)
    _metadata(out, "region", cfg)
    for note in region.notes:
        sys.stdout.write(f"note: {note}\n")
    radii = region.radius_at_theta
    finite = radii[np.isfinite(radii)]
    if finite.size:
        sys.stdout.write(f"modulus radius: min {finite.min():.6g}, max {finite.max():.6g}\n")
    if region.halfplane_cap is not None:
        sys.stdout.write(f"|Re lambda| <= {region.halfplane_cap:.6g} ({region.halfplane_source})\n")
    if region.strip_cap is not None:
        sys.stdout.write(f"|Im lambda| <= {region.strip_cap:.6g} ({region.strip_source})\n")
    for p in paths:
        sys.stdout.write(f"wrote {p}\n")
    return EXIT_FAIL if region.is_empty else EXIT_OK


def cmd_validate(cfg: RunConfig, out: Path, corrupt: float = 1.0) -> int:
    if not cfg.oracle.enabled:
        sys.stderr.write("validate needs the oracle: set [oracle] enabled = on or pass --oracle on\n")
        return EXIT_USAGE
    pot = load_potential(cfg)
    params = cfg.problem_params()
    ob = cfg.oracle
    n = pot.dimension
    if ob.points ** n > MAX_DENSE:
        suggest = int(math.floor(MAX_DENSE ** (1 / n)))
        sys.stderr.write(f"refused: {ob.points}**{n} = {ob.points ** n} grid nodes exceed the "
                         f"dense guard {MAX_DENSE}; try points = {suggest} or fewer\n")
        return EXIT_USAGE
    disc = Discretization(n, ob.scheme, ob.half_width, ob.points)
    report = compute_spectrum(pot, disc, params.m, ob.coarse_points)
    cands = report.candidate_list()
    grid = sorted(set(regions.theta_grid(cfg.theta.points).tolist())
                  | {regions.principal_arg(lam) for lam, *_ in cands})
    norms = PotentialNorms(pot)
    certs = region_certificates(params, norms, grid, cfg.run.sharpen, corrupt)
    region = regions.build_region(certs, grid)

    bs_disc = disc.with_points(ob.bs_points) if ob.bs_points else disc
    bs = {}
    for lam, err, extrap, _ in cands:
        try:
            bs[lam] = birman_schwinger_norm(pot, extrap, bs_disc).norm_estimate
        except OracleError as exc:
            log.info("Birman-Schwinger check unavailable at %s: %s", lam, exc)
    verdicts = verify_certificates(report, region, bs)

    _write(out, "spectrum.tsv", report.to_tsv())
    _write(out, "spectrum.json", report.to_json() + "\n")
    _write(out, "verdicts.tsv", verdicts_tsv(verdicts))
    _write(out, "verdicts.json", _json([v.to_dict() for v in verdicts]))
    _export(region, out, cfg.output.formats)
    _metadata(out, "validate", cfg)

    sys.stdout.write(f"{len(cands)} discrete candidate(s)\n")
    for lam, err, _, _ in cands:
        mine = [v for v in verdicts if v.eigenvalue == lam]
        worst = min(mine, key=lambda v: v.margin) if mine else None
        bsv = bs.get(lam)
        bs_txt = "n/a" if bsv is None else f"{bsv:.4f}"
        if worst is None:
            sys.stdout.write(f"  {lam:.8g} +- {err:.2g}: no applicable constraint, ||Q|| = {bs_txt}\n")
        else:
            state = "enclosed" if all(v.inside for v in mine) else "OUTSIDE"
            sys.stdout.write(f"  {lam:.8g} +- {err:.2g}: {state}, tightest {worst.constraint} "
                             f"margin {worst.margin:.4g}, ||Q|| = {bs_txt}\n")
    failures = [v for v in verdicts if not v.inside]
    if failures:
        sys.stdout.write(f"{len(failures)} violated constraint(s)\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_selfcheck(perturb_legendre: Optional[float] = None) -> int:
    leg = selfcheck.perturbed_legendre(perturb_legendre) if perturb_legendre else None
    start = time.perf_counter()
    total = failed = 0
    for group, items in selfcheck.run_all(leg):
        for it in items:
            total += 1
            failed += not it.passed
            sys.stdout.write(f"{'PASS' if it.passed else 'FAIL'}  [{group}] {it.name}  {it.detail}\n")
    sys.stdout.write(f"{total - failed}/{total} passed in {time.perf_counter() - start:.2f} s\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="run configuration file")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides [output] dir)")
    common.add_argument("--sharpen", action="store_true", help="apply sharp Young/Hausdorff-Young constants")
    common.add_argument("--theta-points", type=int, metavar="INT", help="theta grid size")
    common.add_argument("--oracle", choices=("on", "off"), help="enable the reference eigensolver")
    common.add_argument("--corrupt-constant", type=float, default=1.0, help=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="eigenclose", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"eigenclose {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common], help="certificate table for one parameter set")
    sub.add_parser("region", parents=[common], help="enclosure region (CSV, SVG, JSON)")
    sub.add_parser("validate", parents=[common], help="check computed eigenvalues against the region")
    sc = sub.add_parser("selfcheck", help="closed-form/quadrature and corollary consistency checks")
    sc.add_argument("--perturb-legendre", type=float, default=None, help=argparse.SUPPRESS)
    return ap


def _effective_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.sharpen:
        cfg = cfg.replace("run", sharpen=True)
    if args.theta_points is not None:
        if args.theta_points < 2:
            raise ConfigError("--theta-points must be >= 2")
        cfg = cfg.replace("theta", points=args.theta_points)
    if args.oracle is not None:
        cfg = cfg.replace("oracle", enabled=args.oracle == "on")
    if args.out:
        cfg = cfg.replace("output", dir=args.out)
    return cfg


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "selfcheck":
        return cmd_selfcheck(args.perturb_legendre)
    try:
        cfg = _effective_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    out = Path(cfg.output.dir)
    handler = {"bound": cmd_bound, "region": cmd_region, "validate": cmd_validate}[args.command]
    try:
        return handler(cfg, out, args.corrupt_constant)
    except ConfigError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except OracleError as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
