"""Run configuration: a sectioned key-value file (INI syntax).

Example::

    [potential]
    name = poschl-teller
    dimension = 1
    coupling = 1

    [params]
    p = 2
    r = 2
    s = 2

    [oracle]
    enabled = on
    half_width = 20
    points = 1200
"""

from __future__ import annotations

import configparser
import dataclasses
import io
import math
from dataclasses import dataclass, field
from typing import Optional

from .bounds import ProblemParams
from .oracle import Scheme
from .potentials import Factorization


class ConfigError(ValueError):
    """Malformed configuration (CLI exit code 2)."""


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "on" if v else "off"
    if isinstance(v, complex):
        return repr(v.real) if v.imag == 0 else repr(v).strip("()")
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    if isinstance(v, (list, tuple)):
        return ", ".join(str(x) for x in v)
    if hasattr(v, "value"):
        return v.value
    return str(v)


def _opt_float(s) -> Optional[float]:
    return None if s in (None, "") else float(s)


def _bool(s) -> bool:
    t = str(s).strip().lower()
    if t in ("on", "true", "yes", "1"):
        return True
    if t in ("off", "false", "no", "0"):
        return False
    raise ConfigError(f"not a boolean: {s!r}")


@dataclass(frozen=True)
class PotentialBlock:
    name: str = "poschl-teller"
    dimension: int = 1
    coupling: Optional[complex] = None
    shape: float = 2.0
    width: float = 1.0
    grid: str = ""
    factorization: Factorization = Factorization.SQRT_SIGN
    tau: Optional[float] = None


@dataclass(frozen=True)
class ParamsBlock:
    n: Optional[int] = None
    p: float = 2.0
    r: float = 2.0
    s: float = 2.0
    m: float = 1.0
    theta: Optional[float] = None
    tau: Optional[float] = None
    gamma: Optional[float] = None


@dataclass(frozen=True)
class ThetaBlock:
    points: int = 360


@dataclass(frozen=True)
class OracleBlock:
    enabled: bool = False
    scheme: Scheme = Scheme.FINITE_DIFFERENCE
    half_width: float = 20.0
    points: int = 800
    coarse_points: Optional[int] = None
    bs_points: Optional[int] = None


@dataclass(frozen=True)
class OutputBlock:
    dir: str = "eigenclose-out"
    formats: tuple = ("csv", "svg", "json")


@dataclass(frozen=True)
class RunBlock:
    sharpen: bool = False


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialBlock = field(default_factory=PotentialBlock)
    params: ParamsBlock = field(default_factory=ParamsBlock)
    theta: ThetaBlock = field(default_factory=ThetaBlock)
    oracle: OracleBlock = field(default_factory=OracleBlock)
    output: OutputBlock = field(default_factory=OutputBlock)
    run: RunBlock = field(default_factory=RunBlock)

    def problem_params(self) -> ProblemParams:
        p = self.params
        n = p.n if p.n is not None else self.potential.dimension
        return ProblemParams(n=n, p=p.p, r=p.r, s=p.s, m=p.m, theta=p.theta, tau=p.tau,
                             gamma_moment=p.gamma)

    def replace(self, section: str, **changes) -> "RunConfig":
        block = dataclasses.replace(getattr(self, section), **changes)
        return dataclasses.replace(self, **{section: block})

    def to_ini(self) -> str:
        cp = configparser.ConfigParser(interpolation=None)
        for f in dataclasses.fields(self):
            block = getattr(self, f.name)
            cp[f.name] = {g.name: _fmt(getattr(block, g.name)) for g in dataclasses.fields(block)}
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()


_CONVERT = {
    "potential": {"name": str, "dimension": int, "coupling": lambda s: None if s == "" else complex(s.replace(" ", "")),
                  "shape": float, "width": float, "grid": str,
                  "factorization": lambda s: Factorization(s.upper()), "tau": _opt_float},
    "params": {"n": lambda s: None if s == "" else int(s), "p": float, "r": float, "s": float,
               "m": float, "theta": _opt_float, "tau": _opt_float, "gamma": _opt_float},
    "theta": {"points": int},
    "oracle": {"enabled": _bool, "scheme": lambda s: Scheme(s.upper()), "half_width": float,
               "points": int, "coarse_points": lambda s: None if s == "" else int(s),
               "bs_points": lambda s: None if s == "" else int(s)},
    "output": {"dir": str, "formats": lambda s: tuple(x.strip().lower() for x in s.split(",") if x.strip())},
    "run": {"sharpen": _bool},
}

_BLOCKS = {"potential": PotentialBlock, "params": ParamsBlock, "theta": ThetaBlock,
           "oracle": OracleBlock, "output": OutputBlock, "run": RunBlock}


def parse_config(text: str) -> RunConfig:
    # "key = value  ; note" is allowed; a ';' needs leading whitespace to start a comment
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    blocks = {}
    for section in cp.sections():
        if section not in _BLOCKS:
            raise ConfigError(f"unknown section [{section}]")
    for section, cls in _BLOCKS.items():
        kw = {}
        if cp.has_section(section):
            for key, raw in cp[section].items():
                conv = _CONVERT[section].get(key)
                if conv is None:
                    raise ConfigError(f"unknown key '{key}' in [{section}]")
                try:
                    kw[key] = conv(raw.strip())
                except (ValueError, TypeError) as exc:
                    raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc
        blocks[section] = cls(**kw)
    cfg = RunConfig(**blocks)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    p = cfg.params
    if cfg.potential.dimension < 1:
        raise ConfigError("potential dimension must be >= 1")
    if not 1 < p.p < math.inf:
        raise ConfigError(f"p must lie in (1, inf), got {p.p}")
    if not (p.r > 0 and p.s > 0 and p.m > 0):
        raise ConfigError("r, s and m must be positive")
    if cfg.theta.points < 2:
        raise ConfigError("theta points must be >= 2")
    if cfg.oracle.points < 4:
        raise ConfigError("oracle points must be >= 4")
    for fmt in cfg.output.formats:
        if fmt not in ("csv", "svg", "json"):
            raise ConfigError(f"unknown output format '{fmt}'")


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
