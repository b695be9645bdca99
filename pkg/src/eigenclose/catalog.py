"""Built-in radial potentials keyed by name."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .potentials import Factorization, PotentialSpec


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    default_coupling: complex
    build: Callable[..., Callable]


def _sech(r):
    # 2 e^-|r| / (1 + e^-2|r|) does not overflow for large |r|
    e = np.exp(-np.abs(np.asarray(r, dtype=float)))
    return 2 * e / (1 + e * e)


def _poschl_teller(c, shape, width):
    return lambda r: -2 * c * _sech(r) ** 2


def _gaussian(c, shape, width):
    return lambda r: 1j * c * np.exp(-np.asarray(r, dtype=float) ** 2)


def _rational(c, shape, width):
    return lambda r: c * (1 + np.asarray(r, dtype=float) ** 2) ** (-shape)


def _square_well(c, shape, width):
    return lambda r: np.where(np.asarray(r, dtype=float) < width, c, 0j)


def _zero(c, shape, width):
    return lambda r: np.zeros_like(np.asarray(r, dtype=float), dtype=complex)


CATALOG = {
    e.name: e for e in (
        CatalogEntry("poschl-teller", "-2 c sech^2(|x|)", 1.0, _poschl_teller),
        CatalogEntry("complex-gaussian", "i c exp(-|x|^2)", 5.0, _gaussian),
        CatalogEntry("rational", "c (1 + |x|^2)^(-shape)", -1.0, _rational),
        CatalogEntry("square-well", "c on |x| < width", -(6 + 3j), _square_well),
        CatalogEntry("zero", "q = 0", 0.0, _zero),
    )
}


def build_potential(name: str, dimension: int, coupling=None, shape: float = 2.0,
                    width: float = 1.0, factorization=Factorization.SQRT_SIGN,
                    tau=None) -> PotentialSpec:
    """Instantiate a catalog potential as a RADIAL :class:`PotentialSpec`."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown potential '{name}'; known: {', '.join(sorted(CATALOG))}") from None
    c = entry.default_coupling if coupling is None else complex(coupling)
    profile = entry.build(c, shape, width)
    label = f"{name}(c={c:g})"
    return PotentialSpec.radial(dimension, profile, factorization=Factorization(factorization),
                                tau=tau, name=label)
