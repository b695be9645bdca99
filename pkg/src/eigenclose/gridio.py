"""Reading and writing sampled potentials (see ``docs/formats.md``)."""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .potentials import GridData

MAGIC = b"EQGRID\x00\x01"
TEXT_TAG = "# eigenclose-grid 1"


def write_text(grid: GridData, path) -> None:
    lines = [TEXT_TAG,
             f"dimension {grid.dimension}",
             "counts " + " ".join(str(c) for c in grid.counts),
             f"half_width {float(grid.half_width)!r}"]
    flat = grid.samples.ravel(order="C")
    lines.extend(f"{float(z.real)!r} {float(z.imag)!r}" for z in flat)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_text(path) -> GridData:
    header = {}
    values = []
    with open(path, encoding="ascii") as fh:
        first = fh.readline().strip()
        if first != TEXT_TAG:
            raise ValueError(f"{path}: missing '{TEXT_TAG}' header line")
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            if key in ("dimension", "counts", "half_width"):
                header[key] = rest.split()
            else:
                values.append(line.split())
    for key in ("dimension", "counts", "half_width"):
        if key not in header:
            raise ValueError(f"{path}: header field '{key}' missing")
    dim = int(header["dimension"][0])
    counts = tuple(int(c) for c in header["counts"])
    if len(counts) != dim:
        raise ValueError(f"{path}: {len(counts)} counts for dimension {dim}")
    arr = np.array(values, dtype=float)
    expected = int(np.prod(counts))
    if arr.shape != (expected, 2):
        raise ValueError(f"{path}: expected {expected} 're im' rows, got {arr.shape[0]}")
    samples = (arr[:, 0] + 1j * arr[:, 1]).reshape(counts)
    return GridData(float(header["half_width"][0]), counts, samples)


def write_binary(grid: GridData, path) -> None:
    head = MAGIC + struct.pack("<I", grid.dimension)
    head += struct.pack(f"<{grid.dimension}I", *grid.counts)
    head += struct.pack("<d", grid.half_width)
    body = np.ascontiguousarray(grid.samples, dtype="<c16").tobytes(order="C")
    Path(path).write_bytes(head + body)


def read_binary(path) -> GridData:
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise ValueError(f"{path}: bad magic")
    off = len(MAGIC)
    (dim,) = struct.unpack_from("<I", data, off)
    off += 4
    counts = struct.unpack_from(f"<{dim}I", data, off)
    off += 4 * dim
    (half_width,) = struct.unpack_from("<d", data, off)
    off += 8
    expected = int(np.prod(counts)) * 16
    if len(data) - off != expected:
        raise ValueError(f"{path}: expected {expected} sample bytes, got {len(data) - off}")
    samples = np.frombuffer(data, dtype="<c16", offset=off).reshape(counts)
    return GridData(half_width, counts, samples.copy())


def read_grid(path) -> GridData:
    """Read either format, detected from the leading bytes."""
    with open(path, "rb") as fh:
        lead = fh.read(len(MAGIC))
    if lead == MAGIC:
        return read_binary(path)
    return read_text(path)
