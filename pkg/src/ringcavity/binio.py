"""Compact binary layout shared by the density and Wigner grid exports.

Layout (little endian):

    bytes  0..3    magic, b"RDG1" (density grid) or b"WIG1" (Wigner grid)
    bytes  4..7    uint32 number of rows
    bytes  8..11   uint32 number of columns
    bytes 12..19   float64 evolution time (g*t)
    bytes 20..27   uint64 scenario hash
    bytes 28..31   zero padding

followed by the axis arrays and the payload as raw IEEE-754 doubles:

    RDG1: xs (rows), Re(values) column-major, Im(values) column-major
    WIG1: xs (rows), ps (cols), values column-major
"""

from __future__ import annotations

import hashlib
import struct

import numpy as np

_HEADER = struct.Struct("<4sIId Q4x")

MAGIC_DENSITY = b"RDG1"
MAGIC_WIGNER = b"WIG1"


def scenario_hash(fields: dict) -> int:
    """Stable 64-bit digest of scenario parameters, keyed by field name."""
    canon = ";".join(f"{k}={fields[k]!r}" for k in sorted(fields))
    return int.from_bytes(hashlib.sha256(canon.encode()).digest()[:8], "little")


def pack_header(magic: bytes, rows: int, cols: int, time: float, digest: int) -> bytes:
    return _HEADER.pack(magic, rows, cols, time, digest)


def unpack_header(blob: bytes):
    magic, rows, cols, time, digest = _HEADER.unpack(blob[: _HEADER.size])
    return magic, rows, cols, time, digest


def write_grid(path, magic: bytes, time: float, digest: int, axes, payload: np.ndarray):
    """Write one grid file: header, axis arrays, column-major payload."""
    rows, cols = payload.shape
    with open(path, "wb") as fh:
        fh.write(pack_header(magic, rows, cols, time, digest))
        for axis in axes:
            fh.write(np.asarray(axis, dtype="<f8").tobytes())
        if np.iscomplexobj(payload):
            fh.write(np.asarray(payload.real, dtype="<f8").tobytes(order="F"))
            fh.write(np.asarray(payload.imag, dtype="<f8").tobytes(order="F"))
        else:
            fh.write(np.asarray(payload, dtype="<f8").tobytes(order="F"))


def read_grid(path):
    """Read a grid file back; returns (magic, rows, cols, time, digest, doubles).

    ``doubles`` is the flat array of everything after the header; the caller
    slices it according to the magic.
    """
    with open(path, "rb") as fh:
        blob = fh.read()
    magic, rows, cols, time, digest = unpack_header(blob)
    doubles = np.frombuffer(blob[_HEADER.size :], dtype="<f8")
    return magic, rows, cols, time, digest, doubles
