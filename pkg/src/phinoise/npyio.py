"""NPY file I/O for latent tensors, plus atomic JSON report writing.

The reader and writer speak the published NPY format directly instead
of delegating, because the acceptance surface pins down behaviors a
general-purpose loader leaves loose: only little-endian float32/float64
payloads of exactly 4 dimensions are accepted, Fortran-order files are
rejected as unsupported rather than silently transposed, and parse
failures map onto this package's error taxonomy.

Writers are atomic: content goes to a temporary file in the target
directory which is renamed over the destination, so readers never see
a half-written file. Written headers are padded so the payload starts
on a 64-byte boundary.
"""

from __future__ import annotations

import ast
import json
import os
import struct
import tempfile

import numpy as np

from .core import LatentTensor
from .errors import FormatError, InvalidInput, IoError, ShapeError, UnsupportedLayout

__all__ = ["read_npy", "write_npy", "write_json"]

_MAGIC = b"\x93NUMPY"
_DESCRS = {"<f4": np.float32, "<f8": np.float64}
_HEADER_KEYS = {"descr", "fortran_order", "shape"}


def _parse_header(text: str) -> dict:
    try:
        header = ast.literal_eval(text)
    except (ValueError, SyntaxError) as e:
        raise FormatError(f"header is not a Python dict literal: {e}") from None
    if not isinstance(header, dict) or set(header.keys()) != _HEADER_KEYS:
        raise FormatError(f"header must have exactly the keys {sorted(_HEADER_KEYS)}")
    return header


def read_npy(path) -> LatentTensor:
    """Read a 4-D float32/float64 NPY file (format versions 1.0 and 2.0).

    Raises FormatError for malformed or unsupported files, ShapeError
    when the stored array is not 4-D with positive extents,
    UnsupportedLayout for Fortran-order payloads, and IoError when the
    operating system refuses the read.
    """
    try:
        with open(path, "rb") as f:
            buf = f.read()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from None

    if len(buf) < 10 or buf[:6] != _MAGIC:
        raise FormatError(f"{path}: not an NPY file (bad magic)")
    version = (buf[6], buf[7])
    if version == (1, 0):
        (hlen,) = struct.unpack("<H", buf[8:10])
        data_off = 10 + hlen
    elif version == (2, 0):
        if len(buf) < 12:
            raise FormatError(f"{path}: truncated version 2.0 header")
        (hlen,) = struct.unpack("<I", buf[8:12])
        data_off = 12 + hlen
    else:
        raise FormatError(f"{path}: unsupported NPY version {version[0]}.{version[1]}")
    if data_off > len(buf):
        raise FormatError(f"{path}: header length {hlen} runs past end of file")

    header = _parse_header(buf[data_off - hlen : data_off].decode("latin1"))

    descr = header["descr"]
    if descr not in _DESCRS:
        raise FormatError(f"{path}: unsupported dtype {descr!r}, need '<f4' or '<f8'")
    if header["fortran_order"] is True:
        raise UnsupportedLayout(f"{path}: Fortran-order payloads are not supported")
    if header["fortran_order"] is not False:
        raise FormatError(f"{path}: fortran_order must be True or False")

    shape = header["shape"]
    if not isinstance(shape, tuple) or not all(
        isinstance(n, int) and not isinstance(n, bool) and n >= 0 for n in shape
    ):
        raise FormatError(f"{path}: shape must be a tuple of nonnegative integers")
    if len(shape) != 4:
        raise ShapeError(f"{path}: need a 4-D (t, w, h, d) array, got {len(shape)}-D {shape}")
    if min(shape) < 1:
        raise ShapeError(f"{path}: zero-length axis in shape {shape}")

    dtype = np.dtype(descr)
    count = int(np.prod(shape))
    expected = count * dtype.itemsize
    if len(buf) - data_off != expected:
        raise FormatError(
            f"{path}: payload is {len(buf) - data_off} bytes, header implies {expected}"
        )
    arr = np.frombuffer(buf, dtype=dtype, count=count, offset=data_off)
    arr = arr.reshape(shape).astype(_DESCRS[descr], copy=True)
    return LatentTensor(arr)


def _build_header(descr: str, shape: tuple[int, ...]) -> bytes:
    body = "{'descr': '%s', 'fortran_order': False, 'shape': %s, }" % (
        descr,
        repr(tuple(int(n) for n in shape)),
    )
    prefix = len(_MAGIC) + 2 + 2  # magic, version, u16 header length
    pad = (64 - (prefix + len(body) + 1) % 64) % 64
    header = (body + " " * pad + "\n").encode("latin1")
    if len(header) > 0xFFFF:
        raise FormatError("header too large for NPY version 1.0")
    return header


def _atomic_write(path, payload: bytes) -> None:
    directory = os.path.dirname(os.fspath(path)) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-phinoise-")
    except OSError as e:
        raise IoError(f"cannot create temporary file in {directory}: {e}") from None
    try:
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(payload)
            os.replace(tmp, path)
        except OSError as e:
            raise IoError(f"cannot write {path}: {e}") from None
    finally:
        if os.path.exists(tmp):
            try:
                os.unlink(tmp)
            except OSError:
                pass


def write_npy(x: LatentTensor, path) -> None:
    """Write a latent tensor as NPY version 1.0, atomically.

    float32 tensors are stored as '<f4', float64 as '<f8', always
    C-order little-endian; reading the file back yields bit-identical
    data.
    """
    if not isinstance(x, LatentTensor):
        raise InvalidInput(f"write_npy takes a LatentTensor, got {type(x).__name__}")
    descr = "<f4" if x.precision == "f32" else "<f8"
    header = _build_header(descr, x.shape)
    out = bytearray()
    out += _MAGIC
    out += bytes((1, 0))
    out += struct.pack("<H", len(header))
    out += header
    out += np.ascontiguousarray(x.data).astype(descr, copy=False).tobytes()
    _atomic_write(path, bytes(out))


def write_json(obj: dict, path) -> None:
    """Serialize a report dict as pretty-printed JSON, atomically."""
    payload = (json.dumps(obj, indent=2) + "\n").encode("utf-8")
    _atomic_write(path, payload)
