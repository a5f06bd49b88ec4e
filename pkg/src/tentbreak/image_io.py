"""8-bit binary PGM (P5) and raw byte files."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cipher import as_bytes_array
from .errors import FormatError, LengthMismatch

_WHITESPACE = b" \t\n\r\v\f"


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Grayscale raster; ``pixels`` holds ``width*height`` bytes in row-major order."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        px = as_bytes_array(self.pixels)
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image must be at least 1x1, got {self.width}x{self.height}")
        if px.size != self.width * self.height:
            raise LengthMismatch(
                f"{px.size} pixels for a {self.width}x{self.height} image"
            )
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, arr) -> "ImageBuffer":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        h, w = arr.shape
        return cls(w, h, arr.astype(np.uint8).reshape(-1))

    def as_array(self) -> np.ndarray:
        return self.pixels.reshape(self.height, self.width)

    def with_pixels(self, pixels) -> "ImageBuffer":
        return ImageBuffer(self.width, self.height, pixels)

    def __eq__(self, other):
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and bool(
            np.array_equal(self.pixels, other.pixels)
        )


def parse_pgm(data: bytes) -> ImageBuffer:
    """Parse an in-memory P5 file.  Header comments start with ``#``."""
    pos = 0
    n = len(data)

    def token():
        nonlocal pos
        while pos < n:
            c = data[pos:pos + 1]
            if c in _WHITESPACE:
                pos += 1
            elif c == b"#":
                while pos < n and data[pos:pos + 1] not in b"\r\n":
                    pos += 1
            else:
                break
        start = pos
        while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise FormatError("truncated header")
        return data[start:pos]

    if data[:2] != b"P5":
        raise FormatError(f"bad magic {data[:2]!r}, expected b'P5'")
    pos = 2
    if pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        raise FormatError("bad magic")
    fields = []
    for name in ("width", "height", "maxval"):
        tok = token()
        if not tok.isdigit():
            raise FormatError(f"{name} is not a decimal integer: {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if maxval != 255:
        raise FormatError(f"maxval {maxval} unsupported, only 255")
    if width < 1 or height < 1:
        raise FormatError(f"bad dimensions {width}x{height}")
    if pos >= n or data[pos:pos + 1] not in _WHITESPACE:
        raise FormatError("missing whitespace after maxval")
    pos += 1
    need = width * height
    body = data[pos:pos + need]
    if len(body) < need:
        raise FormatError(f"truncated pixel data: {len(body)} of {need} bytes")
    return ImageBuffer(width, height, np.frombuffer(body, dtype=np.uint8).copy())


def pgm_bytes(img: ImageBuffer) -> bytes:
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.pixels.tobytes()


def read_pgm(path) -> ImageBuffer:
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def write_pgm(img: ImageBuffer, path) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(img))


def read_raw(path, expected_len: Optional[int] = None) -> np.ndarray:
    with open(path, "rb") as fh:
        data = np.frombuffer(fh.read(), dtype=np.uint8).copy()
    if expected_len is not None and data.size != expected_len:
        raise LengthMismatch(f"{os.fspath(path)}: {data.size} bytes, expected {expected_len}")
    return data


def write_raw(path, data) -> None:
    with open(path, "wb") as fh:
        fh.write(as_bytes_array(data).tobytes())
