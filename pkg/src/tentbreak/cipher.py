"""The XOR image cipher: ``c[i] = p[i] ^ k[i]`` with the tent-map keystream.

Byte sequences are accepted as ``bytes``, lists of ints or arrays and come
back as ``uint8`` numpy arrays.  Images are flattened in row-major order.
"""
from __future__ import annotations

import numpy as np

from .errors import LengthMismatch
from .tent import TentKey, keystream_bytes


def as_bytes_array(data) -> np.ndarray:
    """Coerce ``data`` to a 1-D uint8 array, rejecting values outside 0..255."""
    if isinstance(data, (bytes, bytearray, memoryview)):
        return np.frombuffer(bytes(data), dtype=np.uint8).copy()
    arr = np.asarray(data)
    if arr.dtype == np.uint8:
        return arr.reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("byte values must lie in 0..255")
    return arr.astype(np.uint8).reshape(-1)


def xor_bytes(a, b) -> np.ndarray:
    a, b = as_bytes_array(a), as_bytes_array(b)
    if a.shape != b.shape:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    return np.bitwise_xor(a, b)


def encrypt(plain, key: TentKey) -> np.ndarray:
    p = as_bytes_array(plain)
    if p.size == 0:
        raise ValueError("plaintext must be nonempty")
    return np.bitwise_xor(p, keystream_bytes(key, p.size))


def decrypt(cipher, key: TentKey) -> np.ndarray:
    """Same computation as :func:`encrypt`; XOR is its own inverse."""
    return encrypt(cipher, key)
