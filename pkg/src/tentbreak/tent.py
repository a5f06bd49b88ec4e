"""Tent-map iteration and its byte keystream.

The map is ``x -> mu*x`` for ``x < 0.5`` and ``x -> mu*(1 - x)`` otherwise.
All arithmetic is IEEE binary64 with round-to-nearest-even, so a key
reproduces the same orbit bit for bit on every platform.  The seed ``x0`` is
key material and is never emitted: the first keystream element comes from
``x1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DegenerateOrbit, InvalidKey

__all__ = [
    "TentKey",
    "tent_step",
    "tent_trajectory",
    "quantize",
    "quantize_array",
    "keystream_bytes",
    "MU_MIN",
    "MU_MAX",
]

MU_MIN = 1.0  # exclusive
MU_MAX = 2.0  # inclusive


@dataclass(frozen=True)
class TentKey:
    """Secret key ``(mu, x0)``.

    ``mu`` must lie in (1, 2] and ``x0`` in (0, 1), excluding the nonzero
    fixed point ``mu / (1 + mu)``.
    """

    mu: float
    x0: float

    def __post_init__(self):
        mu, x0 = float(self.mu), float(self.x0)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "x0", x0)
        if not (math.isfinite(mu) and MU_MIN < mu <= MU_MAX):
            raise InvalidKey(f"mu={mu!r} outside (1, 2]")
        if not (math.isfinite(x0) and 0.0 < x0 < 1.0):
            raise InvalidKey(f"x0={x0!r} outside (0, 1)")
        if x0 == mu / (1.0 + mu):
            raise InvalidKey(f"x0={x0!r} is the fixed point for mu={mu!r}")

    @property
    def fixed_point(self) -> float:
        return self.mu / (1.0 + self.mu)


def tent_step(x: float, mu: float) -> float:
    """One application of the map."""
    if x < 0.5:
        return mu * x
    return mu * (1.0 - x)


@njit(cache=True)
def _orbit_kernel(mu, x, out):
    # Returns the index of the first exact zero, or -1.  No FMA contraction:
    # numba leaves fp-contract off unless fastmath is requested.
    for i in range(out.shape[0]):
        if x < 0.5:
            x = mu * x
        else:
            x = mu * (1.0 - x)
        if x == 0.0:
            return i
        out[i] = x
    return -1


def tent_trajectory(key: TentKey, n: int) -> np.ndarray:
    """Return the states ``x1 .. xn`` as a float64 array.

    Raises DegenerateOrbit if any state computes to exactly 0.0.
    """
    return orbit_from_state(key.mu, key.x0, n)


def orbit_from_state(mu: float, x: float, n: int) -> np.ndarray:
    """States obtained by iterating ``n`` times from ``x`` (``x`` not included)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = np.empty(int(n), dtype=np.float64)
    bad = _orbit_kernel(float(mu), float(x), out)
    if bad >= 0:
        raise DegenerateOrbit(bad + 1)
    return out


def quantize(x: float) -> int:
    """Map a state in [0, 1] to a byte: ``floor(256*x)``, with 1.0 -> 255."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"state {x!r} outside [0, 1]")
    return min(int(x * 256.0), 255)


def quantize_array(states) -> np.ndarray:
    s = np.asarray(states, dtype=np.float64)
    # 256*x is exact in binary64, so truncation equals floor for x >= 0
    return np.minimum(s * 256.0, 255.0).astype(np.uint8)


def keystream_bytes(key: TentKey, n: int) -> np.ndarray:
    """First ``n`` keystream bytes for ``key`` as a uint8 array."""
    return quantize_array(tent_trajectory(key, n))


def keystream_from_state(mu: float, x1: float, n: int) -> np.ndarray:
    """Keystream regenerated from an effective key ``(mu, x1)``.

    ``x1`` is emitted as the first byte, so this matches
    ``keystream_bytes`` for the key that produced ``x1``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if x1 == 0.0:
        raise DegenerateOrbit(1)
    if n == 1:
        return quantize_array([x1])
    rest = orbit_from_state(mu, x1, n - 1)
    return quantize_array(np.concatenate(([x1], rest)))
