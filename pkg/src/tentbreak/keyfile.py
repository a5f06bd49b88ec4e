"""Text key files that carry exact binary64 bit patterns.

Format, one ``name = value`` per line, ``#`` starts a comment::

    mu_hex = 3ffffff583a53b8e
    x0_hex = 3fd41b2f769cf0e0
    mu_dec = 1.99999
    x0_dec = 0.3141

The ``*_hex`` fields are the 16 hex digits of the IEEE-754 bit pattern and
are authoritative; the decimals are for humans and ignored on read unless
the hex field is missing.
"""
from __future__ import annotations

import struct

import numpy as np

from .errors import FormatError
from .tent import TentKey


def float_to_hex(v: float) -> str:
    return struct.pack(">d", float(v)).hex()


def hex_to_float(s: str) -> float:
    s = s.strip().lower()
    if s.startswith("0x"):
        s = s[2:]
    if len(s) != 16:
        raise FormatError(f"expected 16 hex digits, got {s!r}")
    try:
        return struct.unpack(">d", bytes.fromhex(s))[0]
    except ValueError as exc:
        raise FormatError(f"bad hex {s!r}") from exc


def _parse(text: str) -> dict:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"bad key-file line {raw!r}")
        name, value = (p.strip() for p in line.split("=", 1))
        out[name] = value
    return out


def _render(pairs) -> str:
    lines = []
    for name, v in pairs:
        lines.append(f"{name}_hex = {float_to_hex(v)}")
    for name, v in pairs:
        lines.append(f"{name}_dec = {float(v)!r}")
    return "\n".join(lines) + "\n"


def _field(fields: dict, name: str) -> float:
    if f"{name}_hex" in fields:
        return hex_to_float(fields[f"{name}_hex"])
    if f"{name}_dec" in fields:
        return float(fields[f"{name}_dec"])
    raise FormatError(f"missing {name}_hex")


def dumps_key(key: TentKey) -> str:
    return _render([("mu", key.mu), ("x0", key.x0)])


def loads_key(text: str) -> TentKey:
    fields = _parse(text)
    return TentKey(_field(fields, "mu"), _field(fields, "x0"))


def read_key(path) -> TentKey:
    with open(path, encoding="ascii") as fh:
        return loads_key(fh.read())


def write_key(key: TentKey, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_key(key))


def dumps_effective_key(mu: float, x1: float) -> str:
    """Same layout with ``x1`` (first emitted state) in place of ``x0``."""
    return _render([("mu", mu), ("x1", x1)])


def loads_effective_key(text: str) -> tuple[float, float]:
    fields = _parse(text)
    return _field(fields, "mu"), _field(fields, "x1")


def generate_key(seed=None, mu_range=(1.0, 2.0)) -> TentKey:
    """Draw ``mu`` uniformly from ``(lo, hi]`` and ``x0`` from (0, 1).

    Draws that violate a key invariant are rejected and redrawn.
    """
    lo, hi = mu_range
    if not 1.0 <= lo < hi <= 2.0:
        raise ValueError(f"mu range must satisfy 1 <= lo < hi <= 2, got {mu_range}")
    rng = np.random.default_rng(seed)
    while True:
        mu = hi - (hi - lo) * rng.random()
        x0 = rng.random()
        try:
            return TentKey(mu, x0)
        except ValueError:
            continue
