"""The usual image-cipher statistics: histogram, entropy, neighbour correlation, NPCR/UACI.

Passing these says nothing about security; the attacks module breaks a
cipher whose ciphertexts score well on all of them.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .cipher import as_bytes_array
from .errors import DegenerateVariance, LengthMismatch
from .image_io import ImageBuffer

DIRECTIONS = {"H": "horizontal", "V": "vertical", "D": "diagonal"}


def histogram(data) -> np.ndarray:
    d = as_bytes_array(data)
    if d.size == 0:
        raise ValueError("histogram of empty data")
    return np.bincount(d, minlength=256)


def shannon_entropy(data) -> float:
    """Bits per symbol, ``-sum p log2 p`` over the nonzero bins."""
    counts = histogram(data)
    p = counts[counts > 0] / counts.sum()
    h = float(-(p * np.log2(p)).sum())
    return min(max(h, 0.0), 8.0) + 0.0


def _pairs(img: ImageBuffer, direction: str):
    a = img.as_array()
    d = direction.upper()[:1]
    if d == "H":
        return a[:, :-1], a[:, 1:]
    if d == "V":
        return a[:-1, :], a[1:, :]
    if d == "D":
        return a[:-1, :-1], a[1:, 1:]
    raise ValueError(f"direction must be H, V or D, got {direction!r}")


def adjacent_correlation(img: ImageBuffer, direction: str) -> float:
    """Pearson correlation over every adjacent pixel pair in ``direction``."""
    x, y = _pairs(img, direction)
    if x.size == 0:
        raise ValueError(f"image too small for direction {direction!r}")
    x = x.astype(np.float64).ravel()
    y = y.astype(np.float64).ravel()
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = (dx * dx).sum(), (dy * dy).sum()
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateVariance(f"zero variance along {direction!r}")
    r = (dx * dy).sum() / np.sqrt(sxx * syy)
    return float(np.clip(r, -1.0, 1.0))


def npcr_uaci(c1, c2) -> tuple[float, float]:
    a, b = as_bytes_array(c1), as_bytes_array(c2)
    if a.size != b.size:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    if a.size == 0:
        raise ValueError("empty input")
    diff = np.abs(a.astype(np.int64) - b.astype(np.int64))
    npcr = 100.0 * np.count_nonzero(diff) / a.size
    uaci = 100.0 * diff.sum() / (255.0 * a.size)
    return float(npcr), float(uaci)


@dataclass
class StatsReport:
    histogram: list
    entropy_bits: float
    correlations: dict
    npcr_percent: Optional[float] = None
    uaci_percent: Optional[float] = None
    degenerate: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)


def analyze(img: ImageBuffer, other: Optional[ImageBuffer] = None) -> StatsReport:
    """Full report; directions with zero variance get ``None`` and are listed in ``degenerate``."""
    corr, degenerate = {}, []
    for d, name in DIRECTIONS.items():
        try:
            corr[name] = adjacent_correlation(img, d)
        except (DegenerateVariance, ValueError):
            corr[name] = None
            degenerate.append(name)
    report = StatsReport(
        histogram=histogram(img.pixels).tolist(),
        entropy_bits=shannon_entropy(img.pixels),
        correlations=corr,
        degenerate=degenerate,
    )
    if other is not None:
        report.npcr_percent, report.uaci_percent = npcr_uaci(img.pixels, other.pixels)
    return report
