"""Deterministic grayscale test pictures, so demos and tests need no downloads."""
from __future__ import annotations

import numpy as np

from .image_io import ImageBuffer


def builtin_image(variant: int = 0, size: int = 256) -> ImageBuffer:
    """A small synthetic landscape: smooth sky, textured ground, a few objects, film grain.

    Different ``variant`` values give different scenes with the same
    character (strong neighbour correlation, uneven histogram).
    """
    rng = np.random.default_rng(1000 + variant)
    yy, xx = np.mgrid[0:size, 0:size] / (size - 1.0)

    # sky: bright, slowly varying
    sky = rng.uniform(170, 210) - 40.0 * yy + 8.0 * np.sin(2 * np.pi * (xx * rng.uniform(0.5, 1.5)))
    # horizon as a gentle sinusoid
    h0 = rng.uniform(0.45, 0.6)
    horizon = h0 + 0.06 * np.sin(2 * np.pi * (rng.uniform(0.8, 2.0) * xx + rng.uniform(0, 1)))
    ground = rng.uniform(60, 100) + 40.0 * (yy - h0)
    for _ in range(3):
        fx, fy = rng.uniform(3.0, 12.0, size=2)
        ground += rng.uniform(6, 14) * np.sin(2 * np.pi * (fx * xx + fy * yy) + rng.uniform(0, 6.3))
    edge = 1.0 / (1.0 + np.exp((yy - horizon) * 200.0))
    img = edge * sky + (1.0 - edge) * ground

    # objects: soft-edged disks and boxes with nearly flat interiors
    for _ in range(4):
        cx, cy = rng.uniform(0.1, 0.9), rng.uniform(0.3, 0.9)
        r = rng.uniform(0.04, 0.14)
        level = rng.uniform(20, 240)
        if rng.random() < 0.5:
            dist = np.sqrt((xx - cx) ** 2 + (yy - cy) ** 2) - r
        else:
            dist = np.maximum(np.abs(xx - cx), np.abs(yy - cy)) - r
        m = 1.0 / (1.0 + np.exp(dist * 150.0))
        shade = level + 25.0 * (xx - cx) - 20.0 * (yy - cy)
        img = m * shade + (1.0 - m) * img

    img += rng.normal(0.0, 2.0, size=img.shape)
    return ImageBuffer.from_array(np.clip(np.rint(img), 0, 255).astype(np.uint8))
