"""Reference implementations kept deliberately naive and independent of the package.

Exact rational arithmetic for the quantizer, a plain Python loop for the map.
"""
import math
from fractions import Fraction


def ref_orbit(mu, x0, n):
    xs, x = [], x0
    for _ in range(n):
        x = mu * x if x < 0.5 else mu * (1.0 - x)
        xs.append(x)
    return xs


def ref_quantize(x):
    b = math.floor(Fraction(x) * 256)
    return 255 if b == 256 else b


def ref_keystream(mu, x0, n):
    return [ref_quantize(x) for x in ref_orbit(mu, x0, n)]


def ref_branches(mu, x0, n):
    out, x = [], x0
    for _ in range(n):
        x = mu * x if x < 0.5 else mu * (1.0 - x)
        out.append("L" if x < 0.5 else "R")
    return out


def ref_pearson(xs, ys):
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = sum((a - mx) ** 2 for a in xs)
    syy = sum((b - my) ** 2 for b in ys)
    return sxy / math.sqrt(sxx * syy)
