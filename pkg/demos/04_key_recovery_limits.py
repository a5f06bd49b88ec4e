"""Recovering (mu, x1) from 128 keystream bytes, and where it stops.

Interval search narrows mu to about 1e-4.  Beyond that, binary64 rounding
inside the orbit decides the later bytes: neighbouring floats of mu agree on
only the first few dozen bytes, so only the exact float reproduces all 128.
The report states how many bytes the estimate actually regenerates.
"""
import math

from tentbreak import TentKey, keystream_bytes, tent_trajectory
from tentbreak.attacks import recover_key_from_keystream
from tentbreak.attacks.recovery import matching_prefix

key = TentKey(1.83, 0.41)
ks = keystream_bytes(key, 128)
x1 = float(tent_trajectory(key, 1)[0])

cand, rep = recover_key_from_keystream(ks)
mu_hat, x1_hat = cand.center
lo, hi = rep.details["search_box"][:2]
print(f"true mu {key.mu!r}, estimate {mu_hat!r}, error {abs(mu_hat - key.mu):.1e}")
print(f"mu interval [{lo!r}, {hi!r}] contains truth: {lo <= key.mu <= hi}")
print(f"estimate regenerates {rep.verified_match_len}/128 bytes; success: {rep.success}")

# how far do the true key's float neighbours get?
mu = key.mu
for k in (1, 10, 1000, 10**6):
    step = k * math.ulp(mu)
    print(f"mu + {k:>7d} ulp reproduces {matching_prefix(mu + step, x1, ks)} bytes")
