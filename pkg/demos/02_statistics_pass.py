"""Encrypted images look random by the usual measures.

Histogram entropy near 8 bits, adjacent-pixel correlations near zero, and
NPCR/UACI near their ideal values -- for a cipher that demo 03 breaks with a
single query.
"""
from tentbreak import TentKey, encrypt
from tentbreak.stats import analyze
from tentbreak.testimage import builtin_image

key = TentKey(1.99999, 0.3141)
plain = builtin_image(0)
cipher = plain.with_pixels(encrypt(plain.pixels, key))
other = builtin_image(1)
cipher2 = other.with_pixels(encrypt(other.pixels, key))

for name, img in [("plain", plain), ("cipher", cipher)]:
    rep = analyze(img)
    corr = ", ".join(f"{d} {r:+.4f}" for d, r in rep.correlations.items())
    print(f"{name:7s} entropy {rep.entropy_bits:.4f} bits; correlation {corr}")

rep = analyze(cipher, cipher2)
print(f"NPCR {rep.npcr_percent:.2f}%  UACI {rep.uaci_percent:.2f}%")
