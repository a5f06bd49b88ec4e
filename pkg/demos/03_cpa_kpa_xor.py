"""Three ways to read the ciphertext without the key.

The keystream depends only on the key, so
  * one chosen all-zero plaintext returns the keystream itself,
  * one known (plaintext, ciphertext) pair does the same,
  * two ciphertexts under one key XOR to the XOR of their plaintexts.
"""
import numpy as np

from tentbreak import TentKey, encrypt
from tentbreak.attacks import cpa_attack, kpa_attack, xor_attack, LocalOracle
from tentbreak.stats import shannon_entropy
from tentbreak.testimage import builtin_image

key = TentKey(1.99999, 0.3141)
p1, p2 = builtin_image(0).pixels, builtin_image(1).pixels
c1, c2 = encrypt(p1, key), encrypt(p2, key)

oracle = LocalOracle(key)
rec, rep = cpa_attack(oracle, c1, p1)
print(f"CPA: {rep.queries_used} query, exact: {np.array_equal(rec, p1)}")

rec, rep = kpa_attack(p2, c2, c1, p1)
print(f"KPA: exact: {np.array_equal(rec, p1)}")

leak, rep = xor_attack(c1, c2, p1, p2)
print(f"XOR: c1^c2 == p1^p2: {rep.plaintext_recovered}; "
      f"entropy {shannon_entropy(leak):.3f} bits vs {shannon_entropy(c1):.3f} for c1")
