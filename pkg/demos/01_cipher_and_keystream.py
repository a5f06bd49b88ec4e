"""The cipher in a few lines: iterate, quantize, XOR.

Shows the first keystream bytes for a key, that decryption is the same
operation as encryption, and that the upper bit of each byte reveals which
branch of the map was taken.
"""
import numpy as np

from tentbreak import TentKey, decrypt, encrypt, keystream_bytes, tent_trajectory
from tentbreak.attacks.recovery import infer_branches

key = TentKey(1.99, 0.3141)
states = tent_trajectory(key, 8)
ks = keystream_bytes(key, 8)
print("states   ", np.round(states, 6))
print("keystream", ks)
print("branches ", infer_branches(ks))

message = np.frombuffer(b"attack at dawn", dtype=np.uint8)
cipher = encrypt(message, key)
print("cipher   ", cipher)
print("decrypted", bytes(decrypt(cipher, key)))
