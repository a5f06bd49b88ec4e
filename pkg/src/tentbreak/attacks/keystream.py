"""Attacks that recover keystream bytes directly, without touching the key.

The keystream depends only on the key (there is no nonce), so one observed
keystream decrypts every ciphertext produced under that key.
"""
from __future__ import annotations

import numpy as np

from ..cipher import as_bytes_array, xor_bytes
from ..errors import KeystreamTooShort, LengthMismatch, OracleFailure
from .oracle import EncryptionOracle
from .report import AttackReport


def cpa_recover_keystream(oracle: EncryptionOracle, n: int) -> np.ndarray:
    """Submit ``n`` zero bytes once; the ciphertext *is* the keystream."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = as_bytes_array(oracle.submit(np.zeros(n, dtype=np.uint8)))
    if out.size != n:
        raise OracleFailure(f"oracle returned {out.size} bytes for {n}")
    return out


def kpa_recover_keystream(plain, cipher) -> np.ndarray:
    p, c = as_bytes_array(plain), as_bytes_array(cipher)
    if p.size == 0:
        raise ValueError("known pair must be nonempty")
    return xor_bytes(p, c)


def decrypt_with_keystream(cipher, ks) -> np.ndarray:
    c, k = as_bytes_array(cipher), as_bytes_array(ks)
    if c.size > k.size:
        raise KeystreamTooShort(f"need {c.size} keystream bytes, have {k.size}")
    return np.bitwise_xor(c, k[: c.size])


def ciphertext_xor_distinguisher(c1, c2) -> np.ndarray:
    """``c1 ^ c2`` for two ciphertexts under one key, which equals ``p1 ^ p2``."""
    a, b = as_bytes_array(c1), as_bytes_array(c2)
    if a.size != b.size:
        raise LengthMismatch(f"lengths differ: {a.size} vs {b.size}")
    return xor_bytes(a, b)


def cpa_attack(oracle: EncryptionOracle, victim, plain=None):
    """Decrypt ``victim`` with one chosen-plaintext query.

    Returns ``(recovered, report)``.  Pass the true ``plain`` to have the
    report record whether recovery was exact; otherwise the evidence is the
    keystream length the oracle disclosed.
    """
    victim = as_bytes_array(victim)
    before = oracle.queries
    ks = cpa_recover_keystream(oracle, victim.size)
    recovered = decrypt_with_keystream(victim, ks)
    exact = None if plain is None else bool(np.array_equal(recovered, as_bytes_array(plain)))
    report = AttackReport(
        method="CPA",
        queries_used=oracle.queries - before,
        success=exact is not False,
        recovered_keystream_len=int(ks.size),
        verified_match_len=int(ks.size),
        plaintext_recovered=exact,
    )
    return recovered, report


def kpa_attack(known_plain, known_cipher, victim, plain=None):
    victim = as_bytes_array(victim)
    ks = kpa_recover_keystream(known_plain, known_cipher)
    recovered = decrypt_with_keystream(victim, ks)
    exact = None if plain is None else bool(np.array_equal(recovered, as_bytes_array(plain)))
    report = AttackReport(
        method="KPA",
        success=exact is not False,
        recovered_keystream_len=int(ks.size),
        verified_match_len=int(victim.size),
        plaintext_recovered=exact,
    )
    return recovered, report


def xor_attack(c1, c2, plain1=None, plain2=None):
    leak = ciphertext_xor_distinguisher(c1, c2)
    exact = None
    if plain1 is not None and plain2 is not None:
        exact = bool(np.array_equal(leak, xor_bytes(plain1, plain2)))
    report = AttackReport(
        method="CT_XOR",
        success=exact is not False,
        verified_match_len=int(leak.size),
        plaintext_recovered=exact,
    )
    return leak, report
