"""Breaks of the tent-map XOR cipher.

``keystream``  chosen/known plaintext and two-ciphertext attacks
``recovery``   recovery of the effective key ``(mu, x1)`` from keystream bytes
``oracle``     the encryption-oracle abstraction the attacks run against
"""
from .keystream import (
    ciphertext_xor_distinguisher,
    cpa_attack,
    cpa_recover_keystream,
    decrypt_with_keystream,
    kpa_attack,
    kpa_recover_keystream,
    xor_attack,
)
from .oracle import CallableOracle, EncryptionOracle, LocalOracle
from .recovery import (
    KeyCandidate,
    RecoveryConfig,
    branch_and_prune,
    consistent_hull,
    infer_branches,
    matching_prefix,
    recover_key_from_keystream,
    verify_key_candidate,
)
from .report import AttackReport

__all__ = [
    "AttackReport",
    "CallableOracle",
    "EncryptionOracle",
    "KeyCandidate",
    "LocalOracle",
    "RecoveryConfig",
    "branch_and_prune",
    "ciphertext_xor_distinguisher",
    "consistent_hull",
    "cpa_attack",
    "cpa_recover_keystream",
    "decrypt_with_keystream",
    "infer_branches",
    "kpa_attack",
    "kpa_recover_keystream",
    "matching_prefix",
    "recover_key_from_keystream",
    "verify_key_candidate",
    "xor_attack",
]
