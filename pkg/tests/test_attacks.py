import json

import numpy as np
import pytest

from conftest import random_key
from tentbreak.attacks import (
    AttackReport,
    CallableOracle,
    LocalOracle,
    ciphertext_xor_distinguisher,
    cpa_attack,
    cpa_recover_keystream,
    decrypt_with_keystream,
    kpa_attack,
    kpa_recover_keystream,
    xor_attack,
)
from tentbreak.cipher import encrypt, xor_bytes
from tentbreak.errors import KeystreamTooShort, LengthMismatch, OracleFailure
from tentbreak.tent import TentKey, keystream_bytes, quantize, tent_trajectory
from tentbreak.testimage import builtin_image
from tentbreak.stats import shannon_entropy

K = TentKey(2.0, 0.3)


def test_cpa_examples():
    oracle = LocalOracle(K)
    assert cpa_recover_keystream(oracle, 4).tolist() == [153, 204, 102, 204]
    assert oracle.queries == 1
    k = TentKey(1.61, 0.77)
    assert cpa_recover_keystream(LocalOracle(k), 1).tolist() == [quantize(tent_trajectory(k, 1)[0])]


def test_cpa_decrypts_other_ciphertexts(rng):
    key = random_key(rng)
    oracle = LocalOracle(key)
    ks = cpa_recover_keystream(oracle, 1000)
    for n in (1, 17, 1000):
        p = rng.integers(0, 256, n, dtype=np.uint8)
        assert np.array_equal(decrypt_with_keystream(encrypt(p, key), ks), p)
    assert oracle.queries == 1


def test_oracle_failures():
    with pytest.raises(OracleFailure):
        cpa_recover_keystream(LocalOracle(K, max_length=2), 4)
    oracle = LocalOracle(K, max_queries=1)
    cpa_recover_keystream(oracle, 4)
    with pytest.raises(OracleFailure):
        cpa_recover_keystream(oracle, 4)
    assert oracle.queries == 2

    def refuse(_):
        raise ConnectionError("down")

    with pytest.raises(OracleFailure):
        cpa_recover_keystream(CallableOracle(refuse), 4)


def test_callable_oracle_round_trip():
    oracle = CallableOracle(lambda b: encrypt(b, K).tobytes())
    assert cpa_recover_keystream(oracle, 4).tolist() == [153, 204, 102, 204]
    assert oracle.queries == 1


def test_kpa_examples(rng):
    assert kpa_recover_keystream([1, 2, 3], [152, 206, 101]).tolist() == [153, 204, 102]
    assert kpa_recover_keystream([0, 0], [7, 9]).tolist() == [7, 9]
    key = random_key(rng)
    p = rng.integers(0, 256, 300, dtype=np.uint8)
    assert np.array_equal(kpa_recover_keystream(p, encrypt(p, key)), keystream_bytes(key, 300))
    with pytest.raises(LengthMismatch):
        kpa_recover_keystream([1, 2], [1])


def test_decrypt_with_keystream_examples():
    assert decrypt_with_keystream([153], [153, 204]).tolist() == [0]
    with pytest.raises(KeystreamTooShort):
        decrypt_with_keystream([0] * 5, [0] * 4)


def test_xor_distinguisher(rng):
    key = random_key(rng)
    p1 = rng.integers(0, 256, 500, dtype=np.uint8)
    p2 = rng.integers(0, 256, 500, dtype=np.uint8)
    c1, c2 = encrypt(p1, key), encrypt(p2, key)
    assert np.array_equal(ciphertext_xor_distinguisher(c1, c2), xor_bytes(p1, p2))
    assert not ciphertext_xor_distinguisher(c1, c1).any()
    with pytest.raises(LengthMismatch):
        ciphertext_xor_distinguisher(c1, c2[:-1])


def test_xor_of_images_leaks_structure():
    key = TentKey(1.99999, 0.2718)
    a, b = builtin_image(0), builtin_image(1)
    leak = ciphertext_xor_distinguisher(encrypt(a.pixels, key), encrypt(b.pixels, key))
    assert shannon_entropy(leak) < 7.2
    assert shannon_entropy(encrypt(a.pixels, key)) > 7.9


def test_attack_reports(rng):
    key = random_key(rng)
    p = rng.integers(0, 256, 64, dtype=np.uint8)
    c = encrypt(p, key)
    rec, rep = cpa_attack(LocalOracle(key), c, p)
    assert np.array_equal(rec, p)
    assert rep.success and rep.queries_used == 1 and rep.plaintext_recovered
    q = rng.integers(0, 256, 64, dtype=np.uint8)
    rec, rep = kpa_attack(q, encrypt(q, key), c, p)
    assert np.array_equal(rec, p) and rep.success and rep.method == "KPA"
    leak, rep = xor_attack(c, encrypt(q, key), p, q)
    assert rep.success and rep.plaintext_recovered
    _, rep = cpa_attack(LocalOracle(key), c, q)
    assert rep.plaintext_recovered is False and not rep.success


def test_report_json_round_trip():
    rep = AttackReport("KEY_RECOVERY", success=True, verified_match_len=128,
                       recovered_keystream_len=128, key_estimate=(1.9, 0.1 + 0.2))
    d = json.loads(rep.to_json())
    assert d["key_estimate"]["x1_hex"] == (0.1 + 0.2).hex()
    back = AttackReport.from_dict(d)
    assert back.key_estimate == (1.9, 0.1 + 0.2)
    assert back.verified_match_len == 128


def test_report_invariants():
    with pytest.raises(ValueError):
        AttackReport("CPA", success=True)
    with pytest.raises(ValueError):
        AttackReport("BOGUS")
