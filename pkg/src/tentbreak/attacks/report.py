"""Structured attack outcomes and their JSON form."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

METHODS = ("CPA", "KPA", "CT_XOR", "KEY_RECOVERY")


@dataclass
class AttackReport:
    """Outcome of one attack run.

    ``success`` may only be true when some verified evidence is recorded:
    either a nonzero ``verified_match_len`` or ``plaintext_recovered``.
    """

    method: str
    queries_used: int = 0
    success: bool = False
    recovered_keystream_len: int = 0
    key_estimate: Optional[tuple[float, float]] = None
    verified_match_len: int = 0
    plaintext_recovered: Optional[bool] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.success and not (self.verified_match_len > 0 or self.plaintext_recovered):
            raise ValueError("success requires verified evidence")

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.key_estimate is not None:
            mu, x1 = self.key_estimate
            d["key_estimate"] = {
                "mu": mu,
                "x1": x1,
                "mu_hex": float(mu).hex(),
                "x1_hex": float(x1).hex(),
            }
        return d

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "AttackReport":
        d = dict(d)
        est = d.get("key_estimate")
        if isinstance(est, dict):
            d["key_estimate"] = (float.fromhex(est["mu_hex"]), float.fromhex(est["x1_hex"]))
        return cls(**d)
