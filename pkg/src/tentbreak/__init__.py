"""Cryptanalysis workbench for the tent-map XOR image cipher.

The cipher XORs plaintext bytes with a keystream obtained by iterating the
tent map from a secret ``(mu, x0)`` and quantizing each state to a byte.
This package implements the cipher, the statistics usually quoted for such
schemes, and the attacks that break it.
"""
from .cipher import decrypt, encrypt, xor_bytes
from .errors import (
    AmbiguousKey,
    DegenerateOrbit,
    DegenerateVariance,
    FormatError,
    InvalidKey,
    KeystreamTooShort,
    LengthMismatch,
    NoConsistentKey,
    OracleFailure,
    SearchBudgetExceeded,
    TentBreakError,
)
from .image_io import ImageBuffer, read_pgm, read_raw, write_pgm, write_raw
from .tent import TentKey, keystream_bytes, quantize, tent_step, tent_trajectory

__version__ = "0.1.0"
