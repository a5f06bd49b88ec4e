"""Encrypt-under-a-hidden-key oracles that the attacks talk to."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ..cipher import as_bytes_array, encrypt
from ..errors import OracleFailure
from ..tent import TentKey


class EncryptionOracle(ABC):
    """Returns ciphertext for submitted plaintext under a key it never reveals.

    Every call to :meth:`submit` counts as one query, whether or not it
    succeeds.  Because the cipher is a plain XOR, a decryption oracle has
    the same algebra and is served by the same interface.
    """

    def __init__(self):
        self._queries = 0

    @property
    def queries(self) -> int:
        return self._queries

    def submit(self, plain) -> np.ndarray:
        self._queries += 1
        return self._encrypt(as_bytes_array(plain))

    __call__ = submit

    @abstractmethod
    def _encrypt(self, plain: np.ndarray) -> np.ndarray:
        ...


class LocalOracle(EncryptionOracle):
    """In-process oracle wrapping a :class:`TentKey`.

    ``max_queries`` and ``max_length`` let tests simulate an oracle that
    refuses service.
    """

    def __init__(self, key: TentKey, max_queries: Optional[int] = None,
                 max_length: Optional[int] = None):
        super().__init__()
        self.__key = key
        self.max_queries = max_queries
        self.max_length = max_length

    def _encrypt(self, plain):
        if self.max_queries is not None and self._queries > self.max_queries:
            raise OracleFailure("query limit reached")
        if self.max_length is not None and plain.size > self.max_length:
            return encrypt(plain[: self.max_length], self.__key)
        return encrypt(plain, self.__key)


class CallableOracle(EncryptionOracle):
    """Adapts any ``bytes -> bytes`` function, e.g. a remote service client."""

    def __init__(self, fn):
        super().__init__()
        self._fn = fn

    def _encrypt(self, plain):
        try:
            out = self._fn(plain.tobytes())
        except Exception as exc:
            raise OracleFailure(str(exc)) from exc
        return as_bytes_array(out)
