"""Deterministic counter-based sampling of random structures.

Randomness is derived from SHA-256 of (seed, stream, counter), so a given
seed reproduces the same sample sequence on every platform and Python
version; nothing here touches the process-global random state.
"""

from __future__ import annotations

import hashlib
import itertools

from .structures import Signature, Structure


class CounterRng:
    """Bit source: hash a (seed, stream, counter) triple, consume the digest."""

    def __init__(self, seed: int, stream: str = ""):
        self._prefix = f"{seed}|{stream}|".encode()
        self._counter = 0
        self._pool = 0
        self._bits = 0

    def _refill(self) -> None:
        digest = hashlib.sha256(self._prefix + str(self._counter).encode()).digest()
        self._counter += 1
        self._pool = (self._pool << 256) | int.from_bytes(digest, "big")
        self._bits += 256

    def getbits(self, k: int) -> int:
        while self._bits < k:
            self._refill()
        self._bits -= k
        value = self._pool >> self._bits
        self._pool &= (1 << self._bits) - 1
        return value

    def coin(self) -> bool:
        return self.getbits(1) == 1

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] by rejection sampling."""
        span = hi - lo + 1
        k = (span - 1).bit_length() or 1
        while True:
            v = self.getbits(k)
            if v < span:
                return lo + v


def random_structure(sig: Signature, max_size: int, seed: int, index: int) -> Structure:
    """Sample number `index` of the seeded sequence: universe size uniform in
    [1, max_size], then each possible tuple kept independently with
    probability one half."""
    rng = CounterRng(seed, f"structure-{index}")
    n = rng.randint(1, max_size)
    universe = tuple(str(i) for i in range(n))
    rels = {}
    for name, arity in sig.symbols:
        rels[name] = [
            t for t in itertools.product(universe, repeat=arity) if rng.coin()
        ]
    return Structure(sig, universe, rels)
