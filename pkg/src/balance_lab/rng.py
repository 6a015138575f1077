"""Deterministic seed derivation for reproducible parallel simulation.

Every random stream in the toolkit is derived from a master seed and an
integer index path (trial number, sub-purpose tag, ...).  The derivation is
a pure function of the pair, so independent workers reproduce exactly the
same streams no matter how trials are scheduled.
"""

from __future__ import annotations

import hashlib
import random

_SEED_BITS = 64


def derive_seed(master: int, *path: int) -> int:
    """Derive a child seed from ``master`` and an index path.

    Same (master, path) always yields the same child, and distinct paths
    yield statistically unrelated children (SHA-256 of the coordinates).
    """
    material = ",".join(str(int(v)) for v in (master, *path)).encode("ascii")
    digest = hashlib.sha256(material).digest()
    return int.from_bytes(digest[: _SEED_BITS // 8], "big")


def stream(master: int, *path: int) -> random.Random:
    """A fresh pseudo-random stream for the given (master, path) coordinates."""
    return random.Random(derive_seed(master, *path))
