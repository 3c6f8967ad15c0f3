"""Deterministic seed derivation and stream construction.

The whole pipeline is seeded through one fixed-algorithm hash so that results
never depend on process layout, worker count, or dict ordering.
"""

from __future__ import annotations

import numpy as np

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def derive_seed(global_seed: int, image_id: str, factor: str, severity: int) -> int:
    """Derive a 64-bit stream seed from run seed, image id, factor, severity.

    64-bit FNV-1a over the "|"-joined decimal/text fields.  The function is a
    frozen part of the output format: the same inputs yield the same seed on
    every platform and version.
    """
    payload = f"{int(global_seed)}|{image_id}|{factor}|{int(severity)}".encode("utf-8")
    h = _FNV_OFFSET
    for byte in payload:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def rng_from_seed(seed: int) -> np.random.Generator:
    """Counter-based generator for a derived seed; streams never overlap."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))
