"""Deterministic 64-bit seed derivation.

Every random object in an experiment is drawn from ``numpy.random.default_rng``
seeded with a 64-bit integer derived here. Derivation is a counter-style
hash chain built on the SplitMix64 finalizer::

    h = mix64(master)
    for w in words:
        h = mix64(h ^ w)

Words are 64-bit unsigned integers. Strings are folded to one word with
FNV-1a (64 bit) over their UTF-8 bytes, floats contribute their IEEE-754
binary64 bit pattern and booleans contribute 0/1. The scheme is pure integer
arithmetic so that any implementation can reproduce it bit for bit.
"""
from __future__ import annotations

import struct

import numpy as np

MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def mix64(z: int) -> int:
    """SplitMix64 step: add the golden gamma, then the finalizer."""
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def fnv1a64(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & MASK64
    return h


def float_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(x)))[0]


def _word(value) -> int:
    if isinstance(value, (bool, np.bool_)):
        return int(bool(value))
    if isinstance(value, str):
        return fnv1a64(value)
    if isinstance(value, (float, np.floating)):
        return float_bits(value)
    if isinstance(value, (int, np.integer)):
        if value < 0:
            raise ValueError(f"seed words must be non-negative, got {value}")
        return int(value) & MASK64
    raise TypeError(f"cannot fold {type(value).__name__} into a seed")


def derive_seed(master: int, *words) -> int:
    """Fold ``words`` into ``master`` and return a 64-bit seed."""
    h = mix64(_word(int(master)))
    for w in words:
        h = mix64(h ^ _word(w))
    return h


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & MASK64)
