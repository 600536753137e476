"""Pinned pseudo-random plumbing shared by the generators and random crops.

All randomness flows through numpy's Philox, a counter-based generator with a
2x64-bit key.  The first key word is the caller's seed; the second is a
sub-stream selector whose top four bits tag the consumer family so that, for
one seed, noise images and crop offsets never share a stream:

    key word 2 = (family tag << 60) | stream        stream < 2**60

Every consumer documents how it maps raw 64-bit words to values, so the byte
streams are reproducible from this file alone.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
STREAM_BITS = 60

TAG_UNIFORM = 0
TAG_GAUSSIAN = 1
TAG_CROP = 4


def _key(seed: int, tag: int, stream: int) -> np.ndarray:
    if not 0 <= stream < (1 << STREAM_BITS):
        raise ValueError(f"stream out of range: {stream}")
    word2 = (tag << STREAM_BITS) | stream
    return np.array([seed & _MASK64, word2 & _MASK64], dtype=np.uint64)


def raw_words(seed: int, tag: int, stream: int, n: int) -> np.ndarray:
    """First n raw 64-bit words of the keyed Philox stream."""
    bit_gen = np.random.Philox(key=_key(seed, tag, stream))
    return bit_gen.random_raw(n)


def generator(seed: int, tag: int, stream: int = 0) -> np.random.Generator:
    """A numpy Generator over the keyed Philox stream (for bounded integers)."""
    return np.random.Generator(np.random.Philox(key=_key(seed, tag, stream)))


def pack_stream(width: int, height: int, index: int) -> int:
    """Per-cell sub-stream word: 20 bits each of width, height, sample index."""
    for name, v in (("width", width), ("height", height), ("index", index)):
        if not 0 <= v < (1 << 20):
            raise ValueError(f"{name} out of packable range: {v}")
    return (width << 40) | (height << 20) | index
