"""Seeded synthetic image distributions.

Both generators consume raw 64-bit Philox words (see _rng) under documented
mappings so any fixed (seed, stream) reproduces the same bytes:

- uniform: each word yields 8 sample bytes, least-significant byte first,
  filling the planar raster in C order (all of R row-major, then G, then B).
- gaussian: each word yields one double u = (word >> 11) * 2**-53 in [0, 1);
  consecutive pairs (u1, u2) feed Box-Muller, z0 = sqrt(-2 ln(1-u1)) cos(2 pi u2)
  and z1 = the sine twin, emitted z0-then-z1 into the same planar C order.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from . import _rng
from .core import Image, round_half_away

DEFAULT_MEANS = (0.6, 0.5, 0.9)
DEFAULT_STDS = (0.3, 0.25, 0.4)


@dataclasses.dataclass(frozen=True)
class GaussianSpec:
    """Per-channel normal image model in [0, 1] units."""

    width: int
    height: int
    means: tuple[float, float, float] = DEFAULT_MEANS
    stds: tuple[float, float, float] = DEFAULT_STDS
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad dimensions {self.width}x{self.height}")
        if len(self.means) != 3 or len(self.stds) != 3:
            raise ValueError("means and stds must have one entry per channel")
        if any(s <= 0 for s in self.stds):
            raise ValueError("stds must be positive")


def uniform_image(width: int, height: int, seed: int, stream: int = 0) -> Image:
    """I.i.d. uniform samples on 0..255, deterministic per (seed, stream)."""
    if width < 1 or height < 1:
        raise ValueError(f"bad dimensions {width}x{height}")
    n = 3 * height * width
    words = _rng.raw_words(seed, _rng.TAG_UNIFORM, stream, (n + 7) // 8)
    shifts = np.arange(8, dtype=np.uint64) * np.uint64(8)
    raster = ((words[:, None] >> shifts) & np.uint64(0xFF)).astype(np.uint8)
    return Image(raster.reshape(-1)[:n].reshape(3, height, width))


def gaussian_image(spec: GaussianSpec, stream: int = 0) -> Image:
    """Per-channel normal draws clamped to [0, 1], scaled to 0..255, rounded."""
    n = 3 * spec.height * spec.width
    pairs = (n + 1) // 2
    words = _rng.raw_words(spec.seed, _rng.TAG_GAUSSIAN, stream, 2 * pairs)
    u = (words >> np.uint64(11)).astype(np.float64) * 2.0**-53
    u1, u2 = u[0::2], u[1::2]
    radius = np.sqrt(-2.0 * np.log1p(-u1))  # 1-u1 in (0, 1], so the log is total
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs, dtype=np.float64)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    z = z[:n].reshape(3, spec.height, spec.width)
    means = np.asarray(spec.means, dtype=np.float64)[:, None, None]
    stds = np.asarray(spec.stds, dtype=np.float64)[:, None, None]
    unit = np.clip(means + stds * z, 0.0, 1.0)
    return Image(round_half_away(unit * 255.0).astype(np.uint8))
