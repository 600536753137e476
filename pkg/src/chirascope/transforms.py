"""Reflection, padded translation, cropping, and the phase-shifted wrappers.

The phase-shift wrappers realize "apply the operator as if the image content
had occurred at a horizontal offset": pad onto a constant canvas, translate,
run the (mirror, operator) pair in one of the two orders, translate by the
mirrored inverse offset, and crop the padding back off.  Scanning both orders
over offsets is what exposes glide-commutativity.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from . import _rng
from .core import Image, ProcessingOp

PAD_CONSTANT = 128
PAD_WIDTH = 32


@dataclasses.dataclass(frozen=True)
class PhaseShift:
    """Horizontal offset in pixels; vertical offsets provably do not matter."""

    phi: int

    def __post_init__(self):
        if self.phi < 0:
            raise ValueError(f"phase shift must be non-negative, got {self.phi}")


def flip_h(x: Image) -> Image:
    """Mirror about the vertical axis: column c goes to column width-1-c."""
    return Image(np.ascontiguousarray(x.samples[:, :, ::-1]))


def flip_op() -> ProcessingOp:
    return ProcessingOp("flip", flip_h)


def pad_canvas(x: Image, pad: int = PAD_WIDTH) -> Image:
    """Embed x centered in a canvas extended by ``pad`` constant-128 pixels per side."""
    if pad < 0:
        raise ValueError("pad must be non-negative")
    return Image(
        np.pad(x.samples, ((0, 0), (pad, pad), (pad, pad)), constant_values=PAD_CONSTANT)
    )


def translate_padded(x: Image, v: tuple[int, int], canvas: Image) -> Image:
    """Shift ``canvas`` (the padded embedding of content ``x``) by v = (dx, dy).

    Positive dx moves content right, positive dy down.  Exposed area takes the
    pad constant.  The shift may not exceed the padding that separates the
    content from the canvas edge, so content never falls off.
    """
    dx, dy = v
    pad_x = (canvas.width - x.width) // 2
    pad_y = (canvas.height - x.height) // 2
    if pad_x < 0 or pad_y < 0:
        raise ValueError("canvas smaller than content")
    if abs(dx) > pad_x or abs(dy) > pad_y:
        raise ValueError(
            f"shift {v} exceeds padding ({pad_x}, {pad_y}); content would be clipped"
        )
    return _shift(canvas, dx, dy)


def _shift(canvas: Image, dx: int, dy: int) -> Image:
    out = np.full_like(canvas.samples, PAD_CONSTANT)
    h, w = canvas.height, canvas.width
    src_x = slice(max(0, -dx), min(w, w - dx))
    dst_x = slice(max(0, dx), min(w, w + dx))
    src_y = slice(max(0, -dy), min(h, h - dy))
    dst_y = slice(max(0, dy), min(h, h + dy))
    out[:, dst_y, dst_x] = canvas.samples[:, src_y, src_x]
    return Image(out)


def _crop_pad(canvas: Image, pad: int) -> Image:
    return Image(np.ascontiguousarray(canvas.samples[:, pad:-pad, pad:-pad]))


def _phase_shifted(op: ProcessingOp, x: Image, phi, pad: int, flip_first: bool) -> Image:
    if isinstance(phi, PhaseShift):
        phi = phi.phi
    if phi < 0:
        raise ValueError(f"phase shift must be non-negative, got {phi}")
    if phi > pad:
        raise ValueError(f"pad {pad} too small for phase shift {phi}")
    canvas = pad_canvas(x, pad)
    shifted = _shift(canvas, phi, 0)
    if flip_first:
        processed = op.apply(flip_h(shifted))
    else:
        processed = flip_h(op.apply(shifted))
    if (processed.width, processed.height) != (canvas.width, canvas.height):
        raise ValueError(
            f"op '{op.name}' changed canvas dimensions; phase shifts require "
            "dimension-preserving ops"
        )
    # the mirror of translation by -phi is translation by +phi
    undone = _shift(processed, phi, 0)
    return _crop_pad(undone, pad)


def phase_shifted_JT(op: ProcessingOp, x: Image, phi, pad: int = PAD_WIDTH) -> Image:
    """Mirror first, then op, at content offset phi: pad, translate by phi,
    flip, apply op, translate by the mirrored inverse offset, crop."""
    return _phase_shifted(op, x, phi, pad, flip_first=True)


def phase_shifted_TJ(op: ProcessingOp, x: Image, phi, pad: int = PAD_WIDTH) -> Image:
    """Op first, then mirror, at content offset phi (the other order)."""
    return _phase_shifted(op, x, phi, pad, flip_first=False)


def crop(x: Image, left: int, top: int, w: int, h: int) -> Image:
    """Exact sub-raster of width w and height h anchored at (left, top)."""
    if w < 1 or h < 1:
        raise ValueError(f"crop size must be positive, got {w}x{h}")
    if left < 0 or top < 0 or left + w > x.width or top + h > x.height:
        raise ValueError(
            f"crop window ({left},{top},{w},{h}) out of bounds for {x.width}x{x.height}"
        )
    return Image(np.ascontiguousarray(x.samples[:, top : top + h, left : left + w]))


def random_crop(x: Image, w: int, h: int, margin: int, seed: int) -> Image:
    """Seeded crop with both offsets drawn uniformly, window kept inside the
    centered (width-2*margin) x (height-2*margin) region."""
    if margin < 0:
        raise ValueError("margin must be non-negative")
    max_left = x.width - margin - w
    max_top = x.height - margin - h
    if max_left < margin or max_top < margin:
        raise ValueError(
            f"no legal {w}x{h} window with margin {margin} in {x.width}x{x.height}"
        )
    gen = _rng.generator(seed, _rng.TAG_CROP)
    left = int(gen.integers(margin, max_left + 1))
    top = int(gen.integers(margin, max_top + 1))
    return crop(x, left, top, w, h)


def crop_op(left: int, top: int, w: int, h: int) -> ProcessingOp:
    return ProcessingOp(f"crop{w}x{h}", lambda x: crop(x, left, top, w, h))
