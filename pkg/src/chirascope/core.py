"""Image containers, exact NetPBM raster I/O, and operator composition.

Everything downstream treats images as immutable planar rasters of 8-bit
samples and operators as named deterministic functions on them.  Keeping the
sample type integral end-to-end is what makes "residual equals zero" an exact
predicate instead of a float tolerance.
"""
from __future__ import annotations

import dataclasses
from typing import Callable

import numpy as np

CHANNELS = 3

_WHITESPACE = b" \t\n\r\v\f"


class FormatError(ValueError):
    """Raster parse failure; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class CompositionError(ValueError):
    """A pipeline stage failed; ``stage`` names the offending operator."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}': {message}")
        self.stage = stage


def _freeze(samples: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(samples).copy()
    out.setflags(write=False)
    return out


@dataclasses.dataclass(frozen=True, eq=False)
class Image:
    """A 3-channel 8-bit raster stored planar: ``samples[channel, row, col]``."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 3 or s.shape[0] != CHANNELS:
            raise ValueError(f"expected (3, height, width) samples, got shape {s.shape}")
        if s.dtype != np.uint8:
            raise ValueError(f"expected uint8 samples, got {s.dtype}")
        if s.shape[1] < 1 or s.shape[2] < 1:
            raise ValueError("image must be at least 1x1")
        object.__setattr__(self, "samples", _freeze(s))

    @property
    def height(self) -> int:
        return self.samples.shape[1]

    @property
    def width(self) -> int:
        return self.samples.shape[2]

    @property
    def channels(self) -> int:
        return CHANNELS

    def __eq__(self, other) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.samples.shape == other.samples.shape and bool(
            np.array_equal(self.samples, other.samples)
        )

    def __hash__(self):
        return hash((self.samples.shape, self.samples.tobytes()))

    def __repr__(self):
        return f"Image({self.width}x{self.height})"


@dataclasses.dataclass(frozen=True, eq=False)
class ResidualImage:
    """Signed per-sample difference of two same-shaped images, values in [-255, 255]."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 3 or s.shape[0] != CHANNELS:
            raise ValueError(f"expected (3, height, width) samples, got shape {s.shape}")
        if s.dtype != np.int16:
            raise ValueError(f"expected int16 samples, got {s.dtype}")
        if s.size and (s.min() < -255 or s.max() > 255):
            raise ValueError("residual samples out of [-255, 255]")
        object.__setattr__(self, "samples", _freeze(s))

    @property
    def height(self) -> int:
        return self.samples.shape[1]

    @property
    def width(self) -> int:
        return self.samples.shape[2]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidualImage):
            return NotImplemented
        return self.samples.shape == other.samples.shape and bool(
            np.array_equal(self.samples, other.samples)
        )

    def __repr__(self):
        return f"ResidualImage({self.width}x{self.height})"


@dataclasses.dataclass(frozen=True)
class ProcessingOp:
    """A named deterministic Image -> Image map; output dimensions may differ."""

    name: str
    apply: Callable[[Image], Image]

    def __call__(self, x: Image) -> Image:
        return self.apply(x)


def identity_op() -> ProcessingOp:
    return ProcessingOp("identity", lambda x: x)


def compose(ops: list[ProcessingOp]) -> ProcessingOp:
    """Left-to-right pipeline of ops; the name is the stage names joined by '-'."""
    if not ops:
        raise ValueError("compose requires at least one op")
    ops = list(ops)

    def apply(x: Image) -> Image:
        out = x
        for op in ops:
            try:
                out = op.apply(out)
            except CompositionError:
                raise
            except Exception as exc:
                raise CompositionError(op.name, str(exc)) from exc
            if not isinstance(out, Image):
                raise CompositionError(op.name, "stage did not produce an Image")
        return out

    return ProcessingOp("-".join(op.name for op in ops), apply)


def round_half_away(a: np.ndarray) -> np.ndarray:
    """Round to nearest integer, halves away from zero (odd-symmetric).

    numpy's own round() is half-to-even; the asymmetry-free half-away rule is
    used at every rounding site in the toolkit so that mirrored inputs round
    to mirrored outputs exactly.
    """
    a = np.asarray(a, dtype=np.float64)
    return np.trunc(a + np.copysign(0.5, a)).astype(np.int64)


# ------------------------------------------------------------------ NetPBM I/O


def _token(data: bytes, pos: int) -> tuple[bytes, int]:
    # skip whitespace and '#' comments, then collect one token
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == 0x23:  # '#'
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise FormatError("unexpected end of header", pos)
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != 0x23:
        pos += 1
    return data[start:pos], start


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int, int]:
    tok, start = _token(data, pos)
    if not tok.isdigit():
        raise FormatError(f"malformed header: expected {what}, got {tok!r}", start)
    return int(tok), start, start + len(tok)


def read_ppm(data: bytes) -> Image:
    """Parse a binary PPM (P6, maxval 255) into an Image."""
    magic, start = _token(data, 0)
    if magic != b"P6":
        raise FormatError(f"not a binary PPM: magic {magic!r}", start)
    pos = start + 2
    width, _, pos = _int_token(data, pos, "width")
    height, _, pos = _int_token(data, pos, "height")
    maxval, mstart, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise FormatError(f"malformed header: bad dimensions {width}x{height}", mstart)
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval}", mstart)
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise FormatError("malformed header: missing separator before payload", pos)
    pos += 1
    need = width * height * 3
    if len(data) - pos < need:
        raise FormatError(
            f"truncated payload: need {need} bytes, have {len(data) - pos}", len(data)
        )
    if len(data) - pos > need:
        raise FormatError("trailing data after payload", pos + need)
    flat = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    interleaved = flat.reshape(height, width, 3)
    return Image(np.ascontiguousarray(interleaved.transpose(2, 0, 1)))


def write_ppm(x: Image) -> bytes:
    """Serialize an Image as binary PPM (P6, maxval 255)."""
    header = f"P6\n{x.width} {x.height}\n255\n".encode("ascii")
    return header + x.samples.transpose(1, 2, 0).tobytes()


def write_pgm(plane: np.ndarray) -> bytes:
    """Serialize a uint8 matrix as binary PGM (P5, maxval 255)."""
    p = np.asarray(plane)
    if p.ndim != 2 or p.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {p.shape}")
    if p.dtype != np.uint8:
        raise ValueError(f"expected uint8 plane, got {p.dtype}")
    header = f"P5\n{p.shape[1]} {p.shape[0]}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(p).tobytes()


def read_pgm(data: bytes) -> np.ndarray:
    """Parse a binary PGM (P5, maxval 255) into a uint8 matrix."""
    magic, start = _token(data, 0)
    if magic != b"P5":
        raise FormatError(f"not a binary PGM: magic {magic!r}", start)
    pos = start + 2
    width, _, pos = _int_token(data, pos, "width")
    height, _, pos = _int_token(data, pos, "height")
    maxval, mstart, pos = _int_token(data, pos, "maxval")
    if maxval != 255:
        raise FormatError(f"unsupported maxval {maxval}", mstart)
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise FormatError("malformed header: missing separator before payload", pos)
    pos += 1
    need = width * height
    if len(data) - pos < need:
        raise FormatError(
            f"truncated payload: need {need} bytes, have {len(data) - pos}", len(data)
        )
    flat = np.frombuffer(data, dtype=np.uint8, count=need, offset=pos)
    return flat.reshape(height, width).copy()


def write_pgm_heatmap(grid: np.ndarray, scale: str = "max") -> bytes:
    """Render a non-negative matrix as a P5 heatmap, one pixel per cell.

    scale "max" maps the largest cell to 255 linearly; "log" applies log1p
    first.  A pixel is 0 if and only if its cell is exactly 0: every nonzero
    cell lands in [1, 255], so exact zeros stay readable after scaling.
    """
    g = np.asarray(grid, dtype=np.float64)
    if g.ndim != 2 or g.size == 0:
        raise ValueError(f"expected a non-empty 2-D grid, got shape {g.shape}")
    if (g < 0).any():
        raise ValueError("heatmap cells must be non-negative")
    if scale not in ("max", "log"):
        raise ValueError(f"unknown scale {scale!r}")
    top = float(g.max())
    if top == 0.0:
        pixels = np.zeros(g.shape, dtype=np.uint8)
    else:
        if scale == "log":
            v = 255.0 * np.log1p(g) / np.log1p(top)
        else:
            v = 255.0 * g / top
        pixels = np.clip(round_half_away(v), 1, 255).astype(np.uint8)
        pixels[g == 0.0] = 0
    return write_pgm(pixels)
