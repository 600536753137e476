"""The image-processing operators under study: Bayer mosaic + linear demosaic,
and a block-DCT codec model (jpeg-style, no entropy coding).

Both operators are engineered so that "commutes with mirroring" is decidable
bit-exactly.  The demosaic path is pure integer arithmetic.  The codec path is
float, but every stage is either per-sample (color transforms, quantization,
rounding) or built from mirror-symmetric basis rows summed in a
reversal-invariant order, so mirroring the input mirrors the output exactly
rather than within a tolerance.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .core import Image, ProcessingOp, round_half_away


# ---------------------------------------------------------------- Bayer mosaic


@dataclasses.dataclass(frozen=True, eq=False)
class BayerMosaic:
    """Single sample per pixel on the fixed GRBG tile:
    (0,0)=G (0,1)=R / (1,0)=B (1,1)=G."""

    samples: np.ndarray
    pattern: str = "GRBG"

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 2 or s.size == 0:
            raise ValueError(f"expected a non-empty 2-D mosaic, got shape {s.shape}")
        if s.dtype != np.uint8:
            raise ValueError(f"expected uint8 mosaic, got {s.dtype}")
        if self.pattern != "GRBG":
            raise ValueError(f"unsupported CFA pattern {self.pattern!r}")
        s = np.ascontiguousarray(s).copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    def __eq__(self, other):
        if not isinstance(other, BayerMosaic):
            return NotImplemented
        return bool(np.array_equal(self.samples, other.samples))


def _site_masks(h: int, w: int):
    rr, cc = np.mgrid[0:h, 0:w]
    r_even, c_even = (rr % 2) == 0, (cc % 2) == 0
    g_in_r_row = r_even & c_even      # G site on a row that carries R
    g_in_b_row = ~r_even & ~c_even    # G site on a row that carries B
    r_site = r_even & ~c_even
    b_site = ~r_even & c_even
    return g_in_r_row, g_in_b_row, r_site, b_site


def bayer_sample(x: Image) -> BayerMosaic:
    """Keep, per pixel, exactly the channel dictated by the GRBG tile."""
    h, w = x.height, x.width
    g_rr, g_br, r_site, b_site = _site_masks(h, w)
    out = np.empty((h, w), dtype=np.uint8)
    out[g_rr | g_br] = x.samples[1][g_rr | g_br]
    out[r_site] = x.samples[0][r_site]
    out[b_site] = x.samples[2][b_site]
    return BayerMosaic(out)


# Linear demosaic kernels, stored at twice their nominal 1/8 gains so every
# entry is an integer; the divisor is therefore 16.  All four are left/right
# symmetric, which together with integer arithmetic makes the filter commute
# with mirroring whenever the CFA phase survives the flip (odd widths).
_KERNEL_DIV = 16
_K_G_AT_RB = np.array([      # green at an R or B site
    [0, 0, -2, 0, 0],
    [0, 0, 4, 0, 0],
    [-2, 4, 8, 4, -2],
    [0, 0, 4, 0, 0],
    [0, 0, -2, 0, 0]], dtype=np.int64)
_K_SAME_ROW = np.array([     # R/B at a G site whose same-row neighbours carry it
    [0, 0, 1, 0, 0],
    [0, -2, 0, -2, 0],
    [-2, 8, 10, 8, -2],
    [0, -2, 0, -2, 0],
    [0, 0, 1, 0, 0]], dtype=np.int64)
_K_SAME_COL = _K_SAME_ROW.T  # R/B at a G site whose same-column neighbours carry it
_K_OPPOSITE = np.array([     # R at a B site and B at an R site
    [0, 0, -3, 0, 0],
    [0, 4, 0, 4, 0],
    [-3, 0, 12, 0, -3],
    [0, 4, 0, 4, 0],
    [0, 0, -3, 0, 0]], dtype=np.int64)


def _correlate16(mosaic: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    # integer 5x5 correlation on a 2-px replicate-padded mosaic, rounded /16
    h, w = mosaic.shape
    padded = np.pad(mosaic, 2, mode="edge")
    acc = np.zeros((h, w), dtype=np.int64)
    for dy in range(5):
        for dx in range(5):
            c = kernel[dy, dx]
            if c:
                acc += c * padded[dy : dy + h, dx : dx + w]
    out = np.where(acc >= 0, (acc + 8) // _KERNEL_DIV, -((-acc + 8) // _KERNEL_DIV))
    return np.clip(out, 0, 255)


def malvar_demosaic(m: BayerMosaic) -> Image:
    """Reconstruct RGB from a GRBG mosaic with the fixed 5x5 linear filters.

    Measured channels pass through unchanged; missing channels are integer
    filter responses rounded half away from zero and clamped to [0, 255].
    """
    h, w = m.height, m.width
    if h < 5 or w < 5:
        raise ValueError(f"mosaic {w}x{h} smaller than the 5x5 kernel support")
    g_rr, g_br, r_site, b_site = _site_masks(h, w)
    mosaic = m.samples.astype(np.int64)
    resp_g = _correlate16(mosaic, _K_G_AT_RB)
    resp_row = _correlate16(mosaic, _K_SAME_ROW)
    resp_col = _correlate16(mosaic, _K_SAME_COL)
    resp_opp = _correlate16(mosaic, _K_OPPOSITE)

    red = np.where(r_site, mosaic, 0)
    red = np.where(g_rr, resp_row, red)       # R lives in the same row here
    red = np.where(g_br, resp_col, red)       # and in the same column here
    red = np.where(b_site, resp_opp, red)

    green = np.where(g_rr | g_br, mosaic, resp_g)

    blue = np.where(b_site, mosaic, 0)
    blue = np.where(g_br, resp_row, blue)
    blue = np.where(g_rr, resp_col, blue)
    blue = np.where(r_site, resp_opp, blue)

    return Image(np.stack([red, green, blue]).astype(np.uint8))


def demosaic_op() -> ProcessingOp:
    """Mosaic then reconstruct: the resampling operator studied throughout."""
    return ProcessingOp("demosaic", lambda x: malvar_demosaic(bayer_sample(x)))


# ------------------------------------------------------------------- DCT 8x8


def _dct_matrix() -> np.ndarray:
    # Build only the left half from cosines, then mirror with explicit signs so
    # d[j, 7-k] == (-1)^j * d[j, k] holds bit-exactly, not just analytically.
    d = np.zeros((8, 8))
    for j in range(8):
        alpha = np.sqrt(1.0 / 8.0) if j == 0 else np.sqrt(2.0 / 8.0)
        sign = 1.0 if j % 2 == 0 else -1.0
        for k in range(4):
            d[j, k] = alpha * np.cos(np.pi * (2 * k + 1) * j / 16.0)
            d[j, 7 - k] = sign * d[j, k]
    return d


_DCT = _dct_matrix()


def _dct2_blocks(blocks: np.ndarray) -> np.ndarray:
    """Forward 2-D orthonormal DCT on a (n, 8, 8) stack.

    The column pass sums index pairs (k, 7-k) together so that reversing the
    input columns yields exactly sign-flipped coefficients: addition order
    inside each pair is unchanged under reversal, and the pair sums commute.
    """
    rows = np.zeros_like(blocks)
    for k in range(8):
        rows += _DCT[:, k][None, :, None] * blocks[:, k, :][:, None, :]
    out = np.zeros_like(rows)
    for k in range(4):
        out = out + (
            rows[:, :, k, None] * _DCT[None, None, :, k]
            + rows[:, :, 7 - k, None] * _DCT[None, None, :, 7 - k]
        )
    return out


def _idct2_blocks(coeffs: np.ndarray) -> np.ndarray:
    """Inverse of _dct2_blocks; plain accumulation is already reversal-exact
    because each column of the basis carries a uniform sign under mirroring."""
    rows = np.zeros_like(coeffs)
    for k in range(8):
        rows += _DCT[k, :][None, :, None] * coeffs[:, k, :][:, None, :]
    out = np.zeros_like(rows)
    for j in range(8):
        out += rows[:, :, j, None] * _DCT[j, :][None, None, :]
    return out


def dct8_forward(block: np.ndarray) -> np.ndarray:
    """Orthonormal type-II DCT of one 8x8 block (constant v maps to DC 8v)."""
    b = np.asarray(block, dtype=np.float64)
    if b.shape != (8, 8):
        raise ValueError(f"expected an 8x8 block, got shape {b.shape}")
    return _dct2_blocks(b[None])[0]


def dct8_inverse(coeffs: np.ndarray) -> np.ndarray:
    """Inverse orthonormal type-II DCT of one 8x8 coefficient block."""
    c = np.asarray(coeffs, dtype=np.float64)
    if c.shape != (8, 8):
        raise ValueError(f"expected an 8x8 block, got shape {c.shape}")
    return _idct2_blocks(c[None])[0]


# ------------------------------------------------------------- quantization


BASE_LUMA_TABLE = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99]], dtype=np.int64)

BASE_CHROMA_TABLE = np.array([
    [17, 18, 24, 47, 99, 99, 99, 99],
    [18, 21, 26, 66, 99, 99, 99, 99],
    [24, 26, 56, 99, 99, 99, 99, 99],
    [47, 66, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99],
    [99, 99, 99, 99, 99, 99, 99, 99]], dtype=np.int64)


def _check_table(table: np.ndarray) -> np.ndarray:
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (8, 8):
        raise ValueError(f"expected an 8x8 table, got shape {t.shape}")
    if t.min() < 1 or t.max() > 255:
        raise ValueError("table entries must lie in [1, 255]")
    return t


def quality_tables(quality: int) -> tuple[np.ndarray, np.ndarray]:
    """Scale the base tables by the conventional quality rule (50 = unscaled)."""
    if not 1 <= quality <= 100:
        raise ValueError(f"quality must be in [1, 100], got {quality}")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    def scaled(base):
        return np.clip((base * scale + 50) // 100, 1, 255)
    return scaled(BASE_LUMA_TABLE), scaled(BASE_CHROMA_TABLE)


def quantize(coeffs: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Divide by the table and round half away from zero.

    The rounding rule is odd-symmetric, quantize(-c) == -quantize(c), which is
    load-bearing: mirrored blocks have sign-flipped coefficients and must
    quantize to sign-flipped integers.
    """
    t = _check_table(table)
    q = np.asarray(coeffs, dtype=np.float64) / t
    return np.trunc(q + np.copysign(0.5, q)).astype(np.int64)


def dequantize(quantized: np.ndarray, table: np.ndarray) -> np.ndarray:
    t = _check_table(table)
    return np.asarray(quantized, dtype=np.float64) * t


# ------------------------------------------------------------- codec pipeline


@dataclasses.dataclass(frozen=True)
class JpegConfig:
    quality: int = 75
    chroma_subsampling: str = "4:2:0"

    def __post_init__(self):
        if not 1 <= int(self.quality) <= 100:
            raise ValueError(f"quality must be in [1, 100], got {self.quality}")
        if self.chroma_subsampling != "4:2:0":
            raise ValueError("only 4:2:0 chroma subsampling is supported")


def _rgb_to_ycbcr(samples: np.ndarray) -> np.ndarray:
    r, g, b = (samples[i].astype(np.float64) for i in range(3))
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    out = round_half_away(np.stack([y, cb, cr]))
    return np.clip(out, 0, 255).astype(np.uint8)


def _ycbcr_to_rgb(planes: np.ndarray) -> np.ndarray:
    y, cb, cr = (planes[i].astype(np.float64) for i in range(3))
    r = y + 1.402 * (cr - 128.0)
    g = y - 0.344136 * (cb - 128.0) - 0.714136 * (cr - 128.0)
    b = y + 1.772 * (cb - 128.0)
    out = round_half_away(np.stack([r, g, b]))
    return np.clip(out, 0, 255).astype(np.uint8)


def _downsample_420(plane: np.ndarray) -> np.ndarray:
    # left-anchored 2x2 means; odd edges replicate the last row/column
    h, w = plane.shape
    p = np.pad(plane, ((0, h % 2), (0, w % 2)), mode="edge").astype(np.int64)
    s = p[0::2, 0::2] + p[0::2, 1::2] + p[1::2, 0::2] + p[1::2, 1::2]
    return ((s + 2) // 4).astype(np.uint8)


def _upsample_420(plane: np.ndarray, h: int, w: int) -> np.ndarray:
    return np.repeat(np.repeat(plane, 2, axis=0), 2, axis=1)[:h, :w]


def _split_blocks(plane: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    return plane.reshape(h // 8, 8, w // 8, 8).transpose(0, 2, 1, 3).reshape(-1, 8, 8)


def _join_blocks(blocks: np.ndarray, h: int, w: int) -> np.ndarray:
    return blocks.reshape(h // 8, w // 8, 8, 8).transpose(0, 2, 1, 3).reshape(h, w)


def _codec_plane(plane: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Round-trip one channel plane through blocked DCT quantization."""
    h, w = plane.shape
    pad_h, pad_w = (-h) % 8, (-w) % 8
    # boundary blocks exist only at the right and bottom edges
    padded = np.pad(plane, ((0, pad_h), (0, pad_w)), mode="edge")
    shifted = padded.astype(np.float64) - 128.0
    blocks = _split_blocks(shifted)
    coeffs = _dct2_blocks(blocks)
    restored = _idct2_blocks(dequantize(quantize(coeffs, table), table)) + 128.0
    pixels = np.clip(round_half_away(restored), 0, 255).astype(np.uint8)
    return _join_blocks(pixels, h + pad_h, w + pad_w)[:h, :w]


def jpeg_codec(x: Image, cfg: JpegConfig = JpegConfig()) -> Image:
    """Full codec model: color transform, 4:2:0, blocked DCT quantization, back."""
    h, w = x.height, x.width
    luma_table, chroma_table = quality_tables(int(cfg.quality))
    ycc = _rgb_to_ycbcr(x.samples)
    y = _codec_plane(ycc[0], luma_table)
    cb = _upsample_420(_codec_plane(_downsample_420(ycc[1]), chroma_table), h, w)
    cr = _upsample_420(_codec_plane(_downsample_420(ycc[2]), chroma_table), h, w)
    return Image(_ycbcr_to_rgb(np.stack([y, cb, cr])))


def jpeg_op(cfg: JpegConfig = JpegConfig()) -> ProcessingOp:
    return ProcessingOp("jpeg", lambda x: jpeg_codec(x, cfg))
