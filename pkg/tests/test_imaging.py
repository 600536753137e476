import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chirascope.core import Image
from chirascope.imaging import (
    BASE_CHROMA_TABLE,
    BASE_LUMA_TABLE,
    BayerMosaic,
    JpegConfig,
    _downsample_420,
    _rgb_to_ycbcr,
    _ycbcr_to_rgb,
    bayer_sample,
    dct8_forward,
    dct8_inverse,
    demosaic_op,
    dequantize,
    jpeg_codec,
    jpeg_op,
    malvar_demosaic,
    quality_tables,
    quantize,
)
from chirascope.synthgen import uniform_image
from chirascope.transforms import flip_h


def rng(seed=0):
    return np.random.Generator(np.random.Philox(key=np.array([seed, 1], dtype=np.uint64)))


# -------------------------------------------------------------------- mosaic


def test_bayer_tile_worked_example():
    # constant channels R=10 G=20 B=30 expose the GRBG layout directly
    x = Image(np.stack([
        np.full((2, 2), 10, dtype=np.uint8),
        np.full((2, 2), 20, dtype=np.uint8),
        np.full((2, 2), 30, dtype=np.uint8),
    ]))
    assert bayer_sample(x).samples.tolist() == [[20, 10], [30, 20]]


def test_bayer_sample_positions():
    x = uniform_image(6, 4, seed=1)
    m = bayer_sample(x).samples
    assert m[0, 0] == x.samples[1, 0, 0]  # G
    assert m[0, 1] == x.samples[0, 0, 1]  # R
    assert m[1, 0] == x.samples[2, 1, 0]  # B
    assert m[1, 1] == x.samples[1, 1, 1]  # G
    assert m[2, 3] == x.samples[0, 2, 3]  # R again two rows down


def test_bayer_mosaic_rejects_other_patterns():
    with pytest.raises(ValueError, match="unsupported CFA pattern"):
        BayerMosaic(np.zeros((2, 2), dtype=np.uint8), pattern="RGGB")


def test_bayer_commutes_with_flip_only_at_odd_width():
    odd = uniform_image(7, 6, seed=2)
    assert np.array_equal(
        bayer_sample(flip_h(odd)).samples, bayer_sample(odd).samples[:, ::-1]
    )
    even = uniform_image(8, 6, seed=2)
    assert not np.array_equal(
        bayer_sample(flip_h(even)).samples, bayer_sample(even).samples[:, ::-1]
    )


# ------------------------------------------------------------------ demosaic


def test_malvar_constant_mosaic_is_exact_everywhere():
    m = BayerMosaic(np.full((8, 8), 77, dtype=np.uint8))
    out = malvar_demosaic(m)
    assert (out.samples == 77).all()


def test_malvar_constant_per_channel_interior_exact():
    # a constant-per-channel image survives mosaic+demosaic on the interior;
    # the 2 px frame sees replicated samples and may deviate
    x = Image(np.stack([
        np.full((10, 12), 50, dtype=np.uint8),
        np.full((10, 12), 100, dtype=np.uint8),
        np.full((10, 12), 200, dtype=np.uint8),
    ]))
    out = demosaic_op()(x)
    assert np.array_equal(out.samples[:, 2:-2, 2:-2], x.samples[:, 2:-2, 2:-2])


def test_malvar_passes_measured_samples_through():
    x = uniform_image(9, 7, seed=3)
    m = bayer_sample(x)
    out = malvar_demosaic(m)
    assert out.samples[1, 0, 0] == m.samples[0, 0]   # G site
    assert out.samples[0, 0, 1] == m.samples[0, 1]   # R site
    assert out.samples[2, 1, 0] == m.samples[1, 0]   # B site


def test_malvar_rejects_tiny_mosaics():
    with pytest.raises(ValueError, match="smaller than the 5x5 kernel support"):
        malvar_demosaic(BayerMosaic(np.zeros((4, 6), dtype=np.uint8)))


def test_demosaic_commutes_with_flip_only_at_odd_width():
    op = demosaic_op()
    odd = uniform_image(31, 16, seed=4)
    assert op(flip_h(odd)) == flip_h(op(odd))
    even = uniform_image(32, 16, seed=4)
    assert op(flip_h(even)) != flip_h(op(even))


# ----------------------------------------------------------------------- DCT


def test_dct_zero_block():
    assert (dct8_forward(np.zeros((8, 8))) == 0).all()


def test_dct_constant_block_is_dc_only():
    coeffs = dct8_forward(np.full((8, 8), 3.0))
    assert coeffs[0, 0] == pytest.approx(24.0, abs=1e-12)
    off = coeffs.copy()
    off[0, 0] = 0.0
    assert np.abs(off).max() < 1e-12


def test_dct_rejects_wrong_shape():
    with pytest.raises(ValueError):
        dct8_forward(np.zeros((4, 8)))
    with pytest.raises(ValueError):
        dct8_inverse(np.zeros((8, 4)))


def test_dct_inverse_of_forward():
    gen = rng(5)
    for _ in range(50):
        block = gen.uniform(-128, 127, size=(8, 8))
        assert np.abs(dct8_inverse(dct8_forward(block)) - block).max() < 1e-9


def test_dct_orthonormal_energy():
    gen = rng(6)
    block = gen.uniform(-128, 127, size=(8, 8))
    coeffs = dct8_forward(block)
    assert np.sum(coeffs * coeffs) == pytest.approx(np.sum(block * block), rel=1e-12)


def test_dct_mirror_sign_rule_is_bit_exact():
    # reversing block columns must flip the sign of odd horizontal
    # frequencies with zero float error, not tolerance-small error
    gen = rng(7)
    signs = np.where(np.arange(8) % 2 == 0, 1.0, -1.0)
    for _ in range(200):
        block = np.round(gen.uniform(-128, 127, size=(8, 8)))
        flipped = dct8_forward(block[:, ::-1])
        assert np.array_equal(flipped, dct8_forward(block) * signs[None, :])


def test_quantized_mirror_sign_rule_thousand_blocks():
    gen = rng(8)
    signs = np.where(np.arange(8) % 2 == 0, 1, -1)
    luma, _ = quality_tables(75)
    for _ in range(1000):
        block = gen.integers(-128, 128, size=(8, 8)).astype(np.float64)
        q = quantize(dct8_forward(block), luma)
        q_flipped = quantize(dct8_forward(block[:, ::-1]), luma)
        assert np.array_equal(q_flipped, q * signs[None, :])


# -------------------------------------------------------------- quantization


def test_quantize_zero_and_worked_example():
    table = np.full((8, 8), 20, dtype=np.int64)
    coeffs = np.zeros((8, 8))
    coeffs[0, 0] = 50.0   # 2.5 quanta rounds away from zero
    coeffs[0, 1] = -50.0
    q = quantize(coeffs, table)
    assert q[0, 0] == 3 and q[0, 1] == -3
    assert (q.reshape(-1)[2:] == 0).all()
    assert dequantize(q, table)[0, 0] == 60.0


def test_quantize_is_odd_symmetric():
    gen = rng(9)
    for _ in range(100):
        coeffs = gen.uniform(-500, 500, size=(8, 8))
        table = gen.integers(1, 256, size=(8, 8))
        assert np.array_equal(quantize(-coeffs, table), -quantize(coeffs, table))


@settings(max_examples=50)
@given(st.integers(-2000, 2000), st.integers(1, 255))
def test_quantize_odd_symmetric_on_half_integers(num, den):
    coeffs = np.full((8, 8), num / 2.0)
    table = np.full((8, 8), den, dtype=np.int64)
    assert np.array_equal(quantize(-coeffs, table), -quantize(coeffs, table))


def test_quantize_rejects_bad_tables():
    with pytest.raises(ValueError):
        quantize(np.zeros((8, 8)), np.zeros((8, 8), dtype=np.int64))
    with pytest.raises(ValueError):
        quantize(np.zeros((8, 8)), np.full((8, 8), 300, dtype=np.int64))


def test_quality_50_is_the_base_table():
    luma, chroma = quality_tables(50)
    assert np.array_equal(luma, BASE_LUMA_TABLE)
    assert np.array_equal(chroma, BASE_CHROMA_TABLE)


def test_quality_100_is_lossless_tables():
    luma, chroma = quality_tables(100)
    assert (luma == 1).all() and (chroma == 1).all()


def test_quality_extremes_and_validation():
    luma_low, _ = quality_tables(1)
    assert luma_low.max() == 255
    luma_90, _ = quality_tables(90)
    assert (luma_90 <= BASE_LUMA_TABLE).all() and luma_90.min() >= 1
    for bad in (0, 101, -3):
        with pytest.raises(ValueError):
            quality_tables(bad)


# ------------------------------------------------------------ color transform


def test_color_transform_fixed_points():
    # r=g=b=v maps to y=v, cb=cr=128 and back exactly, for every v
    ramp = np.tile(np.arange(256, dtype=np.uint8), (1, 1))
    x = np.stack([ramp, ramp, ramp])
    ycc = _rgb_to_ycbcr(x)
    assert np.array_equal(ycc[0], ramp)
    assert (ycc[1] == 128).all() and (ycc[2] == 128).all()
    assert np.array_equal(_ycbcr_to_rgb(ycc), x)


def test_color_roundtrip_within_one():
    gen = rng(10)
    x = gen.integers(0, 256, size=(3, 64, 64), dtype=np.uint8)
    back = _ycbcr_to_rgb(_rgb_to_ycbcr(x)).astype(np.int16)
    assert np.abs(back - x.astype(np.int16)).max() <= 1


def test_color_transform_commutes_with_flip():
    gen = rng(11)
    x = gen.integers(0, 256, size=(3, 8, 9), dtype=np.uint8)
    assert np.array_equal(_rgb_to_ycbcr(x[:, :, ::-1]), _rgb_to_ycbcr(x)[:, :, ::-1])
    assert np.array_equal(_ycbcr_to_rgb(x[:, :, ::-1]), _ycbcr_to_rgb(x)[:, :, ::-1])


# ---------------------------------------------------------------------- codec


def test_downsample_worked_examples():
    assert _downsample_420(np.array([[1, 2], [3, 4]], dtype=np.uint8)).tolist() == [[3]]
    assert _downsample_420(np.array([[1, 2, 5]], dtype=np.uint8)).tolist() == [[2, 5]]


def test_jpeg_preserves_gray_constants_at_quality_100():
    for v in (0, 1, 77, 128, 254, 255):
        x = Image(np.full((3, 16, 16), v, dtype=np.uint8))
        assert jpeg_codec(x, JpegConfig(quality=100)) == x


def test_jpeg_output_dimensions_match_input():
    x = uniform_image(19, 13, seed=12)  # forces block padding and odd chroma
    out = jpeg_codec(x)
    assert (out.width, out.height) == (19, 13)


def test_jpeg_quality_monotone_on_noise():
    x = uniform_image(32, 32, seed=13)
    def err(q):
        out = jpeg_codec(x, JpegConfig(quality=q))
        return np.abs(out.samples.astype(np.int16) - x.samples.astype(np.int16)).mean()
    assert err(90) < err(50) < err(10)


def test_jpeg_commutes_with_flip_only_at_multiple_of_16_width():
    op = jpeg_op()
    aligned = uniform_image(32, 16, seed=14)
    assert op(flip_h(aligned)) == flip_h(op(aligned))
    unaligned = uniform_image(40, 16, seed=14)
    assert op(flip_h(unaligned)) != flip_h(op(unaligned))


def test_jpeg_config_validation():
    with pytest.raises(ValueError):
        JpegConfig(quality=0)
    with pytest.raises(ValueError):
        JpegConfig(chroma_subsampling="4:4:4")
