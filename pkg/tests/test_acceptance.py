"""Acceptance gate: one test per contract criterion, each with its stated
tolerance and runtime budget.  Run with `pytest tests/test_acceptance.py -v -s`
to see one PASS line per criterion."""
import contextlib
import io
import time

import numpy as np

from chirascope.cli import main
from chirascope.imaging import (
    demosaic_op,
    dct8_forward,
    dct8_inverse,
    jpeg_op,
    quality_tables,
    quantize,
    JpegConfig,
    _rgb_to_ycbcr,
    _ycbcr_to_rgb,
)
from chirascope.core import Image, compose
from chirascope.residual import glide_scan, glide_verdict, size_sweep
from chirascope.symlab import run_property_suite
from chirascope.synthgen import uniform_image


def timed(budget_s):
    @contextlib.contextmanager
    def guard():
        start = time.monotonic()
        yield
        elapsed = time.monotonic() - start
        assert elapsed < budget_s, f"runtime {elapsed:.1f}s exceeds {budget_s}s budget"
    return guard()


def announce(name):
    print(f"\nACCEPTANCE PASS: {name}")


def run_cli(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(argv)
    return code, out.getvalue()


def test_verdict_table_exact():
    with timed(30):
        code, out = run_cli(["predict", "--sizes", "99,100,112", "--ops", "all",
                             "--samples", "8", "--seed", "0"])
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "op,size,verdict"
    table = {tuple(r.split(",")[:2]): r.split(",")[2] for r in rows[1:]}
    assert len(table) == 9
    achiral = {("demosaic", "99"), ("jpeg", "112")}
    for key, verdict in table.items():
        assert verdict == ("A" if key in achiral else "C"), key
    announce("verdict table A/C cell-for-cell over {99,100,112} x 3 ops")


def test_width_parity_predicates():
    widths, heights = range(64, 129), [64, 65]
    with timed(300):
        demosaic = size_sweep(demosaic_op, widths, heights, 4, 0)
        for i, w in enumerate(demosaic.widths):
            zero = (demosaic.cells[i] == 0.0).all()
            nonzero = (demosaic.cells[i] > 0).all()
            assert (zero and w % 2 == 1) or (nonzero and w % 2 == 0), f"demosaic {w}"

        for quality in (50, 75, 90):
            jpeg = size_sweep(lambda: jpeg_op(JpegConfig(quality=quality)),
                              widths, heights, 4, 0)
            for i, w in enumerate(jpeg.widths):
                zero = (jpeg.cells[i] == 0.0).all()
                nonzero = (jpeg.cells[i] > 0).all()
                assert (zero and w % 16 == 0) or (nonzero and w % 16 != 0), (
                    f"jpeg q{quality} {w}")

        both = size_sweep(lambda: compose([demosaic_op(), jpeg_op()]),
                          widths, heights, 4, 0)
        assert (both.cells > 0).all()
    announce("width parity: demosaic odd-only, jpeg mod-16-only at q in "
             "{50,75,90}, composition never, widths 64..128")


def test_glide_verdicts_and_disjoint_zero_sets():
    x = uniform_image(64, 64, seed=0)
    phis = range(32)
    with timed(120):
        demosaic_grid = glide_scan(demosaic_op(), x, phis, phis)
        jpeg_grid = glide_scan(jpeg_op(), x, phis, phis)
        both_grid = glide_scan(compose([demosaic_op(), jpeg_op()]), x, phis, phis)
    v = glide_verdict(demosaic_grid)
    assert (v.glide_commutative, v.period) == (True, 2)
    v = glide_verdict(jpeg_grid)
    assert (v.glide_commutative, v.period) == (True, 16)
    assert not glide_verdict(both_grid).glide_commutative
    # the two ops' zero cells indeed never coincide, which is why the
    # composition cannot be glide-commutative
    assert not ((demosaic_grid.cells == 0) & (jpeg_grid.cells == 0)).any()
    assert (both_grid.cells > 0).all()
    announce("glide verdicts: demosaic period 2, jpeg period 16, composition "
             "not glide-commutative on [0,32)^2")


def test_symmetry_lab_thousand_trials():
    with timed(60):
        results = run_property_suite(max_n=12, trials=1000, seed=0)
    assert len(results) == 5
    for result in results:
        assert result.passed, (result.name, result.witnesses[:3])
    announce("symmetry lab: 1000 randomized trials per proposition at n <= 12")


def test_numerical_kernels():
    gen = np.random.Generator(np.random.Philox(key=np.array([0, 3], dtype=np.uint64)))

    for _ in range(100):
        block = gen.uniform(-128, 127, size=(8, 8))
        assert np.abs(dct8_inverse(dct8_forward(block)) - block).max() < 1e-9

    luma, _ = quality_tables(75)
    signs = np.where(np.arange(8) % 2 == 0, 1, -1)
    for _ in range(1000):
        block = gen.integers(-128, 128, size=(8, 8)).astype(np.float64)
        q = quantize(dct8_forward(block), luma)
        q_flipped = quantize(dct8_forward(block[:, ::-1]), luma)
        assert np.array_equal(q_flipped, q * signs[None, :])

    rgb = gen.integers(0, 256, size=(3, 128, 128), dtype=np.uint8)
    back = _ycbcr_to_rgb(_rgb_to_ycbcr(rgb)).astype(np.int16)
    assert np.abs(back - rgb.astype(np.int16)).max() <= 1

    constant = Image(np.stack([
        np.full((16, 20), 50, dtype=np.uint8),
        np.full((16, 20), 100, dtype=np.uint8),
        np.full((16, 20), 200, dtype=np.uint8),
    ]))
    out = demosaic_op()(constant)
    assert np.array_equal(out.samples[:, 2:-2, 2:-2], constant.samples[:, 2:-2, 2:-2])
    announce("numerical kernels: DCT round trip 1e-9, quantized mirror sign "
             "rule exact on 1000 blocks, color round trip within 1, "
             "constant-per-channel demosaic exact on interior")


def test_reproducibility_byte_identical(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    commands = [
        ["sweep", "--op", "jpeg", "--widths", "30..34", "--heights", "16..16",
         "--samples", "2", "--out-csv", "s.csv", "--out-pgm", "s.pgm"],
        ["glide", "--op", "demosaic", "--size", "16x8",
         "--out-csv", "g.csv", "--out-pgm", "g.pgm"],
        ["residual", "--op", "demosaic-jpeg", "--gaussian", "24x16",
         "--out-residual", "r.pgm", "--out-sign", "rs.pgm", "--out-csv", "r.csv"],
    ]
    artifacts = ["s.csv", "s.pgm", "s.csv.manifest.json",
                 "g.csv", "g.pgm", "g.csv.manifest.json",
                 "r.pgm", "rs.pgm", "r.csv", "r.pgm.manifest.json"]

    def run_all():
        for argv in commands:
            code, _ = run_cli(argv)
            assert code == 0
        return {name: (tmp_path / name).read_bytes() for name in artifacts}

    first = run_all()
    second = run_all()
    assert first == second
    announce("reproducibility: CSV, PGM and manifest outputs byte-identical "
             "across reruns")
