"""Command-line front end with reproducible file outputs.

Every command that writes files also writes `<first-output>.manifest.json`
recording the command, its parameters, the seed and the toolkit version, so a
run can be reproduced byte-for-byte.  Files are written atomically
(temp-then-rename).  Exit codes: 0 success, 1 property failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

import numpy as np

from . import __version__
from .core import (
    FormatError,
    compose,
    identity_op,
    read_ppm,
    write_pgm,
    write_pgm_heatmap,
)
from .imaging import JpegConfig, demosaic_op, jpeg_op
from .residual import (
    ACHIRAL_CONSISTENT,
    commutative_residual,
    glide_from_csv,
    glide_scan,
    glide_verdict,
    predict_chirality,
    residual_to_csv,
    size_sweep,
    sweep_to_csv,
    glide_to_csv,
)
from .synthgen import GaussianSpec, gaussian_image, uniform_image
from .transforms import PAD_WIDTH, flip_op

SWEEP_OPS = ("demosaic", "jpeg", "demosaic-jpeg")
RESIDUAL_OPS = SWEEP_OPS + ("identity", "flip")


def build_op(name: str, quality: int = 75):
    cfg = JpegConfig(quality=quality)
    if name == "identity":
        return identity_op()
    if name == "flip":
        return flip_op()
    if name == "demosaic":
        return demosaic_op()
    if name == "jpeg":
        return jpeg_op(cfg)
    if name == "demosaic-jpeg":
        return compose([demosaic_op(), jpeg_op(cfg)])
    raise ValueError(f"unknown op {name!r}")


def _parse_span(text: str, what: str, parser: argparse.ArgumentParser) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if m is None:
        parser.error(f"{what} must look like A..B, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        parser.error(f"{what} range {text!r} is empty")
    return lo, hi


def _parse_size(text: str, parser: argparse.ArgumentParser) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if m is None:
        parser.error(f"size must look like WxH, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _resolve_seed(args, parser: argparse.ArgumentParser) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get("CHIRASCOPE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        parser.error(f"CHIRASCOPE_SEED={raw!r} is not an integer")


def _write_atomic(path: str, payload) -> None:
    data = payload.encode("ascii") if isinstance(payload, str) else payload
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _write_manifest(command: str, parameters: dict, seed: int, outputs: list[str]) -> None:
    manifest = {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "version": __version__,
        "outputs": sorted(outputs),
    }
    _write_atomic(outputs[0] + ".manifest.json",
                  json.dumps(manifest, sort_keys=True, indent=2) + "\n")


# ------------------------------------------------------------------- commands


def cmd_sweep(args, parser) -> int:
    seed = _resolve_seed(args, parser)
    w_lo, w_hi = _parse_span(args.widths, "--widths", parser)
    h_lo, h_hi = _parse_span(args.heights, "--heights", parser)
    min_size = 5 if "demosaic" in args.op else 1
    if w_lo < min_size or h_lo < min_size:
        parser.error(f"op {args.op} needs sizes >= {min_size}")
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    grid = size_sweep(lambda: build_op(args.op, args.quality),
                      range(w_lo, w_hi + 1), range(h_lo, h_hi + 1),
                      args.samples, seed)
    quality = args.quality if "jpeg" in args.op else None
    _write_atomic(args.out_csv, sweep_to_csv(grid, quality=quality))
    outputs = [args.out_csv]
    if args.out_pgm:
        _write_atomic(args.out_pgm, write_pgm_heatmap(grid.cells))
        outputs.append(args.out_pgm)
    _write_manifest("sweep", {
        "op": args.op, "widths": args.widths, "heights": args.heights,
        "samples": args.samples, "quality": args.quality,
        "out_csv": args.out_csv, "out_pgm": args.out_pgm,
    }, seed, outputs)
    return 0


def cmd_glide(args, parser) -> int:
    seed = _resolve_seed(args, parser)
    width, height = _parse_size(args.size, parser)
    p1_lo, p1_hi = _parse_span(args.phi1, "--phi1", parser)
    p2_lo, p2_hi = _parse_span(args.phi2, "--phi2", parser)
    # phase spans are half-open (0..32 scans phases 0 through 31), unlike the
    # inclusive size spans, so candidate periods divide the span length
    n1, n2 = p1_hi - p1_lo, p2_hi - p2_lo
    if n1 != n2 or n1 < 32:
        parser.error("phase spans must be equal and cover at least 32 values")
    if p1_hi > PAD_WIDTH or p2_hi > PAD_WIDTH:
        parser.error(f"phase shifts beyond the padding width {PAD_WIDTH}")
    op = build_op(args.op)
    grid = glide_scan(op, uniform_image(width, height, seed),
                      range(p1_lo, p1_hi), range(p2_lo, p2_hi))
    verdict = glide_verdict(grid)
    _write_atomic(args.out_csv, glide_to_csv(grid))
    outputs = [args.out_csv]
    if args.out_pgm:
        _write_atomic(args.out_pgm, write_pgm_heatmap(grid.cells))
        outputs.append(args.out_pgm)
    _write_manifest("glide", {
        "op": args.op, "size": args.size, "phi1": args.phi1, "phi2": args.phi2,
        "out_csv": args.out_csv, "out_pgm": args.out_pgm,
    }, seed, outputs)
    print(verdict.line())
    return 0


def cmd_glide_verdict(args, parser) -> int:
    try:
        with open(args.in_csv, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        parser.error(f"cannot read {args.in_csv}: {exc}")
    try:
        grid = glide_from_csv(text)
        verdict = glide_verdict(grid)
    except ValueError as exc:
        parser.error(str(exc))
    print(verdict.line())
    return 0


def cmd_predict(args, parser) -> int:
    seed = _resolve_seed(args, parser)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        parser.error(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    if not sizes or min(sizes) < 5:
        parser.error("--sizes needs values >= 5")
    ops = SWEEP_OPS if args.ops == "all" else tuple(args.ops.split(","))
    for name in ops:
        if name not in SWEEP_OPS:
            parser.error(f"--ops entries must be among {', '.join(SWEEP_OPS)} or 'all'")
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    print("op,size,verdict")
    for name in ops:
        op = build_op(name)
        for size in sizes:
            verdict = predict_chirality(op, size, size, args.samples, seed)
            letter = "A" if verdict == ACHIRAL_CONSISTENT else "C"
            print(f"{name},{size},{letter}")
    return 0


def _stack_planes(planes: np.ndarray) -> np.ndarray:
    return np.concatenate(list(planes), axis=0)


def cmd_residual(args, parser) -> int:
    seed = _resolve_seed(args, parser)
    if args.input is not None:
        try:
            with open(args.input, "rb") as fh:
                data = fh.read()
            x = read_ppm(data)
        except (OSError, FormatError) as exc:
            parser.error(f"cannot load {args.input}: {exc}")
    else:
        width, height = _parse_size(args.gaussian, parser)
        x = gaussian_image(GaussianSpec(width=width, height=height, seed=seed))
    try:
        report = commutative_residual(build_op(args.op, args.quality), x)
    except ValueError as exc:
        parser.error(str(exc))
    magnitude = _stack_planes(np.abs(report.residual.samples).astype(np.uint8))
    _write_atomic(args.out_residual, write_pgm(magnitude))
    outputs = [args.out_residual]
    if args.out_sign:
        sign = _stack_planes(
            np.where(report.residual.samples < 0, 255, 0).astype(np.uint8))
        _write_atomic(args.out_sign, write_pgm(sign))
        outputs.append(args.out_sign)
    if args.out_csv:
        _write_atomic(args.out_csv, residual_to_csv(report))
        outputs.append(args.out_csv)
    _write_manifest("residual", {
        "op": args.op, "input": args.input, "gaussian": args.gaussian,
        "quality": args.quality, "out_residual": args.out_residual,
        "out_sign": args.out_sign, "out_csv": args.out_csv,
    }, seed, outputs)
    print(f"mean_abs={report.mean_abs!r} max_abs={report.max_abs} "
          f"nonzero={report.nonzero_count}")
    return 0


def cmd_verify_props(args, parser) -> int:
    from .symlab import run_property_suite

    seed = _resolve_seed(args, parser)
    if args.n < 1 or args.trials < 1:
        parser.error("--n and --trials must be at least 1")
    results = run_property_suite(max_n=args.n, trials=args.trials, seed=seed,
                                 inject_fault=args.inject_fault)
    failed = False
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name} ({result.detail})")
        if not result.passed:
            failed = True
            for witness in result.witnesses:
                print(f"  witness: {witness}")
    return 1 if failed else 0


# --------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chirascope",
        description="Detect symmetry breaking in imaging pipelines via "
                    "commutative residuals.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed(p):
        p.add_argument("--seed", type=int, default=None,
                       help="base seed (default: $CHIRASCOPE_SEED or 0)")

    p = sub.add_parser("sweep", help="residual magnitude over a size grid")
    p.add_argument("--op", required=True, choices=SWEEP_OPS)
    p.add_argument("--widths", required=True, metavar="A..B",
                   help="inclusive width range")
    p.add_argument("--heights", required=True, metavar="A..B",
                   help="inclusive height range")
    p.add_argument("--samples", type=int, default=4)
    p.add_argument("--quality", type=int, default=75)
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-pgm", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("glide", help="residual over a phase-shift grid")
    p.add_argument("--op", required=True, choices=SWEEP_OPS)
    p.add_argument("--size", required=True, metavar="WxH")
    p.add_argument("--phi1", default="0..32", metavar="A..B",
                   help="half-open phase span for the flip-first order")
    p.add_argument("--phi2", default="0..32", metavar="A..B",
                   help="half-open phase span for the op-first order")
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-pgm", default=None)
    add_seed(p)
    p.set_defaults(func=cmd_glide)

    p = sub.add_parser("glide-verdict", help="re-judge a saved phase scan")
    p.add_argument("--in-csv", required=True)
    p.set_defaults(func=cmd_glide_verdict)

    p = sub.add_parser("predict", help="A/C verdict table over ops and sizes")
    p.add_argument("--sizes", default="99,100,112",
                   help="comma-separated square sizes")
    p.add_argument("--ops", default="all",
                   help="'all' or comma-separated op names")
    p.add_argument("--samples", type=int, default=8)
    add_seed(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("residual", help="residual image for one input")
    p.add_argument("--op", required=True, choices=RESIDUAL_OPS)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", default=None, help="PPM image path")
    source.add_argument("--gaussian", default=None, metavar="WxH",
                        help="synthesize a per-channel Gaussian image")
    p.add_argument("--quality", type=int, default=75)
    p.add_argument("--out-residual", required=True,
                   help="magnitude PGM, channel planes stacked vertically")
    p.add_argument("--out-sign", default=None, help="sign-bit PGM")
    p.add_argument("--out-csv", default=None, help="signed residual CSV")
    add_seed(p)
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("verify-props",
                       help="brute-force the symmetry propositions")
    p.add_argument("--n", type=int, default=12, help="max domain size")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt the commuting-map generator (negative control)")
    add_seed(p)
    p.set_defaults(func=cmd_verify_props)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
