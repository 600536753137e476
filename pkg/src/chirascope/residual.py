"""Commutative residuals, size sweeps, glide phase scans, and chirality verdicts.

The residual of an operator J on an image x is J(mirror(x)) - mirror(J(x)),
computed in signed integers.  An exactly zero residual on every sampled input
is evidence that J preserves mirror symmetry of input distributions; a single
nonzero witness proves it breaks them.  The phase-scan machinery generalizes
the test to translated copies, which is what random cropping exposes.
"""
from __future__ import annotations

import dataclasses
import io
import csv as _csv

import numpy as np

from . import _rng
from .core import Image, ProcessingOp, ResidualImage
from .synthgen import GaussianSpec, gaussian_image, uniform_image
from .transforms import PAD_WIDTH, flip_h, phase_shifted_JT, phase_shifted_TJ

ACHIRAL_CONSISTENT = "achiral-consistent"
CHIRAL = "chiral"


@dataclasses.dataclass(frozen=True)
class ResidualReport:
    """E = op(flip(x)) - flip(op(x)) plus scalar summaries.

    mean_abs is the average of |E| over every sample of every channel; the
    three summaries are zero together or not at all.
    """

    residual: ResidualImage
    mean_abs: float
    max_abs: int
    nonzero_count: int

    @property
    def is_zero(self) -> bool:
        return self.nonzero_count == 0


@dataclasses.dataclass(frozen=True)
class SweepGrid:
    """max-over-samples mean_abs residual per (width, height) cell."""

    widths: tuple[int, ...]
    heights: tuple[int, ...]
    op_name: str
    cells: np.ndarray  # shape (len(widths), len(heights))
    n_samples: int
    seed: int

    def __post_init__(self):
        if self.cells.shape != (len(self.widths), len(self.heights)):
            raise ValueError("cells shape must be |widths| x |heights|")


@dataclasses.dataclass(frozen=True)
class PhaseScanGrid:
    """mean_abs of JT(phi1) - TJ(phi2) per phase pair."""

    phi1_range: tuple[int, ...]
    phi2_range: tuple[int, ...]
    op_name: str
    cells: np.ndarray  # shape (len(phi1_range), len(phi2_range))
    seed: int | None = None

    def __post_init__(self):
        if self.cells.shape != (len(self.phi1_range), len(self.phi2_range)):
            raise ValueError("cells shape must be |phi1_range| x |phi2_range|")


@dataclasses.dataclass(frozen=True)
class GlideVerdict:
    glide_commutative: bool
    period: int | None = None
    phase_offset: int | None = None

    def line(self) -> str:
        if self.glide_commutative:
            return f"glide-commutative period={self.period}"
        return "not-glide-commutative"


def _residual_between(a: Image, b: Image) -> ResidualReport:
    e = a.samples.astype(np.int16) - b.samples.astype(np.int16)
    magnitude = np.abs(e)
    total = int(magnitude.sum(dtype=np.int64))
    return ResidualReport(
        residual=ResidualImage(e),
        mean_abs=total / e.size,
        max_abs=int(magnitude.max()),
        nonzero_count=int(np.count_nonzero(e)),
    )


def commutative_residual(op: ProcessingOp, x: Image) -> ResidualReport:
    """Residual of op against mirroring on one image, in signed integers."""
    mirrored_first = op.apply(flip_h(x))
    op_first = op.apply(x)
    if (op_first.width, op_first.height) != (x.width, x.height):
        raise ValueError(
            f"op '{op.name}' maps {x.width}x{x.height} to "
            f"{op_first.width}x{op_first.height}; the plain residual needs "
            "dimension-preserving ops. Use glide_scan or crop-aware tooling."
        )
    return _residual_between(mirrored_first, flip_h(op_first))


def size_sweep(op_factory, widths, heights, n_samples: int, seed: int) -> SweepGrid:
    """Residual magnitude per (width, height) over seeded uniform noise.

    Each cell is the max over n_samples images of mean_abs, so one nonzero
    witness marks the cell non-commuting; zero cells are exact integer zeros
    in every sample.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    op = op_factory()
    widths = tuple(widths)
    heights = tuple(heights)
    cells = np.zeros((len(widths), len(heights)), dtype=np.float64)
    for i, w in enumerate(widths):
        for j, h in enumerate(heights):
            worst = 0.0
            for k in range(n_samples):
                x = uniform_image(w, h, seed, stream=_rng.pack_stream(w, h, k))
                worst = max(worst, commutative_residual(op, x).mean_abs)
            cells[i, j] = worst
    return SweepGrid(widths, heights, op.name, cells, n_samples, seed)


def glide_scan(op: ProcessingOp, x: Image, phi1_range, phi2_range,
               pad: int = PAD_WIDTH) -> PhaseScanGrid:
    """mean_abs of phase_shifted_JT(phi1) - phase_shifted_TJ(phi2) per pair."""
    phi1_range = tuple(phi1_range)
    phi2_range = tuple(phi2_range)
    jt = {p: phase_shifted_JT(op, x, p, pad).samples.astype(np.int16) for p in phi1_range}
    tj = {p: phase_shifted_TJ(op, x, p, pad).samples.astype(np.int16) for p in phi2_range}
    cells = np.zeros((len(phi1_range), len(phi2_range)), dtype=np.float64)
    for i, p1 in enumerate(phi1_range):
        for j, p2 in enumerate(phi2_range):
            e = jt[p1] - tj[p2]
            cells[i, j] = int(np.abs(e).sum(dtype=np.int64)) / e.size
    return PhaseScanGrid(phi1_range, phi2_range, op.name, cells)


def glide_verdict(grid: PhaseScanGrid) -> GlideVerdict:
    """Decide whether zero cells follow phi2 == phi1 + d (mod p) for some
    period p dividing the scan range; report the minimal p.

    The scan must cover at least two full candidate periods, so only p with
    2p <= range qualify and the range must be at least 32.
    """
    n1, n2 = len(grid.phi1_range), len(grid.phi2_range)
    if n1 != n2:
        raise ValueError(f"verdict needs a square scan, got {n1}x{n2}")
    if n1 < 32:
        raise ValueError(f"scan range {n1} too small for a verdict; need >= 32")
    zero = grid.cells == 0.0
    phi1 = np.asarray(grid.phi1_range)
    phi2 = np.asarray(grid.phi2_range)
    for period in (p for p in range(1, n1 // 2 + 1) if n1 % p == 0):
        for offset in range(period):
            on_class = (phi2[None, :] - phi1[:, None] - offset) % period == 0
            if not zero[on_class].all():
                continue
            if not (zero & on_class).any(axis=1).all():  # at least one zero per phi1
                continue
            return GlideVerdict(True, period, offset)
    return GlideVerdict(False)


def predict_chirality(op: ProcessingOp, width: int, height: int,
                      n_samples: int = 8, seed: int = 0) -> str:
    """CHIRAL if any sampled per-channel-Gaussian image has a nonzero residual;
    otherwise ACHIRAL_CONSISTENT.  Sound in one direction only: zero residual
    on samples is consistent with symmetry preservation, never a proof.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    spec = GaussianSpec(width=width, height=height, seed=seed)
    for k in range(n_samples):
        x = gaussian_image(spec, stream=_rng.pack_stream(width, height, k))
        if not commutative_residual(op, x).is_zero:
            return CHIRAL
    return ACHIRAL_CONSISTENT


# ------------------------------------------------------------------ CSV forms
#
# Interchange schemas (header row, comma separator, LF endings):
#   sweep:    width,height,op,quality,n_samples,seed,max_mean_abs_residual
#   glide:    phi1,phi2,op,mean_abs_residual
#   residual: x,y,channel,value            (signed per-sample residual)
# The sweep quality column is empty for ops without a codec stage.


def _fmt(v: float) -> str:
    return repr(float(v))


def sweep_to_csv(grid: SweepGrid, quality: int | None = None) -> str:
    out = io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["width", "height", "op", "quality", "n_samples", "seed", "max_mean_abs_residual"]
    )
    q = "" if quality is None else str(int(quality))
    for i, w in enumerate(grid.widths):
        for j, h in enumerate(grid.heights):
            writer.writerow(
                [w, h, grid.op_name, q, grid.n_samples, grid.seed, _fmt(grid.cells[i, j])]
            )
    return out.getvalue()


def glide_to_csv(grid: PhaseScanGrid) -> str:
    out = io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(["phi1", "phi2", "op", "mean_abs_residual"])
    for i, p1 in enumerate(grid.phi1_range):
        for j, p2 in enumerate(grid.phi2_range):
            writer.writerow([p1, p2, grid.op_name, _fmt(grid.cells[i, j])])
    return out.getvalue()


def glide_from_csv(text: str) -> PhaseScanGrid:
    """Rebuild a PhaseScanGrid from its CSV serialization."""
    rows = list(_csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["phi1", "phi2", "op", "mean_abs_residual"]:
        raise ValueError("not a glide CSV: bad or missing header")
    values: dict[tuple[int, int], float] = {}
    op_names = set()
    for row in rows[1:]:
        if len(row) != 4:
            raise ValueError(f"malformed glide CSV row: {row!r}")
        p1, p2, op_name, val = int(row[0]), int(row[1]), row[2], float(row[3])
        values[(p1, p2)] = val
        op_names.add(op_name)
    if not values:
        raise ValueError("glide CSV has no data rows")
    if len(op_names) != 1:
        raise ValueError(f"glide CSV mixes ops: {sorted(op_names)}")
    phi1_range = tuple(sorted({p for p, _ in values}))
    phi2_range = tuple(sorted({p for _, p in values}))
    cells = np.zeros((len(phi1_range), len(phi2_range)), dtype=np.float64)
    for i, p1 in enumerate(phi1_range):
        for j, p2 in enumerate(phi2_range):
            if (p1, p2) not in values:
                raise ValueError(f"glide CSV missing cell ({p1}, {p2})")
            cells[i, j] = values[(p1, p2)]
    return PhaseScanGrid(phi1_range, phi2_range, op_names.pop(), cells)


def residual_to_csv(report: ResidualReport) -> str:
    out = io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "y", "channel", "value"])
    samples = report.residual.samples
    for c in range(samples.shape[0]):
        for y in range(samples.shape[1]):
            for x in range(samples.shape[2]):
                writer.writerow([x, y, c, int(samples[c, y, x])])
    return out.getvalue()
