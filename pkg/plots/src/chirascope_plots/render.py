"""Figure rendering for chirascope CSV outputs.

This package is a read-only consumer of the CSV files written by the
chirascope CLI.  It never recomputes residuals; every number shown in a
figure comes straight out of the input file.  Three figure kinds are
supported, one per CSV schema:

  sweep     width,height,op,quality,n_samples,seed,max_mean_abs_residual
  glide     phi1,phi2,op,mean_abs_residual
  residual  x,y,channel,value

Cells whose value is exactly zero are drawn in a reserved color that the
colormap itself can never produce, so a zero cell is visually unambiguous.
Everything is single-threaded and uses the non-interactive Agg backend.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib import colormaps
from matplotlib.colors import LogNorm, Normalize

KINDS = ("sweep", "glide", "residual")
SCALES = ("linear", "log")

# Pure cyan.  Viridis stays inside the blue-green-yellow band and never
# reaches it, so reserved pixels cannot collide with mapped ones.
RESERVED_RGBA = (0.0, 1.0, 1.0, 1.0)

_COLUMNS = {
    "sweep": ("width", "height", "op", "quality", "n_samples", "seed",
              "max_mean_abs_residual"),
    "glide": ("phi1", "phi2", "op", "mean_abs_residual"),
    "residual": ("x", "y", "channel", "value"),
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure to render: which CSV, which schema, where to write."""

    input_csv: str
    kind: str
    output: str
    scale: str = "linear"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if self.scale not in SCALES:
            raise ValueError(f"unknown color scale {self.scale!r}")


def read_rows(path, kind):
    """Read a CSV and validate its header against the schema for kind.

    Returns a list of row dicts keyed by column name.  The header must
    match the schema exactly; a column set that merely overlaps is
    treated as the wrong file, not as something to guess around.
    """
    expected = _COLUMNS[kind]
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected a {kind} CSV header")
        for name in expected:
            if name not in header:
                raise ValueError(f"{path}: missing column {name!r} for {kind} CSV")
        extra = [name for name in header if name not in expected]
        if extra:
            raise ValueError(
                f"{path}: unexpected column {extra[0]!r} for {kind} CSV")
        if len(header) != len(set(header)):
            raise ValueError(f"{path}: duplicate column in header")
        rows = []
        for line_no, cells in enumerate(reader, start=2):
            if len(cells) != len(header):
                raise ValueError(f"{path}: line {line_no}: expected "
                                 f"{len(header)} fields, got {len(cells)}")
            rows.append(dict(zip(header, cells)))
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def _parse_int(row, key, path):
    try:
        return int(row[key])
    except ValueError:
        raise ValueError(f"{path}: malformed integer in column {key!r}: "
                         f"{row[key]!r}")


def _parse_float(row, key, path):
    try:
        value = float(row[key])
    except ValueError:
        raise ValueError(f"{path}: malformed number in column {key!r}: "
                         f"{row[key]!r}")
    if not np.isfinite(value):
        raise ValueError(f"{path}: non-finite value in column {key!r}")
    return value


def _grid_from_pairs(points, path, axis_names):
    """Arrange (a, b, value) triples into a dense grid.

    Every (a, b) combination from the observed axis values must appear
    exactly once: the plot is only meaningful over a complete grid.
    """
    a_values = sorted({a for a, _, _ in points})
    b_values = sorted({b for _, b, _ in points})
    a_index = {a: i for i, a in enumerate(a_values)}
    b_index = {b: i for i, b in enumerate(b_values)}
    grid = np.full((len(a_values), len(b_values)), np.nan)
    for a, b, value in points:
        i, j = a_index[a], b_index[b]
        if not np.isnan(grid[i, j]):
            raise ValueError(f"{path}: duplicate cell "
                             f"{axis_names[0]}={a} {axis_names[1]}={b}")
        grid[i, j] = value
    if np.isnan(grid).any():
        i, j = np.argwhere(np.isnan(grid))[0]
        raise ValueError(f"{path}: missing cell {axis_names[0]}="
                         f"{a_values[i]} {axis_names[1]}={b_values[j]}")
    return a_values, b_values, grid


def load_sweep(path):
    """Load a size-sweep CSV into (widths, heights, op, grid)."""
    rows = read_rows(path, "sweep")
    ops = {row["op"] for row in rows}
    if len(ops) != 1:
        raise ValueError(f"{path}: sweep CSV mixes ops {sorted(ops)}")
    points = [(_parse_int(r, "width", path), _parse_int(r, "height", path),
               _parse_float(r, "max_mean_abs_residual", path)) for r in rows]
    widths, heights, grid = _grid_from_pairs(points, path, ("width", "height"))
    return widths, heights, ops.pop(), grid


def load_glide(path):
    """Load a glide-scan CSV into (phi1 values, phi2 values, op, grid)."""
    rows = read_rows(path, "glide")
    ops = {row["op"] for row in rows}
    if len(ops) != 1:
        raise ValueError(f"{path}: glide CSV mixes ops {sorted(ops)}")
    points = [(_parse_int(r, "phi1", path), _parse_int(r, "phi2", path),
               _parse_float(r, "mean_abs_residual", path)) for r in rows]
    phi1, phi2, grid = _grid_from_pairs(points, path, ("phi1", "phi2"))
    return phi1, phi2, ops.pop(), grid


def load_residual(path):
    """Load a residual CSV into a (3, height, width) magnitude array."""
    rows = read_rows(path, "residual")
    points = {}
    for row in rows:
        x = _parse_int(row, "x", path)
        y = _parse_int(row, "y", path)
        c = _parse_int(row, "channel", path)
        if c not in (0, 1, 2):
            raise ValueError(f"{path}: channel must be 0, 1 or 2, got {c}")
        if x < 0 or y < 0:
            raise ValueError(f"{path}: negative coordinate x={x} y={y}")
        key = (c, y, x)
        if key in points:
            raise ValueError(f"{path}: duplicate cell x={x} y={y} channel={c}")
        points[key] = _parse_float(row, "value", path)
    width = max(x for _, _, x in points) + 1
    height = max(y for _, y, _ in points) + 1
    grid = np.full((3, height, width), np.nan)
    for (c, y, x), value in points.items():
        grid[c, y, x] = value
    if np.isnan(grid).any():
        c, y, x = np.argwhere(np.isnan(grid))[0]
        raise ValueError(f"{path}: missing cell x={x} y={y} channel={c}")
    return np.abs(grid)


def colorize(grid, scale):
    """Map a non-negative grid to RGBA, reserving a color for exact zeros.

    Nonzero values go through viridis under the requested normalization;
    cells that are exactly zero are painted RESERVED_RGBA instead.  The
    returned array is what render() hands to imshow, so tests on it see
    the same pixels the figure does.
    """
    grid = np.asarray(grid, dtype=float)
    if (grid < 0).any():
        raise ValueError("colorize expects non-negative values")
    zero = grid == 0
    cmap = colormaps["viridis"]
    if zero.all():
        rgba = np.empty(grid.shape + (4,))
        rgba[...] = RESERVED_RGBA
        return rgba
    positive = grid[~zero]
    if scale == "log":
        norm = LogNorm(vmin=positive.min(), vmax=positive.max())
        # LogNorm cannot take zeros; substitute vmin, then overwrite below.
        rgba = cmap(norm(np.where(zero, positive.min(), grid)))
    elif scale == "linear":
        norm = Normalize(vmin=0.0, vmax=positive.max())
        rgba = cmap(norm(grid))
    else:
        raise ValueError(f"unknown color scale {scale!r}")
    rgba[zero] = RESERVED_RGBA
    return rgba


def _annotate_zero_legend(ax):
    ax.set_title(ax.get_title() + "  (cyan = exactly zero)", fontsize=9)


def _render_sweep(spec, ax_factory):
    widths, heights, op, grid = load_sweep(spec.input_csv)
    fig, ax = ax_factory(1)
    rgba = colorize(grid.T, spec.scale)
    ax[0].imshow(rgba, origin="lower", aspect="auto", interpolation="nearest",
                 extent=(widths[0] - 0.5, widths[-1] + 0.5,
                         heights[0] - 0.5, heights[-1] + 0.5))
    ax[0].set_xlabel("width")
    ax[0].set_ylabel("height")
    ax[0].set_title(f"max mean |residual| by size, op={op}")
    _annotate_zero_legend(ax[0])
    return fig


def _render_glide(spec, ax_factory):
    phi1, phi2, op, grid = load_glide(spec.input_csv)
    fig, ax = ax_factory(1)
    rgba = colorize(grid, spec.scale)
    ax[0].imshow(rgba, origin="lower", aspect="equal", interpolation="nearest",
                 extent=(phi2[0] - 0.5, phi2[-1] + 0.5,
                         phi1[0] - 0.5, phi1[-1] + 0.5))
    ax[0].set_xlabel("phi2")
    ax[0].set_ylabel("phi1")
    ax[0].set_title(f"mean |residual| by phase pair, op={op}")
    _annotate_zero_legend(ax[0])
    return fig


def _render_residual(spec, ax_factory):
    grid = load_residual(spec.input_csv)
    fig, ax = ax_factory(3)
    for c, name in enumerate(("red", "green", "blue")):
        rgba = colorize(grid[c], spec.scale)
        ax[c].imshow(rgba, origin="upper", interpolation="nearest")
        ax[c].set_title(f"|residual| {name}")
        ax[c].set_xticks([])
        ax[c].set_yticks([])
    _annotate_zero_legend(ax[0])
    return fig


def render(spec):
    """Render one FigureSpec to its output path.  Returns the path."""
    if not isinstance(spec, FigureSpec):
        raise TypeError("render expects a FigureSpec")

    def ax_factory(n):
        fig, axes = plt.subplots(1, n, figsize=(4.5 * n, 4.0))
        return fig, np.atleast_1d(axes)

    renderers = {
        "sweep": _render_sweep,
        "glide": _render_glide,
        "residual": _render_residual,
    }
    fig = renderers[spec.kind](spec, ax_factory)
    try:
        fig.savefig(spec.output, bbox_inches="tight")
    finally:
        plt.close(fig)
    return spec.output
