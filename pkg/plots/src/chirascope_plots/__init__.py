"""Read-only figure rendering for chirascope CSV outputs."""

from .render import (
    KINDS,
    RESERVED_RGBA,
    SCALES,
    FigureSpec,
    colorize,
    load_glide,
    load_residual,
    load_sweep,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "KINDS",
    "RESERVED_RGBA",
    "SCALES",
    "colorize",
    "load_glide",
    "load_residual",
    "load_sweep",
    "render",
]
