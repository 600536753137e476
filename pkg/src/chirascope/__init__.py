"""Toolkit for detecting symmetry breaking in imaging pipelines.

An operation J respects horizontal reflection T when J(T(x)) = T(J(x)).  The
toolkit measures the commutative residual J(T(x)) - T(J(x)) on synthetic
images, sweeps it across image sizes and reflection phases, and cross-checks
the underlying propositions by brute force on small finite domains.
"""

__version__ = "0.1.0"

from .core import (
    CHANNELS,
    CompositionError,
    FormatError,
    Image,
    ProcessingOp,
    ResidualImage,
    compose,
    identity_op,
    read_pgm,
    read_ppm,
    round_half_away,
    write_pgm,
    write_pgm_heatmap,
    write_ppm,
)
from .imaging import (
    BayerMosaic,
    JpegConfig,
    bayer_sample,
    demosaic_op,
    dct8_forward,
    dct8_inverse,
    dequantize,
    jpeg_codec,
    jpeg_op,
    malvar_demosaic,
    quality_tables,
    quantize,
)
from .residual import (
    ACHIRAL_CONSISTENT,
    CHIRAL,
    GlideVerdict,
    PhaseScanGrid,
    ResidualReport,
    SweepGrid,
    commutative_residual,
    glide_from_csv,
    glide_scan,
    glide_to_csv,
    glide_verdict,
    predict_chirality,
    residual_to_csv,
    size_sweep,
    sweep_to_csv,
)
from .synthgen import (
    DEFAULT_MEANS,
    DEFAULT_STDS,
    GaussianSpec,
    gaussian_image,
    uniform_image,
)
from .transforms import (
    PAD_CONSTANT,
    PAD_WIDTH,
    PhaseShift,
    crop,
    crop_op,
    flip_h,
    flip_op,
    pad_canvas,
    phase_shifted_JT,
    phase_shifted_TJ,
    random_crop,
    translate_padded,
)

__all__ = [
    "ACHIRAL_CONSISTENT",
    "CHANNELS",
    "CHIRAL",
    "BayerMosaic",
    "CompositionError",
    "DEFAULT_MEANS",
    "DEFAULT_STDS",
    "FormatError",
    "GaussianSpec",
    "GlideVerdict",
    "Image",
    "JpegConfig",
    "PAD_CONSTANT",
    "PAD_WIDTH",
    "PhaseScanGrid",
    "PhaseShift",
    "ProcessingOp",
    "ResidualImage",
    "ResidualReport",
    "SweepGrid",
    "bayer_sample",
    "commutative_residual",
    "compose",
    "crop",
    "crop_op",
    "dct8_forward",
    "dct8_inverse",
    "demosaic_op",
    "dequantize",
    "flip_h",
    "flip_op",
    "gaussian_image",
    "glide_from_csv",
    "glide_scan",
    "glide_to_csv",
    "glide_verdict",
    "identity_op",
    "jpeg_codec",
    "jpeg_op",
    "malvar_demosaic",
    "pad_canvas",
    "phase_shifted_JT",
    "phase_shifted_TJ",
    "predict_chirality",
    "quality_tables",
    "quantize",
    "random_crop",
    "read_pgm",
    "read_ppm",
    "residual_to_csv",
    "round_half_away",
    "size_sweep",
    "sweep_to_csv",
    "translate_padded",
    "uniform_image",
    "write_pgm",
    "write_pgm_heatmap",
    "write_ppm",
]
