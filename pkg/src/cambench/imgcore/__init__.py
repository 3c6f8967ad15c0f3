"""Image data model, deterministic seeding, resampling, and file I/O."""

from .io import (
    load_depth,
    load_image,
    load_panoptic,
    quantize_u8,
    save_image,
    save_panoptic,
)
from .kernels import (
    disk_kernel,
    gaussian_kernel1d,
    gaussian_kernel2d,
    motion_line_kernel,
    sharpen_kernel,
)
from .resample import resize_bicubic
from .seeds import derive_seed, rng_from_seed
from .types import (
    FACTOR_NAMES,
    LUMA_WEIGHTS,
    SEVERITIES,
    WEATHER_FACTORS,
    DegradationSpec,
    PanopticMap,
    SegmentInfo,
    clip01,
    luma,
    validate_image,
)

__all__ = [
    "FACTOR_NAMES",
    "LUMA_WEIGHTS",
    "SEVERITIES",
    "WEATHER_FACTORS",
    "DegradationSpec",
    "PanopticMap",
    "SegmentInfo",
    "clip01",
    "derive_seed",
    "disk_kernel",
    "gaussian_kernel1d",
    "gaussian_kernel2d",
    "load_depth",
    "load_image",
    "load_panoptic",
    "luma",
    "motion_line_kernel",
    "quantize_u8",
    "resize_bicubic",
    "rng_from_seed",
    "save_image",
    "save_panoptic",
    "sharpen_kernel",
    "validate_image",
]
