"""Core data model: image conventions, panoptic maps, degradation requests.

Images are numpy arrays of shape (H, W, C) with C in {1, 3}, float32 in
[0, 1], RGB channel order.  Depth maps are (H, W) float32 arrays in metres,
strictly positive, with +inf allowed for sky / no-return pixels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Closed catalog of degradation factors.  Order is the canonical report order:
# unfavourable light, weather, lens occlusion, ISP, sensor noise, blur.
FACTOR_NAMES = (
    "low_light",
    "night_light",
    "extreme_light",
    "strong_light",
    "rain",
    "fog",
    "snow",
    "mud",
    "droplets",
    "jpeg",
    "oversharpen",
    "no_demosaic",
    "no_bayer",
    "gaussian_noise",
    "uniform_noise",
    "impulse_noise",
    "poisson_noise",
    "defocus_blur",
    "motion_blur",
)

# Factors that model light transport through the atmosphere and therefore
# require a per-pixel distance map.
WEATHER_FACTORS = ("rain", "fog", "snow")

SEVERITIES = (1, 2, 3)

# Rec. 601 luma weights, shared by grayscale conversion and the no-Bayer model.
LUMA_WEIGHTS = (0.2989, 0.5870, 0.1140)


def luma(img: np.ndarray) -> np.ndarray:
    """Collapse an (H, W, 3) image to (H, W) luma; pass (H, W[, 1]) through."""
    if img.ndim == 2:
        return img
    if img.shape[2] == 1:
        return img[:, :, 0]
    w = np.asarray(LUMA_WEIGHTS, dtype=img.dtype)
    return img @ w


def validate_image(img: np.ndarray) -> np.ndarray:
    """Check the (H, W, C) float [0, 1] contract; returns the array unchanged."""
    if not isinstance(img, np.ndarray):
        raise TypeError(f"image must be an ndarray, got {type(img).__name__}")
    if img.ndim != 3 or img.shape[2] not in (1, 3):
        raise ValueError(f"image must have shape (H, W, 1|3), got {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"image has empty spatial extent: {img.shape}")
    if not np.issubdtype(img.dtype, np.floating):
        raise ValueError(f"image must be float, got dtype {img.dtype}")
    lo, hi = float(img.min()), float(img.max())
    if not (0.0 <= lo and hi <= 1.0):
        raise ValueError(f"image values outside [0, 1]: min={lo}, max={hi}")
    return img


def clip01(img: np.ndarray) -> np.ndarray:
    """Clip to [0, 1] without changing dtype."""
    return np.clip(img, 0.0, 1.0)


@dataclass(frozen=True)
class SegmentInfo:
    """One labelled segment of a panoptic map."""

    id: int
    category_id: int
    is_crowd: bool = False


@dataclass(frozen=True)
class PanopticMap:
    """Dense segment-id grid plus per-segment metadata.

    segment_id is an (H, W) uint32 grid; 0 is void.  Every nonzero id in the
    grid appears exactly once in `segments`, and every listed segment owns at
    least one pixel.
    """

    segment_id: np.ndarray
    segments: tuple[SegmentInfo, ...]

    def __post_init__(self):
        grid = self.segment_id
        if grid.ndim != 2:
            raise ValueError(f"segment_id must be 2-D, got shape {grid.shape}")
        if grid.dtype != np.uint32:
            raise ValueError(f"segment_id must be uint32, got {grid.dtype}")
        ids = [s.id for s in self.segments]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate segment ids in metadata")
        present = set(np.unique(grid).tolist()) - {0}
        listed = set(ids)
        if present - listed:
            raise ValueError(f"grid ids missing from metadata: {sorted(present - listed)}")
        if listed - present:
            raise ValueError(f"zero-pixel segments in metadata: {sorted(listed - present)}")
        if 0 in listed:
            raise ValueError("segment id 0 is reserved for void")

    @property
    def shape(self) -> tuple[int, int]:
        return self.segment_id.shape

    def segment(self, seg_id: int) -> SegmentInfo:
        for s in self.segments:
            if s.id == seg_id:
                return s
        raise KeyError(seg_id)


@dataclass(frozen=True)
class DegradationSpec:
    """A single degradation request: what to apply and under which stream seed.

    `seed` is the 64-bit stream seed for this application (derive it from a
    global seed and the image id with `derive_seed` for reproducible runs).
    `overrides` are operator keyword overrides, e.g. {"beta": 0.0} for fog.
    """

    factor: str
    severity: int
    seed: int = 0
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.factor not in FACTOR_NAMES:
            from ..errors import CatalogError

            raise CatalogError(f"unknown factor {self.factor!r}")
        if self.severity not in SEVERITIES:
            raise ValueError(f"severity must be one of {SEVERITIES}, got {self.severity}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
