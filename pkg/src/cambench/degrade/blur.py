"""Blur degradations: defocus (disk kernel) and motion (line kernel)."""

from __future__ import annotations

import cv2
import numpy as np

from ..imgcore import clip01, disk_kernel, motion_line_kernel, rng_from_seed, validate_image

# (disk radius px, rim smoothing sigma) per severity.
DEFOCUS = {1: (3, 0.1), 2: (6, 0.5), 3: (10, 0.5)}
# (line length px, along-line sigma) per severity.
MOTION = {1: (10, 3.0), 2: (15, 8.0), 3: (20, 15.0)}
MOTION_ANGLE_DEG = 45.0
BLUR_NATIVE_LEVEL = {1: 1, 2: 3, 3: 5}

BLUR_KINDS = ("defocus", "motion")


def blur(img: np.ndarray, kind: str, severity: int, seed: int = 0) -> np.ndarray:
    """Convolve with the severity's kernel under reflective padding.

    Motion blur draws its angle uniformly from +/-45 degrees off horizontal
    using the seed; defocus ignores the seed.
    """
    validate_image(img)
    if kind == "defocus":
        radius, edge = DEFOCUS[severity]
        kernel = disk_kernel(radius, edge)
    elif kind == "motion":
        length, sigma = MOTION[severity]
        angle = float(rng_from_seed(seed).uniform(-MOTION_ANGLE_DEG, MOTION_ANGLE_DEG))
        kernel = motion_line_kernel(length, sigma, angle)
    else:
        raise ValueError(f"unknown blur kind {kind!r}")
    out = cv2.filter2D(
        img.astype(np.float32), -1, kernel.astype(np.float32), borderType=cv2.BORDER_REFLECT_101
    )
    return clip01(out.reshape(img.shape))
