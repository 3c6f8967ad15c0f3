"""Sensor-noise degradations: gaussian, uniform, impulse, poisson.

Severities 1-3 sit at levels 1, 3, 5 of the native five-level corruption
ladder; the level-ℓ constants are frozen here.
"""

from __future__ import annotations

import math

import numpy as np

from ..imgcore import clip01, rng_from_seed, validate_image

GAUSSIAN_SIGMA = {1: 0.08, 2: 0.18, 3: 0.38}
UNIFORM_SIGMA = {1: 25 / 255, 2: 50 / 255, 3: 75 / 255}
IMPULSE_FRACTION = {1: 0.03, 2: 0.09, 3: 0.27}
POISSON_LAMBDA = {1: 5.0, 2: 10.0, 3: 15.0}
NOISE_NATIVE_LEVEL = {1: 1, 2: 3, 3: 5}

NOISE_KINDS = ("gaussian", "uniform", "impulse", "poisson")


def noise_field(kind: str, severity: int, shape: tuple, seed: int) -> np.ndarray:
    """Additive pre-clip noise for the additive kinds (float64).

    gaussian: N(0, sigma); uniform: U(-a, a) with a = sigma*sqrt(3) so the
    pre-clip standard deviation is sigma; poisson: P(lambda)/255 added as-is
    (non-centred, so it also brightens).  Impulse noise replaces pixels
    instead of adding, so it has no additive field and raises here.
    """
    rng = rng_from_seed(seed)
    if kind == "gaussian":
        return rng.normal(0.0, GAUSSIAN_SIGMA[severity], shape)
    if kind == "uniform":
        a = UNIFORM_SIGMA[severity] * math.sqrt(3.0)
        return rng.uniform(-a, a, shape)
    if kind == "poisson":
        return rng.poisson(POISSON_LAMBDA[severity], shape) / 255.0
    if kind == "impulse":
        raise ValueError("impulse noise replaces pixels; it has no additive field")
    raise ValueError(f"unknown noise kind {kind!r}")


def add_noise(img: np.ndarray, kind: str, severity: int, seed: int) -> np.ndarray:
    """Apply one noise kind and clip.

    Impulse noise flips a fraction p of pixels (all channels together) to
    exactly 0 or 1 with equal probability; the other kinds add their
    noise_field.
    """
    validate_image(img)
    if kind == "impulse":
        rng = rng_from_seed(seed)
        p = IMPULSE_FRACTION[severity]
        hit = rng.random(img.shape[:2]) < p
        salt = rng.random(img.shape[:2]) < 0.5
        out = img.astype(np.float32, copy=True)
        out[hit & salt] = 1.0
        out[hit & ~salt] = 0.0
        return out
    field = noise_field(kind, severity, img.shape, seed)
    return clip01((img.astype(np.float64) + field).astype(np.float32))
