"""Unfavourable-light degradations: low light, night light, extreme light,
strong light.

Low light applies an iterated quadratic tone curve; night light adds seeded
street-light glare on top of a milder darkening; extreme light composes the
two; strong light lifts HSV brightness.
"""

from __future__ import annotations

import cv2
import numpy as np

from ..imgcore import clip01, luma, rng_from_seed, validate_image

# Tone-curve strength per severity.  One curve step is I <- I + a*I*(1 - I);
# a < 0 darkens mid-tones while pinning 0 and 1.
LOWLIGHT_ALPHA = {1: -0.20, 2: -0.28, 3: -0.35}
LOWLIGHT_ITERATIONS = 8
HIGHLIGHT_THRESHOLD = 0.90
HIGHLIGHT_KEEP = 0.8

# Night-light glare: number of light sources per severity.
NIGHT_SOURCES = {1: 6, 2: 10, 3: 14}
NIGHT_DARKEN_SCALE = 0.5
# Warm street-light tint; red channel at 1.0 so cores saturate in every channel
# once the additive amplitude is >= 1/min(tint).
NIGHT_TINT = (1.0, 0.93, 0.78)
_NIGHT_AMP_RANGE = (1.30, 1.70)

# HSV value added per severity; severities map onto the native five-level
# brightness ladder at levels 1, 3, 5.
BRIGHTNESS_VALUE = {1: 0.1, 2: 0.3, 3: 0.5}
BRIGHTNESS_NATIVE_LEVEL = {1: 1, 2: 3, 3: 5}


def _check_rgb(img: np.ndarray) -> None:
    validate_image(img)
    if img.shape[2] != 3:
        raise ValueError(f"light operators need a 3-channel image, got {img.shape[2]}")


def darken_lowlight(img: np.ndarray, severity: int, alpha: float | None = None) -> np.ndarray:
    """Darken by iterating the quadratic curve, preserving highlights.

    Pixels whose original luma exceeds HIGHLIGHT_THRESHOLD are blended back
    toward their input value with weight HIGHLIGHT_KEEP, so lamps and sky
    keep reading as bright.
    """
    _check_rgb(img)
    a = LOWLIGHT_ALPHA[severity] if alpha is None else float(alpha)
    if not -1.0 < a <= 0.0:
        raise ValueError(f"curve strength must be in (-1, 0], got {a}")
    out = img.astype(np.float32, copy=True)
    for _ in range(LOWLIGHT_ITERATIONS):
        out += a * out * (1.0 - out)
    keep = luma(img) > HIGHLIGHT_THRESHOLD
    if keep.any():
        blend = HIGHLIGHT_KEEP * img[keep] + (1.0 - HIGHLIGHT_KEEP) * out[keep]
        out[keep] = blend
    return clip01(out)


def _stamp_glare(glare: np.ndarray, cy: int, cx: int, sigma: float, amp: float, phi: float) -> None:
    """Add one halo + 4-ray streak into the glare accumulator, in place."""
    h, w = glare.shape
    ray_len = sigma * 4.0
    half = int(np.ceil(ray_len * 3.0)) + 1
    y0, y1 = max(0, cy - half), min(h, cy + half + 1)
    x0, x1 = max(0, cx - half), min(w, cx + half + 1)
    yy, xx = np.mgrid[y0:y1, x0:x1].astype(np.float32)
    dy, dx = yy - cy, xx - cx
    halo = amp * np.exp(-(dx**2 + dy**2) / (2.0 * sigma**2))
    u = dx * np.cos(phi) + dy * np.sin(phi)
    v = -dx * np.sin(phi) + dy * np.cos(phi)
    cross = max(0.7, sigma * 0.15)
    rays = np.exp(-(u**2) / (2.0 * ray_len**2)) * np.exp(-(v**2) / (2.0 * cross**2))
    rays += np.exp(-(v**2) / (2.0 * ray_len**2)) * np.exp(-(u**2) / (2.0 * cross**2))
    glare[y0:y1, x0:x1] += halo + 0.35 * amp * rays


def synth_nightlight(img: np.ndarray, severity: int, seed: int) -> np.ndarray:
    """Night-time surrogate: milder darkening plus seeded glare sources.

    Light positions prefer the brightest 2% of pixels (existing lamps,
    windows, sky holes) with the remainder placed at street level in the
    lower half.  Each source gets a saturating halo core and a 4-ray streak.
    """
    _check_rgb(img)
    rng = rng_from_seed(seed)
    base = darken_lowlight(img, severity, alpha=LOWLIGHT_ALPHA[severity] * NIGHT_DARKEN_SCALE)
    h, w = img.shape[:2]
    k = NIGHT_SOURCES[severity]

    lum = luma(img)
    flat = lum.ravel()
    bright_pool = np.flatnonzero(flat >= np.quantile(flat, 0.98))
    n_bright = min(int(round(k * 0.6)), bright_pool.size)
    centers: list[tuple[int, int]] = []
    taken = set()
    if n_bright > 0:
        for i in rng.choice(bright_pool, size=n_bright, replace=False):
            cy, cx = divmod(int(i), w)
            if (cy, cx) not in taken:
                taken.add((cy, cx))
                centers.append((cy, cx))
    while len(centers) < k:
        cy = int(rng.integers(h // 2, h))
        cx = int(rng.integers(0, w))
        if (cy, cx) not in taken:
            taken.add((cy, cx))
            centers.append((cy, cx))

    glare = np.zeros((h, w), dtype=np.float32)
    sigma_scale = 1.0 + 0.35 * (severity - 1)
    for cy, cx in centers:
        sigma = rng.uniform(3.0, 8.0) * sigma_scale
        amp = rng.uniform(*_NIGHT_AMP_RANGE)
        phi = rng.uniform(0.0, np.pi)
        _stamp_glare(glare, cy, cx, sigma, amp, phi)

    tint = np.asarray(NIGHT_TINT, dtype=np.float32)
    out = base + glare[:, :, None] * tint[None, None, :]
    return clip01(out)


def synth_extremelight(img: np.ndarray, severity: int, seed: int) -> np.ndarray:
    """Extreme low light: re-darken the night-light rendering.

    Glare cores stay saturated through the second darkening pass, so the
    result is darker than night light overall but keeps its light sources.
    """
    return darken_lowlight(synth_nightlight(img, severity, seed), severity)


def brighten_stronglight(img: np.ndarray, severity: int, value: float | None = None) -> np.ndarray:
    """Over-exposure: add a constant to HSV value and convert back."""
    _check_rgb(img)
    c = BRIGHTNESS_VALUE[severity] if value is None else float(value)
    hsv = cv2.cvtColor(np.ascontiguousarray(img, dtype=np.float32), cv2.COLOR_RGB2HSV)
    hsv[:, :, 2] = np.minimum(hsv[:, :, 2] + c, 1.0)
    out = cv2.cvtColor(hsv, cv2.COLOR_HSV2RGB)
    return clip01(out)
