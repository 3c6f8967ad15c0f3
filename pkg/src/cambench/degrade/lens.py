"""Lens-occlusion degradations: mud stains and water droplets on the lens."""

from __future__ import annotations

import cv2
import numpy as np

from ..imgcore import clip01, rng_from_seed, validate_image

# Elliptical dilation kernel per severity; fewer but larger stains as the
# kernel grows, with total occluded area still increasing.
MUD_KERNEL = {1: 12, 2: 24, 3: 36}
MUD_EXCEEDANCE = {1: 1.0e-4, 2: 5.0e-5, 3: 3.0e-5}
MUD_INTENSITY = 0.7
MUD_COLOR = (0.36, 0.27, 0.19)

# Droplet budget per severity; severities sit at native levels 2, 3, 4 of the
# five-level droplet ladder.
DROPLET_COUNT = {1: 5, 2: 9, 3: 14}
DROPLET_NATIVE_LEVEL = {1: 2, 2: 3, 3: 4}
DROPLET_MAGNIFY = 1.3


def mud_mask(width: int, height: int, severity: int, seed: int) -> np.ndarray:
    """Soft blob mask in [0, 1]: thresholded low-pass noise grown by an
    elliptical kernel, with a blurred rim and a fully opaque interior."""
    rng = rng_from_seed(seed)
    noise = rng.random((height, width), dtype=np.float64)
    low = cv2.GaussianBlur(noise.astype(np.float32), (0, 0), 2.0)
    thresh = np.quantile(low, 1.0 - MUD_EXCEEDANCE[severity])
    seeds = (low >= thresh).astype(np.uint8)
    k = MUD_KERNEL[severity]
    kernel = cv2.getStructuringElement(cv2.MORPH_ELLIPSE, (k, k))
    blob = cv2.dilate(seeds, kernel).astype(np.float32)
    soft = cv2.GaussianBlur(blob, (0, 0), k / 6.0)
    return np.clip((soft - 0.3) / 0.4, 0.0, 1.0)


def mud_occlusion(img: np.ndarray, severity: int, seed: int, intensity: float | None = None) -> np.ndarray:
    """Blend mud-coloured blobs over the frame.

    A fully covered pixel becomes (1 - intensity)*I + intensity*mud_colour;
    pixels outside the mask are untouched.
    """
    validate_image(img)
    a = MUD_INTENSITY if intensity is None else float(intensity)
    m = mud_mask(img.shape[1], img.shape[0], severity, seed)[:, :, None]
    colour = np.asarray(MUD_COLOR, dtype=np.float32)
    if img.shape[2] == 1:
        colour = colour.mean(keepdims=True)
    return clip01(img * (1.0 - a * m) + colour.reshape(1, 1, -1) * (a * m))


def lens_droplets(img: np.ndarray, severity: int, seed: int, count: int | None = None) -> np.ndarray:
    """Water droplets: each one shows a magnified, flipped, blurred crop of
    its neighbourhood behind a soft elliptical alpha with a darkened rim."""
    validate_image(img)
    rng = rng_from_seed(seed)
    h, w = img.shape[:2]
    n = DROPLET_COUNT[severity] if count is None else int(count)
    out = img.astype(np.float32, copy=True)
    scale = min(h, w)
    for _ in range(n):
        rx = rng.uniform(0.035, 0.09) * scale
        ry = rx * rng.uniform(0.8, 1.2)
        cx = rng.uniform(rx, w - rx) if w > 2 * rx else w / 2.0
        cy = rng.uniform(ry, h - ry) if h > 2 * ry else h / 2.0
        blur_sigma = rng.uniform(1.5, 3.0)

        margin = 1.15
        y0, y1 = max(0, int(cy - ry * margin)), min(h, int(np.ceil(cy + ry * margin)) + 1)
        x0, x1 = max(0, int(cx - rx * margin)), min(w, int(np.ceil(cx + rx * margin)) + 1)
        if y1 - y0 < 2 or x1 - x0 < 2:
            continue
        win_h, win_w = y1 - y0, x1 - x0

        # Refraction source: the window shrunk by the magnification factor,
        # re-centred, upscaled, flipped upside down, and defocused.
        src_h = max(2, int(round(win_h / DROPLET_MAGNIFY)))
        src_w = max(2, int(round(win_w / DROPLET_MAGNIFY)))
        sy0 = int(np.clip(round(cy - src_h / 2.0), 0, h - src_h))
        sx0 = int(np.clip(round(cx - src_w / 2.0), 0, w - src_w))
        patch = img[sy0 : sy0 + src_h, sx0 : sx0 + src_w]
        patch = cv2.resize(patch, (win_w, win_h), interpolation=cv2.INTER_LINEAR)
        patch = patch.reshape(win_h, win_w, -1)[::-1]
        patch = cv2.GaussianBlur(patch, (0, 0), blur_sigma).reshape(win_h, win_w, -1)

        yy, xx = np.mgrid[y0:y1, x0:x1].astype(np.float32)
        rho = np.sqrt(((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2)
        alpha = 0.92 * np.clip((1.02 - rho) / 0.12, 0.0, 1.0)
        rim = 1.0 - 0.35 * np.exp(-(((rho - 0.93) / 0.07) ** 2))
        shaded = patch * rim[:, :, None]
        region = out[y0:y1, x0:x1]
        out[y0:y1, x0:x1] = alpha[:, :, None] * shaded + (1.0 - alpha[:, :, None]) * region
    return clip01(out)
