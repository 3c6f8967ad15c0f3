"""ISP degradations: JPEG recompression, over-sharpening, missing demosaic,
missing Bayer filter."""

from __future__ import annotations

import io

import cv2
import numpy as np
from PIL import Image

from ..imgcore import clip01, luma, quantize_u8, sharpen_kernel, validate_image

# Higher severity compresses harder (lower libjpeg quality).
JPEG_QUALITY = {1: 80, 2: 50, 3: 20}

SHARPEN_ALPHA = {1: 0.25, 2: 0.5, 3: 0.75}
SHARPEN_LIGHTNESS = 1.0


def _check_rgb(img: np.ndarray) -> None:
    validate_image(img)
    if img.shape[2] != 3:
        raise ValueError(f"ISP operators need a 3-channel image, got {img.shape[2]}")


def jpeg_cycle(img: np.ndarray, severity: int, quality: int | None = None) -> np.ndarray:
    """Encode/decode through libjpeg at the severity's quality setting."""
    _check_rgb(img)
    q = JPEG_QUALITY[severity] if quality is None else int(quality)
    if not 1 <= q <= 100:
        raise ValueError(f"JPEG quality must be in [1, 100], got {q}")
    buf = io.BytesIO()
    Image.fromarray(quantize_u8(img), mode="RGB").save(buf, format="JPEG", quality=q)
    buf.seek(0)
    with Image.open(buf) as decoded:
        arr = np.asarray(decoded.convert("RGB"), dtype=np.uint8)
    return (arr.astype(np.float32) / 255.0).astype(np.float32)


def oversharpen(img: np.ndarray, severity: int, alpha: float | None = None) -> np.ndarray:
    """Unsharp boost: blend the 3x3 sharpening response over the input.

    alpha = 0 is the identity; the kernel's lightness of 1.0 keeps flat
    regions fixed at any alpha.
    """
    _check_rgb(img)
    a = SHARPEN_ALPHA[severity] if alpha is None else float(alpha)
    if a == 0.0:
        return img.astype(np.float32, copy=True)
    k = sharpen_kernel(SHARPEN_LIGHTNESS).astype(np.float32)
    sharp = cv2.filter2D(img.astype(np.float32), -1, k, borderType=cv2.BORDER_REFLECT_101)
    return clip01((1.0 - a) * img + a * sharp)


def no_demosaic(img: np.ndarray) -> np.ndarray:
    """Simulate a raw RGGB readout: keep each pixel's mosaic channel, zero the
    other two.  Severity-independent."""
    _check_rgb(img)
    out = np.zeros_like(img, dtype=np.float32)
    out[0::2, 0::2, 0] = img[0::2, 0::2, 0]  # R
    out[0::2, 1::2, 1] = img[0::2, 1::2, 1]  # G
    out[1::2, 0::2, 1] = img[1::2, 0::2, 1]  # G
    out[1::2, 1::2, 2] = img[1::2, 1::2, 2]  # B
    return out


def no_bayer(img: np.ndarray) -> np.ndarray:
    """Simulate a sensor without a colour filter array: Rec. 601 luma,
    replicated to 3 channels for downstream uniformity.  Severity-independent."""
    _check_rgb(img)
    y = luma(img.astype(np.float32)).astype(np.float32)
    return clip01(np.repeat(y[:, :, None], 3, axis=2))
