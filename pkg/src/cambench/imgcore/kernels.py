"""Shared convolution kernels (blur disks, motion lines, windows)."""

from __future__ import annotations

import numpy as np


def gaussian_kernel1d(size: int, sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian sampled on `size` integer taps."""
    if size < 1 or size % 2 == 0:
        raise ValueError(f"kernel size must be odd and positive, got {size}")
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    k = np.exp(-(x**2) / (2.0 * sigma**2))
    return k / k.sum()


def gaussian_kernel2d(size: int, sigma: float) -> np.ndarray:
    """Normalized 2-D Gaussian window (outer product of the 1-D kernel)."""
    k = gaussian_kernel1d(size, sigma)
    return np.outer(k, k)


def disk_kernel(radius: int, edge_sigma: float) -> np.ndarray:
    """Normalized circular averaging kernel with a softened rim.

    A hard disk of the given pixel radius is smoothed by a small Gaussian
    (sigma = edge_sigma) to suppress aliasing on the rim, then renormalized.
    """
    if radius < 1:
        raise ValueError(f"disk radius must be >= 1, got {radius}")
    half = max(radius, 8)
    y, x = np.mgrid[-half : half + 1, -half : half + 1].astype(np.float64)
    disk = (x**2 + y**2 <= radius**2).astype(np.float64)
    if edge_sigma > 0:
        size = 2 * half + 1
        g = gaussian_kernel1d(size, edge_sigma)
        disk = _separable(disk, g)
    return disk / disk.sum()


def _separable(arr: np.ndarray, k1d: np.ndarray) -> np.ndarray:
    """Convolve a small 2-D array with a separable 1-D kernel (same-size, zero pad)."""
    import scipy.ndimage as ndi

    out = ndi.convolve1d(arr, k1d, axis=0, mode="constant")
    return ndi.convolve1d(out, k1d, axis=1, mode="constant")


def motion_line_kernel(length: int, sigma: float, angle_deg: float) -> np.ndarray:
    """Normalized line kernel: Gaussian-weighted segment at the given angle.

    Tap positions run along the line through the kernel centre; each tap is
    splatted bilinearly so non-axis angles stay smooth.  Sums to 1.
    """
    if length < 1:
        raise ValueError(f"line length must be >= 1, got {length}")
    half = (length - 1) / 2.0
    size = int(np.ceil(half)) * 2 + 3
    c = size // 2
    kern = np.zeros((size, size), dtype=np.float64)
    t = np.linspace(-half, half, max(length * 4, 8))
    w = np.exp(-(t**2) / (2.0 * sigma**2))
    ang = np.deg2rad(angle_deg)
    xs = c + t * np.cos(ang)
    ys = c - t * np.sin(ang)
    x0 = np.floor(xs).astype(int)
    y0 = np.floor(ys).astype(int)
    fx = xs - x0
    fy = ys - y0
    for dx, dy, ww in (
        (0, 0, (1 - fx) * (1 - fy)),
        (1, 0, fx * (1 - fy)),
        (0, 1, (1 - fx) * fy),
        (1, 1, fx * fy),
    ):
        np.add.at(kern, (y0 + dy, x0 + dx), w * ww)
    return kern / kern.sum()


# 3x3 unsharp kernel: identity + Laplacian boost; lightness 1.0 keeps sum 1 so
# flat regions are untouched.
def sharpen_kernel(lightness: float = 1.0) -> np.ndarray:
    k = np.full((3, 3), -1.0)
    k[1, 1] = 8.0 + lightness
    return k
