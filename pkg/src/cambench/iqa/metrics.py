"""Full-reference image-quality metrics: PSNR, SSIM, CW-SSIM, FSIM.

All metrics take (H, W[, C]) float images in [0, 1] with matching shapes and
compute in float64.  SSIM, CW-SSIM, and FSIM operate on luma; the latter two
share one log-Gabor bank and use the 0-255 luma scale their published
constants assume.
"""

from __future__ import annotations

from dataclasses import dataclass

import cv2
import numpy as np
from scipy import fft as sfft
from scipy import ndimage

from ..imgcore import gaussian_kernel1d, luma
from .loggabor import DEFAULT_BANK, LogGaborBank, _orientation_energy

PSNR_CAP_DB = 100.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2
CWSSIM_WINDOW = 7
CWSSIM_K = 0.01
FSIM_T1 = 0.85
FSIM_T2 = 160.0

# Scharr derivative, normalized to unit total weight on one side.
_SCHARR_X = np.array([[-3.0, 0.0, 3.0], [-10.0, 0.0, 10.0], [-3.0, 0.0, 3.0]]) / 16.0
_SCHARR_Y = _SCHARR_X.T


def _pair(ref: np.ndarray, test: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if ref.shape != test.shape:
        raise ValueError(f"shape mismatch: ref {ref.shape} vs test {test.shape}")
    if ref.size == 0:
        raise ValueError("empty images")
    return ref.astype(np.float64, copy=False), test.astype(np.float64, copy=False)


def psnr(ref: np.ndarray, test: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB against a unit peak, capped at 100."""
    r, t = _pair(ref, test)
    mse = float(np.mean((r - t) ** 2))
    if mse == 0.0:
        return PSNR_CAP_DB
    return float(min(PSNR_CAP_DB, 10.0 * np.log10(1.0 / mse)))


def _luma_pair(ref: np.ndarray, test: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r, t = _pair(ref, test)
    return luma(r), luma(t)


def _filter_valid(img: np.ndarray, k1d: np.ndarray) -> np.ndarray:
    """Separable window filtering in float64, cropped to valid placements."""
    pad = k1d.size // 2
    out = ndimage.correlate1d(img, k1d, axis=0, mode="reflect")
    out = ndimage.correlate1d(out, k1d, axis=1, mode="reflect")
    return out[pad:-pad, pad:-pad]


def ssim(ref: np.ndarray, test: np.ndarray) -> float:
    """Mean structural similarity over 11x11 Gaussian (sigma 1.5) windows."""
    r, t = _luma_pair(ref, test)
    if min(r.shape) < SSIM_WINDOW:
        raise ValueError(f"images must be at least {SSIM_WINDOW} px per side, got {r.shape}")
    win = gaussian_kernel1d(SSIM_WINDOW, SSIM_SIGMA)
    mu_r = _filter_valid(r, win)
    mu_t = _filter_valid(t, win)
    var_r = _filter_valid(r * r, win) - mu_r**2
    var_t = _filter_valid(t * t, win) - mu_t**2
    cov = _filter_valid(r * t, win) - mu_r * mu_t
    num = (2.0 * mu_r * mu_t + SSIM_C1) * (2.0 * cov + SSIM_C2)
    den = (mu_r**2 + mu_t**2 + SSIM_C1) * (var_r + var_t + SSIM_C2)
    return float(np.mean(num / den))


def _box_sum_valid(arr: np.ndarray, size: int) -> np.ndarray:
    """Exact sliding-window sums ('valid' placement) via integral images."""
    pad = np.zeros((arr.shape[0] + 1, arr.shape[1] + 1), dtype=arr.dtype)
    np.cumsum(np.cumsum(arr, axis=0), axis=1, out=pad[1:, 1:])
    s = pad
    return (
        s[size:, size:] - s[:-size, size:] - s[size:, :-size] + s[:-size, :-size]
    )


def _cwssim_accumulate(bx: np.ndarray, by: np.ndarray) -> tuple[float, int]:
    """Sum of per-window scores and window count for one (S, H, W) stack."""
    total, count = 0.0, 0
    for cx, cy in zip(bx, by):
        cross = _box_sum_valid(cx * np.conj(cy), CWSSIM_WINDOW)
        ex = _box_sum_valid((cx * np.conj(cx)).real, CWSSIM_WINDOW)
        ey = _box_sum_valid((cy * np.conj(cy)).real, CWSSIM_WINDOW)
        score = (2.0 * np.abs(cross) + CWSSIM_K) / (ex + ey + CWSSIM_K)
        total += float(score.sum())
        count += score.size
    return total, count


def cw_ssim(ref: np.ndarray, test: np.ndarray, bank: LogGaborBank = DEFAULT_BANK) -> float:
    """Complex-wavelet SSIM over 7x7 windows of log-Gabor coefficients.

    Consistent phase shifts (small translations) barely move the score
    because only the magnitude of the windowed cross-correlation enters.
    """
    r, t = _luma_pair(ref, test)
    if min(r.shape) < CWSSIM_WINDOW:
        raise ValueError(f"images must be at least {CWSSIM_WINDOW} px per side, got {r.shape}")
    fr = sfft.fft2(r * 255.0)
    ft = sfft.fft2(t * 255.0)
    total, count = 0.0, 0
    for o in range(bank.orientations):
        bx = bank.respond_orientation(fr, o)
        by = bank.respond_orientation(ft, o)
        part, n = _cwssim_accumulate(bx, by)
        total += part
        count += n
    return float(total / count)


def _gradient_magnitude(img: np.ndarray) -> np.ndarray:
    gx = cv2.filter2D(img, -1, _SCHARR_X, borderType=cv2.BORDER_REFLECT_101)
    gy = cv2.filter2D(img, -1, _SCHARR_Y, borderType=cv2.BORDER_REFLECT_101)
    return np.hypot(gx, gy)


def fsim(ref: np.ndarray, test: np.ndarray, bank: LogGaborBank = DEFAULT_BANK) -> float:
    """Feature similarity: phase congruency + gradient, PC-weighted pooling."""
    r, t = _luma_pair(ref, test)
    r255, t255 = r * 255.0, t * 255.0
    h, w = r.shape
    data = bank.bank_data(h, w)
    fr, ft = sfft.fft2(r255), sfft.fft2(t255)
    energy_r = np.zeros((h, w))
    energy_t = np.zeros((h, w))
    an_r = np.zeros((h, w))
    an_t = np.zeros((h, w))
    for o in range(bank.orientations):
        consts = (data["scale0_energy"][o], data["sum_an2"][o], data["sum_ai_aj"][o])
        e, a = _orientation_energy(bank.respond_orientation(fr, o), 2.0, *consts)
        energy_r += e
        an_r += a
        e, a = _orientation_energy(bank.respond_orientation(ft, o), 2.0, *consts)
        energy_t += e
        an_t += a
    pc_r = energy_r / (an_r + 1e-8)
    pc_t = energy_t / (an_t + 1e-8)
    return _fsim_pool(pc_r, pc_t, _gradient_magnitude(r255), _gradient_magnitude(t255))


def _fsim_pool(pc_r, pc_t, g_r, g_t) -> float:
    s_pc = (2.0 * pc_r * pc_t + FSIM_T1) / (pc_r**2 + pc_t**2 + FSIM_T1)
    s_g = (2.0 * g_r * g_t + FSIM_T2) / (g_r**2 + g_t**2 + FSIM_T2)
    pcm = np.maximum(pc_r, pc_t)
    pcm_sum = float(pcm.sum())
    if pcm_sum <= 1e-12:
        return 1.0  # two featureless images: nothing to compare, call them alike
    return float((s_pc * s_g * pcm).sum() / pcm_sum)


@dataclass(frozen=True)
class IQReport:
    """One image pair's scores."""

    psnr: float
    ssim: float
    cw_ssim: float
    fsim: float

    def as_dict(self) -> dict:
        return {"psnr": self.psnr, "ssim": self.ssim, "cw_ssim": self.cw_ssim, "fsim": self.fsim}


def iq_suite(ref: np.ndarray, test: np.ndarray, bank: LogGaborBank = DEFAULT_BANK) -> IQReport:
    """All four metrics, computing the shared filter-bank responses once."""
    r, t = _luma_pair(ref, test)
    if min(r.shape) < SSIM_WINDOW:
        raise ValueError(f"images must be at least {SSIM_WINDOW} px per side, got {r.shape}")
    h, w = r.shape
    bank_data = bank.bank_data(h, w)
    fr, ft = sfft.fft2(r * 255.0), sfft.fft2(t * 255.0)
    energy_r = np.zeros((h, w))
    energy_t = np.zeros((h, w))
    an_r = np.zeros((h, w))
    an_t = np.zeros((h, w))
    cw_total, cw_count = 0.0, 0
    for o in range(bank.orientations):
        br = bank.respond_orientation(fr, o)
        bt = bank.respond_orientation(ft, o)
        consts = (
            bank_data["scale0_energy"][o],
            bank_data["sum_an2"][o],
            bank_data["sum_ai_aj"][o],
        )
        e, a = _orientation_energy(br, 2.0, *consts)
        energy_r += e
        an_r += a
        e, a = _orientation_energy(bt, 2.0, *consts)
        energy_t += e
        an_t += a
        part, n = _cwssim_accumulate(br, bt)
        cw_total += part
        cw_count += n
    pc_r = energy_r / (an_r + 1e-8)
    pc_t = energy_t / (an_t + 1e-8)
    fsim_val = _fsim_pool(pc_r, pc_t, _gradient_magnitude(r * 255.0), _gradient_magnitude(t * 255.0))
    return IQReport(
        psnr=psnr(ref, test),
        ssim=ssim(ref, test),
        cw_ssim=float(cw_total / cw_count),
        fsim=fsim_val,
    )
