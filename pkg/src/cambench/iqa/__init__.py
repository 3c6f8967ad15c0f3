"""Full-reference image-quality metrics and the shared log-Gabor engine."""

from .loggabor import DEFAULT_BANK, LogGaborBank, log_gabor_bank, phase_congruency
from .metrics import (
    CWSSIM_K,
    CWSSIM_WINDOW,
    FSIM_T1,
    FSIM_T2,
    PSNR_CAP_DB,
    SSIM_C1,
    SSIM_C2,
    SSIM_SIGMA,
    SSIM_WINDOW,
    IQReport,
    cw_ssim,
    fsim,
    iq_suite,
    psnr,
    ssim,
)

__all__ = [
    "CWSSIM_K",
    "CWSSIM_WINDOW",
    "DEFAULT_BANK",
    "FSIM_T1",
    "FSIM_T2",
    "IQReport",
    "LogGaborBank",
    "PSNR_CAP_DB",
    "SSIM_C1",
    "SSIM_C2",
    "SSIM_SIGMA",
    "SSIM_WINDOW",
    "cw_ssim",
    "fsim",
    "iq_suite",
    "log_gabor_bank",
    "phase_congruency",
    "psnr",
    "ssim",
]
