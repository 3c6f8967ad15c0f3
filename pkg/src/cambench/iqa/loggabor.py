"""Frequency-domain log-Gabor filter bank and phase congruency.

One bank serves both the complex-wavelet similarity metric and the feature
similarity metric.  Filters are built in the Fourier domain: a log-Gaussian
radial profile (DC-free by construction) times a Gaussian angular spread,
under a Butterworth low-pass that kills corner frequencies.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sfft

_EPS = 1e-8


class LogGaborBank:
    """A fixed log-Gabor filter bank; responses are complex (S, O, H, W).

    Defaults: 4 scales x 6 orientations, shortest wavelength 6 px, octave
    spacing, sigma_f = 0.55, angular spacing/spread ratio 1.2.
    """

    def __init__(
        self,
        scales: int = 4,
        orientations: int = 6,
        min_wavelength: float = 6.0,
        mult: float = 2.0,
        sigma_f: float = 0.55,
        delta_theta: float = 1.2,
        cutoff: float = 0.45,
        order: int = 15,
    ):
        if scales < 1 or orientations < 1:
            raise ValueError("bank needs at least one scale and one orientation")
        self.scales = scales
        self.orientations = orientations
        self.min_wavelength = min_wavelength
        self.mult = mult
        self.sigma_f = sigma_f
        self.sigma_theta = np.pi / orientations / delta_theta
        self.cutoff = cutoff
        self.order = order
        self._cache: dict = {}

    def _build(self, h: int, w: int) -> dict:
        fy = np.fft.fftfreq(h)
        fx = np.fft.fftfreq(w)
        gy, gx = np.meshgrid(fy, fx, indexing="ij")
        radius = np.hypot(gx, gy)
        lowpass = 1.0 / (1.0 + (radius / self.cutoff) ** (2 * self.order))
        radius[0, 0] = 1.0
        log_rad = np.log(radius)
        theta = np.arctan2(-gy, gx)
        sin_t, cos_t = np.sin(theta), np.cos(theta)

        log_sigma = np.log(self.sigma_f)
        radial = np.empty((self.scales, h, w))
        for s in range(self.scales):
            f0 = 1.0 / (self.min_wavelength * self.mult**s)
            radial[s] = np.exp(-((log_rad - np.log(f0)) ** 2) / (2.0 * log_sigma**2))
            radial[s] *= lowpass
            radial[s, 0, 0] = 0.0

        spread = np.empty((self.orientations, h, w))
        for o in range(self.orientations):
            angl = o * np.pi / self.orientations
            ds = sin_t * np.cos(angl) - cos_t * np.sin(angl)
            dc = cos_t * np.cos(angl) + sin_t * np.sin(angl)
            dtheta = np.abs(np.arctan2(ds, dc))
            spread[o] = np.exp(-(dtheta**2) / (2.0 * self.sigma_theta**2))

        filters = radial[:, None] * spread[None, :]  # (S, O, H, W)

        # Noise-geometry constants used by the phase-congruency floor: the
        # spatial energy of each orientation's filters and their cross terms.
        scale0_energy = (filters[0] ** 2).sum(axis=(1, 2))  # (O,)
        fifft = sfft.ifft2(filters, axes=(-2, -1)).real * np.sqrt(h * w)
        sum_an2 = (fifft**2).sum(axis=(0, 2, 3))  # (O,)
        sum_ai_aj = np.zeros(self.orientations)
        for s in range(self.scales - 1):
            sum_ai_aj += (fifft[s, :, None] * fifft[s + 1 :].transpose(1, 0, 2, 3)).sum(
                axis=(1, 2, 3)
            )
        return {
            "filters": filters,
            "scale0_energy": scale0_energy,
            "sum_an2": sum_an2,
            "sum_ai_aj": sum_ai_aj,
        }

    def bank_data(self, h: int, w: int) -> dict:
        key = (h, w)
        if key not in self._cache:
            self._cache.clear()  # hold one shape at a time; filters are large
            self._cache[key] = self._build(h, w)
        return self._cache[key]

    def filters(self, h: int, w: int) -> np.ndarray:
        return self.bank_data(h, w)["filters"]

    def respond(self, img: np.ndarray) -> np.ndarray:
        """Complex band responses of a 2-D image, shape (S, O, H, W)."""
        if img.ndim != 2:
            raise ValueError(f"bank input must be 2-D luma, got shape {img.shape}")
        h, w = img.shape
        spectrum = sfft.fft2(img.astype(np.float64))
        return sfft.ifft2(self.filters(h, w) * spectrum, axes=(-2, -1))

    def respond_orientation(self, spectrum: np.ndarray, o: int) -> np.ndarray:
        """Responses (S, H, W) of one orientation given a precomputed fft2."""
        h, w = spectrum.shape
        return sfft.ifft2(self.filters(h, w)[:, o] * spectrum, axes=(-2, -1))


DEFAULT_BANK = LogGaborBank()


def log_gabor_bank(img: np.ndarray, bank: LogGaborBank = DEFAULT_BANK) -> np.ndarray:
    """Band-pass decompose a 2-D image; returns complex (S, O, H, W)."""
    return bank.respond(img)


def _orientation_energy(bands: np.ndarray, noise_k: float, scale0_energy, sum_an2, sum_ai_aj):
    """PC2 energy for one orientation's (S, H, W) responses, noise-floored."""
    even, odd = bands.real, bands.imag
    an = np.abs(bands)
    sum_e, sum_o = even.sum(axis=0), odd.sum(axis=0)
    x_energy = np.hypot(sum_e, sum_o) + _EPS
    mean_e, mean_o = sum_e / x_energy, sum_o / x_energy
    energy = (even * mean_e + odd * mean_o - np.abs(even * mean_o - odd * mean_e)).sum(axis=0)

    # Rayleigh noise estimate from the smallest-scale response median.
    median_e2n = np.median(an[0] ** 2)
    mean_e2n = -median_e2n / np.log(0.5)
    noise_power = mean_e2n / scale0_energy
    noise_energy2 = 2.0 * noise_power * sum_an2 + 4.0 * noise_power * sum_ai_aj
    tau = np.sqrt(noise_energy2 / 2.0)
    noise_mean = tau * np.sqrt(np.pi / 2.0)
    noise_sigma = np.sqrt((2.0 - np.pi / 2.0) * tau**2)
    t = (noise_mean + noise_k * noise_sigma) / 1.7
    return np.maximum(energy - t, 0.0), an.sum(axis=0)


def phase_congruency(
    img: np.ndarray, bank: LogGaborBank = DEFAULT_BANK, noise_k: float = 2.0
) -> np.ndarray:
    """Phase congruency map in [0, 1] (PC2 formulation, noise-floored)."""
    if img.ndim != 2:
        raise ValueError(f"phase congruency input must be 2-D, got {img.shape}")
    h, w = img.shape
    data = bank.bank_data(h, w)
    spectrum = sfft.fft2(img.astype(np.float64))
    total_energy = np.zeros((h, w))
    total_an = np.zeros((h, w))
    for o in range(bank.orientations):
        bands = bank.respond_orientation(spectrum, o)
        energy, an = _orientation_energy(
            bands, noise_k, data["scale0_energy"][o], data["sum_an2"][o], data["sum_ai_aj"][o]
        )
        total_energy += energy
        total_an += an
    return total_energy / (total_an + _EPS)
