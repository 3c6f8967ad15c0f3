"""Weather degradations: fog, rain, snow.  All three need per-pixel depth.

The shared optical model is single-scattering attenuation toward an
atmospheric light A:

    out = I * exp(-beta * d) + A * (1 - exp(-beta * d))

with extinction beta (1/m) and distance d (m).  Meteorological visibility is
V = ln(20) / beta (5% contrast threshold).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..imgcore import clip01, rng_from_seed, validate_image

FOG_BETA = {1: 0.005, 2: 0.01, 3: 0.02}
ATMOSPHERE_GRAY = (0.9, 0.9, 0.9)

# Snow flakes brighten toward a slightly blue near-white.
SNOW_BETA = {1: 0.002, 2: 0.006, 3: 0.012}
SNOW_ATMOSPHERE = (0.94, 0.96, 1.00)
SNOW_FLAKES = {
    1: dict(density=8.0e-4, radius=(0.6, 1.6), elong=(1.0, 1.4), label="small"),
    2: dict(density=4.5e-4, radius=(1.5, 3.0), elong=(1.2, 1.9), label="medium"),
    3: dict(density=2.5e-4, radius=(2.5, 5.5), elong=(1.5, 3.0), label="large"),
}
_FLAKE_OPACITY = (0.35, 0.95)
_FALL_SPREAD_DEG = 25.0

RAIN_RATE = {1: 50.0, 2: 100.0, 3: 200.0}
RAIN_OPACITY = 0.7
# Streak count k*rate*W*H/1e6; k calibrated so severity 3 covers about 2% of
# a 1024x512 frame.
RAIN_STREAKS_PER_UNIT = 2.0
RAIN_BETA_PER_RATE = 0.001 / 50.0
RAIN_WIND_DEG = 10.0
_RAIN_LENGTH_PER_RATE = 0.12


def visibility_from_beta(beta: float) -> float:
    """Meteorological visibility in metres for an extinction coefficient."""
    if beta <= 0:
        raise ValueError(f"extinction must be > 0, got {beta}")
    return math.log(20.0) / beta


def _check_pair(img: np.ndarray, depth: np.ndarray) -> None:
    validate_image(img)
    if depth.ndim != 2 or depth.shape != img.shape[:2]:
        raise ValueError(f"depth shape {depth.shape} does not match image {img.shape[:2]}")
    if np.isnan(depth).any() or (depth <= 0).any():
        raise ValueError("depth values must be > 0 (or +inf)")


def _atmosphere(img: np.ndarray, a: tuple[float, float, float]) -> np.ndarray:
    vec = np.asarray(a, dtype=np.float32)
    if img.shape[2] == 1:
        vec = vec.mean(keepdims=True)
    return vec.reshape(1, 1, -1)


def attenuate(img: np.ndarray, depth: np.ndarray, beta: float, atmosphere=ATMOSPHERE_GRAY) -> np.ndarray:
    """Apply the scattering model.  beta = 0 is the exact identity."""
    _check_pair(img, depth)
    if beta < 0:
        raise ValueError(f"extinction must be >= 0, got {beta}")
    if beta == 0:
        return img.astype(np.float32, copy=True)
    t = np.exp(-beta * depth.astype(np.float32))[:, :, None]
    a = _atmosphere(img, atmosphere)
    return clip01(img * t + a * (1.0 - t))


def fog(
    img: np.ndarray,
    depth: np.ndarray,
    severity: int,
    beta: float | None = None,
    atmosphere=ATMOSPHERE_GRAY,
) -> np.ndarray:
    """Homogeneous fog at the severity's extinction coefficient."""
    b = FOG_BETA[severity] if beta is None else float(beta)
    return attenuate(img, depth, b, atmosphere)


@dataclass(frozen=True)
class SnowMask:
    """Procedural flake opacity field z in [0, 1] plus generation metadata."""

    z: np.ndarray
    count: int
    size_class: str
    direction_deg: float


def snow_mask(
    width: int,
    height: int,
    severity: int,
    seed: int,
    density_scale: float = 1.0,
) -> SnowMask:
    """Sample a flake field: soft ellipses sharing one fall direction.

    Severity moves the distribution from many small flakes to fewer, larger,
    motion-elongated ones; expected coverage still grows with severity.
    """
    cfg = SNOW_FLAKES[severity]
    rng = rng_from_seed(seed)
    direction = float(rng.uniform(-_FALL_SPREAD_DEG, _FALL_SPREAD_DEG))
    count = int(rng.poisson(cfg["density"] * width * height * density_scale))
    z = np.zeros((height, width), dtype=np.float32)
    for _ in range(count):
        cy = rng.uniform(0, height)
        cx = rng.uniform(0, width)
        r = rng.uniform(*cfg["radius"])
        e = rng.uniform(*cfg["elong"])
        op = rng.uniform(*_FLAKE_OPACITY)
        ang = np.deg2rad(90.0 - direction + rng.normal(0.0, 5.0))
        a, b = r * e, r
        half = int(np.ceil(a)) + 1
        y0, y1 = max(0, int(cy) - half), min(height, int(cy) + half + 1)
        x0, x1 = max(0, int(cx) - half), min(width, int(cx) + half + 1)
        if y0 >= y1 or x0 >= x1:
            continue
        yy, xx = np.mgrid[y0:y1, x0:x1].astype(np.float32)
        dy, dx = yy - cy, xx - cx
        u = dx * np.cos(ang) + dy * np.sin(ang)
        v = -dx * np.sin(ang) + dy * np.cos(ang)
        rho2 = (u / a) ** 2 + (v / b) ** 2
        flake = op * np.maximum(0.0, 1.0 - rho2) ** 1.5
        np.maximum(z[y0:y1, x0:x1], flake.astype(np.float32), out=z[y0:y1, x0:x1])
    return SnowMask(z=z, count=count, size_class=cfg["label"], direction_deg=direction)


def composite_snow(img: np.ndarray, z: np.ndarray, atmosphere=SNOW_ATMOSPHERE) -> np.ndarray:
    """Blend flakes over the image: out = z*A + I*(1 - z)."""
    validate_image(img)
    if z.shape != img.shape[:2]:
        raise ValueError(f"mask shape {z.shape} does not match image {img.shape[:2]}")
    a = _atmosphere(img, atmosphere)
    zc = z[:, :, None].astype(np.float32)
    return clip01(zc * a + img * (1.0 - zc))


def snow(
    img: np.ndarray,
    depth: np.ndarray,
    severity: int,
    seed: int,
    beta: float | None = None,
    density_scale: float = 1.0,
) -> np.ndarray:
    """Snowfall: flake compositing followed by the atmospheric veil.

    The veil reuses the scattering model with the snow atmosphere, which
    washes distant content toward near-white the way heavy snowfall reads.
    """
    flaked = composite_snow(img, snow_mask(img.shape[1], img.shape[0], severity, seed, density_scale).z)
    b = SNOW_BETA[severity] if beta is None else float(beta)
    return attenuate(flaked, depth, b, SNOW_ATMOSPHERE)


def streak_count(rate: float, width: int, height: int) -> int:
    """Deterministic rain streak budget for a frame."""
    return int(round(RAIN_STREAKS_PER_UNIT * rate * width * height / 1e6))


def rain(
    img: np.ndarray,
    depth: np.ndarray,
    severity: int,
    seed: int,
    rate: float | None = None,
) -> np.ndarray:
    """Rain streaks plus a rate-scaled veil.

    Streaks share a per-image wind angle (within +/-10 degrees of vertical,
    small per-streak jitter), have length proportional to the rain rate and
    a 1-3 px Gaussian cross-profile, and are composited toward the
    atmospheric light at fixed opacity.  rate = 0 is the exact identity.
    """
    _check_pair(img, depth)
    r = RAIN_RATE[severity] if rate is None else float(rate)
    if r < 0:
        raise ValueError(f"rain rate must be >= 0, got {r}")
    h, w = img.shape[:2]
    rng = rng_from_seed(seed)
    n = streak_count(r, w, h)
    if n == 0 and r == 0:
        return img.astype(np.float32, copy=True)

    wind = rng.uniform(-RAIN_WIND_DEG, RAIN_WIND_DEG)
    base_len = _RAIN_LENGTH_PER_RATE * r
    z = np.zeros((h, w), dtype=np.float32)
    for _ in range(n):
        cy = rng.uniform(0, h)
        cx = rng.uniform(0, w)
        length = base_len * rng.uniform(0.7, 1.3)
        width_px = int(rng.integers(1, 4))
        ang = np.deg2rad(90.0 - (wind + rng.normal(0.0, 2.0)))
        strength = rng.uniform(0.6, 1.0)
        sig = width_px / 2.0
        half = length / 2.0
        ux, uy = np.cos(ang), np.sin(ang)
        pad = int(np.ceil(half + 3 * sig)) + 1
        y0, y1 = max(0, int(cy) - pad), min(h, int(cy) + pad + 1)
        x0, x1 = max(0, int(cx) - pad), min(w, int(cx) + pad + 1)
        if y0 >= y1 or x0 >= x1:
            continue
        yy, xx = np.mgrid[y0:y1, x0:x1].astype(np.float32)
        du = (xx - cx) * ux + (yy - cy) * uy
        dv = -(xx - cx) * uy + (yy - cy) * ux
        over = np.maximum(0.0, np.abs(du) - half)
        profile = strength * np.exp(-(dv**2) / (2.0 * sig**2)) * np.exp(-(over**2) / 2.0)
        np.maximum(z[y0:y1, x0:x1], profile.astype(np.float32), out=z[y0:y1, x0:x1])

    a = _atmosphere(img, ATMOSPHERE_GRAY)
    zc = (RAIN_OPACITY * z)[:, :, None]
    streaked = clip01(img * (1.0 - zc) + a * zc)
    return attenuate(streaked, depth, RAIN_BETA_PER_RATE * r, ATMOSPHERE_GRAY)
