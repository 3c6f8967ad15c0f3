"""Degradation operators and the factor dispatcher.

Every factor in `cambench.imgcore.FACTOR_NAMES` has an operator here;
`apply_degradation` routes a DegradationSpec to it with a per-factor stream
seed so distinct factors never share randomness.
"""

from __future__ import annotations

import numpy as np

from ..errors import CatalogError
from ..imgcore import (
    FACTOR_NAMES,
    WEATHER_FACTORS,
    DegradationSpec,
    clip01,
    derive_seed,
    validate_image,
)
from . import blur as _blur
from . import isp as _isp
from . import lens as _lens
from . import light as _light
from . import sensor as _sensor
from . import weather as _weather
from .blur import BLUR_KINDS, DEFOCUS, MOTION, blur
from .isp import JPEG_QUALITY, SHARPEN_ALPHA, jpeg_cycle, no_bayer, no_demosaic, oversharpen
from .lens import (
    DROPLET_COUNT,
    MUD_COLOR,
    MUD_INTENSITY,
    MUD_KERNEL,
    lens_droplets,
    mud_mask,
    mud_occlusion,
)
from .light import (
    BRIGHTNESS_VALUE,
    LOWLIGHT_ALPHA,
    brighten_stronglight,
    darken_lowlight,
    synth_extremelight,
    synth_nightlight,
)
from .sensor import (
    GAUSSIAN_SIGMA,
    IMPULSE_FRACTION,
    NOISE_KINDS,
    POISSON_LAMBDA,
    UNIFORM_SIGMA,
    add_noise,
    noise_field,
)
from .weather import (
    ATMOSPHERE_GRAY,
    FOG_BETA,
    RAIN_RATE,
    SNOW_ATMOSPHERE,
    SNOW_BETA,
    SnowMask,
    attenuate,
    composite_snow,
    fog,
    rain,
    snow,
    snow_mask,
    streak_count,
    visibility_from_beta,
)

# Factors whose reference renderings came from learned or manual pipelines;
# these operators are procedural stand-ins and are flagged as surrogates in
# run manifests.
SURROGATE_FACTORS = frozenset(
    {"low_light", "night_light", "extreme_light", "rain", "snow", "mud", "droplets"}
)

# factor -> (needs_depth, needs_seed, callable(img, depth, severity, seed, **overrides))
_HANDLERS = {
    "low_light": lambda img, d, s, r, **kw: darken_lowlight(img, s, **kw),
    "night_light": lambda img, d, s, r, **kw: synth_nightlight(img, s, r, **kw),
    "extreme_light": lambda img, d, s, r, **kw: synth_extremelight(img, s, r, **kw),
    "strong_light": lambda img, d, s, r, **kw: brighten_stronglight(img, s, **kw),
    "rain": lambda img, d, s, r, **kw: rain(img, d, s, r, **kw),
    "fog": lambda img, d, s, r, **kw: fog(img, d, s, **kw),
    "snow": lambda img, d, s, r, **kw: snow(img, d, s, r, **kw),
    "mud": lambda img, d, s, r, **kw: mud_occlusion(img, s, r, **kw),
    "droplets": lambda img, d, s, r, **kw: lens_droplets(img, s, r, **kw),
    "jpeg": lambda img, d, s, r, **kw: jpeg_cycle(img, s, **kw),
    "oversharpen": lambda img, d, s, r, **kw: oversharpen(img, s, **kw),
    "no_demosaic": lambda img, d, s, r, **kw: no_demosaic(img, **kw),
    "no_bayer": lambda img, d, s, r, **kw: no_bayer(img, **kw),
    "gaussian_noise": lambda img, d, s, r, **kw: add_noise(img, "gaussian", s, r, **kw),
    "uniform_noise": lambda img, d, s, r, **kw: add_noise(img, "uniform", s, r, **kw),
    "impulse_noise": lambda img, d, s, r, **kw: add_noise(img, "impulse", s, r, **kw),
    "poisson_noise": lambda img, d, s, r, **kw: add_noise(img, "poisson", s, r, **kw),
    "defocus_blur": lambda img, d, s, r, **kw: blur(img, "defocus", s, r, **kw),
    "motion_blur": lambda img, d, s, r, **kw: blur(img, "motion", s, r, **kw),
}

assert set(_HANDLERS) == set(FACTOR_NAMES)


def stream_seed(seed: int, factor: str, severity: int) -> int:
    """Operator stream seed for one (factor, severity) application.

    Motion blur omits the severity field: its only randomness is the blur
    direction, and a direction that drifted with severity would break the
    quality-vs-severity ordering the corpus relies on.
    """
    sev_field = 0 if factor == "motion_blur" else severity
    return derive_seed(seed, "", factor, sev_field)


def apply_degradation(
    img: np.ndarray, depth: np.ndarray | None, spec: DegradationSpec
) -> np.ndarray:
    """Apply one degradation request to an image.

    The operator stream seed is re-derived from (spec.seed, factor, severity)
    so distinct factors never share a stream even under one run seed.  Same
    spec in, bit-identical image out.
    """
    validate_image(img)
    if spec.factor not in _HANDLERS:
        raise CatalogError(f"unknown factor {spec.factor!r}")
    if spec.factor in WEATHER_FACTORS and depth is None:
        raise ValueError(f"factor {spec.factor!r} requires a depth map")
    op_seed = stream_seed(spec.seed, spec.factor, spec.severity)
    out = _HANDLERS[spec.factor](img, depth, spec.severity, op_seed, **spec.overrides)
    if out.shape[:2] != img.shape[:2]:
        raise AssertionError(f"operator changed spatial dims: {img.shape} -> {out.shape}")
    return clip01(np.asarray(out, dtype=np.float32))


def describe_factor(factor: str, severity: int) -> dict:
    """Effective parameter record for a (factor, severity) pair.

    These are the values a manifest needs to reconstruct a run: frozen
    severity constants plus the native catalog level where the internal 1-3
    scale maps onto a wider ladder.
    """
    if factor not in FACTOR_NAMES:
        raise CatalogError(f"unknown factor {factor!r}")
    p: dict = {}
    if factor == "low_light":
        p = {"alpha": LOWLIGHT_ALPHA[severity], "iterations": _light.LOWLIGHT_ITERATIONS}
    elif factor == "night_light":
        p = {
            "alpha": LOWLIGHT_ALPHA[severity] * _light.NIGHT_DARKEN_SCALE,
            "sources": _light.NIGHT_SOURCES[severity],
        }
    elif factor == "extreme_light":
        p = {
            "alpha": LOWLIGHT_ALPHA[severity],
            "sources": _light.NIGHT_SOURCES[severity],
        }
    elif factor == "strong_light":
        p = {
            "value_add": BRIGHTNESS_VALUE[severity],
            "native_level": _light.BRIGHTNESS_NATIVE_LEVEL[severity],
        }
    elif factor == "fog":
        p = {
            "beta": FOG_BETA[severity],
            "visibility_m": visibility_from_beta(FOG_BETA[severity]),
            "atmosphere": list(ATMOSPHERE_GRAY),
        }
    elif factor == "rain":
        p = {
            "rate_mm_hr": RAIN_RATE[severity],
            "veil_beta": _weather.RAIN_BETA_PER_RATE * RAIN_RATE[severity],
            "opacity": _weather.RAIN_OPACITY,
        }
    elif factor == "snow":
        cfg = _weather.SNOW_FLAKES[severity]
        p = {
            "beta": SNOW_BETA[severity],
            "atmosphere": list(SNOW_ATMOSPHERE),
            "flake_class": cfg["label"],
            "flake_density": cfg["density"],
        }
    elif factor == "mud":
        p = {
            "kernel_px": MUD_KERNEL[severity],
            "intensity": MUD_INTENSITY,
            "colour": list(MUD_COLOR),
        }
    elif factor == "droplets":
        p = {
            "count": DROPLET_COUNT[severity],
            "native_level": _lens.DROPLET_NATIVE_LEVEL[severity],
            "magnify": _lens.DROPLET_MAGNIFY,
        }
    elif factor == "jpeg":
        p = {"quality": JPEG_QUALITY[severity]}
    elif factor == "oversharpen":
        p = {"alpha": SHARPEN_ALPHA[severity], "lightness": _isp.SHARPEN_LIGHTNESS}
    elif factor == "no_demosaic":
        p = {"pattern": "RGGB"}
    elif factor == "no_bayer":
        p = {"luma_weights": [0.2989, 0.5870, 0.1140]}
    elif factor == "gaussian_noise":
        p = {"sigma": GAUSSIAN_SIGMA[severity], "native_level": _sensor.NOISE_NATIVE_LEVEL[severity]}
    elif factor == "uniform_noise":
        p = {"sigma": UNIFORM_SIGMA[severity], "native_level": _sensor.NOISE_NATIVE_LEVEL[severity]}
    elif factor == "impulse_noise":
        p = {
            "fraction": IMPULSE_FRACTION[severity],
            "native_level": _sensor.NOISE_NATIVE_LEVEL[severity],
        }
    elif factor == "poisson_noise":
        p = {"lam": POISSON_LAMBDA[severity], "native_level": _sensor.NOISE_NATIVE_LEVEL[severity]}
    elif factor == "defocus_blur":
        radius, edge = DEFOCUS[severity]
        p = {"radius": radius, "edge_sigma": edge, "native_level": _blur.BLUR_NATIVE_LEVEL[severity]}
    elif factor == "motion_blur":
        length, sigma = MOTION[severity]
        p = {"length": length, "sigma": sigma, "native_level": _blur.BLUR_NATIVE_LEVEL[severity]}
    p["surrogate"] = factor in SURROGATE_FACTORS
    return p


__all__ = [
    "SURROGATE_FACTORS",
    "SnowMask",
    "add_noise",
    "apply_degradation",
    "attenuate",
    "blur",
    "brighten_stronglight",
    "composite_snow",
    "darken_lowlight",
    "describe_factor",
    "fog",
    "jpeg_cycle",
    "lens_droplets",
    "mud_mask",
    "mud_occlusion",
    "no_bayer",
    "no_demosaic",
    "noise_field",
    "oversharpen",
    "rain",
    "snow",
    "snow_mask",
    "streak_count",
    "stream_seed",
    "synth_extremelight",
    "synth_nightlight",
    "visibility_from_beta",
]
