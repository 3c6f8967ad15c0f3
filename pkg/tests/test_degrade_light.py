"""Illumination degradations: darkening recurrence, glare synthesis, brightening."""

import numpy as np
import pytest

from cambench.degrade import (
    LOWLIGHT_ALPHA,
    brighten_stronglight,
    darken_lowlight,
    synth_extremelight,
    synth_nightlight,
)
from cambench.imgcore import luma


def _recurrence(v: float, alpha: float, n: int = 8) -> float:
    for _ in range(n):
        v = v + alpha * v * (1.0 - v)
    return v


def test_darken_matches_scalar_recurrence():
    # constant mid-gray stays below the highlight threshold, so the output
    # is the recurrence value exactly
    img = np.full((8, 8, 3), 0.5, np.float32)
    for severity, alpha in LOWLIGHT_ALPHA.items():
        out = darken_lowlight(img, severity)
        want = _recurrence(0.5, alpha)
        np.testing.assert_allclose(out, np.float32(want), atol=1e-6)


def test_darken_fixed_points():
    img = np.zeros((4, 4, 3), np.float32)
    img[:2] = 1.0
    for severity in (1, 2, 3):
        out = darken_lowlight(img, severity)
        np.testing.assert_array_equal(out[2:], 0.0)
        # saturated pixels are protected by the highlight blend
        assert float(out[:2].min()) >= 0.96


def test_darken_monotone_in_severity(small_scene):
    lumas = [float(luma(darken_lowlight(small_scene, s)).mean()) for s in (1, 2, 3)]
    assert lumas[0] > lumas[1] > lumas[2]
    assert lumas[0] < float(luma(small_scene).mean())


def test_darken_alpha_override():
    img = np.full((4, 4, 3), 0.5, np.float32)
    out = darken_lowlight(img, 1, alpha=0.0)
    np.testing.assert_array_equal(out, img)


def test_nightlight_saturated_cores_and_tint(small_scene):
    out = synth_nightlight(small_scene, 3, seed=5)
    # glare cores drive every channel into clipping somewhere
    saturated = np.all(out >= 0.999, axis=2)
    assert saturated.any()
    assert out.shape == small_scene.shape and out.dtype == np.float32
    # on black input the output is pure glare, so the warm tint orders channels
    glare = synth_nightlight(np.zeros((96, 128, 3), np.float32), 3, seed=5)
    assert float(glare[:, :, 0].sum()) > float(glare[:, :, 1].sum()) > float(glare[:, :, 2].sum())


def test_nightlight_darker_than_input_overall(scenes):
    # source count is fixed per severity, so judge brightness at full frame size
    img = scenes[0]
    out = synth_nightlight(img, 2, seed=9)
    assert float(luma(out).mean()) < float(luma(img).mean())


def test_nightlight_seed_determinism(small_scene):
    a = synth_nightlight(small_scene, 2, seed=11)
    b = synth_nightlight(small_scene, 2, seed=11)
    c = synth_nightlight(small_scene, 2, seed=12)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_extreme_is_darker_than_night(small_scene):
    for s in (1, 2, 3):
        night = synth_nightlight(small_scene, s, seed=3)
        extreme = synth_extremelight(small_scene, s, seed=3)
        assert float(luma(extreme).mean()) < float(luma(night).mean())


def test_stronglight_black_becomes_half_gray():
    img = np.zeros((6, 6, 3), np.float32)
    out = brighten_stronglight(img, 3)
    np.testing.assert_allclose(out, 0.5, atol=1e-6)


def test_stronglight_saturated_stays(small_scene):
    img = np.ones((4, 4, 3), np.float32)
    for s in (1, 2, 3):
        np.testing.assert_allclose(brighten_stronglight(img, s), 1.0, atol=1e-6)
    lumas = [float(luma(brighten_stronglight(small_scene, s)).mean()) for s in (1, 2, 3)]
    assert lumas[0] < lumas[1] < lumas[2]


def test_stronglight_value_override(small_scene):
    out = brighten_stronglight(small_scene, 1, value=0.0)
    np.testing.assert_allclose(out, small_scene, atol=2e-7)


@pytest.mark.parametrize("severity", [0, 4])
def test_bad_severity_rejected(severity, small_scene):
    with pytest.raises((KeyError, ValueError)):
        darken_lowlight(small_scene, severity)
