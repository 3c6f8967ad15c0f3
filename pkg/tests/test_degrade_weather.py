"""Weather degradations: attenuation physics, snow compositing, rain streaks."""

import numpy as np
import pytest

from cambench.degrade import (
    ATMOSPHERE_GRAY,
    FOG_BETA,
    RAIN_RATE,
    SNOW_ATMOSPHERE,
    SNOW_BETA,
    attenuate,
    composite_snow,
    fog,
    rain,
    snow,
    snow_mask,
    streak_count,
    visibility_from_beta,
)


def _flat_depth(shape, metres):
    return np.full(shape[:2], float(metres), np.float32)


# ---------------------------------------------------------------------------
# attenuation
# ---------------------------------------------------------------------------


def test_visibility_from_beta_values():
    # ln(20)/beta, the 5%-contrast convention
    assert visibility_from_beta(0.005) == pytest.approx(np.log(20.0) / 0.005, abs=1e-9)
    got = [round(visibility_from_beta(b), 1) for b in (0.005, 0.01, 0.02)]
    assert got == [599.1, 299.6, 149.8]
    with pytest.raises(ValueError):
        visibility_from_beta(0.0)
    with pytest.raises(ValueError):
        visibility_from_beta(-0.1)


def test_attenuate_pixel_oracle(small_scene):
    depth = _flat_depth(small_scene.shape, 80.0)
    out = attenuate(small_scene, depth, 0.01, atmosphere=ATMOSPHERE_GRAY)
    t = np.exp(-0.01 * 80.0)
    want = small_scene.astype(np.float64) * t + np.asarray(ATMOSPHERE_GRAY) * (1.0 - t)
    np.testing.assert_allclose(out, want, atol=1e-6)


def test_attenuate_beta_zero_identity(small_scene):
    depth = _flat_depth(small_scene.shape, 123.0)
    out = attenuate(small_scene, depth, 0.0)
    assert np.max(np.abs(out - small_scene)) == 0.0
    with pytest.raises(ValueError):
        attenuate(small_scene, depth, -0.01)


def test_attenuate_far_pixels_reach_atmosphere(small_scene):
    depth = _flat_depth(small_scene.shape, 1e6)
    for severity, beta in FOG_BETA.items():
        out = fog(small_scene, depth, severity)
        for c in range(3):
            assert np.max(np.abs(out[:, :, c] - ATMOSPHERE_GRAY[c])) < 1e-3


def test_attenuate_monotone_in_depth(small_scene):
    # darker-than-atmosphere pixels brighten toward A as depth grows
    img = np.full((8, 8, 3), 0.2, np.float32)
    outs = [attenuate(img, _flat_depth(img.shape, d), 0.01)[0, 0, 0] for d in (10, 50, 200)]
    assert outs[0] < outs[1] < outs[2] < 0.9 + 1e-6


def test_attenuate_validates_depth(small_scene):
    with pytest.raises(ValueError):
        attenuate(small_scene, np.full((4, 4), 10.0, np.float32), 0.01)
    bad = _flat_depth(small_scene.shape, 10.0)
    bad[0, 0] = -1.0
    with pytest.raises(ValueError):
        attenuate(small_scene, bad, 0.01)
    bad[0, 0] = np.nan
    with pytest.raises(ValueError):
        attenuate(small_scene, bad, 0.01)


def test_fog_severity_monotone(small_scene):
    depth = _flat_depth(small_scene.shape, 150.0)
    mses = []
    for s in (1, 2, 3):
        out = fog(small_scene, depth, s)
        mses.append(float(np.mean((out - small_scene) ** 2)))
    assert mses[0] < mses[1] < mses[2]


def test_fog_infinite_depth_allowed(small_scene):
    depth = _flat_depth(small_scene.shape, 1.0)
    depth[0, 0] = np.inf
    out = fog(small_scene, depth, 2)
    np.testing.assert_allclose(out[0, 0], ATMOSPHERE_GRAY, atol=1e-6)


# ---------------------------------------------------------------------------
# snow
# ---------------------------------------------------------------------------


def test_snow_mask_range_and_determinism():
    a = snow_mask(128, 96, 2, seed=7)
    b = snow_mask(128, 96, 2, seed=7)
    np.testing.assert_array_equal(a.z, b.z)
    assert a.z.shape == (96, 128)
    assert float(a.z.min()) >= 0.0 and float(a.z.max()) <= 1.0
    assert 0.0 < float(a.z.mean()) < 0.5  # sparse occlusion, not a whiteout
    assert a.count > 0
    assert abs(a.direction_deg) <= 25.0


def test_snow_mask_density_scale_zero_is_empty():
    m = snow_mask(64, 64, 1, seed=3, density_scale=0.0)
    assert m.count == 0
    np.testing.assert_array_equal(m.z, 0.0)


def test_composite_formula_oracle(small_scene):
    z = snow_mask(small_scene.shape[1], small_scene.shape[0], 2, seed=4).z
    out = composite_snow(small_scene, z)
    a = np.asarray(SNOW_ATMOSPHERE)
    want = z[:, :, None] * a + small_scene.astype(np.float64) * (1.0 - z[:, :, None])
    np.testing.assert_allclose(out, want, atol=1e-6)


def test_snow_identity_when_empty_and_clear(small_scene):
    depth = _flat_depth(small_scene.shape, 40.0)
    out = snow(small_scene, depth, 1, seed=2, beta=0.0, density_scale=0.0)
    assert np.max(np.abs(out - small_scene)) == 0.0


def test_snow_severity_monotone(scenes, depths):
    img, depth = scenes[1], depths[1]
    mses = [float(np.mean((snow(img, depth, s, seed=8) - img) ** 2)) for s in (1, 2, 3)]
    assert mses[0] < mses[1] < mses[2]
    assert SNOW_BETA[1] < SNOW_BETA[2] < SNOW_BETA[3]


# ---------------------------------------------------------------------------
# rain
# ---------------------------------------------------------------------------


def test_streak_count_formula():
    # round(2.0 * rate * W * H / 1e6)
    assert streak_count(50.0, 1024, 512) == round(2.0 * 50.0 * 1024 * 512 / 1e6)
    assert streak_count(0.0, 1024, 512) == 0
    assert streak_count(200.0, 256, 128) == round(2.0 * 200.0 * 256 * 128 / 1e6)


def test_rain_zero_rate_identity(small_scene):
    depth = _flat_depth(small_scene.shape, 60.0)
    out = rain(small_scene, depth, 2, seed=5, rate=0.0)
    assert np.max(np.abs(out - small_scene)) == 0.0


def test_rain_severity_monotone(scenes, depths):
    img, depth = scenes[2], depths[2]
    mses = [float(np.mean((rain(img, depth, s, seed=6) - img) ** 2)) for s in (1, 2, 3)]
    assert mses[0] < mses[1] < mses[2]
    assert RAIN_RATE == {1: 50.0, 2: 100.0, 3: 200.0}


def test_rain_streaks_brighten_toward_atmosphere(scenes, depths):
    img, depth = scenes[3], depths[3]
    out = rain(img, depth, 3, seed=13)
    diff = out.astype(np.float64) - img
    # streak pixels move toward the bright atmosphere; the veil is mild at s3
    assert float(diff.max()) > 0.05
    assert out.shape == img.shape and out.dtype == np.float32


def test_rain_seed_determinism(scenes, depths):
    img, depth = scenes[0], depths[0]
    a = rain(img, depth, 2, seed=3)
    b = rain(img, depth, 2, seed=3)
    c = rain(img, depth, 2, seed=4)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
