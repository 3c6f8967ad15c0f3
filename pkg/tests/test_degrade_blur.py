"""Optical blur: defocus disks and motion lines."""

import numpy as np
import pytest

from cambench.degrade import DEFOCUS, MOTION, blur


def test_blur_constant_invariance():
    flat = np.full((32, 32, 3), 0.6, np.float32)
    for kind in ("defocus", "motion"):
        for s in (1, 2, 3):
            out = blur(flat, kind, s, seed=1)
            np.testing.assert_allclose(out, 0.6, atol=1e-6)


def test_blur_severity_monotone(small_scene):
    for kind in ("defocus", "motion"):
        mses = [
            float(np.mean((blur(small_scene, kind, s, seed=2) - small_scene) ** 2))
            for s in (1, 2, 3)
        ]
        assert mses[0] < mses[1] < mses[2], kind


def test_defocus_is_seed_free(small_scene):
    a = blur(small_scene, "defocus", 2, seed=1)
    b = blur(small_scene, "defocus", 2, seed=999)
    np.testing.assert_array_equal(a, b)
    assert DEFOCUS[3][0] > DEFOCUS[1][0]


def test_motion_angle_depends_on_seed(small_scene):
    a = blur(small_scene, "motion", 2, seed=1)
    b = blur(small_scene, "motion", 2, seed=1)
    c = blur(small_scene, "motion", 2, seed=7)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert MOTION[3][0] > MOTION[1][0]


def test_motion_smears_along_one_direction():
    img = np.zeros((64, 64, 3), np.float32)
    img[32, 32] = 1.0  # impulse reveals the kernel
    out = blur(img, "motion", 3, seed=4)
    ys, xs = np.nonzero(out[:, :, 0] > 1e-4)
    extent = max(xs.max() - xs.min(), ys.max() - ys.min())
    thickness = min(xs.max() - xs.min(), ys.max() - ys.min())
    assert extent >= 12  # length-20 line projected onto an axis
    assert thickness < extent


def test_blur_grayscale_passthrough(small_scene):
    gray = small_scene[:, :, :1]
    out = blur(gray, "defocus", 1)
    assert out.shape == gray.shape


def test_blur_unknown_kind(small_scene):
    with pytest.raises(ValueError):
        blur(small_scene, "zoom", 1)
