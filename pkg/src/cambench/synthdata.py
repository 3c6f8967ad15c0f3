"""Deterministic synthetic driving-scene stand-ins.

No photographic assets ship with the package, so tests and demos use these
procedurally generated scenes: a sky/ground split, blocky structures, road
markings, and multiscale texture.  Statistics are natural enough for blur,
noise, and compression metrics to behave the usual way.  Everything is keyed
by an explicit seed and fully reproducible.

Run `python -m cambench.synthdata --out DIR` to materialise a small demo
dataset (images, depth, panoptic truth, and a perturbed mock prediction).
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import cv2
import numpy as np

from .imgcore import (
    PanopticMap,
    SegmentInfo,
    clip01,
    rng_from_seed,
    save_image,
    save_panoptic,
)


def _texture(h: int, w: int, rng: np.random.Generator, octaves=(4, 16, 64)) -> np.ndarray:
    """Multiscale smooth noise in [-1, 1]."""
    out = np.zeros((h, w), dtype=np.float32)
    for i, cells in enumerate(octaves):
        gh, gw = max(2, h // cells * 0 + cells), max(2, cells * 2)
        coarse = rng.random((gh, gw), dtype=np.float64).astype(np.float32)
        layer = cv2.resize(coarse, (w, h), interpolation=cv2.INTER_CUBIC)
        out += (layer - 0.5) * (0.5**i)
    peak = np.abs(out).max()
    return out / peak if peak > 0 else out


def make_test_scene(width: int, height: int, seed: int) -> np.ndarray:
    """One synthetic street scene, (H, W, 3) float32 in [0, 1]."""
    rng = rng_from_seed(seed)
    h, w = height, width
    img = np.zeros((h, w, 3), dtype=np.float32)

    horizon = int(h * rng.uniform(0.35, 0.5))
    sky_top = np.array([0.55, 0.68, 0.85], np.float32) + rng.uniform(-0.05, 0.05, 3).astype(np.float32)
    sky_bot = np.array([0.78, 0.83, 0.9], np.float32)
    t = np.linspace(0, 1, max(horizon, 1), dtype=np.float32)[:, None, None]
    img[:horizon] = sky_top * (1 - t) + sky_bot * t

    road = np.array([0.32, 0.32, 0.34], np.float32)
    t = np.linspace(0, 1, h - horizon, dtype=np.float32)[:, None, None]
    img[horizon:] = road * (0.75 + 0.5 * t)

    # Blocky structures (buildings / vehicles) with occlusion.
    for _ in range(int(rng.integers(6, 12))):
        bw = int(rng.integers(w // 12, w // 3))
        bh = int(rng.integers(h // 8, h // 2))
        x0 = int(rng.integers(0, max(1, w - bw)))
        y0 = int(rng.integers(max(0, horizon - bh // 2), max(1, h - bh)))
        colour = rng.uniform(0.15, 0.85, 3).astype(np.float32)
        img[y0 : y0 + bh, x0 : x0 + bw] = colour

    # Road markings: bright quasi-vertical dashes converging near the horizon.
    mark = np.array([0.9, 0.9, 0.85], np.float32)
    for lane in (-0.25, 0.0, 0.25):
        for seg in range(6):
            yy0 = horizon + int((h - horizon) * (seg / 6.0 + 0.02))
            yy1 = horizon + int((h - horizon) * (seg / 6.0 + 0.07))
            span = (yy0 + yy1) / 2.0 / h
            xx = int(w * (0.5 + lane * span * 2.0))
            half = max(1, int(w * 0.006 * (0.3 + span)))
            img[yy0:yy1, max(0, xx - half) : min(w, xx + half)] = mark

    # A couple of high-contrast discs (signs, lights).
    for _ in range(int(rng.integers(2, 5))):
        cy = int(rng.integers(h // 10, horizon + h // 6))
        cx = int(rng.integers(w // 10, w - w // 10))
        r = int(rng.integers(max(2, h // 40), max(3, h // 16)))
        colour = rng.uniform(0.6, 1.0, 3).astype(np.float32)
        cv2.circle(img, (cx, cy), r, colour.tolist(), -1)

    tex = _texture(h, w, rng)
    img += tex[:, :, None] * 0.06
    return clip01(img).astype(np.float32)


def make_test_depth(width: int, height: int, seed: int, holes: int = 0) -> np.ndarray:
    """Ground-plane style depth in metres: near at the bottom, capped far
    field above the horizon, a few wobbles from structures."""
    rng = rng_from_seed(seed ^ 0x5EED)
    h, w = height, width
    horizon = int(h * 0.42)
    depth = np.full((h, w), 250.0, dtype=np.float32)
    rows = np.arange(h - horizon, dtype=np.float32) + 1.0
    plane = 4.0 + 246.0 / (1.0 + 0.25 * rows)
    depth[horizon:] = plane[:, None]
    wobble = _texture(h, w, rng) * 12.0
    depth = np.clip(depth + wobble, 3.0, 300.0)
    if holes:
        ys = rng.integers(0, h, holes)
        xs = rng.integers(0, w, holes)
        depth[ys, xs] = 0.0  # invalid samples, for hole-filling paths
    return depth.astype(np.float32)


def make_test_panoptic(
    width: int,
    height: int,
    seed: int,
    n_segments: int = 12,
    n_categories: int = 5,
    void_fraction: float = 0.04,
    crowd_fraction: float = 0.1,
) -> PanopticMap:
    """Random Voronoi-cell panoptic map with void borders and crowd flags."""
    rng = rng_from_seed(seed ^ 0xA501)
    h, w = height, width
    n = max(1, n_segments)
    cy = rng.uniform(0, h, n)
    cx = rng.uniform(0, w, n)
    yy, xx = np.mgrid[0:h, 0:w]
    d2 = (yy[None] - cy[:, None, None]) ** 2 + (xx[None] - cx[:, None, None]) ** 2
    owner = np.argmin(d2, axis=0).astype(np.uint32) + 1
    if void_fraction > 0:
        void = rng.random((h, w)) < void_fraction
        owner[void] = 0
    ids = np.unique(owner)
    ids = ids[ids != 0]
    segments = []
    for sid in ids:
        segments.append(
            SegmentInfo(
                id=int(sid),
                category_id=int(rng.integers(1, n_categories + 1)),
                is_crowd=bool(rng.random() < crowd_fraction),
            )
        )
    return PanopticMap(segment_id=owner, segments=tuple(segments))


def perturb_panoptic(pmap: PanopticMap, seed: int, shift: int = 2, drop: float = 0.1) -> PanopticMap:
    """Mock prediction: translate the grid, drop some segments, relabel ids."""
    rng = rng_from_seed(seed ^ 0x9E2)
    grid = np.roll(pmap.segment_id, (shift, -shift), axis=(0, 1)).copy()
    keep = {}
    for s in pmap.segments:
        if rng.random() < drop:
            grid[grid == s.id] = 0
        else:
            keep[s.id] = s
    remap = {sid: i + 1 for i, sid in enumerate(sorted(keep))}
    new_grid = np.zeros_like(grid)
    segments = []
    for sid, s in keep.items():
        mask = grid == sid
        if not mask.any():
            continue
        new_grid[mask] = remap[sid]
        segments.append(SegmentInfo(id=remap[sid], category_id=s.category_id, is_crowd=False))
    return PanopticMap(segment_id=new_grid, segments=tuple(segments))


def write_demo_dataset(out_dir: str | Path, count: int = 3, size=(384, 192), seed: int = 7) -> None:
    """Materialise images/, depth/, panoptic_gt/, panoptic_pred/ under out_dir."""
    out = Path(out_dir)
    w, h = size
    for sub in ("images", "depth", "panoptic_gt", "panoptic_pred"):
        (out / sub).mkdir(parents=True, exist_ok=True)
    for i in range(count):
        stem = f"scene_{i:03d}"
        img = make_test_scene(w, h, seed + i)
        save_image(img, out / "images" / f"{stem}.png")
        depth = make_test_depth(w, h, seed + i)
        raw = np.clip(depth / 0.01, 1, 65535).astype(np.uint16)
        cv2.imwrite(str(out / "depth" / f"{stem}.png"), raw)
        gt = make_test_panoptic(w, h, seed + i)
        save_panoptic(gt, out / "panoptic_gt" / f"{stem}.png", out / "panoptic_gt" / f"{stem}.json")
        pred = perturb_panoptic(gt, seed + i)
        save_panoptic(
            pred, out / "panoptic_pred" / f"{stem}.png", out / "panoptic_pred" / f"{stem}.json"
        )
    (out / "dataset.json").write_text(
        json.dumps({"count": count, "size": list(size), "seed": seed, "depth_scale": 0.01}, indent=1)
    )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Write a synthetic demo dataset.")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--size", default="384x192", help="WxH")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    w, h = (int(v) for v in args.size.lower().split("x"))
    write_demo_dataset(args.out, count=args.count, size=(w, h), seed=args.seed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
