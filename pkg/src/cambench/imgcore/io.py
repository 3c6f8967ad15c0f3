"""File I/O: 8-bit images, 16-bit depth maps, panoptic PNG+JSON pairs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

from ..errors import DecodeError
from .types import PanopticMap, SegmentInfo, validate_image


def quantize_u8(img: np.ndarray) -> np.ndarray:
    """Map [0, 1] floats to uint8 by round-half-away-from-zero of 255*v."""
    return np.floor(np.clip(img, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def load_image(path: str | Path) -> np.ndarray:
    """Load an 8-bit PNG/JPEG as (H, W, C) float32 in [0, 1], RGB.

    Alpha is dropped; grayscale files come back with C = 1.
    """
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode in ("L", "I;16", "I"):
                if im.mode != "L":
                    raise DecodeError(f"{path}: unsupported bit depth for image load ({im.mode})")
                arr = np.asarray(im, dtype=np.uint8)[:, :, None]
            else:
                arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"{path}: cannot decode image: {exc}") from exc
    return (arr.astype(np.float32) / 255.0).astype(np.float32)


def save_image(img: np.ndarray, path: str | Path, jpeg_quality: int = 95) -> None:
    """Quantize to 8 bits and write PNG (lossless) or JPEG by extension."""
    validate_image(img)
    path = Path(path)
    arr = quantize_u8(img)
    if arr.shape[2] == 1:
        pil = Image.fromarray(arr[:, :, 0], mode="L")
    else:
        pil = Image.fromarray(arr, mode="RGB")
    suffix = path.suffix.lower()
    if suffix == ".png":
        pil.save(path, format="PNG")
    elif suffix in (".jpg", ".jpeg"):
        if pil.mode == "L":
            pil = pil.convert("RGB")
        pil.save(path, format="JPEG", quality=jpeg_quality)
    else:
        raise ValueError(f"unsupported image extension {suffix!r} (use .png/.jpg)")


def _fill_invalid(values: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """Fill invalid pixels from their nearest valid neighbour, then smooth the
    filled pixels with a 3x3 median.  Valid samples are returned untouched."""
    if not valid.any():
        raise DecodeError("depth map has no valid (nonzero) samples")
    if valid.all():
        return values
    _, (iy, ix) = ndimage.distance_transform_edt(~valid, return_indices=True)
    filled = values[iy, ix]
    smoothed = ndimage.median_filter(filled, size=3, mode="nearest")
    out = filled.copy()
    out[~valid] = smoothed[~valid]
    return out


def load_depth(
    path: str | Path,
    mode: str = "depth",
    scale: float = 0.01,
    baseline_focal: float = 385.0,
) -> np.ndarray:
    """Load a 16-bit grayscale PNG as an (H, W) float32 depth map in metres.

    mode="depth":      depth = raw * scale
    mode="disparity":  depth = baseline_focal / (raw * scale)

    Zero raw values are treated as holes and filled from the nearest valid
    sample (then a 3x3 median over the filled pixels).  Every output value is
    > 0 or +inf.
    """
    if mode not in ("depth", "disparity"):
        raise ValueError(f"depth mode must be 'depth' or 'disparity', got {mode!r}")
    if scale <= 0:
        raise ValueError(f"depth scale must be > 0, got {scale}")
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode not in ("I;16", "I", "L"):
                raise DecodeError(f"{path}: expected 16-bit grayscale depth, got mode {im.mode}")
            raw = np.asarray(im, dtype=np.float64)
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"{path}: cannot decode depth: {exc}") from exc
    valid = raw > 0
    raw = _fill_invalid(raw, valid)
    if mode == "depth":
        depth = raw * scale
    else:
        with np.errstate(divide="ignore"):
            depth = baseline_focal / (raw * scale)
    return depth.astype(np.float32)


# ---------------------------------------------------------------------------
# Panoptic PNG + JSON
# ---------------------------------------------------------------------------

_ID_LIMIT = 256**3


def _ids_from_rgb(rgb: np.ndarray) -> np.ndarray:
    return (
        rgb[:, :, 0].astype(np.uint32)
        + rgb[:, :, 1].astype(np.uint32) * 256
        + rgb[:, :, 2].astype(np.uint32) * 65536
    )


def load_panoptic(png_path: str | Path, json_path: str | Path) -> PanopticMap:
    """Decode a panoptic PNG (id = R + 256*G + 65536*B) and its segment JSON.

    JSON entries with no pixels in the PNG are dropped; PNG ids missing from
    the JSON raise.
    """
    png_path, json_path = Path(png_path), Path(json_path)
    try:
        with Image.open(png_path) as im:
            rgb = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except (UnidentifiedImageError, OSError) as exc:
        raise DecodeError(f"{png_path}: cannot decode panoptic PNG: {exc}") from exc
    try:
        meta = json.loads(json_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DecodeError(f"{json_path}: cannot decode panoptic JSON: {exc}") from exc

    grid = _ids_from_rgb(rgb)
    infos = meta["segments_info"] if isinstance(meta, dict) else meta
    seen: dict[int, SegmentInfo] = {}
    for entry in infos:
        sid = int(entry["id"])
        if sid in seen:
            raise DecodeError(f"{json_path}: duplicate segment id {sid}")
        seen[sid] = SegmentInfo(
            id=sid,
            category_id=int(entry["category_id"]),
            is_crowd=bool(entry.get("iscrowd", 0)),
        )
    present = set(np.unique(grid).tolist()) - {0}
    missing = present - set(seen)
    if missing:
        raise DecodeError(f"{json_path}: PNG ids missing from JSON: {sorted(missing)}")
    segments = tuple(seen[sid] for sid in sorted(present))
    return PanopticMap(segment_id=grid, segments=segments)


def save_panoptic(pmap: PanopticMap, png_path: str | Path, json_path: str | Path) -> None:
    """Write the PNG+JSON pair; exact inverse of load_panoptic."""
    grid = pmap.segment_id
    if grid.max(initial=0) >= _ID_LIMIT:
        raise ValueError(f"segment ids must be < {_ID_LIMIT} to fit RGB encoding")
    rgb = np.stack(
        [
            (grid % 256).astype(np.uint8),
            (grid // 256 % 256).astype(np.uint8),
            (grid // 65536 % 256).astype(np.uint8),
        ],
        axis=2,
    )
    Image.fromarray(rgb, mode="RGB").save(Path(png_path), format="PNG")
    payload = {
        "segments_info": [
            {"id": s.id, "category_id": s.category_id, "iscrowd": int(s.is_crowd)}
            for s in pmap.segments
        ]
    }
    Path(json_path).write_text(json.dumps(payload, indent=1, sort_keys=True))
