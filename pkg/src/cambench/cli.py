"""Batch pipeline commands: degrade, iqa, pq, correlate, report.

Every command is a pure function of its inputs plus the run seed.  Degrade
parallelism is over (image, factor, severity) tasks whose stream seeds are
derived per task, so output bytes are invariant to worker count and
scheduling order.  Exit codes: 0 full success, 1 hard error, 2 partial run
(weather factors skipped for lack of depth, or missing prediction stems).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import cv2
import numpy as np
import pandas as pd

from . import __version__
from .correlate import correlation_report
from .degrade import SURROGATE_FACTORS, apply_degradation, describe_factor, stream_seed
from .errors import CatalogError, ConstantSeriesError, DecodeError
from .imgcore import (
    FACTOR_NAMES,
    WEATHER_FACTORS,
    DegradationSpec,
    derive_seed,
    load_depth,
    load_image,
    load_panoptic,
    resize_bicubic,
    save_image,
)
from .iqa import iq_suite
from .panoptic import CategoryCounts, merge_counts, pq_counts, pq_from_counts

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2

_IMAGE_EXTS = (".png", ".jpg", ".jpeg")
_MEAN_ID = "__mean__"
_IQA_COLUMNS = ("image_id", "factor", "severity", "psnr", "ssim", "cw_ssim", "fsim")
_PQ_COLUMNS = ("image_id", "factor", "severity", "pq", "sq", "rq", "tp", "fp", "fn")


class CommandError(Exception):
    """Fatal usage or data error; message is printed and exit code is 1."""


def _list_images(directory: Path) -> list[Path]:
    if not directory.is_dir():
        raise CommandError(f"not a directory: {directory}")
    files = sorted(p for p in directory.iterdir() if p.suffix.lower() in _IMAGE_EXTS)
    stems = [p.stem for p in files]
    dupes = {s for s in stems if stems.count(s) > 1}
    if dupes:
        raise CommandError(f"duplicate image stems in {directory}: {sorted(dupes)}")
    return files


def _parse_size(text: str) -> tuple[int, int] | None:
    if text.lower() in ("none", "native", "0"):
        return None
    try:
        w, h = text.lower().split("x")
        size = (int(w), int(h))
    except ValueError as exc:
        raise CommandError(f"--size must look like 1024x512 or 'none', got {text!r}") from exc
    if size[0] < 4 or size[1] < 4:
        raise CommandError(f"--size too small: {text}")
    return size


def _parse_factors(text: str) -> list[str]:
    if text.strip().lower() == "all":
        return list(FACTOR_NAMES)
    requested = [t.strip() for t in text.split(",") if t.strip()]
    bad = [f for f in requested if f not in FACTOR_NAMES]
    if bad:
        raise CommandError(f"unknown factors {bad}; valid: {', '.join(FACTOR_NAMES)}")
    seen: dict[str, None] = {}
    for f in requested:
        seen.setdefault(f)
    return list(seen)


def _parse_severities(text: str) -> list[int]:
    try:
        values = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError as exc:
        raise CommandError(f"--severities must be integers from 1,2,3, got {text!r}") from exc
    if not values or any(v not in (1, 2, 3) for v in values):
        raise CommandError(f"severities must be a subset of 1,2,3, got {text!r}")
    return values


def _default_workers() -> int:
    raw = os.environ.get("CAMBENCH_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def _load_resized(path: Path, size: tuple[int, int] | None) -> np.ndarray:
    img = load_image(path)
    if size is not None and (img.shape[1], img.shape[0]) != size:
        img = resize_bicubic(img, size[0], size[1])
    return img


def _load_depth_resized(
    path: Path, size: tuple[int, int] | None, mode: str, scale: float, baseline_focal: float
) -> np.ndarray:
    depth = load_depth(path, mode=mode, scale=scale, baseline_focal=baseline_focal)
    if size is not None and (depth.shape[1], depth.shape[0]) != size:
        # nearest keeps metric values intact; smooth resampling would invent depths
        depth = cv2.resize(depth, size, interpolation=cv2.INTER_NEAREST)
    return depth


# ---------------------------------------------------------------------------
# degrade
# ---------------------------------------------------------------------------


def _degrade_one(task: tuple) -> dict:
    """One (image, factor, severity) job; hermetic so pools can run it anywhere."""
    (
        image_path,
        depth_path,
        out_path,
        image_id,
        factor,
        severity,
        global_seed,
        size,
        depth_mode,
        depth_scale,
        baseline_focal,
    ) = task
    img = _load_resized(Path(image_path), size)
    depth = None
    if depth_path is not None:
        depth = _load_depth_resized(Path(depth_path), size, depth_mode, depth_scale, baseline_focal)
    image_seed = derive_seed(global_seed, image_id, "", 0)
    spec = DegradationSpec(factor=factor, severity=severity, seed=image_seed)
    out = apply_degradation(img, depth, spec)
    save_image(out, out_path)
    record = {
        "image_id": image_id,
        "factor": factor,
        "severity": severity,
        "image_seed": image_seed,
        "stream_seed": stream_seed(image_seed, factor, severity),
        "path": None,  # filled by the parent with the out-relative form
        "sha256": _sha256(Path(out_path)),
        "params": describe_factor(factor, severity),
        "surrogate": factor in SURROGATE_FACTORS,
    }
    return record


def _emit_clean(image_path: Path, out_path: Path, image_id: str, size) -> dict:
    img = _load_resized(image_path, size)
    save_image(img, out_path)
    return {
        "image_id": image_id,
        "factor": "clean",
        "severity": 0,
        "image_seed": None,
        "stream_seed": None,
        "path": None,
        "sha256": _sha256(out_path),
        "params": {},
        "surrogate": False,
    }


def cmd_degrade(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    size = _parse_size(args.size)
    factors = _parse_factors(args.factors)
    severities = _parse_severities(args.severities)
    images = _list_images(Path(args.input))
    if not images:
        raise CommandError(f"no images found under {args.input}")

    depth_dir = Path(args.depth) if args.depth else None
    skipped = []
    active = []
    for f in factors:
        if f in WEATHER_FACTORS and depth_dir is None:
            skipped.append({"factor": f, "reason": "no --depth directory provided"})
            print(f"warning: skipping {f}: weather factors need a depth map", file=sys.stderr)
        else:
            active.append(f)

    tasks = []
    jobs = []
    for image_path in images:
        image_id = image_path.stem
        for factor in active:
            depth_path = None
            if factor in WEATHER_FACTORS:
                depth_path = depth_dir / f"{image_id}.png"
                if not depth_path.is_file():
                    raise CommandError(f"depth map missing for {image_id}: {depth_path}")
            for severity in severities:
                rel = Path(factor) / f"s{severity}" / f"{image_id}.png"
                tasks.append(
                    (
                        str(image_path),
                        str(depth_path) if depth_path else None,
                        str(out_dir / rel),
                        image_id,
                        factor,
                        severity,
                        int(args.seed),
                        size,
                        args.depth_mode,
                        args.depth_scale,
                        args.baseline_focal,
                    )
                )
                jobs.append(rel)

    if not tasks and not args.emit_clean:
        raise CommandError("nothing to do: every requested factor was skipped")

    for rel in jobs:
        (out_dir / rel).parent.mkdir(parents=True, exist_ok=True)
    if args.emit_clean:
        (out_dir / "clean").mkdir(parents=True, exist_ok=True)

    workers = args.workers if args.workers is not None else _default_workers()
    records = []
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_degrade_one, tasks, chunksize=4))
    else:
        records = [_degrade_one(t) for t in tasks]
    for record, rel in zip(records, jobs):
        record["path"] = rel.as_posix()

    if args.emit_clean:
        for image_path in images:
            rel = Path("clean") / f"{image_path.stem}.png"
            record = _emit_clean(image_path, out_dir / rel, image_path.stem, size)
            record["path"] = rel.as_posix()
            records.append(record)

    records.sort(key=lambda r: (r["factor"], r["severity"], r["image_id"]))
    manifest = {
        "tool": "cambench",
        "version": __version__,
        "seed": int(args.seed),
        "size": list(size) if size else None,
        "counts": {"written": len(records), "skipped_factors": [s["factor"] for s in skipped]},
        "skipped": skipped,
        "records": records,
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(records)} files under {out_dir} (manifest.json included)")
    if skipped:
        print(f"partial run: skipped factors {[s['factor'] for s in skipped]}")
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# iqa
# ---------------------------------------------------------------------------


def _walk_degraded(root: Path) -> list[tuple[str, int, Path]]:
    """(factor, severity, path) triples under a <factor>/s<sev>/<stem> tree."""
    if not root.is_dir():
        raise CommandError(f"not a directory: {root}")
    out = []
    for path in sorted(root.rglob("*")):
        if not (path.is_file() and path.suffix.lower() in _IMAGE_EXTS):
            continue
        rel = path.relative_to(root)
        if rel.parts[0] == "clean":
            continue
        if len(rel.parts) != 3:
            raise CommandError(f"unexpected layout (want <factor>/s<sev>/<name>): {rel}")
        factor, sdir = rel.parts[0], rel.parts[1]
        if factor not in FACTOR_NAMES:
            raise CommandError(f"unknown factor directory {factor!r} in {rel}")
        if not (len(sdir) >= 2 and sdir[0] == "s" and sdir[1:].isdigit()):
            raise CommandError(f"unexpected severity directory {sdir!r} in {rel}")
        out.append((factor, int(sdir[1:]), path))
    return out


def _iqa_one(task: tuple) -> tuple:
    factor, severity, ref_path, test_path, stem = task
    ref = load_image(Path(ref_path))
    test = load_image(Path(test_path))
    if ref.shape[:2] != test.shape[:2]:
        ref = resize_bicubic(ref, test.shape[1], test.shape[0])
    r = iq_suite(ref, test)
    return (stem, factor, severity, r.psnr, r.ssim, r.cw_ssim, r.fsim)


def cmd_iqa(args: argparse.Namespace) -> int:
    ref_dir = Path(args.ref)
    refs = {p.stem: p for p in _list_images(ref_dir)}
    if not refs:
        raise CommandError(f"no reference images under {ref_dir}")
    entries = _walk_degraded(Path(args.test))
    if not entries:
        raise CommandError(f"no degraded images under {args.test}")
    unmatched = sorted({p.stem for _, _, p in entries if p.stem not in refs})
    if unmatched:
        raise CommandError(f"test stems without a reference image: {unmatched}")

    tasks = [(f, s, str(refs[p.stem]), str(p), p.stem) for f, s, p in entries]
    workers = args.workers if args.workers is not None else _default_workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_iqa_one, tasks, chunksize=2))
    else:
        rows = [_iqa_one(t) for t in tasks]
    rows.sort(key=lambda r: (r[1], r[2], r[0]))

    means = []
    by_cell: dict[tuple[str, int], list[tuple]] = {}
    for row in rows:
        by_cell.setdefault((row[1], row[2]), []).append(row)
    for (factor, severity), members in sorted(by_cell.items()):
        cols = np.asarray([[m[3], m[4], m[5], m[6]] for m in members], dtype=np.float64)
        mean = cols.mean(axis=0)
        means.append((_MEAN_ID, factor, severity, *[float(v) for v in mean]))

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_IQA_COLUMNS)
        for row in rows + means:
            writer.writerow([row[0], row[1], row[2], *[repr(float(v)) for v in row[3:]]])
    print(f"wrote {len(rows)} pair rows + {len(means)} mean rows to {out_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# pq
# ---------------------------------------------------------------------------


def _panoptic_stems(directory: Path) -> dict[str, tuple[Path, Path]]:
    out = {}
    for png in sorted(directory.glob("*.png")):
        meta = png.with_suffix(".json")
        if not meta.is_file():
            raise CommandError(f"panoptic PNG without JSON sidecar: {png}")
        out[png.stem] = (png, meta)
    return out


def _pred_conditions(root: Path) -> list[tuple[str, int, Path]]:
    """Prediction layout: flat dir of stems, or <factor>/s<sev>/ subtrees."""
    if not root.is_dir():
        raise CommandError(f"not a directory: {root}")
    if any(root.glob("*.png")):
        return [("", 0, root)]
    conditions = []
    for fdir in sorted(p for p in root.iterdir() if p.is_dir()):
        for sdir in sorted(p for p in fdir.iterdir() if p.is_dir()):
            if not (sdir.name.startswith("s") and sdir.name[1:].isdigit()):
                raise CommandError(f"unexpected severity directory: {sdir}")
            conditions.append((fdir.name, int(sdir.name[1:]), sdir))
    if not conditions:
        raise CommandError(f"no predictions found under {root}")
    return conditions


def cmd_pq(args: argparse.Namespace) -> int:
    gt = _panoptic_stems(Path(args.gt))
    if not gt:
        raise CommandError(f"no ground-truth panoptic maps under {args.gt}")
    gt_maps = {stem: load_panoptic(png, meta) for stem, (png, meta) in gt.items()}

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    conditions_summary = []
    missing: list[str] = []
    for factor, severity, cdir in _pred_conditions(Path(args.pred)):
        preds = _panoptic_stems(cdir)
        extra = sorted(set(preds) - set(gt))
        if extra:
            raise CommandError(f"predictions without ground truth in {cdir}: {extra}")
        absent = sorted(set(gt) - set(preds))
        label = f"{factor}/s{severity}" if factor else "."
        missing.extend(f"{label}/{stem}" for stem in absent)

        cell_values = []
        dataset_counts: dict[int, CategoryCounts] = {}
        for stem in sorted(preds):
            png, meta = preds[stem]
            counts = pq_counts(load_panoptic(png, meta), gt_maps[stem])
            result = pq_from_counts(counts)
            merge_counts(dataset_counts, counts)
            cell_values.append(result.pq * 100.0)
            rows.append(
                (
                    stem,
                    factor,
                    severity,
                    result.pq * 100.0,
                    result.sq * 100.0,
                    result.rq * 100.0,
                    result.tp,
                    result.fp,
                    result.fn,
                )
            )
        summary = {
            "factor": factor,
            "severity": severity,
            "n": len(cell_values),
            "missing": absent,
        }
        if cell_values:
            arr = np.asarray(cell_values, dtype=np.float64)
            summary["apq"] = float(arr.mean())
            summary["vpq"] = float(np.mean((arr - arr.mean()) ** 2))
        if args.use_global and dataset_counts:
            g = pq_from_counts(dataset_counts)
            summary["global"] = {
                "pq": g.pq * 100.0,
                "sq": g.sq * 100.0,
                "rq": g.rq * 100.0,
                "tp": g.tp,
                "fp": g.fp,
                "fn": g.fn,
            }
        conditions_summary.append(summary)

    rows.sort(key=lambda r: (r[1], r[2], r[0]))
    csv_path = out_dir / "pq.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_PQ_COLUMNS)
        for row in rows:
            writer.writerow(
                [row[0], row[1], row[2], *[repr(float(v)) for v in row[3:6]], *row[6:]]
            )
    summary_path = out_dir / "pq_summary.json"
    payload = {
        "tool": "cambench",
        "version": __version__,
        "aggregation": "global+per_image" if args.use_global else "per_image",
        "conditions": conditions_summary,
        "missing": missing,
    }
    summary_path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(rows)} rows to {csv_path}; summary in {summary_path}")
    if missing:
        print(f"partial run: {len(missing)} prediction(s) missing", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# correlate
# ---------------------------------------------------------------------------


def cmd_correlate(args: argparse.Namespace) -> int:
    iq = pd.read_csv(args.iqa)
    pq_table = pd.read_csv(args.pq)
    iq = iq[iq["image_id"] != _MEAN_ID].reset_index(drop=True)
    score_cols = [c for c in ("pq", "sq", "rq") if c in pq_table.columns]
    try:
        report = correlation_report(iq, pq_table, mode=args.mode, pq_cols=score_cols)
    except (ValueError, ConstantSeriesError) as exc:
        raise CommandError(str(exc)) from exc
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "correlation.json").write_text(
        json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n"
    )
    (out_dir / "correlation.md").write_text(report.to_markdown())
    print(f"wrote correlation.json and correlation.md to {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _fmt(v: float, places: int = 4) -> str:
    return f"{v:.{places}f}"


def _params_line(factor: str) -> str:
    chunks = []
    for severity in (1, 2, 3):
        p = describe_factor(factor, severity)
        inner = ", ".join(
            f"{k}={p[k]}" for k in sorted(p) if k not in ("factor", "severity", "surrogate")
        )
        chunks.append(f"s{severity}: {inner}")
    return "; ".join(chunks)


def cmd_report(args: argparse.Namespace) -> int:
    manifest = json.loads(Path(args.manifest).read_text())
    iq = pd.read_csv(args.iqa)
    means = iq[iq["image_id"] == _MEAN_ID]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    lines = [
        "# Degradation benchmark report",
        "",
        f"Generator: {manifest.get('tool', '?')} {manifest.get('version', '?')}, "
        f"run seed {manifest.get('seed', '?')}, {len(manifest.get('records', []))} files.",
        "",
        "## Factor catalog",
        "",
        "| factor | depth | surrogate | severity parameters |",
        "|---|---|---|---|",
    ]
    for factor in FACTOR_NAMES:
        needs_depth = "yes" if factor in WEATHER_FACTORS else "no"
        surrogate = "yes" if factor in SURROGATE_FACTORS else "no"
        lines.append(f"| {factor} | {needs_depth} | {surrogate} | {_params_line(factor)} |")
    lines.append("")

    lines += ["## Quality vs severity (means over images)", ""]
    if means.empty:
        lines += ["No aggregate rows found in the quality table.", ""]
    else:
        lines += [
            "| factor | severity | psnr | ssim | cw_ssim | fsim |",
            "|---|---|---|---|---|---|",
        ]
        for _, row in means.sort_values(["factor", "severity"]).iterrows():
            lines.append(
                f"| {row['factor']} | {int(row['severity'])} | {_fmt(row['psnr'])} "
                f"| {_fmt(row['ssim'])} | {_fmt(row['cw_ssim'])} | {_fmt(row['fsim'])} |"
            )
        lines.append("")

    if args.pq_summary:
        summary = json.loads(Path(args.pq_summary).read_text())
        lines += ["## Panoptic quality", ""]
        lines += ["| factor | severity | n | aPQ | vPQ |", "|---|---|---|---|---|"]
        for cond in summary.get("conditions", []):
            label = cond["factor"] if cond["factor"] else "(flat)"
            apq = _fmt(cond["apq"], 2) if "apq" in cond else "nan"
            vpq = _fmt(cond["vpq"], 2) if "vpq" in cond else "nan"
            lines.append(f"| {label} | {cond['severity']} | {cond['n']} | {apq} | {vpq} |")
        lines.append("")
        if summary.get("missing"):
            lines += [f"Missing predictions: {len(summary['missing'])} (excluded from aPQ).", ""]
    else:
        lines += ["## Panoptic quality", "", "Omitted: no panoptic summary was provided.", ""]

    if args.correlation:
        corr = json.loads(Path(args.correlation).read_text())
        lines += [f"## Correlation (mode={corr['mode']})", ""]
        header = "| metric | " + " | ".join(corr["cols"]) + " |"
        lines += [header, "|---" * (len(corr["cols"]) + 1) + "|"]
        for i, name in enumerate(corr["rows"]):
            cells = []
            for j in range(len(corr["cols"])):
                p, s = corr["plcc"][i][j], corr["srcc"][i][j]
                ps = "nan" if p is None else f"{p:+.4f}"
                ss = "nan" if s is None else f"{s:+.4f}"
                cells.append(f"{ps} / {ss}")
            lines.append("| " + " | ".join([name] + cells) + " |")
        lines.append("")
        for note in corr.get("notes", []):
            lines.append(f"- {note}")
        if corr.get("notes"):
            lines.append("")
    else:
        lines += ["## Correlation", "", "Omitted: no correlation matrix was provided.", ""]

    report_path = out_dir / "report.md"
    report_path.write_text("\n".join(lines))
    print(f"wrote {report_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cambench",
        description="Camera-degradation benchmark: corpus generation and scoring.",
    )
    parser.add_argument("--version", action="version", version=f"cambench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degrade", help="generate the degraded corpus")
    p.add_argument("--input", required=True, help="directory of clean images")
    p.add_argument("--depth", default=None, help="directory of 16-bit depth PNGs, same stems")
    p.add_argument("--out", required=True, help="output corpus root")
    p.add_argument("--factors", default="all", help="comma list or 'all'")
    p.add_argument("--severities", default="1,2,3", help="comma subset of 1,2,3")
    p.add_argument("--seed", type=int, default=0, help="run seed")
    p.add_argument("--size", default="1024x512", help="WxH resize target, or 'none'")
    p.add_argument("--workers", type=int, default=None, help="process count (env CAMBENCH_WORKERS)")
    p.add_argument("--depth-mode", choices=("depth", "disparity"), default="depth")
    p.add_argument("--depth-scale", type=float, default=0.01)
    p.add_argument("--baseline-focal", type=float, default=385.0)
    p.add_argument("--emit-clean", action="store_true", help="also write resized clean references")
    p.set_defaults(func=cmd_degrade)

    p = sub.add_parser("iqa", help="score degraded images against references")
    p.add_argument("--ref", required=True, help="directory of clean reference images")
    p.add_argument("--test", required=True, help="degraded corpus root (factor/s<sev>/ tree)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_iqa)

    p = sub.add_parser("pq", help="panoptic quality of predictions against ground truth")
    p.add_argument("--gt", required=True, help="ground-truth panoptic dir (PNG+JSON pairs)")
    p.add_argument("--pred", required=True, help="prediction dir (flat or factor/s<sev> tree)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument(
        "--global",
        dest="use_global",
        action="store_true",
        help="also report dataset-level counts per condition",
    )
    p.set_defaults(func=cmd_pq)

    p = sub.add_parser("correlate", help="correlate quality metrics with panoptic scores")
    p.add_argument("--iqa", required=True, help="CSV from the iqa command")
    p.add_argument("--pq", required=True, help="pq.csv from the pq command")
    p.add_argument("--mode", choices=("factor", "image"), default="factor")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("report", help="render a Markdown run report")
    p.add_argument("--manifest", required=True, help="manifest.json from degrade")
    p.add_argument("--iqa", required=True, help="CSV from the iqa command")
    p.add_argument("--pq-summary", default=None, help="pq_summary.json from the pq command")
    p.add_argument("--correlation", default=None, help="correlation.json from correlate")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DecodeError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
