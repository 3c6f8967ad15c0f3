"""Panoptic quality: strict segment matching and PQ/SQ/RQ accumulation.

Matching is the standard strict rule: a predicted and a ground-truth segment
match iff they share a category and their IoU exceeds 0.5, which makes the
match unique per segment.  Void pixels (gt id 0) are removed from the union
denominator; crowd ground-truth segments never match but absolve predictions
that mostly cover them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .imgcore import PanopticMap

_VOID = 0


def iou(a: np.ndarray, b: np.ndarray, void: np.ndarray | None = None) -> float:
    """Intersection over union of two boolean pixel masks.

    Void pixels are removed from the union denominator (but never from the
    intersection, which by construction they cannot reach in panoptic maps).
    Returns 0 when the denominator is empty.
    """
    if a.shape != b.shape:
        raise ValueError(f"mask shapes differ: {a.shape} vs {b.shape}")
    inter = np.logical_and(a, b)
    union = np.logical_or(a, b)
    n_inter = int(inter.sum())
    denom = int(union.sum())
    if void is not None:
        if void.shape != a.shape:
            raise ValueError(f"void shape {void.shape} does not match masks {a.shape}")
        denom -= int((void & union & ~inter).sum())
    return n_inter / denom if denom > 0 else 0.0


@dataclass(frozen=True)
class MatchResult:
    """Outcome of strict matching between a prediction and a ground truth."""

    matches: tuple  # (gt_id, pred_id, iou) triples
    unmatched_gt: tuple  # false negatives (crowd excluded)
    unmatched_pred: tuple  # false positives after the void/crowd discard
    discarded_pred: tuple  # predictions absolved by void/crowd coverage


def _areas(grid: np.ndarray) -> dict[int, int]:
    ids, counts = np.unique(grid, return_counts=True)
    return {int(i): int(c) for i, c in zip(ids, counts)}


def _intersections(gt_grid: np.ndarray, pred_grid: np.ndarray) -> dict[tuple[int, int], int]:
    combined = gt_grid.astype(np.uint64) << np.uint64(32)
    combined |= pred_grid.astype(np.uint64)
    pairs, counts = np.unique(combined, return_counts=True)
    out = {}
    for p, c in zip(pairs, counts):
        out[(int(p >> np.uint64(32)), int(p & np.uint64(0xFFFFFFFF)))] = int(c)
    return out


def match_segments(pred: PanopticMap, gt: PanopticMap) -> MatchResult:
    """Match same-category segments with IoU strictly above 0.5."""
    if pred.shape != gt.shape:
        raise ValueError(f"map shapes differ: pred {pred.shape} vs gt {gt.shape}")
    gt_info = {s.id: s for s in gt.segments}
    pred_info = {s.id: s for s in pred.segments}
    gt_areas = _areas(gt.segment_id)
    pred_areas = _areas(pred.segment_id)
    inter = _intersections(gt.segment_id, pred.segment_id)

    matches = []
    matched_gt: set[int] = set()
    matched_pred: set[int] = set()
    for (gid, pid), n in inter.items():
        if gid == _VOID or pid == _VOID:
            continue
        g = gt_info[gid]
        if g.is_crowd or g.category_id != pred_info[pid].category_id:
            continue
        union = gt_areas[gid] + pred_areas[pid] - n - inter.get((_VOID, pid), 0)
        v = n / union
        if v > 0.5:
            matches.append((gid, pid, v))
            matched_gt.add(gid)
            matched_pred.add(pid)

    unmatched_gt = tuple(
        s.id for s in gt.segments if not s.is_crowd and s.id not in matched_gt
    )

    crowd_by_cat: dict[int, list[int]] = {}
    for s in gt.segments:
        if s.is_crowd:
            crowd_by_cat.setdefault(s.category_id, []).append(s.id)

    unmatched_pred = []
    discarded = []
    for s in pred.segments:
        if s.id in matched_pred:
            continue
        ignored = inter.get((_VOID, s.id), 0)
        for cid in crowd_by_cat.get(s.category_id, ()):
            ignored += inter.get((cid, s.id), 0)
        if ignored / pred_areas[s.id] > 0.5:
            discarded.append(s.id)
        else:
            unmatched_pred.append(s.id)

    return MatchResult(
        matches=tuple(sorted(matches)),
        unmatched_gt=tuple(sorted(unmatched_gt)),
        unmatched_pred=tuple(sorted(unmatched_pred)),
        discarded_pred=tuple(sorted(discarded)),
    )


@dataclass
class CategoryCounts:
    """Running TP/FP/FN and matched-IoU mass for one category."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    iou_sum: float = 0.0

    def merge(self, other: "CategoryCounts") -> None:
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn
        self.iou_sum += other.iou_sum


@dataclass(frozen=True)
class CategoryPQ:
    tp: int
    fp: int
    fn: int
    iou_sum: float
    pq: float
    sq: float
    rq: float


@dataclass(frozen=True)
class PQResult:
    """Per-category and averaged panoptic quality (all values in [0, 1])."""

    pq: float
    sq: float
    rq: float
    tp: int
    fp: int
    fn: int
    iou_sum: float
    per_category: dict = field(default_factory=dict)


def pq_counts(pred: PanopticMap, gt: PanopticMap) -> dict[int, CategoryCounts]:
    """Per-category counts for one image; merge across images for dataset PQ."""
    res = match_segments(pred, gt)
    gt_info = {s.id: s for s in gt.segments}
    pred_info = {s.id: s for s in pred.segments}
    counts: dict[int, CategoryCounts] = {}

    def bucket(cat: int) -> CategoryCounts:
        return counts.setdefault(cat, CategoryCounts())

    for gid, pid, v in res.matches:
        c = bucket(gt_info[gid].category_id)
        c.tp += 1
        c.iou_sum += v
    for gid in res.unmatched_gt:
        bucket(gt_info[gid].category_id).fn += 1
    for pid in res.unmatched_pred:
        bucket(pred_info[pid].category_id).fp += 1
    return counts


def pq_from_counts(counts: dict[int, CategoryCounts]) -> PQResult:
    """Finalize PQ from per-category counts (category-averaged scores)."""
    per_category = {}
    pqs, sqs, rqs = [], [], []
    tot = CategoryCounts()
    for cat in sorted(counts):
        c = counts[cat]
        if c.tp + c.fp + c.fn == 0:
            continue
        denom = c.tp + 0.5 * c.fp + 0.5 * c.fn
        cat_pq = c.iou_sum / denom
        cat_sq = c.iou_sum / c.tp if c.tp > 0 else 0.0
        cat_rq = c.tp / denom
        per_category[cat] = CategoryPQ(
            tp=c.tp, fp=c.fp, fn=c.fn, iou_sum=c.iou_sum, pq=cat_pq, sq=cat_sq, rq=cat_rq
        )
        pqs.append(cat_pq)
        sqs.append(cat_sq)
        rqs.append(cat_rq)
        tot.merge(c)
    if not per_category:
        return PQResult(pq=0.0, sq=0.0, rq=0.0, tp=0, fp=0, fn=0, iou_sum=0.0, per_category={})
    return PQResult(
        pq=float(np.mean(pqs)),
        sq=float(np.mean(sqs)),
        rq=float(np.mean(rqs)),
        tp=tot.tp,
        fp=tot.fp,
        fn=tot.fn,
        iou_sum=tot.iou_sum,
        per_category=per_category,
    )


def pq(pred: PanopticMap, gt: PanopticMap) -> PQResult:
    """Panoptic quality of one prediction against one ground truth."""
    return pq_from_counts(pq_counts(pred, gt))


def merge_counts(
    into: dict[int, CategoryCounts], new: dict[int, CategoryCounts]
) -> dict[int, CategoryCounts]:
    """Accumulate one image's counts into a dataset-level tally."""
    for cat, c in new.items():
        into.setdefault(cat, CategoryCounts()).merge(c)
    return into


def aggregate_pq(values) -> tuple[float, float]:
    """Mean and population variance of a series of per-image PQ values."""
    arr = np.asarray(list(values), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot aggregate an empty PQ series")
    mean = float(arr.mean())
    return mean, float(np.mean((arr - mean) ** 2))
