"""Panoptic quality: matching rules, counting, aggregation."""

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from cambench.imgcore import PanopticMap, SegmentInfo
from cambench.panoptic import (
    CategoryCounts,
    aggregate_pq,
    iou,
    match_segments,
    merge_counts,
    pq,
    pq_counts,
    pq_from_counts,
)
from cambench.synthdata import make_test_panoptic, perturb_panoptic


def _single(grid: np.ndarray, sid: int, cat: int = 1, crowd: bool = False) -> PanopticMap:
    return PanopticMap(grid, (SegmentInfo(sid, cat, crowd),))


# ---------------------------------------------------------------------------
# iou
# ---------------------------------------------------------------------------


def test_iou_basics():
    a = np.zeros((6, 6), bool)
    a[0:3] = True
    assert iou(a, a) == 1.0
    assert iou(a, ~a) == 0.0
    b = np.zeros((6, 6), bool)
    b[0:3, 0:3] = True
    assert iou(a, b) == pytest.approx(9.0 / 18.0)


def test_iou_void_removed_from_union_only():
    a = np.zeros((6, 6), bool)
    a[0:3] = True  # 18 px
    b = np.zeros((6, 6), bool)
    b[0:3, 0:4] = True  # 12 px inside a
    b[3:5, 0:2] = True  # 4 px outside, all on void
    void = np.zeros((6, 6), bool)
    void[3:] = True
    # union 22 loses the 4 void-only pixels
    assert iou(a, b, void) == pytest.approx(12.0 / 18.0)
    assert iou(a, b) == pytest.approx(12.0 / 22.0)


def test_iou_empty_and_mismatched():
    z = np.zeros((4, 4), bool)
    assert iou(z, z) == 0.0
    with pytest.raises(ValueError):
        iou(z, np.zeros((3, 4), bool))


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------


def test_nested_80_120_case():
    g = np.zeros((16, 16), np.uint32)
    g[0:10, 0:12] = 7
    p = np.zeros((16, 16), np.uint32)
    p[0:10, 0:8] = 3
    res = match_segments(_single(p, 3), _single(g, 7))
    assert len(res.matches) == 1
    gid, pid, v = res.matches[0]
    assert (gid, pid) == (7, 3)
    assert v == pytest.approx(80.0 / 120.0, abs=1e-12)


def test_iou_exactly_half_not_matched():
    g = np.zeros((10, 20), np.uint32)
    g[:, 0:10] = 1
    p = np.zeros((10, 20), np.uint32)
    p[:, 0:5] = 9  # inter 50, union 100
    res = match_segments(_single(p, 9, cat=2), _single(g, 1, cat=2))
    assert res.matches == ()
    assert res.unmatched_gt == (1,) and res.unmatched_pred == (9,)


def test_category_must_agree():
    g = np.zeros((8, 8), np.uint32)
    g[:] = 4
    p = g.copy()
    res = match_segments(_single(p, 4, cat=2), _single(g, 4, cat=1))
    assert res.matches == ()


def test_void_subtracted_from_match_union():
    g = np.zeros((20, 20), np.uint32)
    g[0:5] = 4  # 100 px, rest void
    p = np.zeros((20, 20), np.uint32)
    p[0:5, 0:16] = 8  # 80 px on the segment
    p[5:8, 0:10] = 8  # 30 px on void
    res = match_segments(_single(p, 8), _single(g, 4))
    # union = 100 + 110 - 80 - 30 = 100
    assert res.matches[0][2] == pytest.approx(0.8, abs=1e-12)


def test_crowd_absolves_predictions():
    g = np.zeros((20, 20), np.uint32)
    g[:, 0:10] = 2
    p = np.zeros((20, 20), np.uint32)
    p[:, 0:10] = 5
    gt = _single(g, 2, cat=3, crowd=True)
    res = match_segments(_single(p, 5, cat=3), gt)
    assert res.matches == ()
    assert res.discarded_pred == (5,)  # not an FP
    assert res.unmatched_gt == ()  # crowd is never an FN
    # different category: the same prediction counts as FP
    res2 = match_segments(_single(p, 5, cat=4), gt)
    assert res2.unmatched_pred == (5,) and res2.discarded_pred == ()


def test_match_shape_mismatch():
    a = _single(np.zeros((4, 4), np.uint32) + 1, 1)
    b = _single(np.zeros((4, 5), np.uint32) + 1, 1)
    with pytest.raises(ValueError):
        match_segments(a, b)


def test_matching_equals_maximum_weight_assignment():
    # the >0.5 threshold provably yields the unique maximum-weight matching;
    # check against an exhaustive assignment solver on random instances
    for trial in range(60):
        gm = make_test_panoptic(48, 40, seed=500 + trial, n_segments=8)
        pm = perturb_panoptic(gm, seed=900 + trial, shift=2, drop=0.2)
        res = match_segments(pm, gm)
        void = gm.segment_id == 0
        gids = [s.id for s in gm.segments if not s.is_crowd]
        pids = [s.id for s in pm.segments]
        w = np.zeros((len(gids), len(pids)))
        ginfo = {s.id: s for s in gm.segments}
        pinfo = {s.id: s for s in pm.segments}
        for i, gid in enumerate(gids):
            for j, pid in enumerate(pids):
                if ginfo[gid].category_id != pinfo[pid].category_id:
                    continue
                v = iou(gm.segment_id == gid, pm.segment_id == pid, void)
                if v > 0.5:
                    w[i, j] = v
        ri, ci = linear_sum_assignment(-w)
        want = sorted(
            (gids[i], pids[j], w[i, j]) for i, j in zip(ri, ci) if w[i, j] > 0.5
        )
        got = sorted(res.matches)
        assert [(g, p) for g, p, _ in got] == [(g, p) for g, p, _ in want], trial
        assert sum(v for _, _, v in got) == pytest.approx(
            sum(v for _, _, v in want), abs=1e-12
        )


# ---------------------------------------------------------------------------
# pq scores
# ---------------------------------------------------------------------------


def test_perfect_prediction():
    gm = make_test_panoptic(48, 40, seed=3)
    r = pq(gm, gm)
    assert r.pq == 1.0 and r.sq == 1.0 and r.rq == 1.0
    assert r.fp == 0 and r.fn == 0


def test_single_segment_pq_values():
    g = np.zeros((16, 16), np.uint32)
    g[0:10, 0:12] = 7
    p = np.zeros((16, 16), np.uint32)
    p[0:10, 0:8] = 3
    r = pq(_single(p, 3), _single(g, 7))
    assert r.pq == pytest.approx(80.0 / 120.0, abs=1e-12)
    assert r.sq == pytest.approx(80.0 / 120.0, abs=1e-12)
    assert r.rq == 1.0


def test_empty_prediction_gives_zero():
    g = np.zeros((8, 8), np.uint32)
    g[:4] = 3
    gt = _single(g, 3)
    empty = PanopticMap(np.zeros((8, 8), np.uint32), ())
    r = pq(empty, gt)
    assert r.pq == 0.0 and r.tp == 0 and r.fn == 1


def test_pq_identity_per_category():
    for trial in range(10):
        gm = make_test_panoptic(64, 48, seed=50 + trial, n_segments=9)
        pm = perturb_panoptic(gm, seed=70 + trial, shift=2, drop=0.25)
        r = pq(pm, gm)
        for cat, c in r.per_category.items():
            if c.tp > 0:
                assert c.pq == pytest.approx(c.sq * c.rq, abs=1e-12)
            denom = c.tp + 0.5 * (c.fp + c.fn)
            assert c.pq == pytest.approx(c.iou_sum / denom, abs=1e-12)


def test_pq_relabel_invariance():
    gm = make_test_panoptic(64, 48, seed=5, n_segments=6)
    pm = perturb_panoptic(gm, seed=6, shift=2, drop=0.2)
    shifted = (pm.segment_id + np.uint32(5000) * (pm.segment_id > 0)).astype(np.uint32)
    pm2 = PanopticMap(
        shifted,
        tuple(SegmentInfo(s.id + 5000, s.category_id, s.is_crowd) for s in pm.segments),
    )
    a, b = pq(pm, gm), pq(pm2, gm)
    assert (a.pq, a.sq, a.rq, a.tp, a.fp, a.fn) == (b.pq, b.sq, b.rq, b.tp, b.fp, b.fn)


def test_pq_swap_symmetry_without_void_or_crowd():
    # with no void and no crowd, swapping roles swaps fp/fn and keeps tp/iou
    gm = make_test_panoptic(48, 40, seed=31, n_segments=5, void_fraction=0.0, crowd_fraction=0.0)
    pm = perturb_panoptic(gm, seed=32, shift=1, drop=0.0)
    assert not (gm.segment_id == 0).any() and not (pm.segment_id == 0).any()
    ab, ba = pq(pm, gm), pq(gm, pm)
    assert ab.tp == ba.tp and ab.tp > 0
    assert ab.fp == ba.fn and ab.fn == ba.fp
    assert ab.iou_sum == pytest.approx(ba.iou_sum, abs=1e-12)


def test_counts_merge_matches_joint_evaluation():
    # dataset-level counts accumulated image by image equal a single pass
    total: dict[int, CategoryCounts] = {}
    parts = []
    for trial in range(4):
        gm = make_test_panoptic(40, 32, seed=300 + trial)
        pm = perturb_panoptic(gm, seed=400 + trial, shift=2, drop=0.3)
        c = pq_counts(pm, gm)
        parts.append(c)
        merge_counts(total, c)
    for cat, c in total.items():
        assert c.tp == sum(p[cat].tp for p in parts if cat in p)
        assert c.iou_sum == pytest.approx(
            sum(p[cat].iou_sum for p in parts if cat in p), abs=1e-12
        )
    r = pq_from_counts(total)
    for cat, c in r.per_category.items():
        if c.tp > 0:
            assert c.pq == pytest.approx(c.sq * c.rq, abs=1e-12)


def test_aggregate_pq_examples():
    m, v = aggregate_pq([0.2, 0.4, 0.6])
    assert m == pytest.approx(0.4, abs=1e-12)
    assert v == pytest.approx(0.02666666666666667, abs=1e-12)
    m, v = aggregate_pq([0.7])
    assert m == 0.7 and v == 0.0
    m, v = aggregate_pq([0.5, 0.5, 0.5])
    assert v == 0.0
    with pytest.raises(ValueError):
        aggregate_pq([])
