"""Correlation coefficients and the cross-table report."""

import math

import numpy as np
import pandas as pd
import pytest
from scipy.stats import rankdata

from cambench.correlate import correlation_report, plcc, srcc
from cambench.errors import ConstantSeriesError


def _plcc_ref(x, y):
    # textbook formula, written independently of the implementation
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    mx, my = x.mean(), y.mean()
    num = ((x - mx) * (y - my)).sum()
    den = math.sqrt(((x - mx) ** 2).sum() * ((y - my) ** 2).sum())
    return num / den


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


def test_plcc_known_value():
    # 1,2,3 vs 1,4,9: r = 8 / sqrt(2 * 32.666...)
    assert plcc([1, 2, 3], [1, 4, 9]) == pytest.approx(0.989743318610787, abs=1e-12)


def test_srcc_monotone_is_one():
    assert srcc([1, 2, 3], [1, 4, 9]) == pytest.approx(1.0, abs=1e-12)
    assert srcc([1, 2, 3], [-1, -8, -27]) == pytest.approx(-1.0, abs=1e-12)


def test_srcc_tie_handling():
    # x ranks (1.5, 1.5, 3); Pearson of those against (1, 2, 3) = sqrt(3)/2
    assert srcc([5, 5, 9], [1, 2, 3]) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)


def test_plcc_matches_reference_formula():
    rng = np.random.default_rng(77)
    for _ in range(100):
        n = int(rng.integers(3, 40))
        x = rng.normal(size=n)
        y = rng.normal(size=n)
        assert plcc(x, y) == pytest.approx(_plcc_ref(x, y), abs=1e-12)
        rx, ry = rankdata(x, method="average"), rankdata(y, method="average")
        assert srcc(x, y) == pytest.approx(_plcc_ref(rx, ry), abs=1e-12)


def test_plcc_affine_invariance():
    rng = np.random.default_rng(3)
    x = rng.normal(size=25)
    y = rng.normal(size=25)
    base = plcc(x, y)
    assert plcc(2.5 * x + 7.0, y) == pytest.approx(base, abs=1e-12)
    assert plcc(x, -3.0 * y + 1.0) == pytest.approx(-base, abs=1e-12)


def test_srcc_invariant_under_monotone_transform():
    rng = np.random.default_rng(11)
    x = rng.random(30)
    y = rng.random(30)
    assert srcc(np.exp(x), y) == pytest.approx(srcc(x, y), abs=1e-12)


def test_symmetry():
    x, y = [1.0, 5.0, 2.0, 8.0], [0.2, 0.9, 0.4, 0.1]
    assert plcc(x, y) == pytest.approx(plcc(y, x), abs=1e-15)
    assert srcc(x, y) == pytest.approx(srcc(y, x), abs=1e-15)


def test_constant_series_raises():
    with pytest.raises(ConstantSeriesError):
        plcc([1.0, 1.0, 1.0], [1, 2, 3])
    with pytest.raises(ConstantSeriesError):
        plcc([1, 2, 3], [4.0, 4.0, 4.0])
    with pytest.raises(ConstantSeriesError):
        srcc([2, 2, 2], [1, 2, 3])


def test_length_validation():
    with pytest.raises(ValueError):
        plcc([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        plcc([1, 2], [3, 4])  # below minimum sample count
    with pytest.raises(ValueError):
        srcc([1], [2])


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _tables(n_img=4, constant_col=False):
    rows_iq, rows_pq = [], []
    rng = np.random.default_rng(5)
    for f in ("fog", "jpeg"):
        for s in (1, 2, 3):
            for i in range(n_img):
                img = f"im_{i:02d}"
                base = 40.0 - 8.0 * s + rng.normal(0, 0.5)
                iq = {
                    "image_id": img,
                    "factor": f,
                    "severity": s,
                    "psnr": base,
                    "ssim": 1.0 / (1.0 + np.exp(-base / 10)),
                }
                if constant_col:
                    iq["flat"] = 7.0
                rows_iq.append(iq)
                rows_pq.append(
                    {
                        "image_id": img,
                        "factor": f,
                        "severity": s,
                        "pq": base * 1.5 + rng.normal(0, 0.2),
                        "sq": base * 0.8 + rng.normal(0, 0.2),
                    }
                )
    return pd.DataFrame(rows_iq), pd.DataFrame(rows_pq)


def test_report_image_mode_shapes():
    iq, pqt = _tables()
    rep = correlation_report(iq, pqt, mode="image")
    assert rep.mode == "image"
    assert set(rep.rows) == {"psnr", "ssim"}
    assert set(rep.cols) == {"pq", "sq"}
    p, s, n = rep.cell("psnr", "pq")
    assert n == 24
    assert -1.0 <= p <= 1.0 and -1.0 <= s <= 1.0


def test_report_factor_mode_averages_first():
    iq, pqt = _tables()
    rep = correlation_report(iq, pqt, mode="factor")
    p, _, n = rep.cell("psnr", "pq")
    assert n == 6  # 2 factors x 3 severities
    # oracle: average per condition, then correlate
    gi = iq.groupby(["factor", "severity"], as_index=False).mean(numeric_only=True)
    gp = pqt.groupby(["factor", "severity"], as_index=False).mean(numeric_only=True)
    j = gi.merge(gp, on=["factor", "severity"])
    assert p == pytest.approx(_plcc_ref(j["psnr"], j["pq"]), abs=1e-12)


def test_report_self_correlation_is_one():
    iq, _ = _tables()
    rep = correlation_report(iq, iq.rename(columns={"psnr": "pq"}), mode="image", pq_cols=["pq"])
    p, s, _ = rep.cell("psnr", "pq")
    assert p == pytest.approx(1.0, abs=1e-12)
    assert s == pytest.approx(1.0, abs=1e-12)


def test_report_extra_metric_columns_ride_along():
    iq, pqt = _tables()
    iq["lpips"] = 1.0 - iq["ssim"] + 0.001 * np.arange(len(iq))
    rep = correlation_report(iq, pqt, mode="image")
    assert "lpips" in rep.rows


def test_report_constant_cell_gets_nan_and_note():
    iq, pqt = _tables(constant_col=True)
    rep = correlation_report(iq, pqt, mode="image")
    p, s, _ = rep.cell("flat", "pq")
    assert math.isnan(p) and math.isnan(s)
    assert any("flat" in note for note in rep.notes)


def test_report_empty_join_raises():
    iq, pqt = _tables()
    pqt = pqt.assign(factor="zzz")
    with pytest.raises(ValueError):
        correlation_report(iq, pqt, mode="image")


def test_report_bad_mode_and_missing_keys():
    iq, pqt = _tables()
    with pytest.raises(ValueError):
        correlation_report(iq, pqt, mode="weird")
    with pytest.raises(ValueError):
        correlation_report(iq.drop(columns=["factor"]), pqt, mode="image")


def test_report_serialization():
    iq, pqt = _tables(constant_col=True)
    rep = correlation_report(iq, pqt, mode="factor")
    d = rep.to_dict()
    assert d["mode"] == "factor"
    fi, pj = d["rows"].index("flat"), d["cols"].index("pq")
    assert d["plcc"][fi][pj] is None  # NaN serializes as null
    gi = d["rows"].index("psnr")
    assert isinstance(d["plcc"][gi][pj], float)
    assert isinstance(d["n"][gi][pj], int)
    md = rep.to_markdown()
    assert md.count("|") > 10
    for name in rep.rows:
        assert name in md
