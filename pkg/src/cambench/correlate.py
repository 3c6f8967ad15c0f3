"""Correlation between image-quality columns and panoptic-quality columns.

plcc is plain Pearson; srcc ranks both series first (average ranks on ties,
the tie-exact form rather than the 6*sum(d^2) shortcut) and then applies
Pearson to the ranks.  Report cells that hit a constant series are recorded
as NaN with a note instead of aborting the whole matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.stats import rankdata

from .errors import ConstantSeriesError

_MIN_SAMPLES = 3


def _series_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    xa = np.asarray(x, dtype=np.float64).ravel()
    ya = np.asarray(y, dtype=np.float64).ravel()
    if xa.size != ya.size:
        raise ValueError(f"series lengths differ: {xa.size} vs {ya.size}")
    if xa.size < _MIN_SAMPLES:
        raise ValueError(f"need at least {_MIN_SAMPLES} samples, got {xa.size}")
    return xa, ya


def plcc(x, y) -> float:
    """Pearson linear correlation coefficient."""
    xa, ya = _series_pair(x, y)
    xd = xa - xa.mean()
    yd = ya - ya.mean()
    sx = float(np.dot(xd, xd))
    sy = float(np.dot(yd, yd))
    if sx == 0.0 or sy == 0.0:
        raise ConstantSeriesError("correlation undefined for a constant series")
    return float(np.dot(xd, yd) / np.sqrt(sx * sy))


def srcc(x, y) -> float:
    """Spearman rank correlation: Pearson over average-tied ranks."""
    xa, ya = _series_pair(x, y)
    return plcc(rankdata(xa, method="average"), rankdata(ya, method="average"))


@dataclass(frozen=True)
class CorrelationReport:
    """PLCC/SRCC matrices of quality metrics against panoptic scores."""

    rows: tuple  # quality metric column names
    cols: tuple  # panoptic score column names
    plcc: np.ndarray  # (len(rows), len(cols)) float64, NaN where undefined
    srcc: np.ndarray
    n: np.ndarray  # sample count per cell, int64
    mode: str
    notes: tuple = field(default_factory=tuple)

    def cell(self, row: str, col: str) -> tuple[float, float, int]:
        i, j = self.rows.index(row), self.cols.index(col)
        return float(self.plcc[i, j]), float(self.srcc[i, j]), int(self.n[i, j])

    def to_dict(self) -> dict:
        def mat(m: np.ndarray) -> list:
            return [[None if np.isnan(v) else float(v) for v in r] for r in m]

        return {
            "mode": self.mode,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "plcc": mat(self.plcc),
            "srcc": mat(self.srcc),
            "n": self.n.astype(int).tolist(),
            "notes": list(self.notes),
        }

    def to_markdown(self) -> str:
        def fmt(v: float) -> str:
            return "nan" if np.isnan(v) else f"{v:+.4f}"

        lines = [f"Correlation matrix (mode={self.mode}; each cell PLCC / SRCC, n samples)", ""]
        header = "| metric | " + " | ".join(self.cols) + " |"
        rule = "|---" * (len(self.cols) + 1) + "|"
        lines += [header, rule]
        for i, r in enumerate(self.rows):
            cells = [
                f"{fmt(self.plcc[i, j])} / {fmt(self.srcc[i, j])} (n={int(self.n[i, j])})"
                for j in range(len(self.cols))
            ]
            lines.append("| " + " | ".join([r] + cells) + " |")
        if self.notes:
            lines += ["", "Notes:"] + [f"- {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


_KEY_IMAGE = ["image_id", "factor", "severity"]
_KEY_FACTOR = ["factor", "severity"]


def _numeric_columns(table: pd.DataFrame, exclude) -> list[str]:
    out = []
    for c in table.columns:
        if c in exclude:
            continue
        if pd.api.types.is_numeric_dtype(table[c]):
            out.append(c)
    return out


def correlation_report(
    iq_table: pd.DataFrame,
    pq_table: pd.DataFrame,
    mode: str = "factor",
    pq_cols=None,
) -> CorrelationReport:
    """Correlate every quality column against every panoptic score column.

    mode="image" joins row-for-row on (image_id, factor, severity);
    mode="factor" first averages both tables to (factor, severity) cells.
    Unknown numeric columns ride along, so externally computed metrics
    correlate without special support.
    """
    if mode not in ("factor", "image"):
        raise ValueError(f"unknown mode: {mode!r}")
    key = _KEY_FACTOR if mode == "factor" else _KEY_IMAGE
    for name, t in (("quality", iq_table), ("panoptic", pq_table)):
        missing = [k for k in key if k not in t.columns]
        if missing:
            raise ValueError(f"{name} table lacks join columns {missing}")

    iq = iq_table.copy()
    pq = pq_table.copy()
    metric_cols = _numeric_columns(iq, set(_KEY_IMAGE))
    score_cols = list(pq_cols) if pq_cols is not None else _numeric_columns(pq, set(_KEY_IMAGE))
    if not metric_cols or not score_cols:
        raise ValueError("no numeric columns to correlate")

    if mode == "factor":
        iq = iq.groupby(_KEY_FACTOR, as_index=False)[metric_cols].mean()
        pq = pq.groupby(_KEY_FACTOR, as_index=False)[score_cols].mean()
    joined = iq.merge(pq, on=key, how="inner", suffixes=("", "_pq"))
    if joined.empty:
        raise ValueError("join produced no rows; keys do not overlap")

    score_joined = [c if c in joined.columns else f"{c}_pq" for c in score_cols]
    p = np.full((len(metric_cols), len(score_cols)), np.nan)
    s = np.full_like(p, np.nan)
    n = np.zeros(p.shape, dtype=np.int64)
    notes = []
    for i, mc in enumerate(metric_cols):
        for j, (sc, sj) in enumerate(zip(score_cols, score_joined)):
            pair = joined[[mc, sj]].dropna()
            n[i, j] = len(pair)
            if len(pair) < _MIN_SAMPLES:
                notes.append(f"{mc} vs {sc}: only {len(pair)} samples, skipped")
                continue
            try:
                p[i, j] = plcc(pair[mc], pair[sj])
                s[i, j] = srcc(pair[mc], pair[sj])
            except ConstantSeriesError:
                notes.append(f"{mc} vs {sc}: constant series, correlation undefined")
    return CorrelationReport(
        rows=tuple(metric_cols),
        cols=tuple(score_cols),
        plcc=p,
        srcc=s,
        n=n,
        mode=mode,
        notes=tuple(notes),
    )
