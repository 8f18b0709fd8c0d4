"""Flat result records, CSV/JSON emission, and scaling-law statistics.

CSV output is versioned with a `# powerwalk v1` header comment and a fixed
column order so runs diff cleanly; JSON output is an array of flat records
(search sums nested under "sums"). Floats are written with repr, which is
shortest-round-trip and byte-deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

CSV_VERSION_HEADER = "# powerwalk v1"

SEARCH_COLUMNS = (
    "L",
    "N",
    "t",
    "alpha_exact",
    "alpha_estimate",
    "Q",
    "p_s",
    "p_s_bound",
    "Q_O",
    "Q_G",
    "S1",
    "S2",
    "S3",
    "lower",
    "upper",
)

TULSI_COLUMNS = SEARCH_COLUMNS + (
    "delta",
    "tan2_delta",
    "a_pi",
    "alpha_delta",
    "Q_delta",
)

SUMS_COLUMNS = ("L", "N", "t", "S1", "S2", "S3", "lower", "upper")

SZEGEDY_COLUMNS = (
    "N",
    "k",
    "chain",
    "discriminant_error",
    "eigenphase_error",
    "query_cost",
)

GAP_COLUMNS = ("g", "t", "g_t")

SUM_FIELDS = ("S1", "S2", "S3", "lower", "upper")


def format_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(columns: Sequence[str], records: Sequence[dict]) -> str:
    lines = [CSV_VERSION_HEADER, ",".join(columns)]
    for rec in records:
        lines.append(",".join(format_value(rec[c]) for c in columns))
    return "\n".join(lines) + "\n"


def to_json(columns: Sequence[str], records: Sequence[dict]) -> str:
    """JSON array of records; the five sum columns nest under "sums"."""
    out = []
    for rec in records:
        flat = {c: rec[c] for c in columns if c not in SUM_FIELDS}
        sums = {c: rec[c] for c in SUM_FIELDS if c in columns and c in rec}
        if sums:
            flat["sums"] = sums
        out.append(flat)
    return json.dumps(out, indent=2, sort_keys=False) + "\n"


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Ordinary least squares slope of ln(y) on ln(x) and its RMS residual."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two matching points for a slope fit")
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((a - mx) ** 2 for a in lx)
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    slope = sxy / sxx
    intercept = my - slope * mx
    rss = sum((b - (intercept + slope * a)) ** 2 for a, b in zip(lx, ly))
    return slope, math.sqrt(rss / n)


def band(values: Sequence[float]) -> dict[str, float]:
    """Min/max/ratio statistics of a normalized quantity across a sweep."""
    vmin = min(values)
    vmax = max(values)
    return {
        "min": vmin,
        "max": vmax,
        "ratio": vmax / vmin if vmin > 0 else math.inf,
    }


@dataclass
class ScalingReport:
    """Per-size records plus fitted slope and band statistics.

    A slope is only fitted when at least ``min_sizes_for_slope`` sizes are
    present; the residual is reported, never silently asserted.
    """

    records: list[dict] = field(default_factory=list)
    slopes: dict[str, tuple[float, float]] = field(default_factory=dict)
    bands: dict[str, dict[str, float]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)

    min_sizes_for_slope: int = 4

    def fit_slope(self, name: str, xs: Sequence[float], ys: Sequence[float]) -> None:
        if len(xs) >= self.min_sizes_for_slope:
            self.slopes[name] = fit_loglog_slope(xs, ys)

    def add_band(self, name: str, values: Sequence[float]) -> None:
        self.bands[name] = band(values)

    def all_passed(self) -> bool:
        return all(self.checks.values())

    def summary_lines(self) -> list[str]:
        lines = []
        for name, (slope, resid) in self.slopes.items():
            lines.append(f"slope {name}: {slope:.4f} (rms residual {resid:.4f})")
        for name, stats in self.bands.items():
            lines.append(
                f"band {name}: min {stats['min']:.6g}, max {stats['max']:.6g}, "
                f"ratio {stats['ratio']:.4f}"
            )
        for name, ok in self.checks.items():
            lines.append(f"check {name}: {'pass' if ok else 'FAIL'}")
        return lines
