"""Serialisation of profiles and comparison tables (CSV, JSON, Markdown)."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Optional, Sequence

from .profiler import TextProfile
from .stats import ComparisonTable, GroupMean, PairedComparison

PROFILE_COLUMNS = [
    "text_id", "n_bigrams", "n_attested", "n_high_mi", "n_high_t", "pct_high_mi", "pct_high_t",
]
COMPARISON_COLUMNS = [
    "measure", "row", "col", "mean_diff", "t_stat", "df", "p_value",
    "cohen_d_z", "cohen_d_av", "pct_same_sign", "n", "error",
]
MEANS_COLUMNS = ["group", "measure", "mean", "sd", "n"]
PLOT_COLUMNS = ["measure", "group", "mean", "se", "n"]
MEASURE_LABELS = {"high_mi": "High MI", "high_t": "High t-score"}
SIGNIFICANCE = 1e-4


def fmt(value, decimals: int = 2) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{decimals}f}"
    return str(value)


def fmt_p(p: Optional[float]) -> str:
    return "" if p is None else f"{p:.6g}"


def _csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _md(header: Sequence[str], rows: Iterable[Sequence[str]], align: Optional[Sequence[str]] = None) -> str:
    align = align or ["---"] * len(header)
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join(align) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


# -- profiles ------------------------------------------------------------------


def profiles_to_csv(profiles: Sequence[TextProfile], decimals: int = 2, groups: Optional[Sequence[str]] = None) -> str:
    header = PROFILE_COLUMNS + (["group"] if groups is not None else [])
    rows = [header]
    for i, p in enumerate(profiles):
        row = [p.text_id, p.n_bigrams, p.n_attested, p.n_high_mi, p.n_high_t,
               fmt(p.pct_high_mi, decimals), fmt(p.pct_high_t, decimals)]
        if groups is not None:
            row.append(groups[i])
        rows.append(row)
    return _csv(rows)


def profiles_to_json(profiles: Sequence[TextProfile], groups: Optional[Sequence[str]] = None) -> str:
    out = []
    for i, p in enumerate(profiles):
        d = p.to_dict()
        if groups is not None:
            d["group"] = groups[i]
        out.append(d)
    return _json(out)


def profiles_to_markdown(profiles: Sequence[TextProfile], decimals: int = 2, groups: Optional[Sequence[str]] = None) -> str:
    csv_text = profiles_to_csv(profiles, decimals, groups)
    rows = list(csv.reader(io.StringIO(csv_text)))
    return _md(rows[0], rows[1:])


def read_profiles_csv(text: str) -> list[tuple[TextProfile, Optional[str]]]:
    """Parse profile CSV back; the second item is the group column, if any."""
    reader = csv.DictReader(io.StringIO(text))
    missing = set(PROFILE_COLUMNS) - set(reader.fieldnames or [])
    if missing:
        raise ValueError(f"profile CSV lacks columns: {sorted(missing)}")

    def pct(s):
        return float(s) if s != "" else None

    out = []
    for row in reader:
        profile = TextProfile(
            row["text_id"], int(row["n_bigrams"]), int(row["n_attested"]),
            int(row["n_high_mi"]), int(row["n_high_t"]),
            pct(row["pct_high_mi"]), pct(row["pct_high_t"]),
        )
        out.append((profile, row.get("group")))
    return out


# -- comparisons ---------------------------------------------------------------


def means_to_csv(means: Sequence[GroupMean], decimals: int = 2) -> str:
    rows = [MEANS_COLUMNS]
    rows += [[m.group, m.measure, fmt(m.mean, decimals), fmt(m.sd, decimals), m.n] for m in means]
    return _csv(rows)


def plot_data_csv(means: Sequence[GroupMean], decimals: int = 4) -> str:
    rows = [PLOT_COLUMNS]
    rows += [[m.measure, m.group, fmt(m.mean, decimals), fmt(m.se, decimals), m.n] for m in means]
    return _csv(rows)


def _cell_row(c: PairedComparison, decimals: int) -> list:
    return [
        c.measure, c.row, c.col, fmt(c.mean_diff, decimals), fmt(c.t_stat, decimals),
        fmt(c.df), fmt_p(c.p_value), fmt(c.cohen_d_z, decimals), fmt(c.cohen_d_av, decimals),
        fmt(c.pct_same_sign, decimals), c.n, c.error or "",
    ]


def comparisons_to_csv(tables: Sequence[ComparisonTable], decimals: int = 2) -> str:
    rows = [COMPARISON_COLUMNS]
    for table in tables:
        rows += [_cell_row(c, decimals) for c in table.cells]
    return _csv(rows)


def report_to_json(tables: Sequence[ComparisonTable], excluded: Sequence[str] = ()) -> str:
    return _json({
        "group_means": [
            {"group": m.group, "measure": m.measure, "mean": m.mean, "sd": m.sd, "se": m.se, "n": m.n}
            for t in tables for m in t.means
        ],
        "comparisons": {t.measure: [c.to_dict() for c in t.cells] for t in tables},
        "excluded_texts": list(excluded),
    })


def means_to_markdown(tables: Sequence[ComparisonTable], decimals: int = 2) -> str:
    """Group means, one row per measure and one column per group."""
    groups = tables[0].groups
    rows = [
        [MEASURE_LABELS.get(t.measure, t.measure)] + [fmt(m.mean, decimals) for m in t.means]
        for t in tables
    ]
    return _md(["Measure"] + groups, rows, ["---"] + ["---:"] * len(groups))


def triangle_to_markdown(tables: Sequence[ComparisonTable], decimals: int = 2) -> str:
    """Row-minus-column differences with d_z and same-sign percentage.

    Differences significant at p < 0.0001 carry a star.
    """
    groups = tables[0].groups
    cols = groups[:-1]
    header = [""] + [f"{g} {k}" for g in cols for k in ("D", "Es", "%")]
    rows = []
    for t in tables:
        rows.append([f"**{MEASURE_LABELS.get(t.measure, t.measure)}**"] + [""] * (3 * len(cols)))
        for i, row in enumerate(groups[1:], start=1):
            line = [row]
            for j, col in enumerate(cols):
                if j >= i:
                    line += ["", "", ""]
                    continue
                c = t.cell(row, col)
                if c.degenerate:
                    line += [fmt(c.mean_diff, decimals) + "†", "", ""]
                    continue
                star = "*" if c.p_value < SIGNIFICANCE else ""
                line += [fmt(c.mean_diff, decimals) + star, fmt(c.cohen_d_z, decimals),
                         fmt(c.pct_same_sign, decimals)]
            rows.append(line)
    text = _md(header, rows, ["---"] + ["---:"] * (3 * len(cols)))
    notes = ["", "D: row minus column. Es: Cohen's d_z. %: texts whose difference has the sign of D.",
             "\\* p < 0.0001 (paired t-test, two-tailed)."]
    if any(c.degenerate for t in tables for c in t.cells):
        notes.append("† statistics undefined (fewer than 2 pairs or zero variance).")
    return text + "\n".join(notes) + "\n"


def report_to_markdown(tables: Sequence[ComparisonTable], decimals: int = 2, excluded: Sequence[str] = ()) -> str:
    parts = [
        "## Average percentages of highly collocational bigrams\n\n",
        means_to_markdown(tables, decimals),
        "\n## Differences and effect sizes\n\n",
        triangle_to_markdown(tables, decimals),
    ]
    if excluded:
        parts.append("\nExcluded (no bigrams): " + ", ".join(excluded) + "\n")
    return "".join(parts)
