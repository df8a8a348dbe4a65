"""Paired comparisons of per-text percentages.

Paired Student's t-test, Cohen's d (paired ``d_z`` and averaged-sd
``d_av``), the same-sign percentage, and the all-pairs triangular table.
The t distribution tail is computed here from the regularized incomplete
beta function, with no SciPy dependency.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "StatisticsError",
    "DegenerateSampleError",
    "InsufficientDataError",
    "PairedSample",
    "PairedComparison",
    "GroupMean",
    "ComparisonTable",
    "MEASURES",
    "betainc",
    "t_sf",
    "paired_t_test",
    "cohens_d",
    "cohens_d_av",
    "same_sign_pct",
    "compare_pair",
    "group_means",
    "compare_all",
]

MEASURES = ("high_mi", "high_t")

_BETA_TOL = 1e-12
_BETA_MAXITER = 300
_TINY = 1e-300


class StatisticsError(ValueError):
    pass


class DegenerateSampleError(StatisticsError):
    pass


class InsufficientDataError(StatisticsError):
    pass


# -- t distribution ----------------------------------------------------------


def _beta_cf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAXITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_TOL:
            return h
    raise StatisticsError(
        f"incomplete beta did not converge in {_BETA_MAXITER} iterations (a={a}, b={b}, x={x})"
    )


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function ``I_x(a, b)``."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def t_sf(t_stat: float, df: float) -> float:
    """Two-tailed p-value ``P(|T| >= |t|)`` for Student's t with ``df`` degrees of freedom.

    >>> round(t_sf(2.7764, 4), 4)
    0.05
    """
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if t_stat == 0:
        return 1.0
    if math.isinf(t_stat):
        return 0.0
    t2 = t_stat * t_stat
    # I_{df/(df+t^2)}(df/2, 1/2), passing 1-x in closed form keeps precision for small t
    x = df / (df + t2)
    a, b = df / 2.0, 0.5
    if x < (a + 1.0) / (a + b + 2.0):
        p = betainc(a, b, x)
    else:
        p = 1.0 - betainc(b, a, t2 / (df + t2))
    return min(1.0, max(0.0, p))


# -- paired samples ----------------------------------------------------------


@dataclass(frozen=True)
class PairedSample:
    """Two aligned score vectors; pairs with a missing side are dropped."""

    ids: tuple
    a: np.ndarray
    b: np.ndarray

    @classmethod
    def from_values(cls, a: Sequence[Optional[float]], b: Sequence[Optional[float]], ids: Optional[Sequence] = None) -> "PairedSample":
        if len(a) != len(b):
            raise ValueError(f"paired vectors differ in length: {len(a)} vs {len(b)}")
        ids = list(range(len(a))) if ids is None else list(ids)
        if len(ids) != len(a):
            raise ValueError("ids and values differ in length")
        keep = [
            i for i, (x, y) in enumerate(zip(a, b))
            if x is not None and y is not None and not (math.isnan(x) or math.isnan(y))
        ]
        return cls(
            tuple(ids[i] for i in keep),
            np.array([a[i] for i in keep], dtype=float),
            np.array([b[i] for i in keep], dtype=float),
        )

    @classmethod
    def from_differences(cls, diffs: Sequence[float]) -> "PairedSample":
        return cls.from_values(list(diffs), [0.0] * len(diffs))

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def diffs(self) -> np.ndarray:
        return self.a - self.b

    def swapped(self) -> "PairedSample":
        return PairedSample(self.ids, self.b, self.a)


def _diff_moments(sample: PairedSample) -> tuple[float, float]:
    if sample.n < 2:
        raise InsufficientDataError(f"need at least 2 usable pairs, got {sample.n}")
    d = sample.diffs
    mean = math.fsum(d) / len(d)
    sd = math.sqrt(math.fsum((d - mean) ** 2) / (len(d) - 1))
    if sd == 0:
        raise DegenerateSampleError("differences have zero standard deviation")
    return mean, sd


def paired_t_test(sample: PairedSample) -> tuple[float, int, float]:
    """Student's t-test for repeated measures.

    Returns ``(t_stat, df, p_value)`` with a two-tailed p.
    """
    mean, sd = _diff_moments(sample)
    t = mean / (sd / math.sqrt(sample.n))
    df = sample.n - 1
    return t, df, t_sf(t, df)


def cohens_d(sample: PairedSample) -> float:
    """Paired effect size ``d_z = |mean(diff)| / sd(diff)``."""
    mean, sd = _diff_moments(sample)
    return abs(mean) / sd


def cohens_d_av(sample: PairedSample) -> float:
    """``|mean(a) - mean(b)|`` over the average of the two group sds."""
    if sample.n < 2:
        raise InsufficientDataError(f"need at least 2 usable pairs, got {sample.n}")
    sd_av = (np.std(sample.a, ddof=1) + np.std(sample.b, ddof=1)) / 2
    if sd_av == 0:
        raise DegenerateSampleError("both groups have zero standard deviation")
    return float(abs(sample.a.mean() - sample.b.mean()) / sd_av)


def same_sign_pct(sample: PairedSample) -> float:
    """Percent of pairs whose difference has the sign of the mean difference.

    Zero differences never match but stay in the denominator.
    """
    if sample.n < 1:
        raise InsufficientDataError("empty sample")
    d = sample.diffs
    mean = math.fsum(d) / len(d)
    if mean == 0:
        raise StatisticsError("mean difference is zero, reference sign undefined")
    matching = int(np.count_nonzero(np.sign(d) == math.copysign(1.0, mean)))
    return 100.0 * matching / sample.n


# -- comparisons -------------------------------------------------------------


@dataclass(frozen=True)
class PairedComparison:
    """One row-minus-column cell of the comparison table.

    ``error`` is set when the statistics could not be computed; the
    fields that depend on them are then ``None``.
    """

    measure: str
    row: str
    col: str
    n: int
    mean_diff: Optional[float]
    t_stat: Optional[float] = None
    df: Optional[int] = None
    p_value: Optional[float] = None
    cohen_d_z: Optional[float] = None
    cohen_d_av: Optional[float] = None
    pct_same_sign: Optional[float] = None
    error: Optional[str] = None

    @property
    def degenerate(self) -> bool:
        return self.error is not None

    def to_dict(self) -> dict:
        return asdict(self)


def compare_pair(sample: PairedSample, measure: str = "high_mi", row: str = "A", col: str = "B") -> PairedComparison:
    """All statistics for one pair of groups, ``row - col``.

    Failures (too few pairs, zero variance) are recorded in ``error``
    instead of raised.
    """
    n = sample.n
    mean_diff = float(math.fsum(sample.diffs) / n) if n else None
    try:
        t, df, p = paired_t_test(sample)
        d_z = cohens_d(sample)
        pct = same_sign_pct(sample)
    except StatisticsError as exc:
        return PairedComparison(measure, row, col, n, mean_diff, error=str(exc))
    try:
        d_av = cohens_d_av(sample)
    except StatisticsError:
        d_av = None
    return PairedComparison(measure, row, col, n, mean_diff, t, df, p, d_z, d_av, pct)


@dataclass(frozen=True)
class GroupMean:
    group: str
    measure: str
    mean: Optional[float]
    sd: Optional[float]
    n: int

    @property
    def se(self) -> Optional[float]:
        if self.sd is None or self.n < 1:
            return None
        return self.sd / math.sqrt(self.n)


def _values(profiles, measure: str) -> dict:
    attr = f"pct_{measure}"
    if isinstance(profiles, Mapping):
        profiles = profiles.values()
    return {p.text_id: getattr(p, attr) for p in profiles}


def group_means(groups: Mapping[str, Sequence], measure: str, order: Optional[Sequence[str]] = None) -> list[GroupMean]:
    out = []
    for name in order or list(groups):
        vals = [v for v in _values(groups[name], measure).values() if v is not None]
        n = len(vals)
        mean = math.fsum(vals) / n if n else None
        sd = float(np.std(vals, ddof=1)) if n > 1 else None
        out.append(GroupMean(name, measure, mean, sd, n))
    return out


@dataclass
class ComparisonTable:
    """Group means and the lower-triangular comparison grid for one measure."""

    measure: str
    groups: list[str]
    means: list[GroupMean]
    cells: list[PairedComparison] = field(default_factory=list)

    def cell(self, row: str, col: str) -> PairedComparison:
        for c in self.cells:
            if c.row == row and c.col == col:
                return c
        raise KeyError((row, col))

    @property
    def all_degenerate(self) -> bool:
        return bool(self.cells) and all(c.degenerate for c in self.cells)


def compare_all(
    groups: Mapping[str, Sequence],
    measure: str = "high_mi",
    order: Optional[Sequence[str]] = None,
) -> ComparisonTable:
    """Compare every pair of groups on one measure.

    ``groups`` maps a group name to its profiles (anything with
    ``text_id`` and ``pct_high_mi``/``pct_high_t``). Texts are paired by
    ``text_id``. For groups ``g0, g1, ...`` in ``order``, the cell for
    ``(gi, gj)`` with ``i > j`` holds ``gi - gj``, so the table fills the
    lower triangle, row-minus-column.
    """
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {MEASURES}")
    order = list(order) if order is not None else list(groups)
    if len(order) < 2:
        raise ValueError("need at least two groups to compare")
    missing = [g for g in order if g not in groups]
    if missing:
        raise KeyError(f"unknown groups: {missing}")

    values = {g: _values(groups[g], measure) for g in order}
    table = ComparisonTable(measure, order, group_means(groups, measure, order))
    for i, row in enumerate(order):
        for col in order[:i]:
            ids = sorted(set(values[row]) & set(values[col]))
            sample = PairedSample.from_values(
                [values[row][k] for k in ids], [values[col][k] for k in ids], ids
            )
            table.cells.append(compare_pair(sample, measure, row, col))
    return table
