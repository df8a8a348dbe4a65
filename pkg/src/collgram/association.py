"""Mutual information and t-score for bigrams, and threshold classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .index import CorpusIndex, lookup

__all__ = [
    "UndefinedScoreError",
    "AssociationScores",
    "Thresholds",
    "Classification",
    "N_BASES",
    "expected_frequency",
    "mutual_information",
    "t_score",
    "score_bigram",
    "classify",
]

N_BASES = ("tokens", "bigrams")


class UndefinedScoreError(ValueError):
    pass


@dataclass(frozen=True)
class AssociationScores:
    mi: Optional[float]
    t: Optional[float]
    attested: bool
    observed: int = 0
    expected: Optional[float] = None

    @property
    def defined(self) -> bool:
        return self.mi is not None


@dataclass(frozen=True)
class Thresholds:
    """Inclusive lower bounds for a bigram to count as highly collocational."""

    mi_min: float = 5.0
    t_min: float = 6.0

    def __post_init__(self):
        if not (math.isfinite(self.mi_min) and math.isfinite(self.t_min)):
            raise ValueError(f"thresholds must be finite, got {self.mi_min}, {self.t_min}")


@dataclass(frozen=True)
class Classification:
    high_mi: bool
    high_t: bool
    attested: bool


def expected_frequency(f1: int, f2: int, n: int) -> float:
    """Bigram count expected under independence, ``f1 * f2 / n``."""
    if n <= 0:
        raise UndefinedScoreError(f"expected frequency needs n > 0, got {n}")
    # int product then true division: one rounding step
    return f1 * f2 / n


def mutual_information(observed: int, expected: float) -> float:
    """Pointwise mutual information in bits, ``log2(O / E)``."""
    if observed <= 0 or expected <= 0:
        raise UndefinedScoreError(f"MI undefined for O={observed}, E={expected}")
    return math.log2(observed / expected)


def t_score(observed: int, expected: float) -> float:
    """``(O - E) / sqrt(O)``."""
    if observed <= 0:
        raise UndefinedScoreError(f"t-score undefined for O={observed}")
    return (observed - expected) / math.sqrt(observed)


def score_bigram(index: CorpusIndex, w1: str, w2: str, n_basis: str = "tokens") -> AssociationScores:
    """Look ``(w1, w2)`` up in ``index`` and score it.

    ``n_basis`` picks the corpus size used for the expected frequency:
    word tokens (default) or bigram tokens. Unattested pairs come back
    with ``mi`` and ``t`` set to ``None``.
    """
    if n_basis not in N_BASES:
        raise ValueError(f"n_basis must be one of {N_BASES}, got {n_basis!r}")
    hit = lookup(index, w1, w2)
    if not hit.attested or hit.f1 <= 0 or hit.f2 <= 0:
        return AssociationScores(None, None, hit.attested, hit.observed)
    n = hit.n if n_basis == "tokens" else index.total_bigram_tokens
    e = expected_frequency(hit.f1, hit.f2, n)
    return AssociationScores(
        mutual_information(hit.observed, e), t_score(hit.observed, e), True, hit.observed, e
    )


def classify(scores: AssociationScores, thresholds: Thresholds = Thresholds()) -> Classification:
    if not scores.attested or not scores.defined:
        return Classification(False, False, scores.attested)
    return Classification(
        scores.mi >= thresholds.mi_min, scores.t >= thresholds.t_min, True
    )
