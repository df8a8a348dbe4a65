"""scikit-learn transformer wrapping the index + profiler pipeline."""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import (
    INPUT_FORMATS,
    check_documents,
    check_finite,
    check_ids,
    check_option,
    check_positive_int,
    to_tokens,
)
from .association import N_BASES, Thresholds
from .index import CorpusIndex, count_tokens, index_from_counts, merge_counts
from .profiler import (
    DENOMINATOR_MODES,
    ExtractionPolicy,
    TextProfile,
    profile_collection,
)

FEATURE_NAMES = np.array(["pct_high_mi", "pct_high_t"], dtype=object)


class CollGramProfiler(TransformerMixin, BaseEstimator):
    """Percentages of highly collocational bigrams per text.

    ``fit`` counts unigrams and bigrams of a reference corpus; ``transform``
    maps each text to ``[pct_high_mi, pct_high_t]``, with NaN for texts
    that have no bigram to divide by.

    Parameters
    ----------
    mi_threshold, t_threshold : float
        Inclusive cut-offs for high MI and high t-score.
    denominator : {"all", "attested"}
        Divide by all retained bigrams of the text, or only those found
        in the reference corpus.
    fold_case : bool
        Lowercase words before counting and lookup.
    n_basis : {"tokens", "bigrams"}
        Corpus size used in the expected frequency.
    min_count : int
        Reference bigrams seen fewer times are dropped from the index.
    input_format : {"plain", "vertical", "underscore"}
        How string documents are tokenized.
    exclude_tag_prefixes : tuple of str
        Bigrams containing a token whose tag starts with one of these are
        ignored.

    Attributes
    ----------
    index_ : CorpusIndex
    n_features_out_ : int

    Examples
    --------
    >>> est = CollGramProfiler(mi_threshold=1.0, t_threshold=0.5).fit(["the cat sat on the mat"])
    >>> est.transform(["the cat ran"]).tolist()
    [[50.0, 50.0]]
    """

    def __init__(
        self,
        mi_threshold: float = 5.0,
        t_threshold: float = 6.0,
        denominator: str = "all",
        fold_case: bool = True,
        n_basis: str = "tokens",
        min_count: int = 1,
        input_format: str = "plain",
        exclude_tag_prefixes: tuple = ("NP", "MC"),
    ):
        self.mi_threshold = mi_threshold
        self.t_threshold = t_threshold
        self.denominator = denominator
        self.fold_case = fold_case
        self.n_basis = n_basis
        self.min_count = min_count
        self.input_format = input_format
        self.exclude_tag_prefixes = exclude_tag_prefixes

    @classmethod
    def from_index(cls, index: CorpusIndex, **params) -> "CollGramProfiler":
        """An already fitted profiler around a prebuilt index."""
        params.setdefault("fold_case", index.fold_case)
        params.setdefault("min_count", index.min_count)
        est = cls(**params)
        est._validate_params()
        est.index_ = index
        est.n_features_out_ = len(FEATURE_NAMES)
        return est

    def _validate_params(self):
        check_finite("mi_threshold", self.mi_threshold)
        check_finite("t_threshold", self.t_threshold)
        check_option("denominator", self.denominator, DENOMINATOR_MODES)
        check_option("n_basis", self.n_basis, N_BASES)
        check_option("input_format", self.input_format, INPUT_FORMATS)
        check_positive_int("min_count", self.min_count)

    def _tokens(self, doc):
        return to_tokens(doc, self.input_format, bool(self.fold_case))

    def fit(self, X, y=None):
        """Build the reference index from documents ``X``.

        Documents are separated by a sentence break, so no bigram spans
        two documents.
        """
        self._validate_params()
        docs = check_documents(X)
        parts = (count_tokens(self._tokens(d), bool(self.fold_case)) for d in docs)
        self.index_ = index_from_counts(
            merge_counts(parts), bool(self.fold_case), self.min_count, source=f"{len(docs)} documents"
        )
        self.n_features_out_ = len(FEATURE_NAMES)
        return self

    def profile(self, X, ids: Optional[list] = None) -> list[TextProfile]:
        """Full :class:`TextProfile` for each document in ``X``."""
        check_is_fitted(self, "index_")
        self._validate_params()
        docs = check_documents(X)
        ids = check_ids(range(len(docs)) if ids is None else ids, len(docs))
        return profile_collection(
            [(i, self._tokens(d)) for i, d in zip(ids, docs)],
            self.index_,
            Thresholds(float(self.mi_threshold), float(self.t_threshold)),
            ExtractionPolicy(tuple(self.exclude_tag_prefixes), fold_case=bool(self.fold_case)),
            self.denominator,
            self.n_basis,
        )

    def transform(self, X):
        profiles = self.profile(X)
        out = np.full((len(profiles), 2), np.nan)
        for row, p in enumerate(profiles):
            if not p.empty:
                out[row] = p.pct_high_mi, p.pct_high_t
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "index_")
        return FEATURE_NAMES.copy()

