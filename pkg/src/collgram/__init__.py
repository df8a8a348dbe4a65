"""Formulaic-language profiles from bigram MI and t-score against a reference corpus."""

from .association import (
    AssociationScores,
    Classification,
    Thresholds,
    classify,
    expected_frequency,
    mutual_information,
    score_bigram,
    t_score,
)
from .estimator import CollGramProfiler
from .index import CorpusIndex, build_index, load_index, lookup, save_index
from .profiler import ExtractionPolicy, TextProfile, extract_bigrams, profile_collection, profile_text
from .stats import (
    PairedComparison,
    PairedSample,
    cohens_d,
    compare_all,
    paired_t_test,
    same_sign_pct,
    t_sf,
)
from .tokens import Token, TokenKind, parse_tagged, tokenize_plain

__version__ = "0.1.0"

__all__ = [
    "AssociationScores",
    "Classification",
    "CollGramProfiler",
    "CorpusIndex",
    "ExtractionPolicy",
    "PairedComparison",
    "PairedSample",
    "TextProfile",
    "Thresholds",
    "Token",
    "TokenKind",
    "build_index",
    "classify",
    "cohens_d",
    "compare_all",
    "expected_frequency",
    "extract_bigrams",
    "load_index",
    "lookup",
    "mutual_information",
    "paired_t_test",
    "parse_tagged",
    "profile_collection",
    "profile_text",
    "same_sign_pct",
    "save_index",
    "score_bigram",
    "t_score",
    "t_sf",
    "tokenize_plain",
]
