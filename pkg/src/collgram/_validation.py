"""Input checks shared by the estimator and the CLI."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .tokens import Token, iter_plain, iter_tagged, TagPatterns, DEFAULT_TAG_PATTERNS

INPUT_FORMATS = ("plain", "vertical", "underscore")


def check_option(name: str, value, allowed: Sequence):
    if value not in allowed:
        raise ValueError(f"{name} must be one of {tuple(allowed)}, got {value!r}")
    return value


def check_finite(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise TypeError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


def check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def to_tokens(
    doc,
    input_format: str = "plain",
    fold_case: bool = True,
    patterns: TagPatterns = DEFAULT_TAG_PATTERNS,
) -> list[Token]:
    """Turn one document into tokens.

    A document may be raw text (tokenized per ``input_format``), or an
    already tokenized sequence of :class:`Token`.
    """
    if isinstance(doc, str):
        if input_format == "plain":
            return list(iter_plain(doc, fold_case))
        return list(iter_tagged(doc.splitlines(), input_format, fold_case, patterns))
    doc = list(doc)
    if not all(isinstance(t, Token) for t in doc):
        raise TypeError("documents must be strings or sequences of Token")
    return doc


def check_documents(X) -> list:
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a collection of documents, got a single string")
    try:
        docs = list(X)
    except TypeError:
        raise TypeError(f"expected an iterable of documents, got {type(X).__name__}") from None
    return docs


def check_ids(ids: Iterable, n: int) -> list[str]:
    ids = [str(i) for i in ids]
    if len(ids) != n:
        raise ValueError(f"got {len(ids)} ids for {n} documents")
    return ids
