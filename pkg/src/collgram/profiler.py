"""Per-text profiles: share of highly collocational bigrams."""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from .association import Thresholds, classify, score_bigram
from .index import CorpusIndex
from .tokens import Token, TokenKind

__all__ = [
    "ExtractionPolicy",
    "TextProfile",
    "ConfigurationError",
    "UntaggedInputWarning",
    "DENOMINATOR_MODES",
    "extract_bigrams",
    "profile_text",
    "profile_collection",
]

DENOMINATOR_MODES = ("all", "attested")
EXCLUSION_MODES = ("drop_bigram", "drop_token")


class ConfigurationError(ValueError):
    pass


class UntaggedInputWarning(UserWarning):
    """Proper names cannot be excluded from untagged text."""


@dataclass(frozen=True)
class ExtractionPolicy:
    exclude_tag_prefixes: tuple[str, ...] = ("NP", "MC")
    exclusion_mode: str = "drop_bigram"
    fold_case: bool = True

    def __post_init__(self):
        object.__setattr__(self, "exclude_tag_prefixes", tuple(self.exclude_tag_prefixes))
        if any(not p for p in self.exclude_tag_prefixes):
            raise ValueError("exclusion prefixes must be non-empty strings")
        if self.exclusion_mode not in EXCLUSION_MODES:
            raise ValueError(f"exclusion_mode must be one of {EXCLUSION_MODES}")

    def excludes(self, token: Token) -> bool:
        return token.tag is not None and token.tag.startswith(self.exclude_tag_prefixes)

    def form(self, token: Token) -> str:
        return token.norm.lower() if self.fold_case else token.surface


@dataclass(frozen=True)
class TextProfile:
    """Bigram counts and high-association percentages for one text.

    Percentages are ``None`` when the chosen denominator is zero.
    """

    text_id: str
    n_bigrams: int
    n_attested: int
    n_high_mi: int
    n_high_t: int
    pct_high_mi: Optional[float]
    pct_high_t: Optional[float]
    denominator_mode: str = "all"

    @property
    def empty(self) -> bool:
        return self.pct_high_mi is None

    def to_dict(self) -> dict:
        return asdict(self)


def extract_bigrams(tokens: Iterable[Token], policy: ExtractionPolicy = ExtractionPolicy()) -> list[tuple[str, str]]:
    """Adjacent word-word pairs, minus any pair touching an excluded tag.

    Any non-word token (punctuation, non-word, sentence break) interrupts
    adjacency.

    >>> from collgram.tokens import tokenize_plain
    >>> extract_bigrams(tokenize_plain("the cat, sat"))
    [('the', 'cat')]
    """
    pairs = []
    prev: Optional[Token] = None
    drop_token = policy.exclusion_mode == "drop_token"
    for tok in tokens:
        if tok.kind is not TokenKind.WORD:
            prev = None
            continue
        excluded = policy.excludes(tok)
        if drop_token and excluded:
            prev = None
            continue
        if prev is not None and not excluded and not policy.excludes(prev):
            pairs.append((policy.form(prev), policy.form(tok)))
        prev = tok
    return pairs


def _pct(count: int, denominator: int) -> Optional[float]:
    return 100.0 * count / denominator if denominator > 0 else None


def profile_text(
    text_id: str,
    tokens: Iterable[Token],
    index: CorpusIndex,
    thresholds: Thresholds = Thresholds(),
    policy: ExtractionPolicy = ExtractionPolicy(),
    denominator_mode: str = "all",
    n_basis: str = "tokens",
) -> TextProfile:
    """Score every retained bigram of one text against ``index``.

    Raises
    ------
    ConfigurationError
        If ``policy.fold_case`` disagrees with how ``index`` was built.
    """
    if policy.fold_case != index.fold_case:
        raise ConfigurationError(
            f"index was built with fold_case={index.fold_case} "
            f"but the policy has fold_case={policy.fold_case}"
        )
    if denominator_mode not in DENOMINATOR_MODES:
        raise ValueError(f"denominator_mode must be one of {DENOMINATOR_MODES}")

    n_bigrams = n_attested = n_high_mi = n_high_t = 0
    for w1, w2 in extract_bigrams(tokens, policy):
        n_bigrams += 1
        cls = classify(score_bigram(index, w1, w2, n_basis), thresholds)
        n_attested += cls.attested
        n_high_mi += cls.high_mi
        n_high_t += cls.high_t
    denominator = n_bigrams if denominator_mode == "all" else n_attested
    return TextProfile(
        text_id,
        n_bigrams,
        n_attested,
        n_high_mi,
        n_high_t,
        _pct(n_high_mi, denominator),
        _pct(n_high_t, denominator),
        denominator_mode,
    )


def profile_collection(
    texts: Iterable[tuple[str, Sequence[Token]]],
    index: CorpusIndex,
    thresholds: Thresholds = Thresholds(),
    policy: ExtractionPolicy = ExtractionPolicy(),
    denominator_mode: str = "all",
    n_basis: str = "tokens",
) -> list[TextProfile]:
    """Profile several texts, keeping input order.

    Warns once with :class:`UntaggedInputWarning` when none of the texts
    carry POS tags, since proper names then pass through unfiltered.
    """
    texts = [(text_id, list(toks)) for text_id, toks in texts]
    seen = set()
    for text_id, _ in texts:
        if text_id in seen:
            raise ValueError(f"duplicate text id {text_id!r}")
        seen.add(text_id)

    if texts and policy.exclude_tag_prefixes and not any(
        tok.tag is not None for _, toks in texts for tok in toks
    ):
        warnings.warn(
            "input is untagged: numbers are excluded by the digit rule, "
            "proper names are not excluded",
            UntaggedInputWarning,
            stacklevel=2,
        )
    return [
        profile_text(text_id, toks, index, thresholds, policy, denominator_mode, n_basis)
        for text_id, toks in texts
    ]
