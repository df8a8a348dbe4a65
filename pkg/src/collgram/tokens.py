"""Tokens and tokenizers for plain and POS-tagged text.

Plain text goes through a small regex tokenizer. Tagged text is read in
either vertical (``surface<TAB>tag``, one per line) or horizontal
CLAWS-style (``surface_TAG``) layout.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional

__all__ = [
    "TokenKind",
    "Token",
    "TagPatterns",
    "TaggedParseError",
    "tokenize_plain",
    "parse_tagged",
    "SENTENCE_BREAK",
]


class TokenKind(str, Enum):
    WORD = "word"
    PUNCTUATION = "punctuation"
    NON_WORD = "non-word"
    SENTENCE_BREAK = "sentence-break"


@dataclass(frozen=True)
class Token:
    """One token of a text.

    ``surface`` is the form as it appeared in the input, ``norm`` the
    (possibly case-folded) form used for counting and lookup.
    """

    surface: str
    kind: TokenKind = TokenKind.WORD
    tag: Optional[str] = None
    norm: str = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.norm is None:
            object.__setattr__(self, "norm", self.surface)
        if self.kind is TokenKind.WORD and not self.surface:
            raise ValueError("word tokens need a non-empty surface")

    @property
    def is_word(self) -> bool:
        return self.kind is TokenKind.WORD

    def __repr__(self):
        tag = f":{self.tag}" if self.tag is not None else ""
        return f"<{self.norm}{tag}:{self.kind.value}>"


SENTENCE_BREAK = Token("", TokenKind.SENTENCE_BREAK)

# CLAWS7 tags punctuation with the punctuation mark itself.
CLAWS_PUNCTUATION_TAGS = frozenset(
    {".", ",", ":", ";", "!", "?", "(", ")", "[", "]", "{", "}",
     '"', "'", "-", "--", "...", "/", "…", "“", "”", "‘", "’", "$", "#"}
)


@dataclass(frozen=True)
class TagPatterns:
    """Which tags mark proper names, numbers and punctuation.

    The defaults follow CLAWS7: ``NP*`` for proper nouns, ``MC*`` for
    cardinal numbers, and punctuation tagged as itself. Any tag with no
    letter in it is also treated as punctuation.
    """

    proper_name_prefixes: tuple[str, ...] = ("NP",)
    number_prefixes: tuple[str, ...] = ("MC",)
    punctuation_tags: frozenset[str] = CLAWS_PUNCTUATION_TAGS

    def is_punctuation(self, tag: str) -> bool:
        return tag in self.punctuation_tags or not any(c.isalpha() for c in tag)

    @property
    def exclude_prefixes(self) -> tuple[str, ...]:
        return self.proper_name_prefixes + self.number_prefixes


DEFAULT_TAG_PATTERNS = TagPatterns()


class TaggedParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str = "missing separator"):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


_CHUNK_RE = re.compile(r"\w+(?:['’\-]\w+)*|\n[ \t\r\f\v]*\n\s*|\S", re.UNICODE)
_WORD_RE = re.compile(r"[^\W\d_]+(?:['’\-][^\W\d_]+)*\Z", re.UNICODE)


def _classify_chunk(chunk: str) -> TokenKind:
    if _WORD_RE.match(chunk):
        return TokenKind.WORD
    if len(chunk) == 1 and unicodedata.category(chunk).startswith("P"):
        return TokenKind.PUNCTUATION
    return TokenKind.NON_WORD


def tokenize_plain(text: str, fold_case: bool = True) -> list[Token]:
    """Split raw text into word, punctuation and non-word tokens.

    Words are maximal letter runs with optional internal apostrophes or
    hyphens. Anything containing a digit or underscore is a non-word.
    A blank line produces a sentence break.

    >>> [t.norm for t in tokenize_plain("The cat, sat.")]
    ['the', 'cat', ',', 'sat', '.']
    """
    return list(iter_plain(text, fold_case=fold_case))


def iter_plain(text: str, fold_case: bool = True) -> Iterator[Token]:
    for m in _CHUNK_RE.finditer(text):
        chunk = m.group()
        if chunk[0] == "\n" and not chunk.strip():
            yield SENTENCE_BREAK
            continue
        kind = _classify_chunk(chunk)
        norm = chunk.lower() if fold_case and kind is TokenKind.WORD else chunk
        yield Token(chunk, kind, None, norm)


def _tagged_token(surface: str, tag: str, fold_case: bool, patterns: TagPatterns) -> Token:
    if patterns.is_punctuation(tag):
        return Token(surface, TokenKind.PUNCTUATION, tag)
    return Token(surface, TokenKind.WORD, tag, surface.lower() if fold_case else surface)


def parse_tagged(
    lines: Iterable[str],
    format: str = "vertical",
    fold_case: bool = True,
    patterns: TagPatterns = DEFAULT_TAG_PATTERNS,
) -> list[Token]:
    """Read POS-tagged text into tokens.

    Parameters
    ----------
    lines : iterable of str
        Input lines, with or without trailing newlines.
    format : {"vertical", "underscore"}
        ``vertical`` is one ``surface<TAB>tag`` per line, a blank line
        being a sentence break. ``underscore`` is whitespace-separated
        ``surface_TAG`` items; blank lines are sentence breaks there too.
    fold_case : bool
        Lowercase the ``norm`` of word tokens.
    patterns : TagPatterns
        Decides which tags count as punctuation.

    Raises
    ------
    TaggedParseError
        For a line or item without a separator, naming the 1-based line.
    """
    return list(iter_tagged(lines, format, fold_case, patterns))


def iter_tagged(
    lines: Iterable[str],
    format: str = "vertical",
    fold_case: bool = True,
    patterns: TagPatterns = DEFAULT_TAG_PATTERNS,
) -> Iterator[Token]:
    if format not in ("vertical", "underscore"):
        raise ValueError(f"unknown tagged format {format!r}")
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            yield SENTENCE_BREAK
            continue
        if format == "vertical":
            surface, sep, tag = line.partition("\t")
            tag = tag.strip()
            if not sep or not surface or not tag:
                raise TaggedParseError(lineno, line)
            yield _tagged_token(surface, tag, fold_case, patterns)
        else:
            for item in line.split():
                surface, sep, tag = item.rpartition("_")
                if not sep or not surface or not tag:
                    raise TaggedParseError(lineno, line, f"item {item!r} has no _TAG")
                yield _tagged_token(surface, tag, fold_case, patterns)
