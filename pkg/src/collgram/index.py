"""Reference-corpus frequency index.

The index holds exact unigram and bigram counts over word tokens plus the
corpus totals, and round-trips through a sorted, line-oriented UTF-8 file
protected by a CRC-32 trailer::

    COLLGRAM-INDEX v1
    tokens=<N> bigrams=<B> fold=<0|1> min_count=<k> built=<ISO-8601 UTC>
    source=<free text>
    #UNIGRAMS
    word<TAB>count
    #BIGRAMS
    w1<TAB>w2<TAB>count
    #CRC=<8 hex digits>
"""

from __future__ import annotations

import os
import zlib
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .tokens import Token, TokenKind

__all__ = [
    "FORMAT_VERSION",
    "MAGIC",
    "CorpusIndex",
    "Lookup",
    "IndexBuildError",
    "IndexLoadError",
    "IndexVersionError",
    "IndexChecksumError",
    "IndexTruncatedError",
    "IndexFormatError",
    "count_tokens",
    "merge_counts",
    "build_index",
    "save_index",
    "load_index",
    "dump_index",
    "lookup",
]

FORMAT_VERSION = 1
MAGIC = "COLLGRAM-INDEX"


class IndexBuildError(ValueError):
    pass


class IndexLoadError(ValueError):
    """Base class for errors raised while reading an index file."""


class IndexVersionError(IndexLoadError):
    pass


class IndexChecksumError(IndexLoadError):
    pass


class IndexTruncatedError(IndexLoadError):
    pass


class IndexFormatError(IndexLoadError):
    pass


def _now_iso() -> str:
    # SOURCE_DATE_EPOCH makes builds reproducible byte-for-byte.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    moment = (
        datetime.fromtimestamp(int(epoch), tz=timezone.utc)
        if epoch
        else datetime.now(timezone.utc)
    )
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class CorpusIndex:
    """Immutable unigram/bigram counts of a reference corpus.

    ``total_bigram_tokens`` is the number of adjacent word-word pairs seen
    during the build. It is not reduced when ``min_count`` prunes rare
    bigrams, so it remains usable as a normalising total.
    """

    total_tokens: int
    total_bigram_tokens: int
    unigram_counts: Mapping[str, int]
    bigram_counts: Mapping[tuple[str, str], int]
    fold_case: bool = True
    source: str = ""
    built: str = ""
    min_count: int = 1
    version: int = FORMAT_VERSION

    def __post_init__(self):
        for name in ("unigram_counts", "bigram_counts"):
            value = getattr(self, name)
            if not isinstance(value, MappingProxyType):
                object.__setattr__(self, name, MappingProxyType(dict(value)))

    @property
    def vocabulary_size(self) -> int:
        return len(self.unigram_counts)

    def __len__(self):
        return len(self.bigram_counts)

    def __eq__(self, other):
        if not isinstance(other, CorpusIndex):
            return NotImplemented
        return (
            self.total_tokens == other.total_tokens
            and self.total_bigram_tokens == other.total_bigram_tokens
            and dict(self.unigram_counts) == dict(other.unigram_counts)
            and dict(self.bigram_counts) == dict(other.bigram_counts)
            and self.fold_case == other.fold_case
            and self.source == other.source
            and self.built == other.built
            and self.min_count == other.min_count
            and self.version == other.version
        )

    __hash__ = None  # type: ignore[assignment]

    def normalize(self, word: str) -> str:
        return word.lower() if self.fold_case else word


@dataclass
class Counts:
    """Mutable partial counts; partials merge by plain addition."""

    unigrams: Counter = field(default_factory=Counter)
    bigrams: Counter = field(default_factory=Counter)
    n_tokens: int = 0
    n_bigrams: int = 0

    def __iadd__(self, other: "Counts") -> "Counts":
        self.unigrams.update(other.unigrams)
        self.bigrams.update(other.bigrams)
        self.n_tokens += other.n_tokens
        self.n_bigrams += other.n_bigrams
        return self


def count_tokens(tokens: Iterable[Token], fold_case: bool = True) -> Counts:
    """Count word unigrams and uninterrupted word-word bigrams.

    The token stream is consumed lazily.
    """
    unigrams: Counter = Counter()
    bigrams: Counter = Counter()
    n_tokens = 0
    n_bigrams = 0
    prev = None
    for tok in tokens:
        if tok.kind is not TokenKind.WORD:
            prev = None
            continue
        w = tok.norm.lower() if fold_case else tok.surface
        unigrams[w] += 1
        n_tokens += 1
        if prev is not None:
            bigrams[prev, w] += 1
            n_bigrams += 1
        prev = w
    return Counts(unigrams, bigrams, n_tokens, n_bigrams)


def merge_counts(parts: Iterable[Counts]) -> Counts:
    total = Counts()
    for part in parts:
        total += part
    return total


def build_index(
    tokens: Iterable[Token],
    fold_case: bool = True,
    min_count: int = 1,
    source: str = "",
) -> CorpusIndex:
    """Build a :class:`CorpusIndex` from a token stream.

    Raises :class:`IndexBuildError` ("empty corpus") when the stream has
    no word tokens.

    >>> from collgram.tokens import tokenize_plain
    >>> idx = build_index(tokenize_plain("a b a b"))
    >>> idx.total_tokens, idx.total_bigram_tokens, idx.bigram_counts["a", "b"]
    (4, 3, 2)
    """
    return index_from_counts(count_tokens(tokens, fold_case), fold_case, min_count, source)


def index_from_counts(
    counts: Counts, fold_case: bool = True, min_count: int = 1, source: str = ""
) -> CorpusIndex:
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    if counts.n_tokens == 0:
        raise IndexBuildError("empty corpus")
    bigrams = counts.bigrams
    if min_count > 1:
        bigrams = {k: v for k, v in bigrams.items() if v >= min_count}
    return CorpusIndex(
        total_tokens=counts.n_tokens,
        total_bigram_tokens=counts.n_bigrams,
        unigram_counts=counts.unigrams,
        bigram_counts=bigrams,
        fold_case=fold_case,
        source=" ".join(source.split()),
        built=_now_iso(),
        min_count=min_count,
    )


class Lookup(NamedTuple):
    attested: bool
    observed: int
    f1: int
    f2: int
    n: int


def lookup(index: CorpusIndex, w1: str, w2: str) -> Lookup:
    """Reference counts for the bigram ``(w1, w2)``.

    Missing pairs give ``attested=False`` with ``observed=0``; missing words
    give a zero marginal. ``n`` is always ``index.total_tokens``.
    """
    w1 = index.normalize(w1)
    w2 = index.normalize(w2)
    observed = index.bigram_counts.get((w1, w2), 0)
    return Lookup(
        observed > 0,
        observed,
        index.unigram_counts.get(w1, 0),
        index.unigram_counts.get(w2, 0),
        index.total_tokens,
    )


# -- persistence -----------------------------------------------------------


def dump_index(index: CorpusIndex) -> bytes:
    """Serialise ``index`` to the v1 byte format."""
    lines = [
        f"{MAGIC} v{FORMAT_VERSION}",
        f"tokens={index.total_tokens} bigrams={index.total_bigram_tokens} "
        f"fold={int(index.fold_case)} min_count={index.min_count} built={index.built or '-'}",
        f"source={index.source}",
        "#UNIGRAMS",
    ]
    lines.extend(f"{w}\t{c}" for w, c in sorted(index.unigram_counts.items()))
    lines.append("#BIGRAMS")
    lines.extend(f"{a}\t{b}\t{c}" for (a, b), c in sorted(index.bigram_counts.items()))
    body = ("\n".join(lines) + "\n").encode("utf-8")
    return body + f"#CRC={zlib.crc32(body):08x}\n".encode("ascii")


def save_index(index: CorpusIndex, destination) -> None:
    data = dump_index(index)
    tmp = f"{os.fspath(destination)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, destination)


def _parse_header(line: str) -> dict[str, str]:
    fields = {}
    for item in line.split():
        key, sep, value = item.partition("=")
        if not sep:
            raise IndexFormatError(f"bad header field {item!r}")
        fields[key] = value
    for required in ("tokens", "bigrams", "fold"):
        if required not in fields:
            raise IndexFormatError(f"header lacks {required}=")
    return fields


def loads_index(data: bytes) -> CorpusIndex:
    first, _, _ = data.partition(b"\n")
    first_line = first.decode("utf-8", errors="replace").rstrip("\r")
    if not first_line.startswith(MAGIC + " "):
        raise IndexFormatError(f"not a collgram index (first line {first_line!r})")
    version = first_line[len(MAGIC) + 1:]
    if version != f"v{FORMAT_VERSION}":
        raise IndexVersionError(
            f"unsupported index version {version!r}, expected v{FORMAT_VERSION}"
        )

    crc_at = data.rfind(b"#CRC=")
    if crc_at < 0 or (crc_at > 0 and data[crc_at - 1:crc_at] != b"\n") or not data.endswith(b"\n"):
        raise IndexTruncatedError("index file is truncated (no CRC trailer)")
    body = data[:crc_at]
    try:
        expected = int(data[crc_at + 5:].strip(), 16)
    except ValueError:
        raise IndexTruncatedError("index file is truncated (bad CRC trailer)") from None
    actual = zlib.crc32(body)
    if actual != expected:
        raise IndexChecksumError(f"CRC mismatch: file says {expected:08x}, data is {actual:08x}")

    lines = body.decode("utf-8").split("\n")[:-1]
    if len(lines) < 5 or lines[3] != "#UNIGRAMS" or not lines[2].startswith("source="):
        raise IndexFormatError("malformed index header")
    header = _parse_header(lines[1])
    try:
        bigram_at = lines.index("#BIGRAMS", 4)
    except ValueError:
        raise IndexFormatError("missing #BIGRAMS section") from None

    try:
        unigrams = {}
        for line in lines[4:bigram_at]:
            word, count = line.split("\t")
            unigrams[word] = int(count)
        bigrams = {}
        for line in lines[bigram_at + 1:]:
            a, b, count = line.split("\t")
            bigrams[a, b] = int(count)
        n_tokens = int(header["tokens"])
        n_bigrams = int(header["bigrams"])
        min_count = int(header.get("min_count", 1))
    except ValueError as exc:
        raise IndexFormatError(f"malformed index entry: {exc}") from None

    if sum(unigrams.values()) != n_tokens:
        raise IndexFormatError("unigram counts do not sum to tokens=")
    built = header.get("built", "")
    return CorpusIndex(
        total_tokens=n_tokens,
        total_bigram_tokens=n_bigrams,
        unigram_counts=unigrams,
        bigram_counts=bigrams,
        fold_case=header["fold"] == "1",
        source=lines[2][len("source="):],
        built="" if built == "-" else built,
        min_count=min_count,
    )


def load_index(source) -> CorpusIndex:
    """Read an index written by :func:`save_index`.

    Raises
    ------
    IndexVersionError
        The magic line names another format version.
    IndexTruncatedError
        The CRC trailer is missing, e.g. the file was cut short.
    IndexChecksumError
        The CRC trailer does not match the content.
    IndexFormatError
        Anything else structurally wrong.
    """
    with open(source, "rb") as fh:
        return loads_index(fh.read())
