"""Synthetic reference corpora and aligned text groups with planted effects."""

import string

import numpy as np

from collgram.association import score_bigram


def make_words(n, rng, length=(3, 8)):
    words = set()
    letters = np.array(list(string.ascii_lowercase))
    while len(words) < n:
        words.add("".join(rng.choice(letters, rng.integers(*length))))
    return sorted(words)


def zipf_corpus(n_tokens, vocab_size=5000, seed=0, sentence_len=12):
    """Plain text of ``n_tokens`` Zipf-distributed words in short sentences."""
    rng = np.random.default_rng(seed)
    vocab = np.array(make_words(vocab_size, rng))
    weights = 1.0 / np.arange(1, vocab_size + 1)
    words = rng.choice(vocab, size=n_tokens, p=weights / weights.sum())
    lines = []
    for start in range(0, n_tokens, sentence_len):
        lines.append(" ".join(words[start:start + sentence_len]) + " .")
    return "\n".join(lines)


def reference_corpus(n_tokens=100_000, n_collocations=400, n_phrases=30, seed=1):
    """Zipf background plus two kinds of planted word pairs.

    Rare pairs that always occur together are strongly associated (high
    MI); frequent fixed phrases repeated many times reach high t-scores.
    """
    rng = np.random.default_rng(seed)
    repeats = 60
    background = zipf_corpus(n_tokens - 6 * n_collocations - 2 * repeats * n_phrases, vocab_size=3000, seed=seed)
    rare = make_words(2 * n_collocations + 2 * n_phrases, rng, length=(9, 12))
    pairs = [f"{rare[2 * i]} {rare[2 * i + 1]}" for i in range(n_collocations)]
    phrases = [f"{rare[2 * i]} {rare[2 * i + 1]}" for i in range(n_collocations, n_collocations + n_phrases)]
    colloc = [f"{p} ." for p in pairs for _ in range(3)] + [f"{p} ." for p in phrases for _ in range(repeats)]
    rng.shuffle(colloc)
    return background + "\n" + "\n".join(colloc)


def strata(index, mi_min=5.0):
    """Attested bigrams split into (high-MI, rest), both sorted."""
    high, low = [], []
    for w1, w2 in sorted(index.bigram_counts):
        s = score_bigram(index, w1, w2)
        (high if s.mi >= mi_min else low).append((w1, w2))
    return high, low


def text_from_pairs(pairs):
    return " ".join(f"{a} {b} ." for a, b in pairs)


def planted_groups(index, n_texts=50, n_bigrams=400, uplift=1.2, seed=7, base=(0.08, 0.14)):
    """Two aligned groups; group A draws ``uplift`` times more high-MI bigrams.

    Each text id has its own base rate, shared by both groups, so the
    design is paired like several translations of one source text.
    """
    rng = np.random.default_rng(seed)
    high, low = strata(index)

    def draw(p):
        from_high = rng.random(n_bigrams) < p
        hi = rng.integers(0, len(high), n_bigrams)
        lo = rng.integers(0, len(low), n_bigrams)
        return text_from_pairs(high[h] if f else low[l] for f, h, l in zip(from_high, hi, lo))

    ids, a, b = [], [], []
    for i in range(n_texts):
        p = rng.uniform(*base)
        ids.append(f"text{i:03d}")
        a.append(draw(p * uplift))
        b.append(draw(p))
    return ids, a, b
