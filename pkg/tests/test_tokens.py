import pytest

from collgram.tokens import (
    SENTENCE_BREAK,
    TaggedParseError,
    TagPatterns,
    Token,
    TokenKind,
    parse_tagged,
    tokenize_plain,
)

W, P, N, S = TokenKind.WORD, TokenKind.PUNCTUATION, TokenKind.NON_WORD, TokenKind.SENTENCE_BREAK


def shape(tokens):
    return [(t.norm, t.kind) for t in tokens]


class TestTokenizePlain:
    def test_empty(self):
        assert tokenize_plain("") == []

    def test_hand_segmentation(self):
        assert shape(tokenize_plain("The cat, sat.")) == [
            ("the", W), ("cat", W), (",", P), ("sat", W), (".", P),
        ]

    def test_digits_are_non_words(self):
        assert shape(tokenize_plain("8 hours")) == [("8", N), ("hours", W)]

    @pytest.mark.parametrize("text", ["abc123", "3rd", "1,000", "x_y"])
    def test_anything_with_digit_or_underscore_is_not_a_word(self, text):
        assert all(t.kind is not W for t in tokenize_plain(text))

    @pytest.mark.parametrize("text", ["eight-hour", "don't", "l’homme", "naïve"])
    def test_internal_apostrophe_and_hyphen(self, text):
        (tok,) = tokenize_plain(text)
        assert tok.kind is W and tok.surface == text

    def test_edge_hyphens_split(self):
        assert shape(tokenize_plain("-well-")) == [("-", P), ("well", W), ("-", P)]

    def test_fold_off_keeps_case(self):
        assert [t.norm for t in tokenize_plain("The Cat", fold_case=False)] == ["The", "Cat"]

    def test_surface_kept_when_folding(self):
        (tok,) = tokenize_plain("London")
        assert tok.surface == "London" and tok.norm == "london"

    def test_blank_line_is_sentence_break(self):
        kinds = [t.kind for t in tokenize_plain("a b\n\nc d")]
        assert kinds == [W, W, S, W, W]
        assert [t.kind for t in tokenize_plain("a b\nc d")] == [W, W, W, W]

    def test_symbols_are_non_words(self):
        assert shape(tokenize_plain("£ 5")) == [("£", N), ("5", N)]

    def test_deterministic(self):
        text = "It's a well-known fact, 42 times over.\n\nYes!"
        assert tokenize_plain(text) == tokenize_plain(text)


class TestParseTagged:
    def test_vertical(self):
        assert parse_tagged(["the\tAT", "cat\tNN1"], "vertical") == [
            Token("the", W, "AT"), Token("cat", W, "NN1"),
        ]

    def test_underscore(self):
        toks = parse_tagged(["eight_MC hours_NNT2"], "underscore")
        assert [(t.norm, t.tag, t.kind) for t in toks] == [("eight", "MC", W), ("hours", "NNT2", W)]

    def test_missing_separator_names_line(self):
        with pytest.raises(TaggedParseError) as err:
            parse_tagged(["catNN1"], "vertical")
        assert err.value.lineno == 1
        assert "line 1" in str(err.value)

    def test_missing_separator_later_line(self):
        with pytest.raises(TaggedParseError, match="line 3"):
            parse_tagged(["a\tAT", "b\tNN1", "oops"], "vertical")

    def test_underscore_item_without_tag(self):
        with pytest.raises(TaggedParseError, match="line 2"):
            parse_tagged(["a_AT", "b_NN1 c"], "underscore")

    def test_blank_line_is_sentence_break(self):
        toks = parse_tagged(["the\tAT", "", "cat\tNN1"], "vertical")
        assert [t.kind for t in toks] == [W, S, W]

    def test_punctuation_tags(self):
        toks = parse_tagged(["London_NP1 ,_, is_VBZ big_JJ ._."], "underscore")
        assert [t.kind for t in toks] == [W, P, W, W, P]
        assert toks[0].tag == "NP1" and toks[0].norm == "london"

    def test_underscore_splits_on_last_underscore(self):
        (tok,) = parse_tagged(["snake_case_NN1"], "underscore")
        assert tok.surface == "snake_case" and tok.tag == "NN1"

    def test_custom_punctuation_set(self):
        patterns = TagPatterns(punctuation_tags=frozenset({"YSTP"}))
        (tok,) = parse_tagged(["._YSTP"], "underscore", patterns=patterns)
        assert tok.kind is P

    def test_crlf_lines(self):
        toks = parse_tagged(["a\tAT\r\n", "b\tNN1\r\n"], "vertical")
        assert [t.tag for t in toks] == ["AT", "NN1"]

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            parse_tagged([], "xml")


def test_sentence_break_token():
    assert SENTENCE_BREAK.kind is S and not SENTENCE_BREAK.is_word


def test_word_token_needs_surface():
    with pytest.raises(ValueError):
        Token("", W)
