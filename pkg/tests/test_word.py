from collections import Counter

import pytest
from hypothesis import given

from strategies import words
from threepage.word import ALPHABET, Letter, Word, WordParseError, format_word, parse_word, rotate


def test_alphabet_has_15_letters():
    assert len(ALPHABET) == 15
    assert len({l.code for l in ALPHABET}) == 15


def test_parse_examples():
    assert parse_word("a0 x1 b2") == Word([Letter("a", 0), Letter("x", 1), Letter("b", 2)])
    assert parse_word("") == Word()
    assert parse_word("  a1\tc1 \n") == parse_word("a1 c1")
    assert format_word(Word()) == ""


@pytest.mark.parametrize("bad, pos", [("a3", 0), ("a0 e1", 1), ("a0 b", 1), ("A0", 0), ("a01", 0)])
def test_parse_rejects_malformed_tokens(bad, pos):
    with pytest.raises(WordParseError) as exc:
        parse_word(bad)
    assert exc.value.position == pos


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w


@given(words)
def test_rotate_has_order_three(w):
    assert rotate(rotate(rotate(w))) == w
    assert rotate(w, 3) == w


@given(words)
def test_rotate_preserves_length_and_kinds(w):
    r = rotate(w)
    assert len(r) == len(w)
    assert Counter(l.kind for l in r) == Counter(l.kind for l in w)
    assert all(b.index == (a.index + 1) % 3 for a, b in zip(w, r))


@given(words, words)
def test_concatenation_and_slicing(u, v):
    w = u + v
    assert w[: len(u)] == u and w[len(u):] == v
    assert len(w) == len(u) + len(v)


def test_words_are_immutable_and_hashable():
    w = parse_word("a1 c1")
    with pytest.raises(AttributeError):
        w.codes = b""
    assert {w: 1}[parse_word("a1 c1")] == 1
