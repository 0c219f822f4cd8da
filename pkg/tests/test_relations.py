import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import words
from threepage.relations import (
    ApplicationError,
    Direction,
    Tier,
    apply,
    enumerate_relations,
    family_counts,
    find_relation,
    neighbors,
    redundant_relations,
)
from threepage.word import Word, parse_word, rotate

ALL = enumerate_relations(Tier.FULL)


def test_full_census():
    assert len(ALL) == 96
    assert family_counts(ALL) == (6, 12, 54, 9, 3, 6, 3, 3)


def test_tiers_are_nested():
    classical = set(enumerate_relations(Tier.CLASSICAL))
    singular = set(enumerate_relations(Tier.SINGULAR))
    assert classical < singular < set(ALL)
    assert len(singular) == 84
    assert all(not (r.lhs.has_singular() or r.rhs.has_singular()) for r in classical)
    assert {r.family for r in classical} == {1, 2, 3}


def test_instances_are_distinct_sides():
    assert all(r.lhs != r.rhs for r in ALL)
    assert len({(r.lhs, r.rhs) for r in ALL}) == 96


def test_exclusions_live_in_the_redundant_set():
    red = redundant_relations()
    keys = {r.key for r in ALL}
    assert all(r.key not in keys for r in red)
    assert any(r.lhs == parse_word("d0 b0") and r.rhs == Word() for r in red)
    assert sum(1 for r in red if r.family == 3) == 6


def test_canonical_plus_redundant_is_rotation_closed():
    pool = {(r.lhs, r.rhs) for r in enumerate_relations(Tier.FULL, extended=True)}
    assert {(rotate(l), rotate(r)) for l, r in pool} == pool


def test_apply_examples():
    r = find_relation(1, 0, "bd")
    assert apply(parse_word("b0 d0 a1"), r, 0, Direction.LTOR) == parse_word("a1")
    r6 = find_relation(6, 1, "ax")
    assert apply(parse_word("a1"), r6, 0, Direction.RTOL) == parse_word("a1 x1")
    r7 = find_relation(7, 1)
    assert apply(parse_word("d1 x1 b1 c1 x1"), r7, 0, Direction.LTOR) == parse_word("b1 x1 d1 c1 x1")


def test_apply_without_match_raises():
    with pytest.raises(ApplicationError):
        apply(parse_word("a1 c1"), find_relation(1, 0, "bd"), 0, Direction.LTOR)
    with pytest.raises(ApplicationError):
        apply(parse_word("b0 d0"), find_relation(1, 0, "bd"), 1, Direction.LTOR)


@given(words, st.sampled_from(ALL), st.integers(0, 20), st.sampled_from(list(Direction)))
def test_apply_then_inverse_is_identity(u, r, cut, direction):
    lhs, _ = r.sides(direction)
    cut = min(cut, len(u))
    w = u[:cut] + lhs + u[cut:]
    out = apply(w, r, cut, direction)
    assert apply(out, r, cut, direction.reverse()) == w


@given(words, st.sampled_from(ALL), st.integers(0, 20), st.sampled_from(list(Direction)))
def test_rotation_equivariance_of_apply(u, r, cut, direction):
    lhs, _ = r.sides(direction)
    cut = min(cut, len(u))
    w = u[:cut] + lhs + u[cut:]
    assert rotate(apply(w, r, cut, direction)) == apply(rotate(w), r.rotate(), cut, direction)


def test_neighbors_of_empty_word():
    n = neighbors(Word(), Tier.CLASSICAL)
    for s in ("b0 d0", "d1 b1", "d0 d1 d2"):
        assert parse_word(s) in n


def test_neighbors_full_tier_example():
    assert parse_word("a1") in neighbors(parse_word("a1 x1"), Tier.FULL)


@given(words)
def test_neighbors_monotone_in_tier(w):
    w = w[:8]
    c, s, f = (set(neighbors(w, t)) for t in (Tier.CLASSICAL, Tier.SINGULAR, Tier.FULL))
    assert c <= s <= f


def test_neighbors_deterministic():
    w = parse_word("a1 b1 x1 b1 c1")
    assert neighbors(w) == neighbors(w)
    assert list(neighbors(w)) == sorted(neighbors(w))
