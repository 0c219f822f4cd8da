import pytest
from hypothesis import given, settings

from strategies import words
from threepage.relations import Tier, ruleset
from threepage.rewrite import (
    Outcome,
    SearchBudget,
    derive_redundant,
    equivalent,
    is_central,
    replay,
    simplify_with_path,
)
from threepage.word import Word, parse_word, rotate

SMALL = SearchBudget(12, 20_000, 24)


def test_identity_relation_is_proved():
    v = equivalent("b0 d0", "", Tier.CLASSICAL)
    assert v.outcome is Outcome.PROVED
    assert replay(parse_word("b0 d0"), v.path) == Word()


def test_excluded_identity_is_derived():
    v = equivalent("d0 b0", "", Tier.CLASSICAL, rules=ruleset(Tier.CLASSICAL, extended=False))
    assert v.proved
    assert all(s.relation.key != (1, "db", 0) for s in v.path)
    assert replay(parse_word("d0 b0"), v.path) == Word()


def test_refutation_by_invariant():
    # different numbers of singular points are never equal below the Full tier
    v = equivalent("a1 x1", "a1", Tier.SINGULAR, SMALL)
    assert v.outcome is Outcome.REFUTED


def test_budget_exhaustion_is_unknown():
    v = equivalent("a1 b1 x1 d1 c1", "", Tier.FULL, SearchBudget(6, 5, 24), refute=False)
    assert v.outcome is Outcome.UNKNOWN


def test_derive_redundant_paths_use_canonical_relations_only():
    from threepage.relations import enumerate_relations, redundant_relations

    base = {r.key for r in enumerate_relations(Tier.FULL)}
    results = derive_redundant()
    for r in redundant_relations():
        v = results[r.key]
        assert v.proved
        assert all(s.relation.key in base for s in v.path)
        assert replay(r.lhs, v.path) == r.rhs


@settings(max_examples=25)
@given(words, words)
def test_equivalence_is_symmetric(u, v):
    u, v = u[:5], v[:5]
    a = equivalent(u, v, Tier.FULL, SMALL)
    b = equivalent(v, u, Tier.FULL, SMALL)
    assert a.outcome is b.outcome


@settings(max_examples=25)
@given(words, words)
def test_equivalence_is_rotation_equivariant(u, v):
    u, v = u[:5], v[:5]
    a = equivalent(u, v, Tier.FULL, SMALL)
    b = equivalent(rotate(u), rotate(v), Tier.FULL, SMALL)
    assert a.outcome is b.outcome


@settings(max_examples=25)
@given(words, words)
def test_proved_paths_replay(u, v):
    u, v = u[:5], v[:5]
    res = equivalent(u, v, Tier.FULL, SMALL)
    if res.proved:
        assert replay(u, res.path) == v


@pytest.mark.parametrize(
    "w1, w2",
    [("b0 d0", ""), ("d0 d1 d2 a1", "a1"), ("a1 x1", "a1"), ("d1 b1 a0 c0", "a0 c0"),
     ("a1 b1 x1 d1 c1", "")],
)
def test_kernel_and_python_search_agree(monkeypatch, w1, w2):
    from threepage import rewrite

    if rewrite._kernel is None:
        pytest.skip("C kernel not built")
    budget = SearchBudget.for_words(parse_word(w1), parse_word(w2), max_states=50_000)
    fast = equivalent(w1, w2, Tier.FULL, budget)
    monkeypatch.setenv("THREEPAGE_PURE_PYTHON", "1")
    slow = equivalent(w1, w2, Tier.FULL, budget)
    assert fast.outcome is slow.outcome
    assert len(fast.path) == len(slow.path)
    if slow.proved:
        assert replay(parse_word(w1), slow.path) == parse_word(w2)


@pytest.mark.parametrize("w", ["b0 d0 a1 c1", "a1 d1 b1 c1", "d0 d1 d2 b2 d2"])
def test_kernel_and_python_simplify_agree(monkeypatch, w):
    from threepage import rewrite

    if rewrite._kernel is None:
        pytest.skip("C kernel not built")
    budget = SearchBudget.for_words(parse_word(w), max_states=20_000)
    fast = simplify_with_path(w, Tier.CLASSICAL, budget)
    monkeypatch.setenv("THREEPAGE_PURE_PYTHON", "1")
    slow = simplify_with_path(w, Tier.CLASSICAL, budget)
    assert fast[0] == slow[0]
    assert replay(parse_word(w), slow[1]) == slow[0]


def test_simplify_reaches_a_two_letter_unknot_word():
    best, path = simplify_with_path("b0 d0 a1 c1", Tier.CLASSICAL)
    assert len(best) == 2
    assert replay(parse_word("b0 d0 a1 c1"), path) == best


def test_empty_word_is_central():
    assert is_central("", Tier.SINGULAR).outcome is Outcome.PROVED


def test_tangle_word_is_not_proved_central():
    v = is_central("a0", Tier.FULL, SearchBudget(4, 2_000, 24))
    assert v.outcome in (Outcome.UNKNOWN, Outcome.REFUTED)


def test_env_override_of_state_budget(monkeypatch):
    monkeypatch.setenv("THREEPAGE_MAX_STATES", "123")
    assert SearchBudget.for_words(parse_word("a1")).max_states == 123
