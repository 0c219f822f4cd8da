"""The repaired spun-trefoil word: one inserted d1 makes the printed word decode."""

import pytest

from threepage.encoder import encode_diagram
from threepage.fixtures import WG, WG_PRINTED, load_diagram
from threepage.pages import DecodeError, decode, to_link_diagram
from threepage.relations import Tier
from threepage.rewrite import Outcome, SearchBudget, is_central
from threepage.surface import (
    Admissibility,
    Triviality,
    admissible,
    classical_invariants,
    euler_characteristic,
    is_trivial_link,
    resolve,
)
from threepage.word import Letter, Word


def test_repair_is_a_single_insertion():
    assert len(WG) == len(WG_PRINTED) + 1 == 26
    letters = list(WG)
    assert letters[10] == Letter("d", 1)
    assert Word(letters[:10] + letters[11:]) == WG_PRINTED


def test_printed_word_is_unbalanced():
    with pytest.raises(DecodeError):
        decode(WG_PRINTED)


def test_repaired_word_invariants():
    d = decode(WG)
    assert len(d.singular_points) == 2
    assert euler_characteristic(WG) == 2
    plus, minus = resolve(WG, "+"), resolve(WG, "-")
    assert (len(plus), len(minus)) == (24, 28)
    for r in (plus, minus):
        assert to_link_diagram(r).crossing_count == 6
        assert is_trivial_link(r).status is Triviality.TRIVIAL
    assert admissible(WG).overall is Admissibility.ADMISSIBLE


def test_mixed_resolutions_are_classical():
    for signs in (["+", "-"], ["-", "+"]):
        r = resolve(WG, "+", signs=signs)
        assert not r.has_singular()
        decode(r)


def test_encoded_fixture_matches_repaired_word():
    w = encode_diagram(load_diagram("spun_trefoil"))
    assert w.count("x") == 2
    assert decode(w).component_count == decode(WG).component_count
    assert euler_characteristic(w) == euler_characteristic(WG)
    for sign in ("+", "-"):
        assert classical_invariants(resolve(w, sign)) == classical_invariants(resolve(WG, sign))
    # the encoded word is longer; its rewriting search may run out of budget
    assert admissible(w).overall is not Admissibility.NOT_ADMISSIBLE


def test_repaired_word_has_no_refuted_commutation():
    budget = SearchBudget.for_words(WG + Word([Letter("a", 0)]), max_states=2000)
    v = is_central(WG, Tier.SINGULAR, budget)
    assert len(v.per_generator) == 15
    assert all(r.outcome is not Outcome.REFUTED for r in v.per_generator.values())
