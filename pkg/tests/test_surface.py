import pytest
from hypothesis import given

from oracle import naive_bracket
from strategies import classical_words
from threepage.encoder import PlanarMarkedDiagram
from threepage.laurent import Laurent
from threepage.pages import to_link_diagram
from threepage.surface import (
    Admissibility,
    BracketCapExceeded,
    ResolutionSign,
    Triviality,
    admissible,
    euler_characteristic,
    is_trivial_link,
    kauffman_bracket,
    linking_invariant,
    linking_matrix,
    resolve,
    unlink_bracket,
)
from threepage.word import parse_word, rotate

TREFOIL_PD = [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]
HOPF_PD = [(1, 3, 2, 4), (3, 1, 4, 2)]


def test_resolve_examples(wg):
    assert len(resolve(wg, "+")) == len(wg) - 2
    assert len(resolve(wg, "-")) == len(wg) + 2
    assert resolve("a1 x1 c1", "-") == parse_word("a1 c1 a1 c1")
    assert resolve("a1 x1 c1", ResolutionSign.POSITIVE) == parse_word("a1 c1")


def test_mixed_signs_are_per_letter(wg):
    mixed = resolve(wg, signs=["+", "-"])
    assert len(mixed) == len(wg)
    with pytest.raises(ValueError):
        resolve(wg, signs=["+"])


def test_fixture_chi_and_resolution_counts(wg):
    from threepage.pages import component_count

    cp = component_count(resolve(wg, "+"))
    cm = component_count(resolve(wg, "-"))
    assert cp + cm == 4
    assert euler_characteristic(wg) == 2


def test_unknot_and_unlinks_are_trivial():
    for k in range(1, 4):
        v = is_trivial_link(parse_word("a1 c1") * k)
        assert v.status is Triviality.TRIVIAL and v.components == k


def test_hopf_link_is_certified_nontrivial():
    d = PlanarMarkedDiagram.from_pd(HOPF_PD).to_link_diagram()
    m = linking_matrix(d)
    assert linking_invariant(m) == ((0, 1), (0, 1))


def test_bracket_values():
    tre = PlanarMarkedDiagram.from_pd(TREFOIL_PD).to_link_diagram()
    f = kauffman_bracket(tre)
    mirror = Laurent({-e: c for e, c in f.terms.items()})
    assert f != unlink_bracket(1)
    assert len(f.terms) == 3 and sorted(abs(c) for c in f.terms.values()) == [1, 1, 1]
    assert f != mirror  # the trefoil is chiral
    hopf = PlanarMarkedDiagram.from_pd(HOPF_PD).to_link_diagram()
    assert kauffman_bracket(hopf) != unlink_bracket(2)


@pytest.mark.parametrize("pd", [TREFOIL_PD, HOPF_PD])
def test_bracket_matches_naive_oracle_on_fixtures(pd):
    d = PlanarMarkedDiagram.from_pd(pd).to_link_diagram()
    assert kauffman_bracket(d) == naive_bracket(d)


@given(classical_words(max_len=10))
def test_bracket_matches_naive_oracle_on_random_words(w):
    d = to_link_diagram(w)
    if d.crossing_count <= 8:
        assert kauffman_bracket(d) == naive_bracket(d)


@given(classical_words(max_len=10))
def test_bracket_and_linking_are_rotation_invariant(w):
    a, b = to_link_diagram(w), to_link_diagram(rotate(w))
    assert linking_invariant(linking_matrix(a)) == linking_invariant(linking_matrix(b))
    if a.crossing_count <= 12:
        assert kauffman_bracket(a) == kauffman_bracket(b)


def test_bracket_cap():
    w = parse_word("a1 b1 d1 c1")
    d = to_link_diagram(w)
    if d.crossing_count:
        with pytest.raises(BracketCapExceeded):
            kauffman_bracket(d, cap=0)
    assert kauffman_bracket(to_link_diagram("a1 c1")) == Laurent(1)


def test_admissible_fixture(wg):
    rep = admissible(wg)
    assert rep.overall is Admissibility.ADMISSIBLE
    assert rep.positive.status is Triviality.TRIVIAL
    assert rep.negative.status is Triviality.TRIVIAL


def test_not_admissible_when_a_resolution_links():
    # a classical word is its own resolution
    from threepage.encoder import encode_diagram

    hopf = encode_diagram(PlanarMarkedDiagram.from_pd(HOPF_PD))
    rep = admissible(hopf)
    assert rep.overall is Admissibility.NOT_ADMISSIBLE
