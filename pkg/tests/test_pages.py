import itertools
import json

import pytest
from hypothesis import given

from strategies import classical_words, closed_words
from threepage.pages import (
    TABLE,
    DecodeError,
    NotClassical,
    OpenEndpoints,
    Unbalanced,
    component_count,
    decode,
    is_realizable,
    local_pictures,
    to_link_diagram,
)
from threepage.word import ALPHABET, Letter, Word, parse_word, rotate


def test_table_shape():
    table = local_pictures()
    assert len(table) == 15
    for l, pic in table.items():
        if l.kind == "x":
            assert len(pic.ends) == 4 and len(pic.pages()) == 2 and pic.bridge
            assert sorted(i for b in pic.branches for i in b) == [0, 1, 2, 3]
        else:
            assert len(pic.ends) == 2 and len(pic.pages()) == 2 and not pic.bridge
        assert l.index not in pic.pages()


def test_table_is_rotation_equivariant():
    for l in ALPHABET:
        want = TABLE[Letter(l.kind, 0)].rotated(l.index)
        assert set(TABLE[l].ends) == set(want.ends)


def test_every_page_pair_and_side_pattern_is_a_letter():
    from threepage.pages import End, letter_for_ends

    for p, q in itertools.permutations(range(3), 2):
        for s, t in itertools.product("LR", repeat=2):
            l = letter_for_ends([(p, s), (q, t)])
            assert set(TABLE[l].ends) == {End(p, s), End(q, t)}


def test_decode_examples(wg):
    assert decode(Word()).component_count == 0
    with pytest.raises(Unbalanced):
        decode("a0")
    d = decode(wg)
    assert len(d.singular_points) == 2


def test_printed_fixture_is_a_tangle(wg_printed):
    with pytest.raises(DecodeError):
        decode(wg_printed)


def test_open_endpoints_reported():
    with pytest.raises(OpenEndpoints):
        decode("c1 a1")


def test_all_balanced_two_letter_words_are_unknots():
    found = 0
    for l1, l2 in itertools.product(ALPHABET, repeat=2):
        w = Word([l1, l2])
        if "x" in (l1.kind, l2.kind) or not is_realizable(w):
            continue
        found += 1
        assert component_count(w) == 1
        d = to_link_diagram(w)
        assert d.crossing_count == 0 and d.component_count == 1
    assert found >= 3
    assert component_count("a1 c1") == 1


def test_resolutions_of_fixture_decode_consistently(wg):
    from threepage.surface import resolve

    for sign in "+-":
        r = resolve(wg, sign)
        assert to_link_diagram(r).component_count == component_count(r)


def test_to_link_diagram_rejects_singular_words(wg):
    with pytest.raises(NotClassical):
        to_link_diagram(wg)


@given(closed_words())
def test_rotation_preserves_decoding(w):
    a, b = decode(w), decode(rotate(w))
    assert a.component_count == b.component_count
    assert len(a.singular_points) == len(b.singular_points)


@given(classical_words())
def test_rotation_preserves_link_components(w):
    a, b = to_link_diagram(w), to_link_diagram(rotate(w))
    assert a.component_count == b.component_count
    a.check()
    b.check()


def test_rotation_can_change_the_crossing_count():
    # rotation moves a different page over P0, so the projection changes;
    # here an R2 pair of crossings disappears
    w = parse_word("a0 d1 a1 c0 b1 c1")
    assert to_link_diagram(w).crossing_count == 2
    assert to_link_diagram(rotate(w)).crossing_count == 0


@given(closed_words())
def test_decode_is_deterministic_and_serializable(w):
    d = decode(w)
    assert d.to_json() == decode(w).to_json()
    doc = json.loads(d.to_json())
    assert len(doc["axis_points"]) == len(w)
    arcs = sum(len(v) for v in doc["page_arcs"].values())
    ends = sum(4 if l.kind == "x" else 2 for l in w)
    assert 2 * arcs == ends
