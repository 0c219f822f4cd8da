"""Geometric meaning of letters: local pictures, decoding, link diagrams.

The 3-page book has pages ``P0, P1, P2`` glued along the binding axis.  A
letter describes the link near one point of the axis: which pages its arcs
lie in and whether each arc leaves the point to the left (``L``) or to the
right (``R``) along the axis.  Letters with index ``i`` avoid page ``P_i``;
writing ``q = i+1`` and ``r = i+2`` (mod 3)::

    a_i   R in q, R in r          (both arcs open to the right)
    b_i   L in r, R in q
    c_i   L in q, L in r          (both arcs close from the left)
    d_i   L in q, R in r
    x_i   L in q, L in r, R in q, R in r   (a cross in the broken plane
          P_q u P_r; branches join L_q-R_r and L_r-R_q, bridge on the axis)

So the letters of index 1 live in the plane ``P0 u P2`` and the remaining
ones use ``P1``, the page that carries overcrossing arcs.  Inside a page the
arcs are disjoint and monotone, hence properly nested: arc ends in a page
form a bracket sequence whose matching is forced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional

from .word import ALPHABET, Letter, Word, as_word


class End(NamedTuple):
    page: int
    side: str  # "L": arc goes to an earlier axis point, "R": to a later one


@dataclass(frozen=True)
class LocalPicture:
    letter: Letter
    ends: tuple[End, ...]
    # pairs of indices into ``ends`` joined through the point
    branches: tuple[tuple[int, int], ...]
    bridge: bool = False

    def events(self, page: int) -> list[str]:
        """Endpoint events on one page: ``ClosesLeft`` before ``OpensRight``."""
        closes = ["ClosesLeft" for e in self.ends if e.page == page and e.side == "L"]
        opens = ["OpensRight" for e in self.ends if e.page == page and e.side == "R"]
        return closes + opens

    def pages(self) -> frozenset[int]:
        return frozenset(e.page for e in self.ends)

    def rotated(self, k: int = 1) -> "LocalPicture":
        return LocalPicture(
            self.letter.rotate(k),
            tuple(End((e.page + k) % 3, e.side) for e in self.ends),
            self.branches,
            self.bridge,
        )


def _base_picture(kind: str) -> LocalPicture:
    q, r = 1, 2  # index 0 avoids P0
    ends = {
        "a": ((q, "R"), (r, "R")),
        "b": ((r, "L"), (q, "R")),
        "c": ((q, "L"), (r, "L")),
        "d": ((q, "L"), (r, "R")),
        "x": ((q, "L"), (r, "L"), (q, "R"), (r, "R")),
    }[kind]
    if kind == "x":
        return LocalPicture(Letter(kind, 0), tuple(End(*e) for e in ends), ((0, 3), (1, 2)), True)
    return LocalPicture(Letter(kind, 0), tuple(End(*e) for e in ends), ((0, 1),))


def local_pictures() -> dict[Letter, LocalPicture]:
    """The static table of the 15 local pictures, keyed by letter."""
    table = {}
    for kind in "abcdx":
        base = _base_picture(kind)
        for i in range(3):
            table[Letter(kind, i)] = base.rotated(i)
    return table


TABLE: Mapping[Letter, LocalPicture] = local_pictures()
_BY_CODE = tuple(TABLE[l] for l in ALPHABET)


def _pictures(table: Optional[Mapping[Letter, LocalPicture]]):
    if table is None or table is TABLE:
        return _BY_CODE
    return tuple(table[l] for l in ALPHABET)


def letter_for_ends(ends) -> Letter:
    """The unique non-singular letter with the given two arc ends."""
    key = frozenset(End(*e) for e in ends)
    for letter, pic in TABLE.items():
        if letter.kind != "x" and frozenset(pic.ends) == key:
            return letter
    raise ValueError(f"no letter has ends {sorted(key)}")


# ----------------------------------------------------------------------------
# decoding

class DecodeError(ValueError):
    pass


class Unbalanced(DecodeError):
    def __init__(self, page: int, position: int):
        super().__init__(f"page P{page} is unbalanced at position {position}")
        self.page = page
        self.position = position


class OpenEndpoints(DecodeError):
    def __init__(self, pages):
        self.pages = tuple(sorted(pages))
        super().__init__(
            "word is a tangle: arcs leave through the ends of the axis on pages "
            + ", ".join(f"P{p}" for p in self.pages)
        )


@dataclass
class _Trace:
    """Arc structure of a word read as a tangle."""

    pictures: tuple
    arcs: list  # (page, open node, close node)
    left: list  # per page: nodes closing arcs that come from the left end, inner first
    right: list  # per page: nodes of arcs leaving through the right end, inner first
    first_bad: list  # per page: position of first unmatched close, or None


def _trace(codes: bytes, pics) -> _Trace:
    stacks = ([], [], [])
    left = ([], [], [])
    first_bad = [None, None, None]
    arcs = []
    for pos, c in enumerate(codes):
        pic = pics[c]
        for j, e in enumerate(pic.ends):
            if e.side == "L":
                st = stacks[e.page]
                if st:
                    arcs.append((e.page, st.pop(), (pos, j)))
                else:
                    left[e.page].append((pos, j))
                    if first_bad[e.page] is None:
                        first_bad[e.page] = pos
        for j, e in enumerate(pic.ends):
            if e.side == "R":
                stacks[e.page].append((pos, j))
    right = [list(reversed(st)) for st in stacks]
    return _Trace(pics, arcs, list(left), right, first_bad)


def _mates(codes: bytes, tr: _Trace):
    """Arc partner and through-point partner of every arc end."""
    arc_mate = {}
    point_mate = {}
    for pos, c in enumerate(codes):
        for a, b in tr.pictures[c].branches:
            point_mate[(pos, a)] = (pos, b)
            point_mate[(pos, b)] = (pos, a)
    for _, u, v in tr.arcs:
        arc_mate[u] = v
        arc_mate[v] = u
    return arc_mate, point_mate


def _cycles(arc_mate, point_mate):
    """Closed components as lists of arc ends ``(u, v)`` in traversal order."""
    seen = set()
    cycles = []
    for start in sorted(arc_mate):
        if start in seen:
            continue
        cyc = []
        cur = start
        while True:
            other = arc_mate[cur]
            seen.add(cur)
            seen.add(other)
            cyc.append((cur, other))
            cur = point_mate[other]
            if cur == start:
                break
        cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class SingularPoint:
    position: int
    letter: Letter
    branches: tuple[tuple[End, End], ...]


@dataclass
class MarkedGraphDiagram:
    word: Word
    axis_points: tuple[Letter, ...]
    page_arcs: dict[int, tuple[tuple[int, int], ...]]
    singular_points: tuple[SingularPoint, ...]
    components: tuple[tuple[int, ...], ...]
    _trace: Optional[_Trace] = field(default=None, repr=False, compare=False)

    @property
    def component_count(self) -> int:
        return len(self.components)

    def to_json(self) -> str:
        doc = {
            "word": str(self.word),
            "axis_points": [str(l) for l in self.axis_points],
            "page_arcs": {f"P{p}": [list(a) for a in self.page_arcs[p]] for p in range(3)},
            "components": [list(c) for c in self.components],
            "singular_points": [
                {
                    "position": s.position,
                    "letter": str(s.letter),
                    "branches": [
                        [f"{e.side}{e.page}" for e in branch] for branch in s.branches
                    ],
                }
                for s in self.singular_points
            ],
        }
        return json.dumps(doc, indent=2)


def decode(w, table: Optional[Mapping[Letter, LocalPicture]] = None) -> MarkedGraphDiagram:
    """Decode a word into the closed marked graph it encodes.

    Raises :class:`Unbalanced` if some page has unequal numbers of left and
    right arc ends, and :class:`OpenEndpoints` if the pages balance but some
    arc runs off an end of the axis (the word is only a tangle).
    """
    w = as_word(w)
    pics = _pictures(table)
    codes = w.codes
    tr = _trace(codes, pics)
    for p in range(3):
        if len(tr.left[p]) != len(tr.right[p]):
            if tr.first_bad[p] is not None:
                raise Unbalanced(p, tr.first_bad[p])
            raise Unbalanced(p, tr.right[p][-1][0])
    if any(tr.left[p] for p in range(3)):
        raise OpenEndpoints(p for p in range(3) if tr.left[p])

    arc_mate, point_mate = _mates(codes, tr)
    components = tuple(
        tuple(v[0] for _, v in cyc) for cyc in _cycles(arc_mate, point_mate)
    )
    page_arcs = {
        p: tuple(sorted((u[0], v[0]) for q, u, v in tr.arcs if q == p)) for p in range(3)
    }
    singular = []
    for pos, c in enumerate(codes):
        pic = pics[c]
        if pic.bridge:
            singular.append(
                SingularPoint(
                    pos, pic.letter, tuple((pic.ends[a], pic.ends[b]) for a, b in pic.branches)
                )
            )
    return MarkedGraphDiagram(
        w, tuple(w), page_arcs, tuple(singular), components, tr
    )


def is_realizable(w, table=None) -> bool:
    try:
        decode(w, table)
    except DecodeError:
        return False
    return True


def component_count(w, table=None) -> int:
    return decode(w, table).component_count


# ----------------------------------------------------------------------------
# tangle signatures

def tangle_signature(w, table=None) -> tuple:
    """Isotopy data of the tangle a word describes, with identity strands removed.

    Returns ``(left counts per page, right counts per page, boundary pairing,
    closed loops)``.  Boundary ends are labelled ``("L"|"R", page, k)`` with
    ``k = 0`` the innermost.  Strands joining the outermost left and right
    ends of one page are peeled off repeatedly, since the identity word
    absorbs them.  Every relation of families (1)-(5) preserves this value.
    """
    w = as_word(w)
    pics = _pictures(table)
    codes = w.codes
    tr = _trace(codes, pics)
    arc_mate, point_mate = _mates(codes, tr)
    label = {}
    for p in range(3):
        for k, node in enumerate(tr.left[p]):
            label[node] = ("L", p, k)
        for k, node in enumerate(tr.right[p]):
            label[node] = ("R", p, k)
    seen = set()
    pairs = set()
    for start in sorted(label):
        if start in seen:
            continue
        seen.add(start)
        cur = point_mate[start]
        while cur in arc_mate:
            seen.add(cur)
            seen.add(arc_mate[cur])
            cur = point_mate[arc_mate[cur]]
        seen.add(cur)
        pairs.add(frozenset((label[start], label[cur])))
    loops = 0
    for node in sorted(arc_mate):
        if node in seen:
            continue
        loops += 1
        cur = node
        while cur not in seen:
            seen.add(cur)
            seen.add(arc_mate[cur])
            cur = point_mate[arc_mate[cur]]
    nl = [len(tr.left[p]) for p in range(3)]
    nr = [len(tr.right[p]) for p in range(3)]
    changed = True
    while changed:
        changed = False
        for p in range(3):
            if nl[p] and nr[p]:
                f = frozenset((("L", p, nl[p] - 1), ("R", p, nr[p] - 1)))
                if f in pairs:
                    pairs.remove(f)
                    nl[p] -= 1
                    nr[p] -= 1
                    changed = True
    return (tuple(nl), tuple(nr), tuple(sorted(tuple(sorted(f)) for f in pairs)), loops)


# ----------------------------------------------------------------------------
# projection to a classical link diagram

class Crossing(NamedTuple):
    """One crossing in planar-diagram form.

    ``pd`` lists edge labels counterclockwise starting from the incoming
    under-edge.  ``sign`` is +1 for a right-handed crossing.
    """

    pd: tuple[int, int, int, int]
    sign: int
    over_component: int
    under_component: int


@dataclass
class LinkDiagram:
    crossings: list[Crossing]
    # each component as its cyclic sequence of edge labels
    components: list[tuple[int, ...]]

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.components)

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def self_writhe(self) -> int:
        return sum(c.sign for c in self.crossings if c.over_component == c.under_component)

    def free_loops(self) -> int:
        """Components that pass through no crossing."""
        used = {e for c in self.crossings for e in c.pd}
        return sum(1 for comp in self.components if not used.intersection(comp))

    def check(self) -> None:
        counts = {}
        for c in self.crossings:
            for e in c.pd:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, n in counts.items() if n != 2]
        if bad:
            raise ValueError(f"edge labels {bad} not used exactly twice")


class NotClassical(ValueError):
    pass


def _semicircle_x(s1, t1, s2, t2) -> Fraction:
    c1, c2 = Fraction(s1 + t1, 2), Fraction(s2 + t2, 2)
    r1, r2 = Fraction(t1 - s1, 2), Fraction(t2 - s2, 2)
    return (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))


def to_link_diagram(w) -> LinkDiagram:
    """Project a classical 3-page link onto the plane.

    ``P0`` goes to the upper half-plane, ``P2`` to the lower one and ``P1``
    is folded onto the upper half-plane in front of ``P0``.  Arcs are drawn as
    semicircles, so a ``P1`` arc crosses a ``P0`` arc exactly when their
    intervals interleave, with the ``P1`` strand over.
    """
    w = as_word(w)
    if w.has_singular():
        raise NotClassical("word contains singular letters")
    diagram = decode(w)
    tr = diagram._trace
    arc_mate, point_mate = _mates(w.codes, tr)
    arcs = {}  # arc end -> (page, s, t)
    for page, u, v in tr.arcs:
        arcs[u] = arcs[v] = (page, u[0], v[0])

    over_arcs = sorted(a for a in set(arcs.values()) if a[0] == 1)
    under_arcs = sorted(a for a in set(arcs.values()) if a[0] == 0)
    on_arc = {}  # arc -> [(x, crossing id)]
    xings = []
    for o in over_arcs:
        for u in under_arcs:
            _, s1, t1 = o
            _, s2, t2 = u
            if s1 < s2 < t1 < t2 or s2 < s1 < t2 < t1:
                x = _semicircle_x(s1, t1, s2, t2)
                cid = len(xings)
                xings.append({"over": o, "under": u})
                on_arc.setdefault(o, []).append((x, cid))
                on_arc.setdefault(u, []).append((x, cid))

    comps_arcs = [
        [(arcs[u], 1 if v[0] > u[0] else -1) for u, v in cyc]
        for cyc in _cycles(arc_mate, point_mate)
    ]

    label = 0
    passages = {}  # crossing id -> list of (role, in_label, out_label, direction, arc)
    components = []
    for ci, seq in enumerate(comps_arcs):
        events = []
        for arc, direction in seq:
            pts = sorted(on_arc.get(arc, []), reverse=direction < 0)
            for x, cid in pts:
                events.append((cid, arc, direction))
        if not events:
            components.append((label,))
            label += 1
            continue
        n = len(events)
        labels = [label + k for k in range(n)]
        label += n
        components.append(tuple(labels))
        for k, (cid, arc, direction) in enumerate(events):
            passages.setdefault(cid, []).append(
                {"in": labels[k - 1], "out": labels[k], "dir": direction, "arc": arc, "comp": ci}
            )

    crossings = []
    for cid, data in enumerate(xings):
        ps = passages[cid]
        over = next(p for p in ps if p["arc"] == data["over"])
        under = next(p for p in ps if p["arc"] == data["under"])
        c_over = Fraction(over["arc"][1] + over["arc"][2], 2)
        c_under = Fraction(under["arc"][1] + under["arc"][2], 2)
        # tangents at the crossing point cross with sign(c_under - c_over)
        sign = over["dir"] * under["dir"] * (1 if c_under > c_over else -1)
        if sign > 0:
            pd = (under["in"], over["out"], under["out"], over["in"])
        else:
            pd = (under["in"], over["in"], under["out"], over["out"])
        crossings.append(Crossing(pd, sign, over["comp"], under["comp"]))
    return LinkDiagram(crossings, components)
