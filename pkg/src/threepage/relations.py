"""The relations of the universal semigroup SL and their application to words.

Families, for every ``i`` in Z/3 (``w_i = a_i b_i x_i b_i c_i``)::

    (1) d0 d1 d2 = 1,  b_i d_i = 1 = d_i b_i
    (2) a_i = a_{i+1} d_{i-1},  b_i = a_{i-1} c_{i+1},
        c_i = b_{i-1} c_{i+1},  d_i = a_{i+1} c_{i-1}
    (3) u v = v u,  u in {a_i b_i, d_i c_i, b_{i-1} d_i d_{i-1} b_i, d_i x_i b_i},
                    v in {a_{i+1}, b_{i+1}, c_{i+1}, b_i d_{i+1} d_i, x_{i+1}}
    (4) x_{i-1} = b_{i+1} x_i d_{i+1},  b_i x_i b_i = a_i b_i x_i b_i c_i,
        d_i x_i d_i = a_i d_i x_i d_i c_i
    (5) (d_i x_i b_i) D = D (d_i x_i b_i),  D = d_i^2 d_{i+1}^2 d_{i-1}^2
    (6) a_i x_i = a_i,  a_i b_i x_i d_i c_i = 1
    (7) d_i x_i b_i c_i x_i = b_i x_i d_i c_i x_i
    (8) w_i d_{i+1} d_i^2 d_{i-1} a_{i+1} b_{i+1} x_i b_i d_{i+1} b_i^2 b_{i+1} d_i^2
          = w_i b_{i-1} b_i a_i b_{i+1} a_{i+1} d_i^2 c_{i-1} b_i x_i b_i

The canonical presentation drops ``d0 b0 = 1`` and the six commutations of
``d_i c_i`` with ``a_{i+1}`` and ``b_{i+1}``, which follow from the others,
leaving 96 instances.  Those, together with the rotated copies of
``d0 d1 d2 = 1``, form the auxiliary redundant set; the canonical and
redundant sets together are closed under rotation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .word import EMPTY, Letter, Word, as_word, format_word, rotate


class Tier(enum.IntEnum):
    CLASSICAL = 1  # families (1)-(3) without x: classical link isotopy
    SINGULAR = 2  # families (1)-(5): singular link isotopy
    FULL = 3  # families (1)-(8): 2-link isotopy

    @classmethod
    def parse(cls, name) -> "Tier":
        if isinstance(name, Tier):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ValueError(f"unknown tier {name!r}") from None


class Direction(enum.Enum):
    LTOR = "LtoR"
    RTOL = "RtoL"

    def reverse(self) -> "Direction":
        return Direction.RTOL if self is Direction.LTOR else Direction.LTOR


@dataclass(frozen=True)
class RelationInstance:
    family: int
    index: int
    case: str
    lhs: Word
    rhs: Word

    @property
    def tier(self) -> Tier:
        if self.family >= 6:
            return Tier.FULL
        if self.family >= 4 or self.lhs.has_singular() or self.rhs.has_singular():
            return Tier.SINGULAR
        return Tier.CLASSICAL

    @property
    def key(self) -> tuple:
        return (self.family, self.case, self.index)

    def sides(self, direction: Direction) -> tuple[Word, Word]:
        if direction is Direction.LTOR:
            return self.lhs, self.rhs
        return self.rhs, self.lhs

    def rotate(self, k: int = 1) -> "RelationInstance":
        return RelationInstance(
            self.family, (self.index + k) % 3, self.case, rotate(self.lhs, k), rotate(self.rhs, k)
        )

    def __str__(self) -> str:
        return f"{format_word(self.lhs) or '1'} = {format_word(self.rhs) or '1'}  [{self.family}, {self.index}]"

    def label(self) -> str:
        return f"({self.family}{self.case}) i={self.index}"


class ApplicationError(ValueError):
    pass


def _w(*letters) -> Word:
    return Word(Letter(k, j % 3) for k, j in letters)


_U_CASES = ("ab", "dc", "bddb", "dxb")
_V_CASES = ("a", "b", "c", "bdd", "x")


def _family3(i: int) -> list[tuple[str, Word, Word]]:
    us = {
        "ab": _w(("a", i), ("b", i)),
        "dc": _w(("d", i), ("c", i)),
        "bddb": _w(("b", i - 1), ("d", i), ("d", i - 1), ("b", i)),
        "dxb": _w(("d", i), ("x", i), ("b", i)),
    }
    vs = {
        "a": _w(("a", i + 1)),
        "b": _w(("b", i + 1)),
        "c": _w(("c", i + 1)),
        "bdd": _w(("b", i), ("d", i + 1), ("d", i)),
        "x": _w(("x", i + 1)),
    }
    return [(f"{u}|{v}", us[u] + vs[v], vs[v] + us[u]) for u in _U_CASES for v in _V_CASES]


def _raw_instances() -> list[RelationInstance]:
    """Every instance of families (1)-(8) before exclusions, in canonical order."""
    out = [RelationInstance(1, 0, "ddd", _w(("d", 0), ("d", 1), ("d", 2)), EMPTY)]
    for i in range(3):
        out.append(RelationInstance(1, i, "bd", _w(("b", i), ("d", i)), EMPTY))
    for i in range(3):
        out.append(RelationInstance(1, i, "db", _w(("d", i), ("b", i)), EMPTY))
    for case in "abcd":
        for i in range(3):
            rhs = {
                "a": _w(("a", i + 1), ("d", i - 1)),
                "b": _w(("a", i - 1), ("c", i + 1)),
                "c": _w(("b", i - 1), ("c", i + 1)),
                "d": _w(("a", i + 1), ("c", i - 1)),
            }[case]
            out.append(RelationInstance(2, i, case, _w((case, i)), rhs))
    for i in range(3):
        for case, lhs, rhs in _family3(i):
            out.append(RelationInstance(3, i, case, lhs, rhs))
    for i in range(3):
        out.append(
            RelationInstance(4, i, "x", _w(("x", i - 1)), _w(("b", i + 1), ("x", i), ("d", i + 1)))
        )
    for i in range(3):
        bxb = _w(("b", i), ("x", i), ("b", i))
        out.append(RelationInstance(4, i, "bxb", bxb, _w(("a", i)) + bxb + _w(("c", i))))
    for i in range(3):
        dxd = _w(("d", i), ("x", i), ("d", i))
        out.append(RelationInstance(4, i, "dxd", dxd, _w(("a", i)) + dxd + _w(("c", i))))
    for i in range(3):
        dd = _w(("d", i), ("d", i), ("d", i + 1), ("d", i + 1), ("d", i - 1), ("d", i - 1))
        dxb = _w(("d", i), ("x", i), ("b", i))
        out.append(RelationInstance(5, i, "", dxb + dd, dd + dxb))
    for i in range(3):
        out.append(RelationInstance(6, i, "ax", _w(("a", i), ("x", i)), _w(("a", i))))
    for i in range(3):
        out.append(
            RelationInstance(
                6, i, "abxdc", _w(("a", i), ("b", i), ("x", i), ("d", i), ("c", i)), EMPTY
            )
        )
    for i in range(3):
        out.append(
            RelationInstance(
                7,
                i,
                "",
                _w(("d", i), ("x", i), ("b", i), ("c", i), ("x", i)),
                _w(("b", i), ("x", i), ("d", i), ("c", i), ("x", i)),
            )
        )
    for i in range(3):
        wi = _w(("a", i), ("b", i), ("x", i), ("b", i), ("c", i))
        lhs = wi + _w(
            ("d", i + 1), ("d", i), ("d", i), ("d", i - 1), ("a", i + 1), ("b", i + 1),
            ("x", i), ("b", i), ("d", i + 1), ("b", i), ("b", i), ("b", i + 1),
            ("d", i), ("d", i),
        )
        rhs = wi + _w(
            ("b", i - 1), ("b", i), ("a", i), ("b", i + 1), ("a", i + 1), ("d", i),
            ("d", i), ("c", i - 1), ("b", i), ("x", i), ("b", i),
        )
        out.append(RelationInstance(8, i, "", lhs, rhs))
    return out


def _is_excluded(r: RelationInstance) -> bool:
    if r.family == 1 and r.case == "db" and r.index == 0:
        return True
    return r.family == 3 and r.case in ("dc|a", "dc|b")


@lru_cache(maxsize=None)
def _canonical() -> tuple[RelationInstance, ...]:
    return tuple(r for r in _raw_instances() if not _is_excluded(r))


@lru_cache(maxsize=None)
def redundant_relations() -> tuple[RelationInstance, ...]:
    """Derivable instances kept outside the canonical 96 to speed up search."""
    extra = [r for r in _raw_instances() if _is_excluded(r)]
    d012 = _w(("d", 0), ("d", 1), ("d", 2))
    for k in (1, 2):
        extra.append(RelationInstance(1, k, "ddd", rotate(d012, k), EMPTY))
    return tuple(extra)


def enumerate_relations(tier=Tier.FULL, extended: bool = False) -> list[RelationInstance]:
    """Canonical instances of ``tier`` (plus the redundant ones if ``extended``)."""
    tier = Tier.parse(tier)
    rels = list(_canonical())
    if extended:
        rels += redundant_relations()
    return [r for r in rels if r.tier <= tier]


def family_counts(rels) -> tuple[int, ...]:
    counts = [0] * 8
    for r in rels:
        counts[r.family - 1] += 1
    return tuple(counts)


def find_relation(family: int, index: int, case: str = "") -> RelationInstance:
    for r in _raw_instances() + list(redundant_relations()):
        if r.family == family and r.index == index % 3 and r.case == case:
            return r
    raise KeyError((family, index, case))


def apply(w, r: RelationInstance, pos: int, direction=Direction.LTOR) -> Word:
    """Replace the occurrence of one side of ``r`` at ``pos`` by the other side."""
    w = as_word(w)
    direction = Direction(direction) if not isinstance(direction, Direction) else direction
    src, dst = r.sides(direction)
    n = len(src)
    if pos < 0 or pos > len(w) or w.codes[pos : pos + n] != src.codes:
        raise ApplicationError(
            f"{format_word(src) or '1'} does not occur at position {pos} of {format_word(w) or '1'}"
        )
    return Word._raw(w.codes[:pos] + dst.codes + w.codes[pos + n :])


class Rewrite(NamedTuple):
    src: bytes
    dst: bytes
    relation: RelationInstance
    direction: Direction


class RuleSet:
    """A compiled list of directed rewrites for fast neighbor generation."""

    def __init__(self, tier=Tier.FULL, extended: bool = True):
        self.tier = Tier.parse(tier)
        self.extended = extended
        self._compile(tuple(enumerate_relations(self.tier, extended)))

    def _compile(self, relations) -> None:
        self.relations = relations
        rewrites = []
        for r in self.relations:
            for d in Direction:
                src, dst = r.sides(d)
                rewrites.append(Rewrite(src.codes, dst.codes, r, d))
        self.rewrites = tuple(rewrites)
        self.inserts = tuple(rw for rw in rewrites if not rw.src)
        self.replaces = tuple(rw for rw in rewrites if rw.src)
        self.ordered = self.replaces + self.inserts
        self.pairs = [(rw.src, rw.dst) for rw in self.ordered]

    def steps(self, codes: bytes) -> Iterator[tuple[bytes, int, int]]:
        """All single rewrites as ``(new codes, index into ordered, position)``."""
        n_rep = len(self.replaces)
        for k, rw in enumerate(self.replaces):
            src, n = rw.src, len(rw.src)
            pos = codes.find(src)
            while pos >= 0:
                yield codes[:pos] + rw.dst + codes[pos + n :], k, pos
                pos = codes.find(src, pos + 1)
        for k, rw in enumerate(self.inserts, n_rep):
            for pos in range(len(codes) + 1):
                yield codes[:pos] + rw.dst + codes[pos:], k, pos


@lru_cache(maxsize=None)
def ruleset(tier=Tier.FULL, extended: bool = True) -> RuleSet:
    return RuleSet(Tier.parse(tier), extended)


def neighbors(w, tier=Tier.FULL, extended: bool = False) -> list[Word]:
    """Words one relation application away, sorted length-lexicographically."""
    w = as_word(w)
    out = {c for c, _, _ in ruleset(tier, extended).steps(w.codes)}
    out.discard(w.codes)
    return [Word._raw(c) for c in sorted(out, key=lambda c: (len(c), c))]


def custom_ruleset(relations) -> RuleSet:
    """A rule set over an explicit list of instances (lemmas, ablations)."""
    rs = RuleSet.__new__(RuleSet)
    rs._compile(tuple(relations))
    rs.tier = max((r.tier for r in rs.relations), default=Tier.CLASSICAL)
    rs.extended = None
    return rs
