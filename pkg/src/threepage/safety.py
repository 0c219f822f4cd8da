"""Random realizable words and the relation-safety suite.

A relation is safe when replacing its left side by its right side inside a
closed word never changes what the word represents.  The suite embeds each
relation instance between random context words ``u, v`` chosen so that
``u lhs v`` is closed, and compares invariants of both sides:

* every tier: decode success, and ``chi``; admissibility for words whose
  resolutions stay within the bracket cap;
* families (1)-(5): component count and number of singular points;
* Classical tier: the ``|lk|`` data and the normalized Kauffman bracket.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .pages import (
    TABLE,
    DecodeError,
    LocalPicture,
    _pictures,
    _trace,
    decode,
    tangle_signature,
    to_link_diagram,
)
from .relations import RelationInstance, Tier, enumerate_relations
from .word import ALPHABET, Letter, Word, as_word, format_word

# rewriting budget per resolution when comparing admissibility
SAFETY_STATES = 200

# ----------------------------------------------------------------------------
# random words


def boundary(w, table: Optional[Mapping[Letter, LocalPicture]] = None) -> tuple[tuple, tuple]:
    """Per page: arcs entering from the left end, and arcs leaving at the right end."""
    w = as_word(w)
    tr = _trace(w.codes, _pictures(table))
    return tuple(len(tr.left[p]) for p in range(3)), tuple(len(tr.right[p]) for p in range(3))


def _closes(pic: LocalPicture) -> list[int]:
    out = [0, 0, 0]
    for e in pic.ends:
        if e.side == "L":
            out[e.page] += 1
    return out


def _opens(pic: LocalPicture) -> list[int]:
    out = [0, 0, 0]
    for e in pic.ends:
        if e.side == "R":
            out[e.page] += 1
    return out


def _step(depth: list[int], pic: LocalPicture) -> list[int]:
    c, o = _closes(pic), _opens(pic)
    return [depth[p] - c[p] + o[p] for p in range(3)]


def random_walk(rng: random.Random, length: int, depth=(0, 0, 0), x_rate: float = 0.1,
                table=None) -> tuple[list[Letter], list[int]]:
    """Random letters that never close an arc nobody opened."""
    table = table or TABLE
    depth = list(depth)
    letters = []
    plain = [l for l in ALPHABET if l.kind != "x"]
    singular = [l for l in ALPHABET if l.kind == "x"]
    for _ in range(length):
        pool = singular if rng.random() < x_rate else plain
        choices = [l for l in pool if all(c <= d for c, d in zip(_closes(table[l]), depth))]
        if not choices:
            choices = [l for l in plain if all(c <= d for c, d in zip(_closes(table[l]), depth))]
        l = rng.choice(choices)
        letters.append(l)
        depth = _step(depth, table[l])
    return letters, depth


def _closer(depth: list[int], table) -> list[Letter]:
    """Letters that close every open arc."""
    depth = list(depth)
    out = []
    guard = 0
    while any(depth):
        guard += 1
        if guard > 1000:
            raise RuntimeError(f"cannot close depths {depth}")
        pos = [p for p in range(3) if depth[p] > 0]
        found = None
        if len(pos) >= 2:
            for l in ALPHABET:
                if l.kind == "c" and all(
                    (depth[p] >= n) for p, n in enumerate(_closes(table[l]))
                ) and not any(_opens(table[l])):
                    found = l
                    break
        if found is None:
            # move one arc end to another page
            for l in ALPHABET:
                c = _closes(table[l])
                if l.kind in "bd" and sum(c) == 1 and all(depth[p] >= c[p] for p in range(3)):
                    found = l
                    break
        if found is None:
            raise RuntimeError(f"cannot close depths {depth}")
        out.append(found)
        depth = _step(depth, table[found])
    return out


def _opener(depth: list[int], needs, table) -> list[Letter]:
    """Letters raising every page depth to at least ``needs``."""
    depth = list(depth)
    out = []
    while any(depth[p] < needs[p] for p in range(3)):
        p = next(p for p in range(3) if depth[p] < needs[p])
        l = next(
            l for l in ALPHABET
            if l.kind == "a" and _opens(table[l])[p] and not any(_closes(table[l]))
        )
        out.append(l)
        depth = _step(depth, table[l])
    return out


def random_closed_word(rng: random.Random, length: int, x_rate: float = 0.1, table=None) -> Word:
    """A random realizable word: a random walk followed by closing letters."""
    table = table or TABLE
    letters, depth = random_walk(rng, length, x_rate=x_rate, table=table)
    return Word(letters + _closer(depth, table))


def random_context(rng: random.Random, core, max_len: int = 6, x_rate: float = 0.1,
                   table=None) -> tuple[Word, Word]:
    """Random ``u, v`` with ``u core v`` realizable."""
    table = table or TABLE
    core = as_word(core)
    needs, _ = boundary(core, table)
    u, depth = random_walk(rng, rng.randint(0, max_len), x_rate=x_rate, table=table)
    u += _opener(depth, needs, table)
    depth = [0, 0, 0]
    for l in list(u) + list(core):
        depth = _step(depth, table[l])
    v, depth = random_walk(rng, rng.randint(0, max_len), depth=depth, x_rate=x_rate, table=table)
    v += _closer(depth, table)
    return Word(u), Word(v)


# ----------------------------------------------------------------------------
# the suite


@dataclass
class Violation:
    relation: RelationInstance
    u: Word
    v: Word
    invariant: str
    lhs_value: object
    rhs_value: object

    def __str__(self) -> str:
        where = f"u = {format_word(self.u) or '1'}, v = {format_word(self.v) or '1'}"
        return (
            f"{self.relation.label()} [{self.relation}]: {self.invariant} differs "
            f"({where}): {self.lhs_value} vs {self.rhs_value}"
        )

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.label(),
            "lhs": format_word(self.relation.lhs),
            "rhs": format_word(self.relation.rhs),
            "u": format_word(self.u),
            "v": format_word(self.v),
            "invariant": self.invariant,
            "lhs_value": str(self.lhs_value),
            "rhs_value": str(self.rhs_value),
        }


@dataclass
class SafetyReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    skipped: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "SafetyReport") -> None:
        self.checked += other.checked
        self.violations += other.violations
        for k, n in other.skipped.items():
            self.skipped[k] = self.skipped.get(k, 0) + n


def check_signature(r: RelationInstance, table=None) -> Optional[Violation]:
    """Both sides describe the same tangle (context-free check)."""
    try:
        a, b = tangle_signature(r.lhs, table), tangle_signature(r.rhs, table)
    except Exception as exc:  # noqa: BLE001 - a broken table may fail anywhere
        return Violation(r, Word(), Word(), "tangle", "error", str(exc))
    if r.family <= 5 and a != b:
        return Violation(r, Word(), Word(), "tangle", a, b)
    return None


def _structural(w, table) -> tuple:
    try:
        d = decode(w, table)
    except DecodeError as exc:
        return ("fails", type(exc).__name__)
    return ("ok", d.component_count, len(d.singular_points))


def _semantic(w, tier: Tier, admissibility: bool, budget) -> dict:
    from .rewrite import SearchBudget
    from .surface import (
        BRACKET_CAP,
        Admissibility,
        ResolutionSign,
        admissible,
        euler_characteristic,
        kauffman_bracket,
        linking_invariant,
        linking_matrix,
        resolve,
    )

    out = {"chi": euler_characteristic(w)}
    if tier is Tier.CLASSICAL:
        d = to_link_diagram(w)
        out["linking"] = linking_invariant(linking_matrix(d))
        if d.crossing_count <= BRACKET_CAP:
            out["bracket"] = str(kauffman_bracket(d))
    if admissibility:
        sizes = [to_link_diagram(resolve(w, s)).crossing_count for s in ResolutionSign]
        if max(sizes) <= BRACKET_CAP:
            if budget is None:
                budget = SearchBudget.for_words(w, slack=2, max_states=SAFETY_STATES)
            verdict = admissible(w, budget).overall
            # an exhausted budget is not a verdict
            if verdict is not Admissibility.UNKNOWN:
                out["admissibility"] = verdict.value
    return out


def check_in_context(r: RelationInstance, u, v, table=None, semantic: bool = True,
                     admissibility: bool = True, budget=None,
                     skipped: Optional[dict] = None) -> list[Violation]:
    u, v = as_word(u), as_word(v)
    left, right = u + r.lhs + v, u + r.rhs + v
    found = []
    a, b = _structural(left, table), _structural(right, table)
    if a[0] != b[0]:
        return [Violation(r, u, v, "decode", a[1] if a[0] == "fails" else "ok",
                          b[1] if b[0] == "fails" else "ok")]
    if a[0] == "fails":
        return []
    if r.family <= 5:
        if a[1] != b[1]:
            found.append(Violation(r, u, v, "components", a[1], b[1]))
        if a[2] != b[2]:
            found.append(Violation(r, u, v, "singular points", a[2], b[2]))
    if semantic and table is None:
        sa = _semantic(left, r.tier, admissibility, budget)
        sb = _semantic(right, r.tier, admissibility, budget)
        for key in sa.keys() | sb.keys():
            if key in sa and key in sb:
                if sa[key] != sb[key]:
                    found.append(Violation(r, u, v, key, sa[key], sb[key]))
            elif skipped is not None:
                skipped[key] = skipped.get(key, 0) + 1
    return found


def run_relation_safety(relations: Optional[Iterable[RelationInstance]] = None,
                        contexts: int = 200, seed: int = 0, max_context: int = 6,
                        x_rate: float = 0.15, table=None, semantic: bool = True,
                        admissibility: bool = True, budget=None) -> SafetyReport:
    """Check every relation in ``contexts`` random realizable contexts."""
    if relations is None:
        relations = enumerate_relations(Tier.FULL)
    report = SafetyReport()
    for r in relations:
        bad = check_signature(r, table)
        if bad is not None:
            report.violations.append(bad)
            continue
        rng = random.Random(f"{seed}:{r.family}:{r.case}:{r.index}")
        for _ in range(contexts):
            # classical invariants need classical contexts
            rate = 0.0 if r.tier is Tier.CLASSICAL else x_rate
            u, v = random_context(rng, r.lhs, max_context, rate, table)
            report.checked += 1
            report.violations += check_in_context(
                r, u, v, table, semantic=semantic, admissibility=admissibility, budget=budget,
                skipped=report.skipped,
            )
    return report


def corrupted_table(letter: Letter = Letter("b", 0)) -> dict:
    """The static table with one entry damaged.

    Arc ends of a plain letter are mirrored (L and R swapped); a cross gets
    the other pairing of its four ends into branches.
    """
    table = dict(TABLE)
    pic = table[letter]
    if pic.bridge:
        table[letter] = LocalPicture(letter, pic.ends, ((0, 2), (1, 3)), pic.bridge)
    else:
        flip = {"L": "R", "R": "L"}
        ends = tuple(type(e)(e.page, flip[e.side]) for e in pic.ends)
        table[letter] = LocalPicture(letter, ends, pic.branches, pic.bridge)
    return table


def _shape(pic: LocalPicture) -> tuple:
    pairs = frozenset(frozenset((pic.ends[a], pic.ends[b])) for a, b in pic.branches)
    return frozenset(pic.ends), pairs, pic.bridge


def check_table(table: Mapping[Letter, LocalPicture]) -> list[str]:
    """Static consistency of a table: 15 entries, rotation equivariance, x shape."""
    problems = []
    if set(table) != set(ALPHABET):
        problems.append("table must have exactly one entry per letter")
        return problems
    for l in ALPHABET:
        pic = table[l]
        want = table[Letter(l.kind, 0)].rotated(l.index)
        if _shape(pic) != _shape(want):
            problems.append(f"{l}: not the rotation of {l.kind}0")
        if l in TABLE and len(pic.ends) != (4 if l.kind == "x" else 2):
            problems.append(f"{l}: wrong number of arc ends")
        if l.index in pic.pages():
            problems.append(f"{l}: touches page {l.index}")
    return problems
