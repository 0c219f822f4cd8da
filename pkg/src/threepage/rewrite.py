"""Bounded search in the congruence generated by a tier of relations.

Equality in SL is treated as semi-decidable: a search either finds a
replayable chain of relation applications, refutes the equality with an
invariant the tier is known to preserve, or gives up within its budget.
"""

from __future__ import annotations

import enum
import heapq
import os
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .relations import ApplicationError, Direction, RelationInstance, RuleSet, Tier, apply, ruleset
from .word import ALPHABET, Word, as_word, format_word

DEFAULT_MAX_STATES = 2_000_000
DEFAULT_MAX_DEPTH = 24
DEFAULT_SLACK = 8


def _env_max_states() -> int:
    raw = os.environ.get("THREEPAGE_MAX_STATES")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_MAX_STATES


@dataclass(frozen=True)
class SearchBudget:
    max_word_length: int
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if min(self.max_word_length, self.max_states, self.max_depth) <= 0:
            raise ValueError("budget fields must be positive")

    @classmethod
    def for_words(cls, *words, slack: int = DEFAULT_SLACK, max_states: Optional[int] = None,
                  max_depth: int = DEFAULT_MAX_DEPTH) -> "SearchBudget":
        """Default budget: longest input plus ``slack`` letters."""
        longest = max((len(as_word(w)) for w in words), default=0)
        return cls(longest + slack, max_states or _env_max_states(), max_depth)


class Step(NamedTuple):
    relation: RelationInstance
    pos: int
    direction: Direction

    def __str__(self) -> str:
        return f"{self.relation.label()} {self.direction.value} @{self.pos}"


class Outcome(enum.Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    outcome: Outcome
    path: list = field(default_factory=list)
    witness: Optional[dict] = None
    states: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.outcome is Outcome.PROVED

    @property
    def refuted(self) -> bool:
        return self.outcome is Outcome.REFUTED

    def to_dict(self) -> dict:
        out = {"outcome": self.outcome.value, "states": self.states}
        if self.outcome is Outcome.PROVED:
            out["path"] = [str(s) for s in self.path]
        if self.witness is not None:
            out["witness"] = {k: [str(v) for v in vs] for k, vs in self.witness.items()}
        return out


def replay(w, path) -> Word:
    """Apply a path step by step; raises ApplicationError if a step does not fit."""
    w = as_word(w)
    for step in path:
        w = apply(w, step.relation, step.pos, step.direction)
    return w


def _inverse(steps: list) -> list:
    return [Step(s.relation, s.pos, s.direction.reverse()) for s in reversed(steps)]


def refutation_witness(w1, w2, tier) -> Optional[dict]:
    from .surface import invariant_profile

    p1 = invariant_profile(w1, tier)
    p2 = invariant_profile(w2, tier)
    for name in p1:
        if name in p2 and p1[name] != p2[name]:
            return {name: (p1[name], p2[name])}
    return None


try:
    from . import _kernel
except ImportError:  # pragma: no cover - depends on the build
    _kernel = None


def use_kernel() -> bool:
    return _kernel is not None and not os.environ.get("THREEPAGE_PURE_PYTHON")


def _moves_to_steps(rules: RuleSet, moves) -> list:
    out = []
    for k, pos in moves:
        rw = rules.ordered[k]
        out.append(Step(rw.relation, pos, rw.direction))
    return out


def _tree_moves(parents: dict, node: bytes) -> list:
    moves = []
    while True:
        parent, k, pos = parents[node]
        if parent is None:
            break
        moves.append((k, pos))
        node = parent
    moves.reverse()
    return moves


def _bfs_python(c1: bytes, c2: bytes, rules: RuleSet, budget: SearchBudget):
    """Bidirectional layered BFS; returns ``(status, states, moves1, moves2)``.

    status 0: met, 1: state budget exhausted, 2: depth budget or space exhausted.
    """
    max_len = budget.max_word_length
    sides = [
        {"parents": {c1: (None, -1, -1)}, "depth": {c1: 0}, "frontier": [c1], "d": 0},
        {"parents": {c2: (None, -1, -1)}, "depth": {c2: 0}, "frontier": [c2], "d": 0},
    ]

    def frontier_key(side):
        f = side["frontier"]
        return (len(f), (len(f[0]), f[0]) if f else (0, b""))

    def states():
        return len(sides[0]["parents"]) + len(sides[1]["parents"])

    while sides[0]["frontier"] and sides[1]["frontier"]:
        if sides[0]["d"] + sides[1]["d"] >= budget.max_depth:
            return 2, states(), None, None
        k = 0 if frontier_key(sides[0]) <= frontier_key(sides[1]) else 1
        me, other = sides[k], sides[1 - k]
        parents, depth = me["parents"], me["depth"]
        other_depth = other["depth"]
        nxt = []
        best = None
        for codes in me["frontier"]:
            d = depth[codes] + 1
            for new, rk, pos in rules.steps(codes):
                if new in parents or len(new) > max_len:
                    continue
                if new in other_depth:
                    key = (d + other_depth[new], len(new), new)
                    if best is None or key < best[0]:
                        best = (key, codes, rk, pos)
                    continue
                parents[new] = (codes, rk, pos)
                depth[new] = d
                nxt.append(new)
            if states() > budget.max_states:
                return 1, states(), None, None
        me["frontier"] = sorted(nxt, key=lambda c: (len(c), c))
        me["d"] += 1
        if best is not None:
            (_, _, meet), parent, rk, pos = best
            mine = _tree_moves(parents, parent) + [(rk, pos)]
            theirs = _tree_moves(other["parents"], meet)
            moves = (mine, theirs) if k == 0 else (theirs, mine)
            return 0, states(), moves[0], moves[1]
    return 2, states(), None, None


def equivalent(w1, w2, tier=Tier.FULL, budget: Optional[SearchBudget] = None,
               extended: bool = True, refute: bool = True,
               rules: Optional[RuleSet] = None, widen: bool = True) -> Verdict:
    """Decide ``w1 = w2`` in the tier's semigroup within a budget.

    Bidirectional breadth-first search.  A whole layer is expanded before the
    frontiers are compared, and the side to expand is chosen from the pair of
    frontiers alone, so the outcome does not depend on argument order.
    With ``widen`` the length bound grows from the longer input up to
    ``budget.max_word_length``, all rounds sharing one state budget.
    ``rules`` overrides the rule set of ``tier`` (e.g. to add proved lemmas).
    """
    w1, w2 = as_word(w1), as_word(w2)
    tier = Tier.parse(tier)
    if w1 == w2:
        return Verdict(Outcome.PROVED, [])
    if refute:
        witness = refutation_witness(w1, w2, tier)
        if witness is not None:
            return Verdict(Outcome.REFUTED, witness=witness)
    if budget is None:
        budget = SearchBudget.for_words(w1, w2)
    if rules is None:
        rules = ruleset(tier, extended)
    longest = max(len(w1), len(w2))
    lengths = range(longest, budget.max_word_length + 1) if widen else [budget.max_word_length]
    spent = 0
    status = 2
    for max_len in lengths:
        sub = SearchBudget(max_len, budget.max_states - spent, budget.max_depth)
        if use_kernel():
            status, states, m1, m2 = _kernel.bfs(
                w1.codes, w2.codes, rules.pairs, sub.max_word_length, sub.max_states, sub.max_depth
            )
        else:
            status, states, m1, m2 = _bfs_python(w1.codes, w2.codes, rules, sub)
        spent += states
        if status == 0:
            path = _moves_to_steps(rules, m1) + _inverse(_moves_to_steps(rules, m2))
            return Verdict(Outcome.PROVED, path, states=spent, detail={"max_len": max_len})
        if status == 1 or spent >= budget.max_states:
            return Verdict(Outcome.UNKNOWN, states=spent, detail={"reason": "max_states"})
    return Verdict(Outcome.UNKNOWN, states=spent, detail={"reason": "max_depth or exhausted"})


def _best_first_python(c: bytes, rules: RuleSet, budget: SearchBudget, target: bytes):
    parents = {c: (None, -1, -1)}
    heap = [(len(c), c)]
    best = c
    popped = 0
    while heap and popped < budget.max_states:
        _, codes = heapq.heappop(heap)
        popped += 1
        if (len(codes), codes) < (len(best), best):
            best = codes
        if not best:
            break
        if codes == target:
            best = codes
            break
        for new, rk, pos in rules.steps(codes):
            if new in parents or len(new) > budget.max_word_length:
                continue
            parents[new] = (codes, rk, pos)
            heapq.heappush(heap, (len(new), new))
        if len(parents) > budget.max_states:
            break
    return best, _tree_moves(parents, best), len(parents)


def simplify_with_path(w, tier=Tier.FULL, budget: Optional[SearchBudget] = None,
                       extended: bool = True, target=None,
                       rules: Optional[RuleSet] = None) -> tuple[Word, list]:
    """Best-first descent by length-lex order.

    Returns the least word visited (or ``target`` as soon as it is reached)
    together with a replayable path to it.
    """
    w = as_word(w)
    tier = Tier.parse(tier)
    if budget is None:
        budget = SearchBudget.for_words(w)
    if rules is None:
        rules = ruleset(tier, extended)
    goal = as_word(target).codes if target is not None else b"\xff"
    if use_kernel():
        best, moves, _ = _kernel.best_first(
            w.codes, rules.pairs, budget.max_word_length, budget.max_states, goal
        )
    else:
        best, moves, _ = _best_first_python(w.codes, rules, budget, goal)
    return Word._raw(best), _moves_to_steps(rules, moves)


def simplify(w, tier=Tier.FULL, budget: Optional[SearchBudget] = None, extended: bool = True) -> Word:
    return simplify_with_path(w, tier, budget, extended)[0]


def _shift(steps, offset: int) -> list:
    return [Step(s.relation, s.pos + offset, s.direction) for s in steps]


def expand_lemmas(path, lemmas: dict) -> list:
    """Replace steps that use a lemma by the lemma's own proof, recursively."""
    out = []
    for step in path:
        proof = lemmas.get(step.relation.key)
        if proof is None:
            out.append(step)
            continue
        inner = expand_lemmas(proof, lemmas)
        if step.direction is Direction.RTOL:
            inner = _inverse(inner)
        out.extend(_shift(inner, step.pos))
    return out


def _rotated_proof(t, results: dict, lemmas: dict, base_keys) -> Optional[list]:
    """A proof of ``t`` obtained by rotating the proof of a rotated copy of ``t``."""
    for k in (1, 2):
        key = (t.family, t.case, (t.index - k) % 3)
        v = results.get(key)
        if v is None or not v.proved:
            continue
        steps = [Step(s.relation.rotate(k), s.pos, s.direction) for s in v.path]
        steps = expand_lemmas(steps, {q: p for q, p in lemmas.items() if q not in base_keys})
        if all(s.relation.key in base_keys for s in steps):
            try:
                if replay(t.lhs, steps) == t.rhs:
                    return steps
            except ApplicationError:
                pass
    return None


def prove_with_lemmas(targets, tier=Tier.FULL, budget: Optional[SearchBudget] = None,
                      base=None, fractions=(1.0,)) -> dict:
    """Prove several relations, reusing each success as a lemma for the rest.

    Rounds run with growing fractions of the state budget.  Returned paths
    are expanded to use ``base`` instances only (default: the canonical
    presentation of ``tier``).
    """
    from .relations import custom_ruleset, enumerate_relations

    tier = Tier.parse(tier)
    base = list(enumerate_relations(tier) if base is None else base)
    base_keys = {r.key for r in base}
    lemmas: dict = {}
    results: dict = {}
    pending = [t for t in targets if t.key not in base_keys]
    for t in targets:
        if t.key in base_keys:
            results[t.key] = Verdict(Outcome.PROVED, [Step(t, 0, Direction.LTOR)])
    for frac in fractions:
        progress = True
        while progress and pending:
            progress = False
            for t in list(pending):
                path = _rotated_proof(t, results, lemmas, base_keys)
                if path is not None:
                    lemmas[t.key] = path
                    results[t.key] = Verdict(Outcome.PROVED, path, detail={"rotated": True})
                    pending.remove(t)
                    progress = True
                    continue
                b = budget or SearchBudget.for_words(t.lhs, t.rhs)
                sub = SearchBudget(b.max_word_length, max(1, int(b.max_states * frac)), b.max_depth)
                known = [r for r in targets if r.key in lemmas]
                rules = custom_ruleset(base + known)
                v = equivalent(t.lhs, t.rhs, tier, sub, rules=rules, refute=False)
                if v.proved:
                    lemmas[t.key] = v.path
                    full = expand_lemmas(v.path, lemmas)
                    results[t.key] = Verdict(Outcome.PROVED, full, states=v.states,
                                             detail={"search_steps": len(v.path), **v.detail})
                    pending.remove(t)
                    progress = True
                else:
                    results[t.key] = v
    return results


def derive_redundant(tier=Tier.FULL, budget: Optional[SearchBudget] = None) -> dict:
    """Proofs of every redundant instance from the canonical presentation.

    Family (1) goes first so that rotated proofs can use the rotated copies
    of ``d0 d1 d2 = 1`` and ``d0 b0 = 1`` as lemmas.
    """
    from .relations import redundant_relations

    targets = sorted(redundant_relations(), key=lambda r: (r.family, r.index, r.case))
    return prove_with_lemmas(targets, tier, budget)


@dataclass
class CentralityVerdict:
    outcome: Outcome
    per_generator: dict

    @property
    def proved(self) -> bool:
        return self.outcome is Outcome.PROVED

    def paths(self) -> dict:
        return {g: v.path for g, v in self.per_generator.items() if v.proved}

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "generators": {str(g): v.to_dict() for g, v in self.per_generator.items()},
        }


def is_central(w, tier=Tier.FULL, budget: Optional[SearchBudget] = None,
               extended: bool = True) -> CentralityVerdict:
    """Check ``w g = g w`` for all 15 generators ``g``."""
    w = as_word(w)
    results = {}
    for g in ALPHABET:
        gw = Word([g])
        results[g] = equivalent(w + gw, gw + w, tier, budget, extended)
    outcomes = {v.outcome for v in results.values()}
    if outcomes == {Outcome.PROVED}:
        overall = Outcome.PROVED
    elif Outcome.REFUTED in outcomes:
        overall = Outcome.REFUTED
    else:
        overall = Outcome.UNKNOWN
    return CentralityVerdict(overall, results)


def describe_path(w, path) -> list[str]:
    """Human-readable trace: each intermediate word after its step."""
    lines = []
    cur = as_word(w)
    for step in path:
        cur = apply(cur, step.relation, step.pos, step.direction)
        lines.append(f"{step}: {format_word(cur) or '1'}")
    return lines
