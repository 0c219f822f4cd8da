"""Surface-level semantics: resolutions, Euler characteristic, admissibility.

A word with singular letters describes a marked graph.  Its positive
resolution deletes every ``x_i``; the negative resolution replaces every
``x_i`` by ``c_i a_i``.  Capping the two resolutions by disks and attaching
one band per saddle gives a closed surface with

    chi = c_minus + c_plus - (number of x letters).

Classical invariants (linking numbers, the Kauffman bracket) certify that a
resolution is not an unlink; Classical-tier rewriting to ``(a1 c1)^k``
certifies that it is one.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .laurent import A, DELTA, Laurent
from .pages import LinkDiagram, decode, is_realizable, tangle_signature, to_link_diagram
from .relations import Tier
from .word import Letter, Word, as_word, parse_word

BRACKET_CAP = 24
# every nontrivial link of crossing number <= 4 has nonzero lk or a bracket
# different from the unlink's, so such diagrams are decided by invariants
SMALL_DIAGRAM = 4
UNKNOT = parse_word("a1 c1")


class ResolutionSign(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    @classmethod
    def parse(cls, s) -> "ResolutionSign":
        if isinstance(s, ResolutionSign):
            return s
        s = str(s).lower()
        if s in ("+", "pos", "positive", "+1", "1"):
            return cls.POSITIVE
        if s in ("-", "neg", "negative", "-1"):
            return cls.NEGATIVE
        raise ValueError(f"unknown resolution sign {s!r}")


def resolve(w, sign=ResolutionSign.POSITIVE, signs: Optional[Sequence] = None) -> Word:
    """Resolve every singular letter with one global sign.

    ``signs`` (experimental) gives one sign per ``x`` letter, left to right,
    and overrides ``sign``.
    """
    w = as_word(w)
    sign = ResolutionSign.parse(sign)
    n_x = w.count("x")
    if signs is None:
        signs = [sign] * n_x
    else:
        signs = [ResolutionSign.parse(s) for s in signs]
        if len(signs) != n_x:
            raise ValueError(f"need {n_x} signs, got {len(signs)}")
    out = []
    k = 0
    for l in w:
        if l.kind == "x":
            if signs[k] is ResolutionSign.NEGATIVE:
                out += [Letter("c", l.index), Letter("a", l.index)]
            k += 1
        else:
            out.append(l)
    return Word(out)


def singular_count(w) -> int:
    return as_word(w).count("x")


def euler_characteristic(w) -> int:
    w = as_word(w)
    c_minus = decode(resolve(w, ResolutionSign.NEGATIVE)).component_count
    c_plus = decode(resolve(w, ResolutionSign.POSITIVE)).component_count
    return c_minus + c_plus - singular_count(w)


# ----------------------------------------------------------------------------
# classical invariants

def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    n = d.component_count
    twice = [[0] * n for _ in range(n)]
    for c in d.crossings:
        i, j = c.over_component, c.under_component
        if i != j:
            twice[i][j] += c.sign
            twice[j][i] += c.sign
    for row in twice:
        for j, v in enumerate(row):
            if v % 2:
                raise ValueError("odd inter-component crossing sum; diagram is inconsistent")
            row[j] = v // 2
    return twice


def linking_invariant(m: list[list[int]]) -> tuple:
    """Data of ``|lk|`` unchanged by relabelling or reorienting components."""
    rows = sorted(tuple(sorted(abs(v) for v in row)) for row in m)
    return tuple(rows)


class BracketCapExceeded(ValueError):
    pass


def _crossing_order(crossings) -> list[int]:
    """Greedy order keeping the frontier of open edges small."""
    n = len(crossings)
    if not n:
        return []
    order = [0]
    used = {0}
    open_edges = set()
    for e in crossings[0].pd:
        open_edges ^= {e}
    while len(order) < n:
        best = max(
            (k for k in range(n) if k not in used),
            key=lambda k: (sum(1 for e in crossings[k].pd if e in open_edges), -k),
        )
        order.append(best)
        used.add(best)
        for e in crossings[best].pd:
            open_edges ^= {e}
    return order


def _state_sum(d: LinkDiagram) -> Laurent:
    """Sum over states of ``A^(#A - #B) * delta^(loops)``."""
    states = {frozenset(): Laurent(1)}
    crossings = d.crossings
    for k in _crossing_order(crossings):
        a, b, c, dd = crossings[k].pd
        new = {}
        for key, poly in states.items():
            for pairs, weight in ((((a, b), (c, dd)), A), (((a, dd), (b, c)), A ** -1)):
                m = {}
                for p, q in key:
                    m[p] = q
                    m[q] = p
                loops = 0
                for p, q in pairs:
                    if p == q and p not in m:
                        loops += 1
                        continue
                    if p in m and m[p] == q:
                        del m[p], m[q]
                        loops += 1
                        continue
                    fp = m.pop(p) if p in m else p
                    if fp != p:
                        del m[fp]
                    fq = m.pop(q) if q in m else q
                    if fq != q:
                        del m[fq]
                    m[fp] = fq
                    m[fq] = fp
                nk = frozenset((min(p, q), max(p, q)) for p, q in m.items() if p <= q)
                term = poly * weight * DELTA ** loops
                new[nk] = new[nk] + term if nk in new else term
        states = new
    total = Laurent()
    for key, poly in states.items():
        if key:
            raise ValueError("unclosed strands in planar diagram code")
        total = total + poly
    return total


def kauffman_bracket(d: LinkDiagram, normalized: bool = True, cap: int = BRACKET_CAP) -> Laurent:
    """Kauffman bracket with ``<unknot> = 1``.

    Normalized means multiplied by ``(-A^3)^(-w)`` with ``w`` the writhe of
    self-crossings only; that is an invariant of unoriented links.
    """
    if d.crossing_count > cap:
        raise BracketCapExceeded(f"{d.crossing_count} crossings exceed the cap of {cap}")
    loops = d.free_loops()
    if d.crossing_count == 0 and loops == 0:
        return Laurent(1)
    total = _state_sum(d) * DELTA ** loops
    bracket = total.divexact(DELTA)
    if normalized:
        w = d.self_writhe()
        bracket = bracket * Laurent.monomial(-3 * w, -1 if w % 2 else 1)
    return bracket


def unlink_bracket(k: int) -> Laurent:
    return DELTA ** (k - 1) if k else Laurent(1)


def unlink_word(k: int) -> Word:
    return UNKNOT * k


# ----------------------------------------------------------------------------
# triviality and admissibility

class Triviality(enum.Enum):
    TRIVIAL = "CertifiedTrivial"
    NONTRIVIAL = "CertifiedNontrivial"
    UNKNOWN = "Unknown"


@dataclass
class TrivialityVerdict:
    status: Triviality
    components: int
    path: Optional[list] = None
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "components": self.components}
        if self.path is not None:
            out["path_length"] = len(self.path)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def classical_invariants(w, cap: int = BRACKET_CAP) -> dict:
    d = to_link_diagram(w)
    out = {
        "components": d.component_count,
        "crossings": d.crossing_count,
        "linking": linking_invariant(linking_matrix(d)),
    }
    if d.crossing_count <= cap:
        out["bracket"] = kauffman_bracket(d)
    return out


def is_trivial_link(w, budget=None) -> TrivialityVerdict:
    from .rewrite import SearchBudget, equivalent, simplify_with_path

    w = as_word(w)
    if w.has_singular():
        raise ValueError("is_trivial_link needs a classical word")
    d = to_link_diagram(w)
    k = d.component_count
    m = linking_matrix(d)
    if any(any(row) for row in m):
        return TrivialityVerdict(Triviality.NONTRIVIAL, k, witness={"linking_matrix": m})
    if d.crossing_count <= BRACKET_CAP:
        f = kauffman_bracket(d)
        if f != unlink_bracket(k):
            return TrivialityVerdict(
                Triviality.NONTRIVIAL, k, witness={"bracket": str(f), "unlink": str(unlink_bracket(k))}
            )
    if d.crossing_count <= SMALL_DIAGRAM:
        return TrivialityVerdict(Triviality.TRIVIAL, k, witness={"small_diagram": d.crossing_count})
    target = unlink_word(k)
    if budget is None:
        budget = SearchBudget.for_words(w, target)
    best, path = simplify_with_path(w, Tier.CLASSICAL, budget, target=target)
    if best == target:
        return TrivialityVerdict(Triviality.TRIVIAL, k, path=path)
    v = equivalent(best, target, Tier.CLASSICAL, budget)
    if v.proved:
        return TrivialityVerdict(Triviality.TRIVIAL, k, path=path + v.path)
    return TrivialityVerdict(Triviality.UNKNOWN, k)


class Admissibility(enum.Enum):
    ADMISSIBLE = "Admissible"
    NOT_ADMISSIBLE = "NotAdmissible"
    UNKNOWN = "Unknown"


@dataclass
class AdmissibilityReport:
    positive: TrivialityVerdict
    negative: TrivialityVerdict
    overall: Admissibility = field(init=False)

    def __post_init__(self):
        verdicts = (self.positive.status, self.negative.status)
        if Triviality.NONTRIVIAL in verdicts:
            self.overall = Admissibility.NOT_ADMISSIBLE
        elif verdicts == (Triviality.TRIVIAL, Triviality.TRIVIAL):
            self.overall = Admissibility.ADMISSIBLE
        else:
            self.overall = Admissibility.UNKNOWN

    def to_dict(self) -> dict:
        return {
            "overall": self.overall.value,
            "positive": self.positive.to_dict(),
            "negative": self.negative.to_dict(),
        }


def admissible(w, budget=None) -> AdmissibilityReport:
    w = as_word(w)
    decode(w)
    return AdmissibilityReport(
        is_trivial_link(resolve(w, ResolutionSign.POSITIVE), budget),
        is_trivial_link(resolve(w, ResolutionSign.NEGATIVE), budget),
    )


# ----------------------------------------------------------------------------
# invariants used to refute equalities

MIXED_RESOLUTION_LIMIT = 10


def mixed_resolution_signatures(w) -> Optional[frozenset]:
    """Loop-free tangle signatures of all sign mixtures over the x letters."""
    w = as_word(w)
    n = w.count("x")
    if n > MIXED_RESOLUTION_LIMIT:
        return None
    out = set()
    for signs in itertools.product("+-", repeat=n):
        out.add(tangle_signature(resolve(w, signs=signs))[:3])
    return frozenset(out)


def invariant_profile(w, tier) -> dict:
    """Invariants preserved by every relation of ``tier``, in any context."""
    w = as_word(w)
    tier = Tier.parse(tier)
    prof = {}
    if tier <= Tier.SINGULAR:
        sig = tangle_signature(w)
        prof["tangle"] = sig
        prof["singular_points"] = w.count("x")
        if tier is Tier.CLASSICAL and not w.has_singular() and is_realizable(w):
            d = to_link_diagram(w)
            prof["linking"] = linking_invariant(linking_matrix(d))
            if d.crossing_count <= BRACKET_CAP:
                prof["bracket"] = str(kauffman_bracket(d))
    else:
        sigs = mixed_resolution_signatures(w)
        if sigs is not None:
            prof["mixed_resolutions"] = tuple(sorted(sigs))
    return prof
