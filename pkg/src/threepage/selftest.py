"""Self-test: table consistency, relation census, relation safety, fixtures."""

from __future__ import annotations

from typing import Callable, Optional

from .pages import TABLE, DecodeError, decode, to_link_diagram
from .relations import Tier, enumerate_relations, family_counts
from .safety import check_table, corrupted_table, run_relation_safety
from .word import parse_word

CENSUS = (6, 12, 54, 9, 3, 6, 3, 3)


def _fixture_checks() -> list[tuple[str, bool, str]]:
    from .encoder import encode_diagram
    from .fixtures import WG, WG_PRINTED, load_diagram
    from .surface import Admissibility, admissible, euler_characteristic, kauffman_bracket

    out = []
    try:
        decode(WG_PRINTED)
        out.append(("printed w_G decodes", True, ""))
    except DecodeError as exc:
        out.append(("printed w_G decodes", False, str(exc)))
    d = decode(WG)
    out.append(("w_G: two singular points", len(d.singular_points) == 2, str(len(d.singular_points))))
    chi = euler_characteristic(WG)
    out.append(("w_G: chi = 2", chi == 2, str(chi)))
    adm = admissible(WG).overall
    out.append(("w_G: admissible", adm is Admissibility.ADMISSIBLE, adm.value))
    for name in ("unknot", "trefoil", "hopf"):
        dia = load_diagram(name)
        w = encode_diagram(dia)
        ld = to_link_diagram(w)
        same = (
            ld.crossing_count == dia.crossing_count
            and ld.component_count == dia.component_count()
            and kauffman_bracket(ld) == kauffman_bracket(dia.to_link_diagram())
        )
        out.append((f"encode round trip: {name}", same, str(w)))
    return out


def run_selftest(contexts: int = 200, seed: int = 0, corrupt: Optional[str] = None,
                 log: Optional[Callable[[str], None]] = None) -> dict:
    """Run every check; ``corrupt`` names a letter whose table entry is mirrored first."""
    say = log or (lambda s: None)
    table = None
    if corrupt is not None:
        letters = parse_word(corrupt)
        if len(letters) != 1:
            raise ValueError(f"--corrupt-table takes one letter, got {corrupt!r}")
        table = corrupted_table(letters[0])
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})
        say(f"[{'ok' if ok else 'FAIL'}] {name}{': ' + detail if detail and not ok else ''}")

    problems = check_table(table or TABLE)
    record("table consistency", not problems, "; ".join(problems))
    counts = family_counts(enumerate_relations(Tier.FULL))
    record("relation census", counts == CENSUS, str(counts))

    rep = run_relation_safety(contexts=contexts, seed=seed, table=table,
                              semantic=table is None)
    for v in rep.violations[:20]:
        say(f"    {v}")
    if len(rep.violations) > 20:
        say(f"    ... {len(rep.violations) - 20} more")
    names = sorted({v.relation.label() for v in rep.violations})
    record(f"relation safety ({rep.checked} contexts)", rep.ok,
           f"{len(rep.violations)} violations in {', '.join(names)}")

    if table is None:
        for name, ok, detail in _fixture_checks():
            record(name, ok, detail)

    return {
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
        "violations": [v.to_dict() for v in rep.violations],
        "undecided": dict(sorted(rep.skipped.items())),
    }
