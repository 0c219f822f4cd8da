"""Reference words and diagrams shipped with the package."""

from __future__ import annotations

from importlib import resources

from .word import Word, parse_word

# the spun-trefoil word as printed; it is a tangle word (decode fails)
WG_PRINTED = parse_word(
    "a0 a1 b2 b0 b1 b2 b0 b1 d0 a1 x1 b1 x1 b1 c1 d1 b0 d1 d0 d2 d1 d0 d2 c1 c0"
)
# one-letter repair: d1 inserted at position 10; closed, chi = 2
WG = parse_word(
    "a0 a1 b2 b0 b1 b2 b0 b1 d0 a1 d1 x1 b1 x1 b1 c1 d1 b0 d1 d0 d2 d1 d0 d2 c1 c0"
)
UNKNOT_WORD: Word = parse_word("a1 c1")

DIAGRAMS = ("unknot", "trefoil", "hopf", "spun_trefoil")


def diagram_json(name: str) -> str:
    if name not in DIAGRAMS:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(DIAGRAMS)}")
    return resources.files("threepage").joinpath("data", f"{name}.json").read_text()


def load_diagram(name: str):
    from .encoder import PlanarMarkedDiagram

    return PlanarMarkedDiagram.from_json(diagram_json(name))
