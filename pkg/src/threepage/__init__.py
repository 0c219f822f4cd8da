"""Words over the 15-letter alphabet of 3-page embeddings and the semigroup SL.

Modules: ``word`` (letters and words), ``relations`` (the 96 relations),
``rewrite`` (bounded equivalence search), ``pages`` (decoding words into
diagrams), ``surface`` (resolutions, chi, admissibility, classical
invariants), ``encoder`` (planar diagrams to words), ``safety`` (relation
safety suite) and ``cli``.
"""

from .encoder import PlanarMarkedDiagram, encode_diagram, project_word
from .pages import (
    DecodeError,
    MarkedGraphDiagram,
    OpenEndpoints,
    Unbalanced,
    component_count,
    decode,
    is_realizable,
    local_pictures,
    to_link_diagram,
)
from .relations import Direction, RelationInstance, Tier, apply, enumerate_relations, neighbors
from .rewrite import Outcome, SearchBudget, equivalent, is_central, replay, simplify
from .surface import (
    Admissibility,
    ResolutionSign,
    admissible,
    euler_characteristic,
    is_trivial_link,
    kauffman_bracket,
    linking_matrix,
    resolve,
)
from .word import Letter, Word, WordParseError, format_word, parse_word, rotate

__all__ = [
    "Admissibility", "DecodeError", "Direction", "Letter", "MarkedGraphDiagram",
    "OpenEndpoints", "Outcome", "PlanarMarkedDiagram", "RelationInstance",
    "ResolutionSign", "SearchBudget", "Tier", "Unbalanced", "Word", "WordParseError",
    "admissible", "apply", "component_count", "decode", "encode_diagram",
    "enumerate_relations", "equivalent", "euler_characteristic", "format_word",
    "is_central", "is_realizable", "is_trivial_link", "kauffman_bracket",
    "linking_matrix", "local_pictures", "neighbors", "parse_word", "project_word",
    "replay", "resolve", "rotate", "simplify", "to_link_diagram",
]
