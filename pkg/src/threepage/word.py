"""Letters and words over the 15-letter alphabet of 3-page embeddings.

A letter is a kind in ``abcdx`` together with an index in Z/3.  Words are
immutable and hashable; internally a word is a ``bytes`` string of letter
codes (``code = 3 * kind + index``) so that subword search and replacement
are cheap inside the rewriting engine.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Union

KINDS = "abcdx"

_TOKEN = re.compile(r"^([abcdx])([012])$")


class WordParseError(ValueError):
    """Raised by :func:`parse_word` on a malformed token."""

    def __init__(self, token: str, position: int):
        super().__init__(f"malformed token {token!r} at position {position}")
        self.token = token
        self.position = position


class Letter(NamedTuple):
    kind: str
    index: int

    @property
    def code(self) -> int:
        return 3 * KINDS.index(self.kind) + self.index

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return _LETTERS[code]

    def rotate(self, k: int = 1) -> "Letter":
        return Letter(self.kind, (self.index + k) % 3)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    def __repr__(self) -> str:
        return f"Letter({self.kind}{self.index})"


_LETTERS = tuple(Letter(k, i) for k in KINDS for i in range(3))
ALPHABET: tuple[Letter, ...] = _LETTERS

# rotation i -> i+k acting on letter codes, one translation table per k
_ROTATE_TABLES = {
    k: bytes(3 * (c // 3) + (c % 3 + k) % 3 if c < 15 else 0 for c in range(256))
    for k in range(3)
}

X_CODES = frozenset(Letter("x", i).code for i in range(3))


class Word:
    """An immutable word; the empty word is the identity ``1``."""

    __slots__ = ("codes", "_hash")

    def __init__(self, letters: Union[Iterable[Letter], bytes, "Word"] = b""):
        if isinstance(letters, Word):
            codes = letters.codes
        elif isinstance(letters, (bytes, bytearray)):
            codes = bytes(letters)
            if any(c >= 15 for c in codes):
                raise ValueError("letter code out of range")
        else:
            codes = bytes(Letter(*l).code for l in letters)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "_hash", hash(codes))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _raw(cls, codes: bytes) -> "Word":
        w = object.__new__(cls)
        object.__setattr__(w, "codes", codes)
        object.__setattr__(w, "_hash", hash(codes))
        return w

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Letter]:
        return (_LETTERS[c] for c in self.codes)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._raw(self.codes[item])
        return _LETTERS[self.codes[item]]

    def __add__(self, other: "Word") -> "Word":
        return Word._raw(self.codes + Word(other).codes)

    def __mul__(self, n: int) -> "Word":
        return Word._raw(self.codes * n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.codes == other.codes

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple[int, bytes]:
        """Length-lexicographic key."""
        return (len(self.codes), self.codes)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def count(self, kind: str) -> int:
        return sum(1 for l in self if l.kind == kind)

    def has_singular(self) -> bool:
        return any(c in X_CODES for c in self.codes)


EMPTY = Word()


def parse_word(text: str) -> Word:
    """Parse whitespace separated tokens such as ``"a0 x1 b2"``."""
    letters = []
    for pos, token in enumerate(text.split()):
        m = _TOKEN.match(token)
        if m is None:
            raise WordParseError(token, pos)
        letters.append(Letter(m.group(1), int(m.group(2))))
    return Word(letters)


def format_word(w: Word) -> str:
    return " ".join(str(l) for l in w)


def rotate(w: Word, k: int = 1) -> Word:
    """Shift every index by ``k`` modulo 3 (rotation around the binding axis)."""
    k %= 3
    if k == 0:
        return w
    return Word._raw(w.codes.translate(_ROTATE_TABLES[k]))


def as_word(w: Union[str, Word, Iterable[Letter]]) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return Word(w)
