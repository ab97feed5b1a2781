"""Non-associative words: full binary trees with letters at the leaves.

Syntax: a word is a letter, or a juxtaposition of exactly two words; a
compound factor must be bracketed and the outermost brackets may be left
out, so ``x(yz)`` and ``(xy)z`` are words while ``xyz`` is not.

Letters are identifiers.  Without a known alphabet a run such as ``e1x_2y``
is split into letters of the form ``[A-Za-z][0-9_]*`` (here ``e1``, ``x_2``,
``y``).  Multi-character names like ``alpha`` need the alphabet passed as
``letters=`` so the tokenizer can match them greedily.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import total_ordering
from typing import Callable, Iterable, Sequence

from .errors import ParseError

__all__ = [
    "Word",
    "Leaf",
    "Node",
    "word_mul",
    "enumerate_words",
    "parse_word",
    "print_word",
    "evaluate_word",
    "letter_key",
    "catalan",
]

_CHUNK = re.compile(r"(\d+)")
_SIMPLE_LETTER = re.compile(r"[A-Za-z][0-9_]*$")


def letter_key(name: str) -> tuple:
    """Natural sort key: ``e2`` sorts before ``e10``."""
    parts = _CHUNK.split(name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


@total_ordering
class Word:
    __slots__ = ("length", "_hash", "_key")

    def __lt__(self, other: "Word"):
        return (self.length, self._key) < (other.length, other._key)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Word) or self._hash != other._hash or self.length != other.length:
            return False
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.length, self._key)

    def __mul__(self, other: "Word") -> "Word":
        return Node(self, other)

    def __repr__(self):
        return f"Word({print_word(self)!r})"

    def __str__(self):
        return print_word(self)

    def letters(self) -> Counter:
        """Multiset of letters, i.e. the degree of each letter."""
        c = Counter()
        stack = [self]
        while stack:
            w = stack.pop()
            if isinstance(w, Leaf):
                c[w.letter] += 1
            else:
                stack.append(w.right)
                stack.append(w.left)
        return c

    def degree(self, letter: str) -> int:
        return self.letters()[letter]

    def leaves(self) -> list:
        """Letters read left to right."""
        out = []
        stack = [self]
        while stack:
            w = stack.pop()
            if isinstance(w, Leaf):
                out.append(w.letter)
            else:
                stack.append(w.right)
                stack.append(w.left)
        return out


class Leaf(Word):
    __slots__ = ("letter",)

    def __init__(self, letter: str):
        self.letter = letter
        self.length = 1
        self._key = (0, letter_key(letter))
        self._hash = hash(self._key)


class Node(Word):
    __slots__ = ("left", "right")

    def __init__(self, left: Word, right: Word):
        self.left = left
        self.right = right
        self.length = left.length + right.length
        self._key = (1, left.length, left._key, right._key)
        self._hash = hash((left._hash, right._hash, self.length))


def word_mul(a: Word, b: Word) -> Word:
    return Node(a, b)


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def enumerate_words(letters: Iterable[str], max_length: int) -> list:
    """All words of length ≤ ``max_length`` in canonical order.

    The order is by length, then leaves before products, then (left, right)
    recursively with letters in natural order.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    by_len = {1: sorted((Leaf(s) for s in set(letters)))}
    for n in range(2, max_length + 1):
        layer = []
        for i in range(1, n):
            for a in by_len[i]:
                for b in by_len[n - i]:
                    layer.append(Node(a, b))
        layer.sort()
        by_len[n] = layer
    return [w for n in range(1, max_length + 1) for w in by_len[n]]


def evaluate_word(w: Word, assignment, mul: Callable):
    """Image of ``w`` under the magma morphism extending ``assignment``."""
    if isinstance(w, Leaf):
        return assignment[w.letter]
    return mul(evaluate_word(w.left, assignment, mul), evaluate_word(w.right, assignment, mul))


# -- printing ------------------------------------------------------------------


def print_word(w: Word) -> str:
    """Minimal-bracket rendering; the outermost product is not bracketed."""
    spaced = any(not _SIMPLE_LETTER.match(s) for s in w.letters())
    if isinstance(w, Leaf):
        return w.letter
    return _render_pair(w, spaced)


def _render(w: Word, spaced: bool) -> str:
    if isinstance(w, Leaf):
        return w.letter
    return "(" + _render_pair(w, spaced) + ")"


def _render_pair(w: Node, spaced: bool) -> str:
    left, right = _render(w.left, spaced), _render(w.right, spaced)
    if spaced and (isinstance(w.left, Leaf) or isinstance(w.right, Leaf)):
        return left + " " + right
    return left + right


# -- parsing -------------------------------------------------------------------


class WordParser:
    """Cursor over a string that reads letters and bracketed words.

    Shared with the polynomial and file parsers, which call
    :meth:`parse_word` at the start of a term.
    """

    def __init__(self, text: str, letters: Sequence[str] | None = None):
        self.text = text
        self.pos = 0
        self.letters = sorted(set(letters), key=len, reverse=True) if letters else None

    def error(self, message, pos=None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def read_letter(self) -> str:
        self.skip_ws()
        t, i = self.text, self.pos
        if i >= len(t) or not t[i].isalpha():
            self.error("expected a letter")
        if self.letters is not None:
            for name in self.letters:
                if t.startswith(name, i):
                    self.pos = i + len(name)
                    return name
            self.error("unknown letter")
        j = i + 1
        while j < len(t) and (t[j].isdigit() or t[j] == "_"):
            j += 1
        self.pos = j
        return t[i:j]

    def _item_start(self) -> bool:
        c = self.peek()
        return c == "(" or c.isalpha()

    def _item(self) -> Word:
        if self.peek() == "(":
            start = self.pos
            self.pos += 1
            if self.peek() == ")":
                self.error("empty word '()'", start)
            w = self._sequence(start)
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return w
        return Leaf(self.read_letter())

    def _sequence(self, start) -> Word:
        items = [self._item()]
        while self._item_start():
            if len(items) == 2:
                self.error("product of three or more factors needs brackets")
            items.append(self._item())
        return items[0] if len(items) == 1 else Node(items[0], items[1])

    def parse_word(self) -> Word:
        if not self._item_start():
            self.error("expected a word")
        return self._sequence(self.pos)


def parse_word(text: str, letters: Sequence[str] | None = None) -> Word:
    """Parse a single word; raises :class:`ParseError` with a position."""
    p = WordParser(text, letters)
    w = p.parse_word()
    if not p.at_end():
        c = p.peek()
        p.error("unbalanced ')'" if c == ")" else f"unexpected {c!r}")
    return w
