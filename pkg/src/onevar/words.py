"""Exact arithmetic in the free group F_k.

A word is a tuple of nonzero ints: ``+i`` is the i-th generator and ``-i``
its inverse. :class:`Word` keeps the tuple freely reduced at all times.

Text syntax: lowercase letters are generators (``x`` is skipped, since it
names the unknown in equations), uppercase letters or a trailing ``^-1``
are inverses, and ``1`` or the empty string is the identity::

    >>> Word.parse("abA")
    Word('abA')
    >>> Word.parse("a^2 b^-1")
    Word('aaB')
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from onevar import kernels

# 'x' is reserved for the unknown of an equation
GENERATOR_LETTERS = "abcdefghijklmnopqrstuvwyz"
MAX_RANK = len(GENERATOR_LETTERS)


class MalformedWordError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


def letter_key(x: int) -> int:
    """Position of a letter in the order a < A < b < B < ..."""
    return 2 * (abs(x) - 1) + (1 if x < 0 else 0)


def letter_text(x: int) -> str:
    ch = GENERATOR_LETTERS[abs(x) - 1]
    return ch if x > 0 else ch.upper()


def check_rank(rank: int) -> None:
    if not isinstance(rank, int) or rank < 2 or rank > MAX_RANK:
        raise MalformedWordError(f"rank must be an integer in [2, {MAX_RANK}], got {rank!r}")


def check_letters(letters: Iterable[int], rank: int) -> None:
    for x in letters:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise MalformedWordError(f"letter {x!r} is not a generator of F_{rank}")


class Word:
    """Freely reduced element of the free group of the given rank."""

    __slots__ = ("letters", "rank")

    def __init__(self, letters: Sequence[int] = (), rank: int = 2, *, reduced: bool = False):
        check_rank(rank)
        letters = tuple(letters)
        check_letters(letters, rank)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", letters if reduced else kernels.free_reduce(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _trusted(cls, letters: tuple, rank: int) -> "Word":
        # internal: letters already reduced and in range
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "rank", rank)
        return w

    @classmethod
    def identity(cls, rank: int = 2) -> "Word":
        return cls((), rank, reduced=True)

    @classmethod
    def generator(cls, index: int, rank: int = 2) -> "Word":
        return cls((index,), rank)

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "Word":
        return parse_word(text, rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.rank, self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(letter_key(x) for x in self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})" if self.rank == 2 else \
            f"Word({format_word(self)!r}, rank={self.rank})"


@dataclass(frozen=True)
class RootDecomposition:
    root: Word
    exponent: int


def format_word(w: Word) -> str:
    return "".join(letter_text(x) for x in w.letters) or "1"


def parse_word(text: str, rank: int = 2) -> Word:
    # the equation grammar is a superset; reuse it and forbid the unknown
    from onevar.equations import parse_symbols, VAR

    symbols = parse_symbols(text, rank)
    if VAR in symbols or -VAR in symbols:
        raise MalformedWordError(f"{text!r}: 'x' denotes the unknown, not a generator")
    return Word(symbols, rank)


def reduce(raw: Sequence[int], rank: int = 2) -> Word:
    return Word(raw, rank)


def _same_rank(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise RankMismatchError(f"rank {u.rank} word combined with rank {v.rank} word")


def multiply(u: Word, v: Word) -> Word:
    _same_rank(u, v)
    a, b = u.letters, v.letters
    i = 0
    n = min(len(a), len(b))
    while i < n and a[len(a) - 1 - i] == -b[i]:
        i += 1
    return Word._trusted(a[: len(a) - i] + b[i:], u.rank)


def invert(u: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(u.letters)), u.rank)


def conjugate(u: Word, g: Word) -> Word:
    """``g^-1 u g``."""
    return multiply(multiply(invert(g), u), g)


def power(u: Word, n: int) -> Word:
    if n < 0:
        return power(invert(u), -n)
    core, conj = cyclically_reduce(u)
    # the core is cyclically reduced, so its powers concatenate without cancellation
    return conjugate(Word._trusted(core.letters * n, u.rank), conj)


def cyclically_reduce(u: Word) -> tuple[Word, Word]:
    """Return ``(core, c)`` with ``core`` cyclically reduced and ``c^-1 core c == u``."""
    a = u.letters
    i, j = 0, len(a) - 1
    while i < j and a[i] == -a[j]:
        i += 1
        j -= 1
    core = Word._trusted(a[i : j + 1], u.rank)
    conj = invert(Word._trusted(a[:i], u.rank))
    return core, conj


@lru_cache(maxsize=65536)
def primitive_root(u: Word) -> RootDecomposition:
    if not u:
        raise ValueError("the identity has no primitive root")
    core, conj = cyclically_reduce(u)
    c = core.letters
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and c[:d] * (n // d) == c:
            root = conjugate(Word._trusted(c[:d], u.rank), conj)
            return RootDecomposition(root, n // d)
    raise AssertionError("unreachable")


def in_cyclic(u: Word, c: Word) -> Optional[int]:
    """The n with ``u == c**n``, or None when u is not a power of c."""
    _same_rank(u, c)
    if not c:
        raise ValueError("the cyclic generator must be nontrivial")
    if not u:
        return 0
    rc = primitive_root(c)
    ru = primitive_root(u)
    if ru.root == rc.root:
        m = ru.exponent
    elif ru.root == invert(rc.root):
        m = -ru.exponent
    else:
        return None
    if m % rc.exponent:
        return None
    return m // rc.exponent


def commutes(u: Word, v: Word) -> bool:
    return multiply(u, v) == multiply(v, u)


def centralizer_generator(u: Word) -> Word:
    """Generator of C(u) normalized to the lex-least of ``{r, r^-1}``."""
    r = primitive_root(u).root
    return min(r, invert(r))


def min_coset_rep(g: Word, r: Word, side: str = "left") -> tuple[int, Word]:
    """Shortest (then lex-least) element of the coset ``g<r>`` (``side='left'``)
    or ``<r>g`` (``side='right'``), with the exponent that reaches it.

    ``|g r^n|`` grows once ``|n|`` exceeds ``|g| + |r|``, so that window is searched,
    stopping early in a direction as soon as a step cancels nothing.
    """
    if not r:
        raise ValueError("the cyclic generator must be nontrivial")
    bound = len(g) + len(r) + 1
    step = {1: r, -1: invert(r)}
    best = (g.sort_key(), 0, g)
    for sign in (1, -1):
        w = g
        for n in range(1, bound + 1):
            nxt = multiply(w, step[sign]) if side == "left" else multiply(step[sign], w)
            if len(nxt) == len(w) + len(r):
                # no cancellation at the junction: every further step is longer still
                break
            w = nxt
            if len(w) <= len(best[2]):
                key = w.sort_key()
                if key < best[0]:
                    best = (key, sign * n, w)
    return best[1], best[2]


def ball(rank: int, radius: int) -> Iterator[Word]:
    """All elements of length <= radius, in length-then-letter order."""
    check_rank(rank)
    order = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
                   key=letter_key)
    yield Word.identity(rank)
    level = [()]
    for _ in range(radius):
        # extending a sorted level letter by letter keeps it sorted
        level = [w + (x,) for w in level for x in order if not (w and w[-1] == -x)]
        for letters in level:
            yield Word(letters, rank, reduced=True)


def ball_size(rank: int, radius: int) -> int:
    if radius < 0:
        return 0
    return 1 + sum(2 * rank * (2 * rank - 1) ** (n - 1) for n in range(1, radius + 1))
