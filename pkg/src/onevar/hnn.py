"""Normal forms in one-edge splittings over a free base.

Two constructions are supported:

* the extension of a centralizer ``E = <F, t | [r, t] = 1>`` with ``r``
  primitive, whose elements are :class:`MixedWord` values
  ``h0 t^e1 h1 ... t^en hn``;
* the amalgam ``H *_{<u> = <v>} K`` of two free groups along cyclic
  subgroups generated by primitive words, with elements
  :class:`AmalgamWord`.

Raw input for both is a flat sequence of tokens. For extensions a token is a
:class:`~onevar.words.Word`, an ``int`` (a power of ``t``) or a
:class:`MixedWord`; for amalgams it is a ``(side, Word)`` pair with side
``"L"`` or ``"R"``.

Normal forms are unique: after all pinches are removed, every syllable but
the first is replaced by the shortest representative of its right coset of
the edge group, and the leftover edge powers are pushed to the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from onevar.words import (
    RankMismatchError,
    Word,
    in_cyclic,
    invert,
    min_coset_rep,
    multiply,
    power,
    primitive_root,
)


@dataclass(frozen=True)
class CentralizerExtension:
    """``<F_k, t | [axis, t] = 1>`` for a primitive ``axis``."""

    axis: Word

    def __post_init__(self):
        if not self.axis:
            raise ValueError("the axis of a centralizer extension must be nontrivial")
        if primitive_root(self.axis).exponent != 1:
            raise ValueError(f"axis {self.axis} is a proper power")

    @classmethod
    def of(cls, u: Word) -> "CentralizerExtension":
        """Extension of the centralizer of ``u``, i.e. along its primitive root."""
        return cls(primitive_root(u).root)

    @property
    def rank(self) -> int:
        return self.axis.rank

    def identity(self) -> "MixedWord":
        return MixedWord(self, (Word.identity(self.rank),), ())


@dataclass(frozen=True)
class MixedWord:
    extension: CentralizerExtension
    words: tuple  # h0, ..., hn
    exponents: tuple  # e1, ..., en, all nonzero

    def tokens(self) -> list:
        out = [self.words[0]]
        for e, h in zip(self.exponents, self.words[1:]):
            out.append(e)
            out.append(h)
        return out

    def __mul__(self, other: "MixedWord") -> "MixedWord":
        return britton_reduce(self.extension, self.tokens() + other.tokens())

    def __invert__(self) -> "MixedWord":
        return britton_reduce(self.extension, inverse_tokens(self.tokens()))

    def __str__(self) -> str:
        parts = []
        for tok in self.tokens():
            if isinstance(tok, Word):
                if tok:
                    parts.append(str(tok))
            else:
                parts.append("t" if tok == 1 else f"t^{tok}")
        return " ".join(parts) or "1"


Token = Union[Word, int, MixedWord]


def _flatten(raw: Iterable[Token]) -> list:
    out = []
    for tok in raw:
        if isinstance(tok, MixedWord):
            out.extend(tok.tokens())
        else:
            out.append(tok)
    return out


def inverse_tokens(raw: Sequence[Token]) -> list:
    out = []
    for tok in reversed(_flatten(raw)):
        out.append(invert(tok) if isinstance(tok, Word) else -tok)
    return out


def _pinch_left(e: CentralizerExtension, raw: Iterable[Token]) -> tuple[list, list]:
    axis = e.axis
    words = [Word.identity(e.rank)]
    exps: list = []
    for tok in _flatten(raw):
        if isinstance(tok, Word):
            if tok.rank != e.rank:
                raise RankMismatchError(f"syllable {tok} has rank {tok.rank}, expected {e.rank}")
            words[-1] = multiply(words[-1], tok)
            continue
        if not isinstance(tok, int):
            raise TypeError(f"unexpected token {tok!r}")
        k = tok
        if k == 0:
            continue
        # t^a h t^k = h t^(a+k) whenever h commutes with t
        while exps and in_cyclic(words[-1], axis) is not None:
            h = words.pop()
            k += exps.pop()
            words[-1] = multiply(words[-1], h)
        if k:
            exps.append(k)
            words.append(Word.identity(e.rank))
    return words, exps


def _migrate(axis: Word, words: list) -> list:
    """Replace h1..hn by right-coset representatives, pushing powers of the axis left."""
    words = list(words)
    for i in range(len(words) - 1, 0, -1):
        n, rep = min_coset_rep(words[i], axis, side="right")
        words[i] = rep
        words[i - 1] = multiply(words[i - 1], power(axis, -n))
    return words


def britton_reduce(e: CentralizerExtension, raw: Iterable[Token], order: str = "left") -> MixedWord:
    """Britton-reduced normal form of a raw syllable sequence.

    ``order`` selects which end the pinches are resolved from; both give the
    same normal form.
    """
    if order == "right":
        inv = britton_reduce(e, inverse_tokens(list(raw)), order="left")
        return britton_reduce(e, inverse_tokens(inv.tokens()), order="left")
    if order != "left":
        raise ValueError(f"order must be 'left' or 'right', not {order!r}")
    words, exps = _pinch_left(e, raw)
    return MixedWord(e, tuple(_migrate(e.axis, words)), tuple(exps))


def syllable_length(m: MixedWord) -> int:
    """Number of t-letters, counted with multiplicity."""
    return sum(abs(k) for k in m.exponents)


def exp_t(m: Union[MixedWord, Sequence[Token]]) -> int:
    toks = m.tokens() if isinstance(m, MixedWord) else _flatten(m)
    return sum(tok for tok in toks if isinstance(tok, int))


def retract(m: Union[MixedWord, Sequence[Token]], n: int, extension: CentralizerExtension = None) -> Word:
    """Image under the retraction ``t -> axis^n`` onto the base group."""
    if isinstance(m, MixedWord):
        e, toks = m.extension, m.tokens()
    else:
        if extension is None:
            raise ValueError("raw sequences need an explicit extension")
        e, toks = extension, _flatten(m)
    out = Word.identity(e.rank)
    for tok in toks:
        out = multiply(out, tok if isinstance(tok, Word) else power(e.axis, n * tok))
    return out


def is_trivial(m: Union[MixedWord, Sequence[Token]], extension: CentralizerExtension = None) -> bool:
    if not isinstance(m, MixedWord):
        if extension is None:
            raise ValueError("raw sequences need an explicit extension")
        m = britton_reduce(extension, m)
    return not m.exponents and not m.words[0]


# -- amalgams ---------------------------------------------------------------

@dataclass(frozen=True)
class Amalgam:
    """``H *_{<left_edge> = <right_edge>} K`` identifying ``left_edge^n`` with ``right_edge^n``."""

    left_edge: Word
    right_edge: Word

    def __post_init__(self):
        for w in (self.left_edge, self.right_edge):
            if not w:
                raise ValueError("edge words must be nontrivial")
            # primitive edge words generate malnormal subgroups
            if primitive_root(w).exponent != 1:
                raise ValueError(f"edge word {w} is a proper power")

    @property
    def left_rank(self) -> int:
        return self.left_edge.rank

    @property
    def right_rank(self) -> int:
        return self.right_edge.rank

    def edge(self, side: str) -> Word:
        if side == "L":
            return self.left_edge
        if side == "R":
            return self.right_edge
        raise ValueError(f"side must be 'L' or 'R', not {side!r}")


@dataclass(frozen=True)
class AmalgamWord:
    """``edge^edge_power`` followed by alternating syllables outside the edge group."""

    amalgam: Amalgam
    edge_power: int
    syllables: tuple  # of (side, Word)

    def __len__(self) -> int:
        return len(self.syllables)

    def tokens(self) -> list:
        out = [("L", power(self.amalgam.left_edge, self.edge_power))] if self.edge_power else []
        return out + list(self.syllables)

    def is_trivial(self) -> bool:
        return not self.edge_power and not self.syllables

    def __str__(self) -> str:
        parts = [f"e^{self.edge_power}"] if self.edge_power else []
        parts += [f"{side}:{w}" for side, w in self.syllables]
        return " ".join(parts) or "1"


def _other(side: str) -> str:
    return "R" if side == "L" else "L"


def _amalgam_stack(g: Amalgam, raw: Iterable) -> list:
    stack: list = []

    def settle(side, w):
        while True:
            n = in_cyclic(w, g.edge(side))
            if n is None or not stack:
                stack.append((side, w))
                return
            below_side, below = stack.pop()
            w = multiply(below, power(g.edge(below_side), n))
            side = below_side
            if not w:
                return

    for side, w in raw:
        edge = g.edge(side)
        if w.rank != edge.rank:
            raise RankMismatchError(
                f"{side} syllable {w} has rank {w.rank}, expected {edge.rank}")
        if not w:
            continue
        if stack:
            top_side, top = stack[-1]
            if top_side != side and len(stack) == 1:
                n = in_cyclic(top, g.edge(top_side))
                if n is not None:
                    # a lone edge element can be read in either factor
                    stack[0] = (side, power(edge, n))
                    top_side, top = stack[0]
            if top_side == side:
                stack.pop()
                w = multiply(top, w)
                if w:
                    settle(side, w)
                continue
        settle(side, w)
    return stack


def amalgam_reduce(g: Amalgam, raw: Iterable, order: str = "left") -> AmalgamWord:
    """Normal form of a raw sequence of ``(side, Word)`` factor syllables."""
    raw = list(raw)
    if order == "right":
        inv = amalgam_reduce(g, [(s, invert(w)) for s, w in reversed(raw)], order="left")
        return amalgam_reduce(g, [(s, invert(w)) for s, w in reversed(inv.tokens())], order="left")
    if order != "left":
        raise ValueError(f"order must be 'left' or 'right', not {order!r}")
    syl = _amalgam_stack(g, raw)
    edge_power = 0
    for i in range(len(syl) - 1, -1, -1):
        side, w = syl[i]
        n, rep = min_coset_rep(w, g.edge(side), side="right")
        syl[i] = (side, rep)
        if i:
            below_side, below = syl[i - 1]
            syl[i - 1] = (below_side, multiply(below, power(g.edge(below_side), -n)))
        else:
            edge_power = -n
    return AmalgamWord(g, edge_power, tuple((s, w) for s, w in syl if w))
