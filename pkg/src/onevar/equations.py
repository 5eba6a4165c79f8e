"""One-variable equation systems over F_k.

A term is an element of ``F_k * <x>``, stored as a freely reduced tuple of
letters where ``VAR``/``-VAR`` stand for ``x``/``x^-1``. A system is a finite
list of terms read as ``w(x) = 1`` for each ``w``.

Grammar (whitespace is ignored)::

    eq       := term ('=' term)?
    term     := factor+
    factor   := atom exponent?
    atom     := [a-z] | 'x' | '1' | '(' term ')'
    exponent := '^' '-'? [0-9]+

Uppercase letters abbreviate ``^-1``; ``x``/``X`` is the unknown, so
generator letters skip ``x``. ``lhs = rhs`` becomes ``lhs rhs^-1``. In a
system file there is one equation per line and ``#`` starts a comment line.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from onevar import kernels
from onevar.hnn import CentralizerExtension, MixedWord, britton_reduce
from onevar.words import (
    GENERATOR_LETTERS,
    MAX_RANK,
    RankMismatchError,
    Word,
    ball_size,
    check_rank,
    invert,
    letter_key,
    letter_text,
)

log = logging.getLogger(__name__)

VAR = MAX_RANK + 1
DEFAULT_BUDGET = 5_000_000


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class _Parser:
    def __init__(self, text: str, rank: int, line: int):
        self.text = text
        self.rank = rank
        self.line = line
        self.pos = 0

    def error(self, message, pos=None):
        return ParseError(message, self.line, (self.pos if pos is None else pos) + 1)

    def peek(self) -> Optional[str]:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def equation(self) -> list:
        lhs = self.term()
        if self.peek() == "=":
            self.pos += 1
            rhs = self.term()
            lhs = lhs + [-s for s in reversed(rhs)]
        if self.peek() is not None:
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return lhs

    def term(self) -> list:
        out: list = []
        while True:
            ch = self.peek()
            if ch is None or ch in ")=":
                break
            out.extend(self.factor())
        return out

    def factor(self) -> list:
        base = self.atom()
        if self.peek() == "^":
            start = self.pos
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            digits_start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == digits_start:
                raise self.error("expected an exponent", start)
            n = sign * int(self.text[digits_start:self.pos])
            if n < 0:
                base = [-s for s in reversed(base)]
            return base * abs(n)
        return base

    def atom(self) -> list:
        ch = self.peek()
        start = self.pos
        if ch is None:
            raise self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            inner = self.term()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.pos += 1
            return inner
        self.pos += 1
        if ch == "1":
            return []
        if ch in "xX":
            return [VAR if ch == "x" else -VAR]
        if ch.isalpha() and ch.lower() in GENERATOR_LETTERS:
            index = GENERATOR_LETTERS.index(ch.lower()) + 1
            if index > self.rank:
                raise self.error(f"unknown generator {ch!r} for rank {self.rank}", start)
            return [index if ch.islower() else -index]
        raise self.error(f"unexpected {ch!r}", start)


def parse_symbols(text: str, rank: int = 2, line: int = 1) -> tuple:
    check_rank(rank)
    return kernels.free_reduce(_Parser(text, rank, line).equation())


@dataclass(frozen=True)
class EquationTerm:
    symbols: tuple
    rank: int = 2

    def __post_init__(self):
        check_rank(self.rank)
        for s in self.symbols:
            if not isinstance(s, int) or s == 0 or (abs(s) > self.rank and abs(s) != VAR):
                raise ValueError(f"symbol {s!r} is not a letter of F_{self.rank} * <x>")
        object.__setattr__(self, "symbols", kernels.free_reduce(self.symbols))

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "EquationTerm":
        return parse_term(text, rank)

    @property
    def is_constant(self) -> bool:
        return VAR not in self.symbols and -VAR not in self.symbols

    def __bool__(self) -> bool:
        return bool(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def constant_length(self) -> int:
        return sum(1 for s in self.symbols if abs(s) != VAR)

    def conjugated(self, c: Word) -> "EquationTerm":
        """``c^-1 w c``; the same equation, written differently."""
        if c.rank != self.rank:
            raise RankMismatchError(f"rank {c.rank} constant in rank {self.rank} term")
        return EquationTerm(invert(c).letters + self.symbols + c.letters, self.rank)

    def __str__(self) -> str:
        if not self.symbols:
            return "1"
        return "".join(("x" if s == VAR else "X") if abs(s) == VAR else letter_text(s)
                       for s in self.symbols)


def parse_term(text: str, rank: int = 2) -> EquationTerm:
    return EquationTerm(parse_symbols(text, rank), rank)


@dataclass(frozen=True)
class EquationSystem:
    terms: tuple = ()
    rank: int = 2

    def __post_init__(self):
        check_rank(self.rank)
        seen = []
        for t in self.terms:
            if t.rank != self.rank:
                raise RankMismatchError(f"term {t} has rank {t.rank}, system has {self.rank}")
            if t not in seen:
                seen.append(t)
        object.__setattr__(self, "terms", tuple(seen))

    @classmethod
    def parse(cls, text: str, rank: int = 2) -> "EquationSystem":
        return parse_system(text, rank)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return "; ".join(str(t) for t in self.terms) or "(empty system)"


def parse_system(text: str | Sequence[str], rank: int = 2) -> EquationSystem:
    """Parse a system: a block of lines or a list of equation strings."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    terms = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        terms.append(EquationTerm(parse_symbols(line, rank, lineno), rank))
    return EquationSystem(tuple(terms), rank)


def _expand(w: EquationTerm, g: Word) -> list:
    ginv = invert(g).letters
    out = []
    for s in w.symbols:
        if s == VAR:
            out.extend(g.letters)
        elif s == -VAR:
            out.extend(ginv)
        else:
            out.append(s)
    return out


def substitute(w: EquationTerm, g: Word) -> Word:
    """Value of ``w`` at ``x = g``."""
    if g.rank != w.rank:
        raise RankMismatchError(f"rank {g.rank} value for rank {w.rank} term")
    return Word(_expand(w, g), w.rank)


def substitute_mixed(w: EquationTerm, g: Word, e: CentralizerExtension, power: int = 1) -> MixedWord:
    """Value of ``w`` at ``x = g t^power`` in the extension ``e``."""
    if g.rank != w.rank or e.rank != w.rank:
        raise RankMismatchError("term, value and extension must share a rank")
    ginv = invert(g)
    raw: list = []
    for s in w.symbols:
        if s == VAR:
            raw += [g, power]
        elif s == -VAR:
            raw += [-power, ginv]
        else:
            raw.append(Word((s,), w.rank, reduced=True))
    return britton_reduce(e, raw)


def exp_var(w: EquationTerm) -> int:
    return sum(1 if s == VAR else -1 for s in w.symbols if abs(s) == VAR)


@dataclass
class OracleResult:
    solutions: list  # of Word, sorted
    radius: int  # radius actually searched
    requested: int
    truncated: bool = False
    diagnostics: list = field(default_factory=list)


def _scan(args):
    terms, rank, radius, first = args
    return kernels.scan_ball(terms, VAR, rank, radius, first)


def scan_variety(S: EquationSystem, radius: int, budget: Optional[int] = DEFAULT_BUDGET,
                 workers: int = 1) -> OracleResult:
    """Enumerate the solutions of length <= radius.

    The cost is the number of candidate substitutions, ``|ball| * |S|``. When
    it exceeds ``budget`` the radius is lowered to the largest one that fits
    and the result is flagged as truncated.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rank = S.rank
    terms = [t.symbols for t in S.terms if t.symbols]
    result = OracleResult([], radius, radius)
    per_word = max(1, len(terms))
    if budget is not None and ball_size(rank, radius) * per_word > budget:
        r = radius
        while r > 0 and ball_size(rank, r) * per_word > budget:
            r -= 1
        msg = (f"budget of {budget} substitutions exceeded at radius {radius}; "
               f"searched radius {r} only")
        log.warning(msg)
        result.radius, result.truncated = r, True
        result.diagnostics.append(msg)
    r = result.radius
    found = []
    if kernels.is_solution(terms, VAR, ()):
        found.append(())
    letters = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
                     key=letter_key)
    jobs = [(terms, rank, r, x) for x in letters]
    if r > 0:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_scan, jobs))
        else:
            parts = [_scan(job) for job in jobs]
        for part in parts:
            found.extend(part)
    words = [Word(letters, rank, reduced=True) for letters in found]
    result.solutions = sorted(words, key=Word.sort_key)
    return result


def brute_force_variety(S: EquationSystem, L: int, budget: Optional[int] = DEFAULT_BUDGET,
                        workers: int = 1) -> list:
    """All solutions ``g`` with ``|g| <= L``, in length-then-letter order."""
    return scan_variety(S, L, budget, workers).solutions


def finite_subsystem(S: EquationSystem, L: int, budget: Optional[int] = DEFAULT_BUDGET) -> EquationSystem:
    """Greedy subsystem with the same solutions of length <= L.

    A term is kept only if it cuts the bounded variety of the terms kept so
    far; the equality is certified within radius ``L`` only.
    """
    kept: list = []
    current = brute_force_variety(EquationSystem((), S.rank), L, budget)
    for t in S.terms:
        if not t.symbols:
            continue
        trial = brute_force_variety(EquationSystem(tuple(kept) + (t,), S.rank), L, budget)
        if trial != current:
            kept.append(t)
            current = trial
    return EquationSystem(tuple(kept), S.rank)
