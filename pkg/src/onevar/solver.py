"""Solution sets of one-variable systems as points and centralizer cosets.

Over a free group the solution set of any finite system in one unknown is
the whole group, or a finite union of single points and left cosets
``g<r> = {g r^n}`` with ``r`` primitive. :func:`solve` finds that
description as follows:

1. enumerate the solutions of length <= L (the oracle);
2. for each pair of solutions ``s1, s2`` propose the family
   ``s1 <root(s1^-1 s2)>``;
3. keep a family only if every term vanishes at ``x = g t`` in the
   centralizer extension ``<F, t | [r, t] = 1>``. Retracting ``t -> r^n``
   shows this is equivalent to ``g r^n`` solving the system for all ``n``;
4. cover the bounded solutions greedily by verified families; what remains
   are points.

Every reported point and family is an exact solution. Completeness is only
certified inside the ball of radius L; the ``stable`` flag records whether
the description already appeared at radius L - 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from onevar.equations import (
    DEFAULT_BUDGET,
    EquationSystem,
    scan_variety,
    substitute,
    substitute_mixed,
)
from onevar.hnn import CentralizerExtension, is_trivial
from onevar.words import (
    Word,
    in_cyclic,
    invert,
    min_coset_rep,
    multiply,
    parse_word,
    power,
    primitive_root,
)

DEFAULT_BOUND = 8
DEFAULT_ORACLE_RANGE = 10


@dataclass(frozen=True, order=False)
class CosetFamily:
    """The left coset ``rep <root>`` in canonical form."""

    rep: Word
    root: Word

    @classmethod
    def normalized(cls, g: Word, r: Word) -> "CosetFamily":
        """Canonical form of ``g <r>``: root is the primitive root of ``r``
        oriented lex-least, rep the shortest then lex-least coset element."""
        root = primitive_root(r).root
        root = min(root, invert(root))
        _, rep = min_coset_rep(g, root, side="left")
        return cls(rep, root)

    def __contains__(self, w: Word) -> bool:
        return in_cyclic(multiply(invert(self.rep), w), self.root) is not None

    def sort_key(self) -> tuple:
        return (self.root.sort_key(), self.rep.sort_key())

    def elements_within(self, radius: int) -> list:
        """Members of length <= radius."""
        bound = radius + len(self.rep) + len(self.root) + 1
        out = {multiply(self.rep, power(self.root, n)) for n in range(-bound, bound + 1)}
        return sorted((w for w in out if len(w) <= radius), key=Word.sort_key)

    def __str__(self) -> str:
        return f"{self.rep}<{self.root}>"


@dataclass
class SolutionSet:
    rank: int = 2
    full: bool = False
    points: tuple = ()
    cosets: tuple = ()
    bound: int = DEFAULT_BOUND
    stable: bool = True
    diagnostics: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.full and not self.points and not self.cosets

    def shape(self) -> tuple:
        """The description without bookkeeping: what ``stable`` compares."""
        return (self.full, self.points, self.cosets)

    def __contains__(self, w: Word) -> bool:
        return self.full or w in self.points or any(w in c for c in self.cosets)

    def elements_within(self, radius: int) -> list:
        if self.full:
            from onevar.words import ball
            return list(ball(self.rank, radius))
        found = {p for p in self.points if len(p) <= radius}
        for c in self.cosets:
            found.update(c.elements_within(radius))
        return sorted(found, key=Word.sort_key)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "bound": self.bound,
            "full": self.full,
            "stable": self.stable,
            "points": [str(p) for p in self.points],
            "cosets": [{"rep": str(c.rep), "root": str(c.root)} for c in self.cosets],
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "SolutionSet":
        rank = data.get("rank", 2)
        return cls(
            rank=rank,
            full=bool(data.get("full", False)),
            points=tuple(parse_word(p, rank) for p in data.get("points", [])),
            cosets=tuple(CosetFamily(parse_word(c["rep"], rank), parse_word(c["root"], rank))
                         for c in data.get("cosets", [])),
            bound=data.get("bound", DEFAULT_BOUND),
            stable=bool(data.get("stable", True)),
            diagnostics=list(data.get("diagnostics", [])),
        )

    def to_text(self) -> str:
        """Line format: a header comment, then ``full``, ``point W`` and
        ``coset REP ROOT`` lines, or ``empty``."""
        lines = [f"# rank={self.rank} bound={self.bound} stable={str(self.stable).lower()}"]
        lines += [f"# diagnostic: {d}" for d in self.diagnostics]
        if self.full:
            lines.append("full")
        for c in self.cosets:
            lines.append(f"coset {c.rep} {c.root}")
        for p in self.points:
            lines.append(f"point {p}")
        if self.is_empty:
            lines.append("empty")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SolutionSet":
        out = cls()
        points, cosets = [], []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("# diagnostic: "):
                out.diagnostics.append(line[len("# diagnostic: "):])
            elif line.startswith("# "):
                for item in line[2:].split():
                    key, _, value = item.partition("=")
                    if key == "rank":
                        out.rank = int(value)
                    elif key == "bound":
                        out.bound = int(value)
                    elif key == "stable":
                        out.stable = value == "true"
            elif line == "full":
                out.full = True
            elif line.startswith("point "):
                points.append(line.split()[1])
            elif line.startswith("coset "):
                _, rep, root = line.split()
                cosets.append((rep, root))
        out.points = tuple(parse_word(p, out.rank) for p in points)
        out.cosets = tuple(CosetFamily(parse_word(a, out.rank), parse_word(b, out.rank))
                           for a, b in cosets)
        return out


def detect_full(S: EquationSystem) -> bool:
    """True iff every term is already trivial in ``F_k * <x>``."""
    return all(not t.symbols for t in S.terms)


def verify_point(S: EquationSystem, g: Word) -> bool:
    return all(not substitute(w, g) for w in S.terms)


def verify_family(S: EquationSystem, g: Word, r: Word) -> bool:
    """Exactly decide whether every ``g r^n`` solves ``S``.

    With ``r = root^k`` the unknown becomes ``g t^k`` in the extension of the
    centralizer of ``root``; the family solves ``S`` iff each term reduces
    to the identity there.
    """
    if not r:
        raise ValueError("a coset needs a nontrivial generator")
    dec = primitive_root(r)
    e = CentralizerExtension(dec.root)
    return all(is_trivial(substitute_mixed(w, g, e, dec.exponent)) for w in S.terms)


def canonicalize(raw: SolutionSet) -> SolutionSet:
    """Merge equal cosets, drop points inside cosets, sort everything."""
    out = SolutionSet(raw.rank, raw.full, (), (), raw.bound, raw.stable, list(raw.diagnostics))
    if raw.full:
        return out
    cosets = {CosetFamily.normalized(c.rep, c.root) for c in raw.cosets}
    out.cosets = tuple(sorted(cosets, key=CosetFamily.sort_key))
    points = {p for p in raw.points if not any(p in c for c in out.cosets)}
    out.points = tuple(sorted(points, key=Word.sort_key))
    return out


def fit_cosets(S: EquationSystem, enumerated: Iterable[Word],
               bound: Optional[int] = None) -> tuple[list, list]:
    """Cover verified solutions by verified coset families.

    Returns ``(families, leftovers)``: families are canonical and pass
    :func:`verify_family`; leftovers are the solutions outside all of them.
    """
    sols = sorted(set(enumerated), key=Word.sort_key)
    if bound is None:
        bound = 2 * max((len(s) for s in sols), default=0)
    candidates = set()
    for i, s1 in enumerate(sols):
        inv = invert(s1)
        for s2 in sols[i + 1:]:
            d = multiply(inv, s2)
            if len(d) <= bound:
                candidates.add(CosetFamily.normalized(s1, d))
    verified = []
    for fam in sorted(candidates, key=CosetFamily.sort_key):
        if verify_family(S, fam.rep, fam.root):
            members = {s for s in sols if s in fam}
            verified.append((fam, members))
    verified.sort(key=lambda item: (-len(item[1]), item[0].sort_key()))
    uncovered = set(sols)
    families = []
    for fam, members in verified:
        if members & uncovered:
            families.append(fam)
            uncovered -= members
    families.sort(key=CosetFamily.sort_key)
    return families, sorted(uncovered, key=Word.sort_key)


def _describe(S: EquationSystem, radius: int, budget, workers) -> tuple[SolutionSet, list]:
    oracle = scan_variety(S, radius, budget, workers)
    families, leftovers = fit_cosets(S, oracle.solutions, bound=oracle.radius)
    raw = SolutionSet(S.rank, False, tuple(leftovers), tuple(families), oracle.radius,
                      diagnostics=list(oracle.diagnostics))
    return canonicalize(raw), oracle.solutions


def solve(S: EquationSystem, L: int = DEFAULT_BOUND, budget: Optional[int] = DEFAULT_BUDGET,
          workers: int = 1, stable_check: bool = True,
          oracle_range: int = DEFAULT_ORACLE_RANGE) -> SolutionSet:
    if L < 0:
        raise ValueError("the bound must be >= 0")
    if detect_full(S):
        return SolutionSet(S.rank, True, (), (), L, True, [])
    diagnostics = []
    if any(t.is_constant and t.symbols for t in S.terms):
        # a nontrivial constant equation has no solutions at all
        return SolutionSet(S.rank, False, (), (), L, True,
                           ["system contains a nontrivial constant equation"])
    longest = max(t.constant_length() for t in S.terms)
    if L < 2 * longest:
        diagnostics.append(f"bound {L} is below twice the longest constant part ({longest})")
    result, _ = _describe(S, L, budget, workers)
    result.diagnostics = diagnostics + result.diagnostics
    if result.bound < L:
        result.stable = False
    elif stable_check and L >= 2:
        previous, _ = _describe(S, L - 2, budget, workers)
        result.stable = previous.shape() == result.shape()
    if oracle_range > 0:
        for fam in result.cosets:
            for n in range(-oracle_range, oracle_range + 1):
                if not verify_point(S, multiply(fam.rep, power(fam.root, n))):
                    result.diagnostics.append(f"coset {fam} fails at n={n}")
                    break
        for p in result.points:
            if not verify_point(S, p):
                result.diagnostics.append(f"point {p} fails")
    return result
