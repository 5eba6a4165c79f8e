"""Stallings graphs of finitely generated subgroups of F_k.

Edges are triples ``(source, target, i)`` read as the generator ``i`` from
source to target (and ``i^-1`` backwards). A finished graph is folded,
trimmed to its core, and relabelled breadth-first from the basepoint ``0``,
so two graphs of the same subgroup compare equal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from onevar.words import Word, check_rank, letter_key


@dataclass(frozen=True)
class StallingsGraph:
    vertices: int  # vertices are 0 .. vertices-1, basepoint 0
    edges: frozenset
    rank: int

    def out_edges(self, v: int) -> dict:
        """Signed label -> neighbour, for the edges at ``v``."""
        return _adjacency(self.edges).get(v, {})

    def __str__(self) -> str:
        lines = [f"StallingsGraph(rank {self.rank}, {self.vertices} vertices)"]
        for s, t, i in sorted(self.edges):
            lines.append(f"  {s} -{Word((i,), self.rank)}-> {t}")
        return "\n".join(lines)


def _adjacency(edges: Iterable) -> dict:
    adj: dict = {}
    for s, t, i in edges:
        adj.setdefault(s, {})[i] = t
        adj.setdefault(t, {})[-i] = s
    return adj


def _petals(generators: Iterable[Word]) -> tuple[set, int]:
    edges = set()
    nxt = 1
    for w in generators:
        if not w:
            continue
        path = [0] + list(range(nxt, nxt + len(w) - 1)) + [0]
        nxt += len(w) - 1
        for k, x in enumerate(w.letters):
            a, b = path[k], path[k + 1]
            edges.add((a, b, x) if x > 0 else (b, a, -x))
    return edges, nxt


def _conflicts(edges: set) -> list:
    seen: dict = {}
    out = []
    for s, t, i in sorted(edges):
        for key, other in (((s, i), t), ((t, -i), s)):
            if key in seen and seen[key] != other:
                out.append(tuple(sorted((seen[key], other))))
            seen.setdefault(key, other)
    return out


def fold(edges: set, schedule: str = "first", seed: Optional[int] = None) -> set:
    """Identify vertices until no vertex has two edges with the same signed label.

    ``schedule`` picks which pending fold goes next (``first``, ``last`` or
    ``random``); the result is the same graph up to relabelling.
    """
    rng = random.Random(seed)
    edges = set(edges)
    while True:
        pending = _conflicts(edges)
        if not pending:
            return edges
        if schedule == "first":
            keep, drop = pending[0]
        elif schedule == "last":
            keep, drop = pending[-1]
        elif schedule == "random":
            keep, drop = rng.choice(pending)
        else:
            raise ValueError(f"unknown fold schedule {schedule!r}")
        if keep == 0 or drop == 0:
            keep, drop = 0, keep + drop
        edges = {(keep if s == drop else s, keep if t == drop else t, i) for s, t, i in edges}


def core(edges: set, base: int = 0) -> set:
    """Drop hanging trees: repeatedly remove degree-1 vertices other than the basepoint."""
    edges = set(edges)
    while True:
        degree: dict = {}
        for s, t, _ in edges:
            degree[s] = degree.get(s, 0) + 1
            degree[t] = degree.get(t, 0) + 1
        leaves = {v for v, d in degree.items() if d == 1 and v != base}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[1] not in leaves}


def canonical(edges: set, rank: int, base: int = 0) -> StallingsGraph:
    """Relabel breadth-first from the basepoint, visiting labels in a < A < b < B order."""
    adj = _adjacency(edges)
    labels = sorted([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)],
                    key=letter_key)
    name = {base: 0}
    queue = [base]
    for v in queue:
        for x in labels:
            w = adj.get(v, {}).get(x)
            if w is not None and w not in name:
                name[w] = len(name)
                queue.append(w)
    relabelled = frozenset((name[s], name[t], i) for s, t, i in edges)
    return StallingsGraph(len(name), relabelled, rank)


def build(generators: Iterable[Word], rank: Optional[int] = None,
          schedule: str = "first", seed: Optional[int] = None) -> StallingsGraph:
    generators = list(generators)
    if rank is None:
        if not generators:
            raise ValueError("rank is required when there are no generators")
        rank = generators[0].rank
    check_rank(rank)
    for w in generators:
        if w.rank != rank:
            raise ValueError(f"generator {w} has rank {w.rank}, expected {rank}")
    edges, _ = _petals(generators)
    return canonical(core(fold(edges, schedule, seed)), rank)


def contains(g: StallingsGraph, u: Word) -> bool:
    adj = _adjacency(g.edges)
    v = 0
    for x in u.letters:
        v = adj.get(v, {}).get(x)
        if v is None:
            return False
    return v == 0


def subgroup_rank(g: StallingsGraph) -> int:
    """Rank of the free subgroup: edges outside a spanning tree."""
    if not g.edges:
        return 0
    return len(g.edges) - g.vertices + 1
