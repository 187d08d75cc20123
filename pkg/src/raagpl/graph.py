"""Finite simplicial graphs: the commutation data of a right-angled Artin group."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    """Simplicial graph with a fixed vertex order.

    The declaration order of ``vertices`` is the total order used for every
    tie-break downstream (normal forms, spine choice), so an input file fully
    determines the output.
    """

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _commuting: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        seen = set()
        for v in verts:
            if not isinstance(v, str) or not v:
                raise InputError(f"vertex identifiers must be nonempty strings, got {v!r}")
            if v in seen:
                raise InputError(f"duplicate vertex {v!r}")
            seen.add(v)
        edges = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) == 1 or (len(pair) == 2 and pair[0] == pair[1]):
                raise InputError(f"loop at vertex {pair[0]!r}")
            if len(pair) != 2:
                raise InputError(f"edge must join two vertices, got {pair!r}")
            for v in pair:
                if v not in seen:
                    raise InputError(f"edge endpoint {v!r} is not a declared vertex")
            edges.add(frozenset(pair))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(verts)})
        # ordered pairs of commuting generators, for the hot loops in words
        pairs = {(v, v) for v in verts} | {(u, v) for e in edges for u in e for v in e if u != v}
        object.__setattr__(self, "_commuting", frozenset(pairs))

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> Graph:
        return cls(tuple(vertices), frozenset(frozenset(e) if e[0] != e[1] else frozenset((e[0],)) for e in edges))

    @classmethod
    def free(cls, vertices: Iterable[str]) -> Graph:
        return cls(tuple(vertices))

    @classmethod
    def complete(cls, vertices: Iterable[str]) -> Graph:
        vs = tuple(vertices)
        return cls.from_edges(vs, combinations(vs, 2))

    @classmethod
    def path(cls, vertices: Iterable[str]) -> Graph:
        vs = tuple(vertices)
        return cls.from_edges(vs, zip(vs, vs[1:]))

    def __contains__(self, v) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def check_vertex(self, v: str) -> None:
        if v not in self._index:
            raise InputError(f"unknown vertex {v!r}")

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by declaration order."""
        out = []
        for e in self.edges:
            u, v = sorted(e, key=self._index.__getitem__)
            out.append((u, v))
        out.sort(key=lambda p: (self._index[p[0]], self._index[p[1]]))
        return out

    def neighbors(self, v: str) -> tuple[str, ...]:
        self.check_vertex(v)
        return tuple(u for u in self.vertices if frozenset((u, v)) in self.edges)


def adjacent(g: Graph, u: str, v: str) -> bool:
    """True iff ``{u, v}`` is an edge. A vertex is never adjacent to itself."""
    g.check_vertex(u)
    g.check_vertex(v)
    return u != v and frozenset((u, v)) in g.edges


def commute(g: Graph, u: str, v: str) -> bool:
    """True iff the generators ``u`` and ``v`` commute in A(g): equal or adjacent."""
    return u == v or adjacent(g, u, v)


def is_clique(g: Graph, s: Iterable[str]) -> bool:
    vs = list(dict.fromkeys(s))
    for v in vs:
        g.check_vertex(v)
    return all(frozenset(p) in g.edges for p in combinations(vs, 2))
