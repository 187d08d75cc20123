"""Clique word decompositions and the left-greedy form.

A decomposition ``w_k ... w_1`` is stored left to right, so ``blocks[0]`` is
``w_k`` and ``blocks[-1]`` is ``w_1`` (the block that acts first). Public
functions take block indices in the ``w_i`` numbering (1-based from the right).

Existence of a left-greedy form is usually argued by maximality; here it is
reached by sliding letters leftward one at a time. Every slide moves one
letter one block to the left, so the potential

    sum over letters of (N - position of its block from the left)

strictly increases and is bounded by N*(N-1); starting from singleton blocks
it is N*(N-1)/2, so at most N*(N-1)/2 slides happen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, InputError
from .graph import Graph, is_clique
from .words import (
    CliqueWord,
    Letter,
    Word,
    _clique_word,
    concat,
    is_reduced_concatenation,
    reduce,
)


@dataclass(frozen=True)
class CliqueDecomposition:
    graph: Graph
    blocks: tuple[CliqueWord, ...]
    slides: int = 0

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for b in blocks:
            if not b.word:
                raise InputError("decomposition blocks must be nonempty")
            if not is_clique(self.graph, b.support):
                raise DomainError("decomposition block is not a clique word")
        if not is_reduced_concatenation(self.graph, [b.word for b in blocks]):
            raise DomainError("concatenation of the blocks is not reduced")

    @classmethod
    def _unchecked(cls, graph, blocks, slides=0) -> CliqueDecomposition:
        d = object.__new__(cls)
        object.__setattr__(d, "graph", graph)
        object.__setattr__(d, "blocks", tuple(blocks))
        object.__setattr__(d, "slides", slides)
        return d

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block(self, i: int) -> CliqueWord:
        """The block ``w_i``, 1-based from the right."""
        if not 1 <= i <= self.k:
            raise IndexError(f"block index {i} outside 1..{self.k}")
        return self.blocks[self.k - i]

    def word(self) -> Word:
        return concat(b.word for b in self.blocks)

    def complexity(self) -> tuple[int, ...]:
        """Block lengths ``(|w_k|, ..., |w_1|)``; compare lexicographically."""
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return sum(len(b) for b in self.blocks)


def complexity(d: CliqueDecomposition) -> tuple[int, ...]:
    return d.complexity()


def potential(d: CliqueDecomposition) -> int:
    n = len(d)
    return sum(len(b) * (n - p) for p, b in enumerate(d.blocks, start=1))


def singleton_decomposition(g: Graph, w: Sequence[Letter]) -> CliqueDecomposition:
    # a reduced word split into letters needs no further validation
    r = reduce(g, w)
    return CliqueDecomposition._unchecked(g, tuple(CliqueWord((x,), ((x.vertex, x.sign),)) for x in r))


def is_left_greedy(d: CliqueDecomposition) -> bool:
    pairs = d.graph._commuting
    blocks = d.blocks
    for left, right in zip(blocks, blocks[1:]):
        for v, _ in right.exponents:
            if all((v, u) in pairs for u, _ in left.exponents):
                return False
    return True


def _can_slide(g: Graph, target: CliqueWord, v: str) -> bool:
    pairs = g._commuting
    return all((u, v) in pairs for u, _ in target.exponents)


def slide_left(d: CliqueDecomposition, i: int, v: str) -> CliqueDecomposition:
    """Move one occurrence of ``v`` from ``w_(i-1)`` into ``w_i``."""
    out = _slide(d, i, v)
    return CliqueDecomposition(out.graph, out.blocks, out.slides)


def _slide(d: CliqueDecomposition, i: int, v: str) -> CliqueDecomposition:
    g = d.graph
    if not 2 <= i <= d.k:
        raise DomainError(f"slide target index {i} outside 2..{d.k}")
    target, source = d.block(i), d.block(i - 1)
    src = source.exponent_map
    if v not in src:
        raise DomainError(f"vertex {v!r} not in the support of w_{i - 1}")
    if not _can_slide(g, target, v):
        raise DomainError(f"{v!r} together with supp(w_{i}) does not span a clique")
    s = 1 if src[v] > 0 else -1
    tgt = target.exponent_map
    if tgt.get(v, 0) * s < 0:
        # Would cancel: the concatenation was not reduced to begin with.
        raise DomainError(f"opposite powers of {v!r} in adjacent blocks")
    tgt[v] = tgt.get(v, 0) + s
    src[v] -= s
    new_target = _clique_word(g, tgt.items())
    blocks = list(d.blocks)
    pt, ps = d.k - i, d.k - i + 1
    blocks[pt] = new_target
    if any(src.values()):
        blocks[ps] = _clique_word(g, src.items())
    else:
        del blocks[ps]
    return CliqueDecomposition._unchecked(g, blocks, d.slides + 1)


def next_slide(d: CliqueDecomposition) -> tuple[int, str] | None:
    """First applicable slide: target ``w_i`` scanned from the leftmost block,
    moved vertex chosen by declaration order."""
    g = d.graph
    blocks = d.blocks
    k = len(blocks)
    for p in range(k - 1):
        target, source = blocks[p], blocks[p + 1]
        for v, _ in source.exponents:
            if _can_slide(g, target, v):
                return k - p, v
    return None


def left_greedy_steps(g: Graph, w: Sequence[Letter]) -> Iterator[CliqueDecomposition]:
    """Yield the singleton decomposition of ``reduce(g, w)`` and then every
    decomposition produced by successive slides, ending at a left-greedy one."""
    d = singleton_decomposition(g, w)
    yield d
    # each slide preserves the block invariants, so only the result is re-validated
    while (move := next_slide(d)) is not None:
        d = _slide(d, *move)
        yield d


def left_greedy_form(g: Graph, w: Sequence[Letter]) -> CliqueDecomposition:
    d = None
    for d in left_greedy_steps(g, w):
        pass
    return CliqueDecomposition(d.graph, d.blocks, d.slides)
