"""Words in the standard generators of A(Γ) and the word problem.

A word is a tuple of :class:`Letter`. Group multiplication is concatenation;
when words act on the line the rightmost letter acts first.

``reduce`` returns the canonical normal form: the lexicographically least
reduced representative, where letters are ordered by vertex declaration
order and then by sign (``+1`` before ``-1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError, InputError
from .graph import Graph, is_clique


class Letter(NamedTuple):
    vertex: str
    sign: int

    def inverse(self) -> Letter:
        return Letter(self.vertex, -self.sign)

    def __str__(self):
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"


Word = tuple  # tuple[Letter, ...]; the empty tuple is the identity


def word(*tokens) -> Word:
    """Build a word from ``(vertex, exponent)`` pairs or bare vertex names.

    >>> word("a", ("b", -2))
    (Letter(vertex='a', sign=1), Letter(vertex='b', sign=-1), Letter(vertex='b', sign=-1))
    """
    out = []
    for t in tokens:
        if isinstance(t, Letter):
            out.append(t)
            continue
        if isinstance(t, str):
            v, e = t, 1
        else:
            v, e = t
        s = 1 if e > 0 else -1
        out.extend(Letter(v, s) for _ in range(abs(e)))
    return tuple(out)


def check_word(g: Graph, w: Iterable[Letter]) -> Word:
    w = tuple(w)
    index = g._index
    for x in w:
        if x.vertex not in index:
            g.check_vertex(x.vertex)
        if x.sign != 1 and x.sign != -1:
            raise InputError(f"letter sign must be +1 or -1, got {x.sign!r}")
    return w


def inverse(w: Sequence[Letter]) -> Word:
    return tuple(x.inverse() for x in reversed(w))


def letter_key(g: Graph, x: Letter) -> tuple[int, int]:
    return (g.index(x.vertex), 0 if x.sign > 0 else 1)


def _free_commutation_reduce(g: Graph, w: Word) -> list[Letter]:
    # Stack pass: a new letter cancels against the last letter of the
    # current (reduced) prefix that it can reach through commuting letters.
    pairs = g._commuting
    out: list[Letter] = []
    for x in w:
        for j in range(len(out) - 1, -1, -1):
            y = out[j]
            if y.vertex == x.vertex:
                if y.sign == -x.sign:
                    del out[j]
                    break
                out.append(x)
                break
            if (y.vertex, x.vertex) not in pairs:
                out.append(x)
                break
        else:
            out.append(x)
    return out


def _lex_least(g: Graph, w: list[Letter]) -> Word:
    # Repeatedly emit the smallest letter that can be brought to the front.
    # A letter is available once every earlier letter blocking it (same
    # vertex, or a non-commuting one) has been emitted.
    pairs = g._commuting
    rank = g._index
    n = len(w)
    keys = [2 * rank[x.vertex] + (x.sign < 0) for x in w]
    later = [[] for _ in range(n)]
    pending = [0] * n
    for j in range(n):
        vj = w[j].vertex
        for i in range(j):
            vi = w[i].vertex
            if vi == vj or (vi, vj) not in pairs:
                later[i].append(j)
                pending[j] += 1
    ready = {i for i in range(n) if not pending[i]}
    out = []
    while ready:
        # ties on key cannot occur: equal letters block each other
        i = min(ready, key=keys.__getitem__)
        ready.remove(i)
        out.append(w[i])
        for j in later[i]:
            pending[j] -= 1
            if not pending[j]:
                ready.add(j)
    return tuple(out)


def reduce(g: Graph, w: Iterable[Letter]) -> Word:
    """Canonical reduced representative of ``w`` in A(g)."""
    w = check_word(g, w)
    return _lex_least(g, _free_commutation_reduce(g, w))


def is_trivial(g: Graph, w: Iterable[Letter]) -> bool:
    return not reduce(g, w)


def support(g: Graph, w: Iterable[Letter]) -> frozenset[str]:
    return frozenset(x.vertex for x in reduce(g, w))


def concat(ws: Iterable[Sequence[Letter]]) -> Word:
    """Concatenate words left to right; performs no reduction."""
    return tuple(x for w in ws for x in w)


def is_reduced(g: Graph, w: Iterable[Letter]) -> bool:
    w = check_word(g, w)
    return len(_free_commutation_reduce(g, w)) == len(w)


def is_reduced_concatenation(g: Graph, ws: Sequence[Sequence[Letter]]) -> bool:
    for i, w in enumerate(ws):
        if not is_reduced(g, w):
            raise InputError(f"member {i} of the concatenation is not reduced")
    total = concat(ws)
    return len(_free_commutation_reduce(g, total)) == len(total)


@dataclass(frozen=True)
class CliqueWord:
    """A reduced word whose support spans a clique.

    ``exponents`` lists ``(vertex, net exponent)`` in vertex declaration
    order; every exponent is nonzero.
    """

    word: Word
    exponents: tuple[tuple[str, int], ...]

    @property
    def exponent_map(self) -> dict[str, int]:
        return dict(self.exponents)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.exponents)

    def __len__(self) -> int:
        return len(self.word)


def clique_word_from_exponents(g: Graph, exps: Mapping[str, int]) -> CliqueWord:
    items = sorted(((v, e) for v, e in exps.items() if e), key=lambda p: g.index(p[0]))
    if not is_clique(g, (v for v, _ in items)):
        raise DomainError(f"support {[v for v, _ in items]} is not a clique")
    return _clique_word(g, items)


def _clique_word(g: Graph, exps) -> CliqueWord:
    # caller guarantees a clique support of known vertices
    items = sorted(((v, e) for v, e in exps if e), key=lambda p: g._index[p[0]])
    w = tuple(Letter(v, 1 if e > 0 else -1) for v, e in items for _ in range(abs(e)))
    return CliqueWord(w, tuple(items))


def as_clique_word(g: Graph, w: Iterable[Letter]) -> CliqueWord:
    w = check_word(g, w)
    if not is_reduced(g, w):
        raise InputError("clique word must be reduced")
    exps: dict[str, int] = {}
    for x in w:
        exps[x.vertex] = exps.get(x.vertex, 0) + x.sign
    if not is_clique(g, exps):
        raise DomainError(f"support {sorted(exps, key=g.index)} is not a clique")
    items = tuple(sorted(exps.items(), key=lambda p: g.index(p[0])))
    return CliqueWord(w, items)


def highest_power(cw: CliqueWord, v: str) -> tuple[int, int]:
    """``(sign, n)`` such that ``v^(sign*n)`` is the full power of ``v`` in ``cw``."""
    e = cw.exponent_map.get(v, 0)
    if e == 0:
        raise DomainError(f"vertex {v!r} is not in the support of the clique word")
    return (1 if e > 0 else -1, abs(e))
