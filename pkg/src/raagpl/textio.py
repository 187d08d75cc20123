"""Text and JSON formats for graphs and words.

Input grammar, one declaration per line (``#`` starts a comment)::

    vertices: a, b, c        # optional; fixes declaration order
    graph: a-b, b-c          # edges; new endpoints are declared in order of appearance
    word: a c^-1 b^3         # may repeat

Vertex names are runs of characters other than whitespace and ``,-^:#``.
Word tokens are ``v``, ``v^n`` or ``v^-n``; a power expands to a run of letters.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import InputError, ParseError
from .graph import Graph
from .words import Letter, Word

_NAME = r"[^\s,\-^:#]+"
_NAME_RE = re.compile(_NAME)
_TOKEN_RE = re.compile(rf"({_NAME})(?:\^(-?[0-9]+))?")
_EDGE_RE = re.compile(rf"\s*({_NAME})\s*-\s*({_NAME})\s*")


def _split_items(text: str, offset: int):
    """Yield ``(item, column)`` for comma-separated items (1-based columns)."""
    pos = 0
    for part in text.split(","):
        lead = len(part) - len(part.lstrip())
        yield part.strip(), offset + pos + lead + 1
        pos += len(part) + 1


def parse_word_text(text: str, vertices=None, line=None, offset: int = 0) -> Word:
    letters = []
    for m in re.finditer(r"\S+", text):
        col = offset + m.start() + 1
        tm = _TOKEN_RE.fullmatch(m.group())
        if not tm:
            raise ParseError(f"bad word token {m.group()!r}", line, col)
        v, e = tm.group(1), int(tm.group(2)) if tm.group(2) is not None else 1
        if vertices is not None and v not in vertices:
            raise ParseError(f"unknown vertex {v!r} in word", line, col)
        s = 1 if e > 0 else -1
        letters.extend(Letter(v, s) for _ in range(abs(e)))
    return tuple(letters)


def parse_input(text: str) -> tuple[Graph, list[Word]]:
    order: list[str] = []
    declared: set[str] = set()
    explicit: set[str] = set()
    edges: list[tuple[str, str]] = []
    word_lines: list[tuple[int, int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        key = key.strip()
        offset = len(key) + (len(line) - len(line.lstrip())) + 1
        if key == "vertices":
            for item, col in _split_items(rest, offset):
                if not item and rest.strip() == "":
                    break
                if not _NAME_RE.fullmatch(item):
                    raise ParseError(f"bad vertex name {item!r}", lineno, col)
                if item in explicit:
                    raise ParseError(f"duplicate vertex declaration {item!r}", lineno, col)
                explicit.add(item)
                if item not in declared:
                    declared.add(item)
                    order.append(item)
        elif key == "graph":
            if not rest.strip():
                continue
            for item, col in _split_items(rest, offset):
                m = _EDGE_RE.fullmatch(item)
                if not m:
                    raise ParseError(f"bad edge {item!r}; expected 'u-v'", lineno, col)
                u, v = m.group(1), m.group(2)
                if u == v:
                    raise ParseError(f"loop at vertex {u!r}", lineno, col)
                for x in (u, v):
                    if x not in declared:
                        declared.add(x)
                        order.append(x)
                edges.append((u, v))
        elif key == "word":
            word_lines.append((lineno, offset, rest))
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1)

    g = Graph.from_edges(order, edges)
    words = [parse_word_text(t, declared, ln, off) for ln, off, t in word_lines]
    return g, words


def format_word(w: Sequence[Letter]) -> str:
    """Compact text form: maximal runs become powers, e.g. ``a^2 b^-1``."""
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        e = (j - i) * w[i].sign
        out.append(w[i].vertex if e == 1 else f"{w[i].vertex}^{e}")
        i = j
    return " ".join(out)


def format_graph(g: Graph) -> str:
    lines = ["vertices: " + ", ".join(g.vertices)]
    edges = g.sorted_edges()
    lines.append("graph: " + ", ".join(f"{u}-{v}" for u, v in edges))
    return "\n".join(lines) + "\n"


def format_input(g: Graph, words: Iterable[Sequence[Letter]] = ()) -> str:
    return format_graph(g) + "".join(f"word: {format_word(w)}\n" for w in words)


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(obj) -> Graph:
    try:
        return Graph.from_edges(obj["vertices"], [tuple(e) for e in obj["edges"]])
    except (KeyError, TypeError):
        raise InputError("graph JSON needs 'vertices' and 'edges'") from None


def word_to_json(w: Sequence[Letter]) -> list:
    return [{"v": x.vertex, "s": x.sign} for x in w]


def word_from_json(obj) -> Word:
    try:
        letters = tuple(Letter(d["v"], d["s"]) for d in obj)
    except (KeyError, TypeError):
        raise InputError("word JSON must be a list of {'v': vertex, 's': +1/-1}") from None
    for x in letters:
        if not isinstance(x.vertex, str) or x.sign not in (1, -1) or isinstance(x.sign, bool):
            raise InputError(f"bad letter {x!r}")
    return letters
