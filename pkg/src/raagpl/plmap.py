"""Exact piecewise-linear homeomorphisms of the real line.

A :class:`PLMap` is stored as the list of its kinks ``x_0 < ... < x_m`` with
values ``f(x_0) < ... < f(x_m)``; it is linear between kinks and the identity
outside ``[x_0, x_m]``. Construction always canonicalizes (collinear points
dropped), so two maps are equal as functions iff their fields are equal.

Everything is computed with :class:`fractions.Fraction`; no floats.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .graph import Graph

Interval = tuple  # (lo, hi); None stands for -inf / +inf

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    """Parse a ``"p/q"`` or ``"p"`` string; rejects non-canonical spellings."""
    if not isinstance(s, str) or not _RATIONAL_RE.fullmatch(s):
        raise InputError(f"not a rational literal: {s!r}")
    q = Fraction(s)
    if format_rational(q) != s:
        raise InputError(f"rational {s!r} is not in lowest terms")
    return q


def _slope(x0, y0, x1, y1):
    return (y1 - y0) / (x1 - x0)


def _kinks(points: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    m = len(points)
    keep = []
    for i, (x, y) in enumerate(points):
        left = Fraction(1) if i == 0 else _slope(*points[i - 1], x, y)
        right = Fraction(1) if i == m - 1 else _slope(x, y, *points[i + 1])
        if left != right:
            keep.append((x, y))
    return keep


@dataclass(frozen=True)
class PLMap:
    breakpoints: tuple[Fraction, ...] = ()
    values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        xs = tuple(Fraction(x) for x in self.breakpoints)
        ys = tuple(Fraction(y) for y in self.values)
        if len(xs) != len(ys):
            raise InputError("breakpoints and values differ in length")
        if xs:
            if xs[0] != ys[0] or xs[-1] != ys[-1]:
                raise InputError("PL map must agree with the identity at its outer breakpoints")
            for i in range(len(xs) - 1):
                if not xs[i] < xs[i + 1]:
                    raise InputError("breakpoints must be strictly increasing")
                if not ys[i] < ys[i + 1]:
                    raise InputError("values must be strictly increasing")
        pts = _kinks(list(zip(xs, ys)))
        object.__setattr__(self, "breakpoints", tuple(p[0] for p in pts))
        object.__setattr__(self, "values", tuple(p[1] for p in pts))

    @classmethod
    def _trusted(cls, xs, ys) -> PLMap:
        # Caller guarantees canonical, validated data.
        f = object.__new__(cls)
        object.__setattr__(f, "breakpoints", tuple(xs))
        object.__setattr__(f, "values", tuple(ys))
        return f

    @classmethod
    def identity(cls) -> PLMap:
        return cls._trusted((), ())

    def is_identity(self) -> bool:
        return not self.breakpoints

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def slopes(self) -> tuple[Fraction, ...]:
        xs, ys = self.breakpoints, self.values
        return tuple(_slope(xs[i], ys[i], xs[i + 1], ys[i + 1]) for i in range(len(xs) - 1))

    def to_json(self) -> dict:
        return {
            "bp": [format_rational(x) for x in self.breakpoints],
            "val": [format_rational(y) for y in self.values],
        }

    @classmethod
    def from_json(cls, obj) -> PLMap:
        try:
            bp, val = obj["bp"], obj["val"]
        except (KeyError, TypeError):
            raise InputError("PL map JSON needs 'bp' and 'val' lists") from None
        f = cls(tuple(parse_rational(s) for s in bp), tuple(parse_rational(s) for s in val))
        if len(f.breakpoints) != len(bp):
            raise InputError("PL map JSON is not in canonical form")
        return f


def _interp(xs, ys, x):
    if not xs or x <= xs[0] or x >= xs[-1]:
        return x
    i = bisect_right(xs, x) - 1
    x0, x1, y0 = xs[i], xs[i + 1], ys[i]
    if x == x0:
        return y0
    return y0 + (ys[i + 1] - y0) * (x - x0) / (x1 - x0)


def evaluate(f: PLMap, x) -> Fraction:
    return _interp(f.breakpoints, f.values, Fraction(x))


def evaluate_inverse(f: PLMap, y) -> Fraction:
    return _interp(f.values, f.breakpoints, Fraction(y))


_RHO0 = PLMap((Fraction(0), Fraction(1, 4), Fraction(3, 2)), (Fraction(0), Fraction(5, 4), Fraction(3, 2)))


def rho0() -> PLMap:
    """x on x<0 or x>=3/2; 5x on [0,1/4); (x+6)/5 on [1/4,3/2)."""
    return _RHO0


def translate_conjugate(f: PLMap, i) -> PLMap:
    """The map ``x -> f(x - i) + i``."""
    i = Fraction(i)
    return PLMap._trusted((x + i for x in f.breakpoints), (y + i for y in f.values))


def affine_conjugate(f: PLMap, scale, shift=0) -> PLMap:
    """``h f h^-1`` for ``h(x) = scale*x + shift`` with ``scale > 0``."""
    scale, shift = Fraction(scale), Fraction(shift)
    if scale <= 0:
        raise InputError("affine conjugation needs a positive scale")
    return PLMap._trusted((scale * x + shift for x in f.breakpoints), (scale * y + shift for y in f.values))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """``x -> f(g(x))``."""
    if f.is_identity():
        return g
    if g.is_identity():
        return f
    cands = set(g.breakpoints)
    cands.update(evaluate_inverse(g, b) for b in f.breakpoints)
    xs = sorted(cands)
    ys = [evaluate(f, evaluate(g, x)) for x in xs]
    pts = _kinks(list(zip(xs, ys)))
    return PLMap._trusted((p[0] for p in pts), (p[1] for p in pts))


def inverse(f: PLMap) -> PLMap:
    return PLMap._trusted(f.values, f.breakpoints)


def power(f: PLMap, n: int) -> PLMap:
    base = f if n >= 0 else inverse(f)
    out = PLMap.identity()
    for _ in range(abs(n)):
        out = compose(base, out)
    return out


def equal(f: PLMap, g: PLMap) -> bool:
    return f.breakpoints == g.breakpoints and f.values == g.values


def _merge(intervals: Iterable[Interval]) -> list[Interval]:
    def lo_key(iv):
        return (0, 0) if iv[0] is None else (1, iv[0])

    out: list[list] = []
    for lo, hi in sorted(intervals, key=lo_key):
        if out and (out[-1][1] is None or (lo is not None and lo <= out[-1][1])):
            if out[-1][1] is not None and (hi is None or hi > out[-1][1]):
                out[-1][1] = hi
            continue
        out.append([lo, hi])
    return [tuple(iv) for iv in out]


def fixed_set(f: PLMap) -> list[Interval]:
    """``{x : f(x) = x}`` as disjoint closed components, ordered left to right.

    Isolated fixed points appear as degenerate intervals ``(p, p)``; the
    unbounded rays use ``None`` for the infinite end.
    """
    xs, ys = f.breakpoints, f.values
    if not xs:
        return [(None, None)]
    comps: list[Interval] = [(None, xs[0])]
    for i in range(len(xs) - 1):
        a, b = xs[i], xs[i + 1]
        da, db = ys[i] - a, ys[i + 1] - b
        if da == 0 and db == 0:
            comps.append((a, b))
            continue
        if da == 0:
            comps.append((a, a))
        if db == 0:
            comps.append((b, b))
        if da * db < 0:
            p = a + (b - a) * da / (da - db)
            comps.append((p, p))
    comps.append((xs[-1], None))
    return _merge(comps)


def support(f: PLMap) -> list[Interval]:
    """Closure of the moved set: disjoint closed bounded intervals."""
    return list(_support(f))


@lru_cache(maxsize=4096)
def _support(f: PLMap) -> tuple[Interval, ...]:
    comps = fixed_set(f)
    gaps = [(comps[j][1], comps[j + 1][0]) for j in range(len(comps) - 1)]
    return tuple(_merge(gaps))


def intervals_intersect(a: Interval, b: Interval) -> bool:
    return a[0] <= b[1] and b[0] <= a[1]


def supports_disjoint(f: PLMap, g: PLMap) -> bool:
    sf, sg = _support(f), _support(g)
    return not any(intervals_intersect(a, b) for a in sf for b in sg)


def support_within(f: PLMap, intervals: Sequence[Interval]) -> bool:
    """True iff every support component of ``f`` lies inside one of ``intervals``."""
    return all(any(c[0] <= s[0] and s[1] <= c[1] for c in intervals) for s in support(f))


def disjointness_graph(fs: Sequence[PLMap], names: Optional[Sequence[str]] = None) -> Graph:
    names = list(names) if names is not None else [f"v{i}" for i in range(1, len(fs) + 1)]
    edges = [
        (names[i], names[j])
        for i in range(len(fs))
        for j in range(i + 1, len(fs))
        if supports_disjoint(fs[i], fs[j])
    ]
    return Graph.from_edges(names, edges)
