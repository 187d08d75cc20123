"""Separating homomorphisms from A(Γ) into PL homeomorphisms of the line.

For a nontrivial ``g`` with left-greedy form ``w_k ... w_1`` we pick one vertex
``v_i`` per block with consecutive picks not commuting (the *spine*), put a
translated copy ``rho_i`` of ``rho0`` on ``I_i = [i, i + 3/2]``, and send each
generator ``v`` to the product of ``rho_j^(sign_j)`` over the picks
``v_j = v``. Adjacent generators then have disjoint supports, so this is a
homomorphism, and block ``w_l`` pushes ``[l + 1/4, l + 1/2]`` into
``[l + 5/4, l + 3/2]``. Chaining the blocks moves ``5/4`` into
``[k + 5/4, k + 3/2]``, so the image of ``g`` is not the identity.

Words act with the rightmost letter first: ``psi(uv) = psi(u) o psi(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .decomp import CliqueDecomposition, is_left_greedy, left_greedy_form
from .errors import DomainError, InputError, VerificationError
from .graph import Graph, commute
from .plmap import (
    PLMap,
    affine_conjugate,
    compose,
    equal,
    evaluate,
    evaluate_inverse,
    inverse,
    rho0,
    support_within,
    supports_disjoint,
    translate_conjugate,
)
from .words import Letter, Word, highest_power, reduce

TEST_POINT = Fraction(5, 4)
IDENTITY_MESSAGE = "identity element: no witness exists (the construction requires g != 1)"


@dataclass(frozen=True)
class Spine:
    picks: tuple[tuple[str, int, int], ...]  # (v_i, sign_i, n_i) for i = 1..k

    def __len__(self):
        return len(self.picks)

    def vertex(self, i: int) -> str:
        return self.picks[i - 1][0]


@dataclass(frozen=True)
class Witness:
    graph: Graph
    element: Word
    decomposition: CliqueDecomposition
    spine: Spine
    images: tuple[tuple[str, PLMap], ...]

    @property
    def k(self) -> int:
        return self.decomposition.k

    @property
    def generator_images(self) -> dict[str, PLMap]:
        return dict(self.images)


@dataclass(frozen=True)
class Certificate:
    witness: Witness
    test_point: Fraction
    image: Fraction
    target_interval: tuple[Fraction, Fraction]
    stage_trace: tuple[tuple[int, Fraction, Fraction], ...]


def stage_interval(l: int) -> tuple[Fraction, Fraction]:
    return (l + Fraction(5, 4), l + Fraction(3, 2))


def block_interval(i: int) -> tuple[Fraction, Fraction]:
    """``I_i = [i, i + 3/2]``, the support of ``rho_i``."""
    return (Fraction(i), i + Fraction(3, 2))


@lru_cache(maxsize=None)
def rho(i: int, sign: int = 1) -> PLMap:
    """``rho_i`` (or its inverse for ``sign=-1``), supported on ``I_i``."""
    f = translate_conjugate(rho0(), i)
    return f if sign > 0 else inverse(f)


def choose_spine(g: Graph, d: CliqueDecomposition) -> Spine:
    if d.k == 0:
        raise DomainError(IDENTITY_MESSAGE)
    if not is_left_greedy(d):
        raise DomainError("decomposition is not left-greedy")
    picks = []
    prev = None
    for i in range(1, d.k + 1):
        block = d.block(i)
        # exponents are listed in declaration order, so the first hit is least
        for v, _ in block.exponents:
            if prev is None or not commute(g, prev, v):
                break
        else:
            raise DomainError(f"no spine vertex in w_{i}: decomposition is not left-greedy")
        sign, n = highest_power(block, v)
        picks.append((v, sign, n))
        prev = v
    return Spine(tuple(picks))


def generator_images(g: Graph, spine: Spine) -> dict[str, PLMap]:
    images = {v: PLMap.identity() for v in g.vertices}
    for j, (v, sign, _) in enumerate(spine.picks, start=1):
        images[v] = compose(images[v], rho(j, sign))
    return images


def _check_structure(g: Graph, spine: Spine, images: Mapping[str, PLMap]) -> None:
    for v in g.vertices:
        js = [j for j, p in enumerate(spine.picks, start=1) if p[0] == v]
        if not support_within(images[v], [block_interval(j) for j in js]):
            raise VerificationError(f"support of psi({v}) escapes J_{v}", detail={"vertex": v})
    for u, v in g.sorted_edges():
        if not supports_disjoint(images[u], images[v]):
            raise VerificationError(f"psi({u}) and psi({v}) have overlapping supports", detail={"edge": (u, v)})


def build_witness(g: Graph, w: Sequence[Letter]) -> Witness:
    element = reduce(g, w)
    if not element:
        raise DomainError(IDENTITY_MESSAGE)
    d = left_greedy_form(g, element)
    spine = choose_spine(g, d)
    images = generator_images(g, spine)
    _check_structure(g, spine, images)
    return Witness(g, element, d, spine, tuple((v, images[v]) for v in g.vertices))


def apply_word(images: Mapping[str, PLMap], w: Sequence[Letter], x) -> Fraction:
    """Evaluate the image of ``w`` at ``x``; the rightmost letter acts first."""
    x = Fraction(x)
    for letter in reversed(w):
        try:
            f = images[letter.vertex]
        except KeyError:
            raise InputError(f"no image for generator {letter.vertex!r}") from None
        x = evaluate(f, x) if letter.sign > 0 else evaluate_inverse(f, x)
    return x


def verify_witness(wit: Witness) -> Certificate:
    """Run the exact nontriviality check and return its certificate.

    Failure raises :class:`VerificationError`; it can only mean a bug, since
    the construction always succeeds for a left-greedy decomposition.
    """
    g, d, images = wit.graph, wit.decomposition, wit.generator_images
    x = TEST_POINT
    trace = []
    for l in range(1, d.k + 1):
        y = apply_word(images, d.block(l).word, x)
        lo, hi = stage_interval(l)
        trace.append((l, x, y))
        if not lo <= y <= hi:
            raise VerificationError(
                f"stage {l}: image {y} outside [{lo}, {hi}]",
                stage=l,
                detail={"input": x, "output": y, "interval": (lo, hi)},
            )
        x = y
    whole = apply_word(images, wit.element, TEST_POINT)
    if whole != x:
        raise VerificationError(f"whole-word image {whole} differs from staged image {x}")
    for u, v in g.sorted_edges():
        fu, fv = images[u], images[v]
        if not equal(compose(fu, fv), compose(fv, fu)):
            raise VerificationError(f"images of the edge {u}-{v} do not commute", detail={"edge": (u, v)})
    return Certificate(wit, TEST_POINT, x, stage_interval(d.k), tuple(trace))


def normalize_to_unit_interval(wit: Witness) -> dict[str, PLMap]:
    """Conjugate every image by ``x -> x/(k+2)`` so supports sit in ``[0, 1]``."""
    c = Fraction(1, wit.k + 2)
    return {v: affine_conjugate(f, c) for v, f in wit.images}


def separate_set(g: Graph, ws: Sequence[Sequence[Letter]]) -> list[Witness]:
    """One verified witness per element; together they give a homomorphism
    into a finite product that kills none of the elements."""
    for i, w in enumerate(ws):
        if not reduce(g, w):
            raise DomainError(f"element {i} is trivial: {IDENTITY_MESSAGE}")
    out = []
    for w in ws:
        wit = build_witness(g, w)
        verify_witness(wit)
        out.append(wit)
    return out
