"""Seeded random sweep over graphs and words, checking every invariant of
the witness construction end to end."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import certificate_to_json, check_certificate
from .decomp import is_left_greedy, left_greedy_steps
from .errors import RaagError
from .graph import Graph
from .textio import format_input
from .witness import apply_word, build_witness, verify_witness
from .words import Letter, reduce


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    vs = [f"v{i}" for i in range(n)]
    edges = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(vs, edges)


def random_word(rng: random.Random, g: Graph, length: int):
    return tuple(Letter(rng.choice(g.vertices), rng.choice((1, -1))) for _ in range(length))


def random_rational(rng: random.Random, lo: int, hi: int, den: int = 100) -> Fraction:
    q = rng.randint(1, den)
    return Fraction(rng.randint(lo * q, hi * q), q)


@dataclass
class SweepReport:
    seed: int
    cases: int = 0
    passed: int = 0
    discarded: int = 0
    failures: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return len(self.failures)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "discarded": self.discarded,
            "failures": self.failures,
        }


def check_case(g: Graph, w, rng: random.Random) -> None:
    """Run every end-to-end check on one nontrivial word; raise on failure."""
    r = reduce(g, w)
    steps = list(left_greedy_steps(g, r))
    d = steps[-1]
    if not is_left_greedy(d):
        raise AssertionError("left-greedy form is not left-greedy")
    for a, b in zip(steps, steps[1:]):
        if not b.complexity() > a.complexity():
            raise AssertionError("slide did not increase the complexity")
    if len(steps) - 1 > len(r) ** 2:
        raise AssertionError("too many slides")
    if reduce(g, d.word()) != r or len(d) != len(r):
        raise AssertionError("decomposition changed the element")
    wit = build_witness(g, w)
    cert = verify_witness(wit)
    if check_certificate(certificate_to_json(cert)) != cert.image:
        raise AssertionError("independent re-check disagrees")
    images = wit.generator_images
    for _ in range(3):
        x = random_rational(rng, -1, wit.k + 3)
        if apply_word(images, w, x) != apply_word(images, r, x):
            raise AssertionError(f"image of w and of its normal form differ at {x}")


def run_sweep(seed: int = 0, cases: int = 200, max_vertices: int = 5, max_length: int = 8) -> SweepReport:
    rng = random.Random(seed)
    report = SweepReport(seed)
    lo = min(2, max_vertices)
    for case in range(cases):
        g = random_graph(rng, rng.randint(lo, max_vertices))
        w = random_word(rng, g, rng.randint(1, max_length))
        if not reduce(g, w):
            report.discarded += 1
            continue
        report.cases += 1
        try:
            check_case(g, w, rng)
        except (AssertionError, RaagError) as exc:
            report.failures.append({"case": case, "input": format_input(g, [w]), "error": str(exc)})
        else:
            report.passed += 1
    return report
