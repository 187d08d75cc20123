import os
import random
import subprocess
import sys
from fractions import Fraction as Q

import numpy as np
import pytest

from raagpl.kernels import OK, adjacency_masks, can_append, certify_batch, encode_word, sweep_graph
from raagpl.sweep import random_graph, random_word
from raagpl.witness import build_witness, verify_witness
from raagpl.words import reduce

from oracles import encode, graphs_up_to_isomorphism, growth_counts, labelled_graphs, normal_form_table


def kernel_certify(g, elements):
    width = max((len(e) for e in elements), default=1) or 1
    words = np.zeros((len(elements), width), dtype=np.int64)
    for r, e in enumerate(elements):
        words[r, : len(e)] = encode_word(g, e)
    lengths = np.array([len(e) for e in elements], dtype=np.int64)
    return certify_batch(words, lengths, adjacency_masks(g), len(g.vertices))


def test_kernel_matches_library_bit_exact():
    rng = random.Random(11)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 6))
        elements = [reduce(g, random_word(rng, g, rng.randint(1, 16))) for _ in range(5)]
        elements = [e for e in elements if e]
        if not elements:
            continue
        status, ks, nums, dens = kernel_certify(g, elements)
        for e, st, k, a, b in zip(elements, status, ks, nums, dens):
            cert = verify_witness(build_witness(g, e))
            assert st == OK
            assert (k, Q(int(a), int(b))) == (cert.witness.k, cert.image)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_can_append_enumerates_normal_forms(n):
    for g in labelled_graphs(n):
        forms = set(normal_form_table(g, 4).values())
        adj = adjacency_masks(g)
        buf = np.zeros(4, dtype=np.int64)
        for nf in forms:
            if len(nf) == 4:
                continue
            buf[: len(nf)] = nf
            for x in range(2 * n):
                assert bool(can_append(buf, len(nf), x, adj)) == ((*nf, x) in forms)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_sweep_counts_match_growth_series(n):
    for g in graphs_up_to_isomorphism(n):
        counts, failures, first, _ = sweep_graph(adjacency_masks(g), len(g.vertices), 5)
        assert failures == 0, first
        assert list(counts) == growth_counts(g, 5)


def test_sweep_counts_match_table():
    for g in labelled_graphs(3):
        table = normal_form_table(g, 4)
        by_len = [0] * 5
        for nf in set(table.values()):
            by_len[len(nf)] += 1
        counts, _, _, _ = sweep_graph(adjacency_masks(g), 3, 4)
        assert list(counts) == by_len


def test_library_encoding_agrees_with_oracle(path3):
    w = reduce(path3, random_word(random.Random(3), path3, 9))
    assert tuple(encode_word(path3, w)) == encode(path3, w)


_SCRIPT = """
import sys
sys.path.insert(0, {tests!r})
from oracles import graphs_up_to_isomorphism
from raagpl._accel import HAVE_NUMBA
from raagpl.kernels import adjacency_masks, sweep_graph
total = 0
for g in graphs_up_to_isomorphism(3):
    c, f, _, s = sweep_graph(adjacency_masks(g), len(g.vertices), 4)
    total = (total * 31 + s + f * 10**12) % (1 << 61)
print(int(HAVE_NUMBA), total)
"""


def _run(disable):
    env = dict(os.environ, RAAGPL_DISABLE_NUMBA="1" if disable else "0")
    code = _SCRIPT.format(tests=os.path.dirname(__file__))
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return res.stdout.split()


def test_fallback_path_agrees():
    compiled, fallback = _run(False), _run(True)
    assert fallback[0] == "0"
    assert compiled[1] == fallback[1]
