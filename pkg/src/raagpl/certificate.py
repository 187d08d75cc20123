"""Certificate JSON and an independent re-checker.

``check_certificate`` re-derives everything it needs from the JSON alone.
It does not call the normal-form, decomposition or witness code: the word
problem is decided by a separate pile (heap-of-pieces) algorithm, generator
images are rebuilt in closed form, and supports are read off the breakpoint
lists. The only shared code is exact evaluation of a PL map at a point.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .decomp import CliqueDecomposition
from .errors import InputError, VerificationError
from .plmap import PLMap, evaluate, evaluate_inverse, format_rational, parse_rational
from .textio import graph_to_json, word_to_json
from .witness import Certificate

FORMAT = "raagpl-certificate/1"
SEPARATION_FORMAT = "raagpl-separation/1"


def decomposition_to_json(d: CliqueDecomposition) -> dict:
    return {
        "blocks": [{v: e for v, e in b.exponents} for b in d.blocks],
        "complexity": list(d.complexity()),
        "slides": d.slides,
    }


def _digest(obj: dict) -> str:
    body = {k: v for k, v in obj.items() if k != "digest"}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def seal(obj: dict) -> dict:
    """Recompute the digest field in place and return ``obj``."""
    obj["digest"] = _digest(obj)
    return obj


def certificate_to_json(cert: Certificate) -> dict:
    wit = cert.witness
    q = format_rational
    obj = {
        "format": FORMAT,
        "graph": graph_to_json(wit.graph),
        "word": word_to_json(wit.element),
        "k": wit.k,
        "decomposition": decomposition_to_json(wit.decomposition),
        "spine": [{"v": v, "sign": s, "n": n} for v, s, n in wit.spine.picks],
        "images": {v: f.to_json() for v, f in wit.images},
        "test_point": q(cert.test_point),
        "image": q(cert.image),
        "target_interval": [q(cert.target_interval[0]), q(cert.target_interval[1])],
        "stage_trace": [{"stage": l, "in": q(a), "out": q(b)} for l, a, b in cert.stage_trace],
        "verified": True,
    }
    return seal(obj)


def separation_to_json(certs) -> dict:
    obj = {
        "format": SEPARATION_FORMAT,
        "certificates": [certificate_to_json(c) for c in certs],
        "verified": True,
    }
    return seal(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# independent re-checker


def _fail(msg, **detail):
    raise VerificationError(msg, detail=detail)


class _Pres:
    """Commutation data read straight from the certificate."""

    def __init__(self, gobj):
        if not isinstance(gobj, dict):
            _fail("graph must be an object")
        verts = gobj.get("vertices")
        edges = gobj.get("edges")
        if not isinstance(verts, list) or not isinstance(edges, list):
            _fail("graph needs 'vertices' and 'edges' lists")
        if len(set(verts)) != len(verts) or not all(isinstance(v, str) and v for v in verts):
            _fail("graph vertices must be distinct nonempty strings")
        self.vertices = verts
        self.rank = {v: i for i, v in enumerate(verts)}
        self.adj = {v: set() for v in verts}
        for e in edges:
            if not (isinstance(e, list) and len(e) == 2 and e[0] in self.adj and e[1] in self.adj and e[0] != e[1]):
                _fail(f"bad edge {e!r}")
            self.adj[e[0]].add(e[1])
            self.adj[e[1]].add(e[0])

    def commute(self, u, v):
        return u == v or v in self.adj[u]

    def piles(self, letters):
        """Pile normal form and the number of cancellations while stacking."""
        piles = {v: [] for v in self.vertices}
        cancels = 0
        for v, s in letters:
            blockers = [u for u in self.vertices if u != v and v not in self.adj[u]]
            if piles[v] and piles[v][-1] == -s:
                piles[v].pop()
                for u in blockers:
                    piles[u].pop()
                cancels += 1
            else:
                piles[v].append(s)
                for u in blockers:
                    piles[u].append(0)
        return piles, cancels

    def key(self, letter):
        return (self.rank[letter[0]], 0 if letter[1] > 0 else 1)

    def is_lex_normal(self, letters):
        for p, x in enumerate(letters):
            for q in range(p - 1, -1, -1):
                y = letters[q]
                if y[0] == x[0] or not self.commute(x[0], y[0]):
                    break
                if self.key(x) < self.key(y):
                    return False
        return True


def _q(s, what):
    try:
        return parse_rational(s)
    except InputError:
        _fail(f"{what}: bad rational {s!r}")


def _rho_pattern(j, sign):
    # rho0 and its inverse as kink lists, shifted onto [j, j + 3/2]
    xs = [Fraction(0), Fraction(1, 4), Fraction(3, 2)]
    ys = [Fraction(0), Fraction(5, 4), Fraction(3, 2)]
    if sign < 0:
        xs, ys = ys, xs
    return [x + j for x in xs], [y + j for y in ys]


def _pl_support(bp, val):
    out = []
    for i in range(len(bp) - 1):
        if val[i] == bp[i] and val[i + 1] == bp[i + 1]:
            continue
        if out and out[-1][1] >= bp[i]:
            out[-1][1] = bp[i + 1]
        else:
            out.append([bp[i], bp[i + 1]])
    return out


def _apply(images, letters, x):
    for v, s in reversed(letters):
        f = images[v]
        x = evaluate(f, x) if s > 0 else evaluate_inverse(f, x)
    return x


def _as_int(x, what):
    if not isinstance(x, int) or isinstance(x, bool):
        _fail(f"{what} must be an integer")
    return x


def check_certificate(obj) -> Fraction:
    """Re-check a certificate object; returns the certified image point.

    Raises :class:`VerificationError` on the first failed assertion.
    """
    if not isinstance(obj, dict):
        _fail("certificate must be a JSON object")
    if obj.get("format") != FORMAT:
        _fail(f"unknown format {obj.get('format')!r}")
    if obj.get("verified") is not True:
        _fail("'verified' flag is not true")
    if obj.get("digest") != _digest(obj):
        _fail("digest mismatch")

    pres = _Pres(obj.get("graph"))

    raw_word = obj.get("word")
    if not isinstance(raw_word, list):
        _fail("word must be a list")
    letters = []
    for d in raw_word:
        if not (isinstance(d, dict) and d.get("v") in pres.rank and d.get("s") in (1, -1)) or isinstance(d.get("s"), bool):
            _fail(f"bad letter {d!r}")
        letters.append((d["v"], d["s"]))
    if not letters:
        _fail("word is empty")
    word_piles, cancels = pres.piles(letters)
    if cancels:
        _fail("word is not reduced")
    if not pres.is_lex_normal(letters):
        _fail("word is not in lexicographic normal form")

    k = _as_int(obj.get("k"), "k")
    dec = obj.get("decomposition")
    if not isinstance(dec, dict) or not isinstance(dec.get("blocks"), list):
        _fail("decomposition needs a 'blocks' list")
    blocks = dec["blocks"]
    if len(blocks) != k or k < 1:
        _fail("k does not match the number of blocks", k=k, blocks=len(blocks))
    block_words = []
    for b in blocks:
        if not isinstance(b, dict) or not b:
            _fail("blocks must be nonempty objects")
        items = []
        for v, e in b.items():
            if v not in pres.rank or _as_int(e, "exponent") == 0:
                _fail(f"bad block entry {v!r}: {e!r}")
            items.append((v, e))
        if [v for v, _ in items] != sorted((v for v, _ in items), key=pres.rank.__getitem__):
            _fail("block entries out of declaration order")
        for i, (u, _) in enumerate(items):
            for v, _ in items[i + 1 :]:
                if v not in pres.adj[u]:
                    _fail(f"block support {u},{v} is not a clique")
        block_words.append([(v, 1 if e > 0 else -1) for v, e in items for _ in range(abs(e))])
    if dec.get("complexity") != [len(bw) for bw in block_words]:
        _fail("complexity tuple does not match the blocks")
    slides = dec.get("slides")
    n = len(letters)
    if _as_int(slides, "slides") < 0 or slides > n * (n - 1) // 2:
        _fail("slide count out of range")
    concat = [x for bw in block_words for x in bw]
    cat_piles, cat_cancels = pres.piles(concat)
    if cat_cancels or len(concat) != n:
        _fail("concatenation of the blocks is not reduced")
    if cat_piles != word_piles:
        _fail("blocks do not multiply to the word")
    # w_1 is the last block; check left-greedy on neighbours (w_i, w_(i+1))
    supp = [set(b) for b in reversed(blocks)]
    for i in range(k - 1):
        for v in supp[i]:
            if all(pres.commute(v, u) for u in supp[i + 1]):
                _fail(f"not left-greedy: {v} commutes with all of w_{i + 2}")

    spine = obj.get("spine")
    if not isinstance(spine, list) or len(spine) != k:
        _fail("spine must list one pick per block")
    picks = []
    prev = None
    for i, p in enumerate(spine, start=1):
        if not isinstance(p, dict):
            _fail("bad spine entry")
        v, s, m = p.get("v"), p.get("sign"), p.get("n")
        block = blocks[k - i]
        if v not in block:
            _fail(f"spine vertex v_{i} not in supp(w_{i})")
        if s not in (1, -1) or isinstance(s, bool) or _as_int(m, "n") <= 0 or s * m != block[v]:
            _fail(f"spine entry {i} does not record the power of {v} in w_{i}")
        allowed = [u for u in block if prev is None or not pres.commute(prev, u)]
        if not allowed or v != min(allowed, key=pres.rank.__getitem__):
            _fail(f"spine entry {i} is not the least admissible vertex")
        picks.append((v, s))
        prev = v

    images_obj = obj.get("images")
    if not isinstance(images_obj, dict) or set(images_obj) != set(pres.vertices):
        _fail("images must cover exactly the vertices")
    images = {}
    for v in pres.vertices:
        f = images_obj[v]
        if not isinstance(f, dict) or set(f) != {"bp", "val"}:
            _fail(f"bad image for {v}")
        bp = [_q(s, f"image {v}") for s in f["bp"]]
        val = [_q(s, f"image {v}") for s in f["val"]]
        xs, ys = [], []
        for j, (u, s) in enumerate(picks, start=1):
            if u == v:
                px, py = _rho_pattern(j, s)
                xs += px
                ys += py
        if bp != xs or val != ys:
            _fail(f"image of {v} is not the product of its rho factors")
        images[v] = PLMap._trusted(bp, val)
    supports = {v: _pl_support(images[v].breakpoints, images[v].values) for v in pres.vertices}
    for u in pres.vertices:
        for v in pres.adj[u]:
            for a in supports[u]:
                for b in supports[v]:
                    if a[0] <= b[1] and b[0] <= a[1]:
                        _fail(f"images of adjacent {u},{v} have overlapping supports")

    x = _q(obj.get("test_point"), "test_point")
    if x != Fraction(5, 4):
        _fail("test point must be 5/4")
    trace = obj.get("stage_trace")
    if not isinstance(trace, list) or len(trace) != k:
        _fail("stage trace must have k entries")
    for l, entry in enumerate(trace, start=1):
        if not isinstance(entry, dict) or entry.get("stage") != l:
            _fail(f"stage trace entry {l} malformed")
        a, b = _q(entry.get("in"), "trace"), _q(entry.get("out"), "trace")
        if a != x:
            _fail(f"stage {l} input {a} does not continue the trace", stage=l)
        y = _apply(images, block_words[k - l], x)
        if y != b:
            _fail(f"stage {l} output recorded {b}, recomputed {y}", stage=l)
        if not l + Fraction(5, 4) <= y <= l + Fraction(3, 2):
            _fail(f"stage {l} output {y} outside its interval", stage=l)
        x = y
    image = _q(obj.get("image"), "image")
    target = obj.get("target_interval")
    if not isinstance(target, list) or len(target) != 2:
        _fail("target interval must be a pair")
    lo, hi = _q(target[0], "target"), _q(target[1], "target")
    if (lo, hi) != (k + Fraction(5, 4), k + Fraction(3, 2)):
        _fail("target interval is not [k+5/4, k+3/2]")
    whole = _apply(images, letters, Fraction(5, 4))
    if not image == x == whole:
        _fail(f"image {image} disagrees with recomputation {whole}")
    if not lo <= image <= hi or lo <= Fraction(5, 4) <= hi:
        _fail("image does not certify nontriviality")
    return image


def check_document(obj) -> list[Fraction]:
    """Check a single certificate or a separation bundle."""
    if isinstance(obj, dict) and obj.get("format") == SEPARATION_FORMAT:
        if obj.get("verified") is not True or obj.get("digest") != _digest(obj):
            _fail("separation bundle flag or digest mismatch")
        certs = obj.get("certificates")
        if not isinstance(certs, list) or not certs:
            _fail("separation bundle has no certificates")
        return [check_certificate(c) for c in certs]
    return [check_certificate(obj)]
