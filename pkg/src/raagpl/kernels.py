"""Integer kernels for exhaustive certificate sweeps.

These mirror the exact construction in :mod:`raagpl.witness` on small
integer encodings, so that every group element up to a given length can be
certified in bulk:

* a letter is ``2*vertex + (0 if positive else 1)``, which is also its rank
  in the normal-form order;
* the graph is a per-vertex neighbour bitmask (at most 62 vertices);
* points of the line are int64 fractions ``num/den`` kept in lowest terms.
  Every denominator is ``4 * 5**m`` with ``m`` at most the word length, so
  words up to length 20 stay far from overflow.

The slide order, spine choice and test point are the same as the library's,
so ``k`` and the final image agree bit for bit (tests check this).
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

OK = 0
NOT_LEFT_GREEDY = 1
NO_SPINE = 2
STAGE_ESCAPE = 3
TOO_MANY_SLIDES = 4

_CHECK_MOD = 1_000_000_007

__all__ = [
    "HAVE_NUMBA",
    "OK",
    "adjacency_masks",
    "certify_word",
    "certify_batch",
    "encode_word",
    "can_append",
    "sweep_graph",
]


def adjacency_masks(g):
    """Neighbour bitmasks for a :class:`~raagpl.graph.Graph`."""
    n = len(g.vertices)
    adj = np.zeros(max(n, 1), dtype=np.int64)
    for u, v in g.sorted_edges():
        i, j = g.index(u), g.index(v)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return adj


def encode_word(g, w):
    return np.array([2 * g.index(x.vertex) + (0 if x.sign > 0 else 1) for x in w], dtype=np.int64)


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _apply_rho(num, den, j, sign):
    """Apply ``rho_j`` (sign +1) or its inverse (sign -1) to ``num/den``."""
    jd = j * den
    # support [j, j + 3/2]; endpoints are fixed
    if num <= jd or 2 * num >= (2 * j + 3) * den:
        return num, den
    if sign > 0:
        if 4 * (num - jd) < den:
            a, b = 5 * num - 4 * jd, den
        else:
            a, b = num + 4 * jd + 6 * den, 5 * den
    else:
        if 4 * (num - jd) < 5 * den:
            a, b = num + 4 * jd, 5 * den
        else:
            a, b = 5 * num - 4 * jd - 6 * den, den
    g = _gcd(a, b)
    return a // g, b // g


@njit(cache=True)
def can_append(w, length, x, adj):
    """True iff ``w[:length] + [x]`` is again a lex normal form, given that
    ``w[:length]`` is one."""
    vx = x >> 1
    for q in range(length - 1, -1, -1):
        y = w[q]
        vy = y >> 1
        if vy == vx:
            return y == x  # opposite letter cancels; equal letter blocks
        if (adj[vx] >> vy) & 1 == 0:
            return True
        if x < y:
            return False
    return True


@njit(cache=True)
def certify_word(w, length, adj, n, blk, picks_v, picks_s):
    """Certify one reduced word.

    ``blk`` (at least ``length x n``), ``picks_v`` and ``picks_s`` (at least
    ``length``) are scratch space. Returns ``(status, k, num, den, slides)``.
    """
    k = length
    for p in range(length):
        for v in range(n):
            blk[p, v] = 0
        x = w[p]
        blk[p, x >> 1] = 1 if (x & 1) == 0 else -1

    slides = 0
    moved = True
    while moved:
        moved = False
        for p in range(k - 1):
            tmask = 0
            for v in range(n):
                if blk[p, v] != 0:
                    tmask |= 1 << v
            for v in range(n):
                e = blk[p + 1, v]
                if e == 0:
                    continue
                if tmask & ~(adj[v] | (1 << v)) == 0:
                    s = 1 if e > 0 else -1
                    blk[p, v] += s
                    blk[p + 1, v] -= s
                    empty = True
                    for u in range(n):
                        if blk[p + 1, u] != 0:
                            empty = False
                            break
                    if empty:
                        for q in range(p + 1, k - 1):
                            for u in range(n):
                                blk[q, u] = blk[q + 1, u]
                        k -= 1
                    slides += 1
                    moved = True
                    break
            if moved:
                break
    if 2 * slides > length * (length - 1):
        return TOO_MANY_SLIDES, k, 0, 1, slides

    # left-greedy: every vertex of w_i fails to commute with something in w_(i+1)
    for p in range(1, k):
        lmask = 0
        for v in range(n):
            if blk[p - 1, v] != 0:
                lmask |= 1 << v
        for v in range(n):
            if blk[p, v] != 0 and lmask & ~(adj[v] | (1 << v)) == 0:
                return NOT_LEFT_GREEDY, k, 0, 1, slides

    # spine, w_1 first (w_i is row k - i)
    prev = -1
    for i in range(1, k + 1):
        p = k - i
        pick = -1
        for v in range(n):
            if blk[p, v] != 0 and (prev < 0 or (v != prev and (adj[prev] >> v) & 1 == 0)):
                pick = v
                break
        if pick < 0:
            return NO_SPINE, k, 0, 1, slides
        picks_v[i] = pick
        picks_s[i] = 1 if blk[p, pick] > 0 else -1
        prev = pick

    num = 5
    den = 4
    for l in range(1, k + 1):
        p = k - l
        # block word is in declaration order, so the last vertex acts first
        for v in range(n - 1, -1, -1):
            e = blk[p, v]
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                for j in range(1, k + 1):
                    if picks_v[j] == v and j * den <= num and 2 * num <= (2 * j + 3) * den:
                        num, den = _apply_rho(num, den, j, s * picks_s[j])
                        break
        if 4 * num < (4 * l + 5) * den or 2 * num > (2 * l + 3) * den:
            return STAGE_ESCAPE, k, num, den, slides
    return OK, k, num, den, slides


@njit(cache=True)
def certify_batch(words, lengths, adj, n):
    m = words.shape[0]
    cap = max(words.shape[1], 1)
    blk = np.zeros((cap, max(n, 1)), dtype=np.int64)
    pv = np.zeros(cap + 1, dtype=np.int64)
    ps = np.zeros(cap + 1, dtype=np.int64)
    status = np.zeros(m, dtype=np.int64)
    ks = np.zeros(m, dtype=np.int64)
    nums = np.zeros(m, dtype=np.int64)
    dens = np.zeros(m, dtype=np.int64)
    for r in range(m):
        st, k, a, b, _ = certify_word(words[r], lengths[r], adj, n, blk, pv, ps)
        status[r] = st
        ks[r] = k
        nums[r] = a
        dens[r] = b
    return status, ks, nums, dens


@njit(cache=True)
def sweep_graph(adj, n, max_len):
    """Certify every nontrivial element of length at most ``max_len``.

    Elements are enumerated through their lex normal forms by depth-first
    search. Returns ``(counts, failures, first_failure, checksum)`` where
    ``counts[L]`` is the number of elements of length ``L`` and
    ``first_failure`` holds the letters of the first failing word (-1 padded).
    """
    counts = np.zeros(max_len + 1, dtype=np.int64)
    counts[0] = 1
    first_failure = -np.ones(max_len, dtype=np.int64)
    failures = 0
    checksum = 0
    if n == 0 or max_len == 0:
        return counts, failures, first_failure, checksum
    w = np.zeros(max_len, dtype=np.int64)
    nxt = np.zeros(max_len + 1, dtype=np.int64)
    blk = np.zeros((max_len, n), dtype=np.int64)
    pv = np.zeros(max_len + 1, dtype=np.int64)
    ps = np.zeros(max_len + 1, dtype=np.int64)
    depth = 0
    while depth >= 0:
        if depth == max_len or nxt[depth] == 2 * n:
            depth -= 1
            continue
        x = nxt[depth]
        nxt[depth] += 1
        if not can_append(w, depth, x, adj):
            continue
        w[depth] = x
        st, k, a, b, _ = certify_word(w, depth + 1, adj, n, blk, pv, ps)
        counts[depth + 1] += 1
        checksum = (checksum * 1000003 + k * 7919 + a % _CHECK_MOD + 31 * (b % _CHECK_MOD)) % _CHECK_MOD
        if st != OK:
            if failures == 0:
                for q in range(depth + 1):
                    first_failure[q] = w[q]
            failures += 1
        depth += 1
        nxt[depth] = 0
    return counts, failures, first_failure, checksum
