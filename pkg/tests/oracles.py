"""Independent reference computations used by the tests.

Nothing here imports the elimination or complex-building code under test:
ranks are dense Gaussian elimination over Fraction (or ints mod p), and the
small bar complex is enumerated from a multiplication table by hand.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction


def dense_rank(rows: list[list], p: int | None = None) -> int:
    """Schoolbook rank; ``p`` selects arithmetic mod p."""
    if p is None:
        m = [[Fraction(x) for x in r] for r in rows]
    else:
        m = [[int(x) % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = (1 / m[rank][c]) if p is None else pow(m[rank][c], -1, p)
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [(a - f * b) if p is None else (a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def dense_homology(dims: dict[int, int], mats: dict[int, list[list]], p: int | None = None) -> dict[int, int]:
    """Homology of a cochain complex given by dense matrices d_k: C^k -> C^{k+1}."""
    rk = {k: dense_rank(m, p) if m and m[0] else 0 for k, m in mats.items()}
    out = {}
    for k, n in dims.items():
        h = n - rk.get(k, 0) - rk.get(k - 1, 0)
        if h:
            out[k] = h
    return out


def random_complex(rng: random.Random, p: int | None = None, max_len: int = 4, max_block: int = 3):
    """A random cochain complex with known homology.

    Built as a sum of pieces K (homology) and K -> K (acyclic), then
    conjugated degreewise by random unitriangular changes of basis.
    Returns (dims, dense matrices, expected homology).
    """
    lo = rng.randint(-2, 1)
    n = rng.randint(1, max_len)
    degs = list(range(lo, lo + n))
    free = {k: rng.randint(0, max_block) for k in degs}
    pairs = {k: rng.randint(0, max_block) for k in degs[:-1]}
    # basis in degree k: free generators, then targets of pairs from k-1, then sources of pairs to k+1
    dims = {k: free[k] + pairs.get(k - 1, 0) + pairs.get(k, 0) for k in degs}
    mats = {}
    for k in degs[:-1]:
        rows, cols = dims[k + 1], dims[k]
        m = [[0] * cols for _ in range(rows)]
        src0 = free[k] + pairs.get(k - 1, 0)
        tgt0 = free[k + 1]
        for i in range(pairs[k]):
            m[tgt0 + i][src0 + i] = 1
        mats[k] = m

    def unitri(size):
        u = [[int(i == j) for j in range(size)] for i in range(size)]
        for i, j in itertools.product(range(size), repeat=2):
            if i < j:
                u[i][j] = rng.randint(-2, 2)
        perm = list(range(size))
        rng.shuffle(perm)
        return [u[perm[i]] for i in range(size)], [[int(perm[j] == i) for j in range(size)] for i in range(size)]

    def mul(a, b):
        if not a or not b or not b[0]:
            return [[0] * (len(b[0]) if b else 0) for _ in range(len(a))]
        return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]

    def inverse_unitri(u_rows, size):
        # u = P U with U unit upper triangular; invert by Fraction elimination
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(size)] for i, r in enumerate(u_rows)]
        for c in range(size):
            piv = next(r for r in range(c, size) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for r in range(size):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return [[int(x) for x in r[size:]] for r in aug]

    change = {}
    for k in degs:
        u, _ = unitri(dims[k])
        change[k] = (u, inverse_unitri(u, dims[k]) if dims[k] else [])
    conj = {}
    for k, m in mats.items():
        u_next = change[k + 1][0]
        u_inv = change[k][1]
        conj[k] = mul(mul(u_next, m), u_inv) if dims[k] and dims[k + 1] else m
        if p is not None:
            conj[k] = [[x % p for x in r] for r in conj[k]]
    expected = {k: v for k, v in free.items() if v}
    return dims, conj, expected


def brute_bar_one_object(qdeg: int, p: int, field_p: int | None = None) -> dict[int, int]:
    """Bar homology of B = K e + K q (q.q = 0, |q| = qdeg), one object, truncated at weight p.

    Letters are strings like 't2q' (weight 2, generator q).  D_+ has no
    weight-zero letters here because A = K e.  Signs are written out from
    the package conventions: mu^2(a2, a1) = (-1)^|a1| a2 a1, with the sign
    (-1)^(sum of reduced degrees right of the block) in the differential,
    and mu^0 = t e inserted into every gap.
    """
    letters = [(w, g) for w in range(1, p + 1) for g in ("e", "q")]
    deg = {"e": 0, "q": qdeg}

    def red(l):
        return deg[l[1]] + 2 * l[0] - 1

    words = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for wd in frontier:
            used = sum(l[0] for l in wd)
            for l in letters:
                if used + l[0] <= p:
                    nxt.append(wd + (l,))
        words += nxt
        frontier = nxt

    def product(x2, x1):
        # associative product then the mu^2 sign
        g2, g1 = x2[1], x1[1]
        if g2 == "q" and g1 == "q":
            return None
        g = "q" if "q" in (g1, g2) else "e"
        sign = -1 if deg[g1] % 2 else 1
        return (x2[0] + x1[0], g), sign

    # words stored with x_1 (first to act) at index 0
    def diff(wd):
        out = []
        n = len(wd)
        for i in range(n - 1):
            pre = sum(red(l) for l in wd[:i]) % 2
            r = product(wd[i + 1], wd[i])
            if r is None:
                continue
            (lt, s) = r
            if lt[0] > p:
                continue
            out.append((wd[:i] + (lt,) + wd[i + 2:], s * (-1 if pre else 1)))
        if sum(l[0] for l in wd) + 1 <= p:
            for i in range(n + 1):
                pre = sum(red(l) for l in wd[:i]) % 2
                out.append((wd[:i] + ((1, "e"),) + wd[i:], -1 if pre else 1))
        return out

    by_deg: dict[int, list] = {}
    for wd in words:
        by_deg.setdefault(sum(red(l) for l in wd), []).append(wd)
    index = {wd: (k, i) for k, ws in by_deg.items() for i, wd in enumerate(ws)}
    mats = {}
    for k, ws in by_deg.items():
        rows = len(by_deg.get(k + 1, []))
        m = [[0] * len(ws) for _ in range(rows)]
        for c, wd in enumerate(ws):
            for t, s in diff(wd):
                kk, r = index[t]
                assert kk == k + 1
                m[r][c] += s
        mats[k] = m
    return dense_homology({k: len(v) for k, v in by_deg.items()}, mats, field_p)
