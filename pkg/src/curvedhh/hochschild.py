"""The curved category D = A + tB[[t]] with mu^0 = t e, and its cyclic bar complexes.

Words are stored leftmost-first, ``(x_n, ..., x_0)``, and each letter is a
single integer ``code = weight * n_gens + gen`` where ``gen`` indexes the
generators of B.  ``x_i`` runs from object j_i to j_{i+1}, ``x_n`` closes the
cycle back to j_0.

Cohomological degree of a word: |x_n| + sum_{i<n} (|x_i| - 1), where a letter
t^w g has degree |g| + 2w.  Everything is computed cohomologically; tables
are negated to homological degrees only for display.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .ainfty import AInftyCategory, CategoryError, directed_subcategory
from .linalg import Field, FiniteChainComplex, InvalidComplexError, SparseMatrix, homology_dims, nullspace, rank

log = logging.getLogger(__name__)


class ConventionViolation(RuntimeError):
    """A constructed differential fails d o d = 0 (or a derived identity)."""

    def __init__(self, message: str, word=None):
        self.word = word
        super().__init__(message)


def over_field(cat: AInftyCategory, field: Field) -> AInftyCategory:
    if field == cat.field:
        return cat
    if cat.field.p is not None and cat.field != field:
        raise CategoryError(f"category is defined over {cat.field}; cannot move it to {field}")
    table = {k: {o: field(c) for o, c in v.items()} for k, v in cat.mu.items()}
    return AInftyCategory(cat.objects, cat.gens, table, dict(cat.units) if cat.units else None, field)


@dataclass
class CurvedCategory:
    """The pair A in B, t-adically truncated at weight ``P``, with mu^0 = t e_j."""

    a: AInftyCategory
    b: AInftyCategory
    P: int
    field: Field
    in_a: frozenset = dc_field(default=frozenset())
    a_plus: frozenset = dc_field(default=frozenset())
    units: dict = dc_field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.b.m

    @property
    def ngens(self) -> int:
        return len(self.b.gens)

    # letter helpers
    def code(self, gen: int, weight: int) -> int:
        return weight * self.ngens + gen

    def decode(self, code: int) -> tuple[int, int]:
        w, g = divmod(code, self.ngens)
        return g, w

    def letter_name(self, code: int) -> str:
        g, w = self.decode(code)
        name = self.b.gens[g].name
        return name if w == 0 else (f"t{name}" if w == 1 else f"t^{w}{name}")

    def word_name(self, word: Sequence[int]) -> str:
        return "(" + ", ".join(self.letter_name(c) for c in word) + ")"

    def generator_counts(self) -> dict[int, dict[str, int]]:
        """Basis sizes of D per t-weight: weight 0 is A, weights >= 1 are copies of B."""
        out = {0: {"all": len(self.in_a), "plus": len(self.a_plus)}}
        for w in range(1, self.P + 1):
            out[w] = {"all": self.ngens, "plus": self.ngens}
        return out


def build_curved(a: AInftyCategory | None, b: AInftyCategory, P: int, field: Field | None = None) -> CurvedCategory:
    """Curved category D truncated at t-weight ``P``.

    ``a`` must be the directed subcategory of ``b`` (pass ``None`` to compute
    it).  Generators of A are matched to those of B by name.
    """
    if P < 0:
        raise ValueError("truncation level must be >= 0")
    if not b.is_unital and b.m:
        raise CategoryError("B must be strictly unital")
    field = b.field if field is None else field
    if a is None:
        a = directed_subcategory(b) if b.m else b
    if a.objects != b.objects:
        raise CategoryError("A and B must have the same objects")
    expected = directed_subcategory(b) if b.m else b
    if {g.name for g in a.gens} != {g.name for g in expected.gens}:
        raise CategoryError("A is not the directed subcategory of B")
    in_a = frozenset(b.index(g.name) for g in a.gens)
    units = dict(b.units) if b.units else {}
    unit_set = set(units.values())
    a_plus = frozenset(g for g in in_a if g not in unit_set)
    b = over_field(b, field)
    return CurvedCategory(a, b, P, field, in_a, a_plus, units)


# ---------------------------------------------------------------------------
# word enumeration


class _Letters:
    """Per-code lookup tables for a curved category up to weight p."""

    def __init__(self, d: CurvedCategory, p: int):
        b = d.b
        n = d.ngens
        self.n = n
        self.p = p
        self.src = {}
        self.tgt = {}
        self.red = {}
        self.weight = {}
        self.gen = {}
        for w in range(p + 1):
            for g, gen in enumerate(b.gens):
                c = w * n + g
                self.src[c] = gen.src
                self.tgt[c] = gen.tgt
                self.red[c] = gen.degree + 2 * w - 1
                self.weight[c] = w
                self.gen[c] = g
        unit_set = set(d.units.values())
        self.unit_codes0 = frozenset(unit_set)
        # leftmost: weight 0 from A (units allowed), higher weights from B
        self.lead_from: dict[int, list[int]] = {}
        # interior (D_+): weight 0 from A_+, higher weights from B
        self.inner_from: dict[int, list[int]] = {}
        for c in sorted(self.src):
            g, w = self.gen[c], self.weight[c]
            if w == 0 and g not in d.in_a:
                continue
            self.lead_from.setdefault(self.src[c], []).append(c)
            if w == 0 and g not in d.a_plus:
                continue
            self.inner_from.setdefault(self.src[c], []).append(c)
        self.unit_at = {obj: u + 0 for obj, u in d.units.items()}  # weight 0 unit code
        self.t_unit_at = {obj: n + u for obj, u in d.units.items()}  # t e_obj

    def degree(self, word: Sequence[int]) -> int:
        return sum(self.red[c] for c in word) + 1


def enumerate_cyclic_words(d: CurvedCategory, p: int, exact_weight: int | None = None,
                           lead_weight_min: int = 0, connes: bool = False) -> list[tuple[int, ...]]:
    """All reduced cyclic words of total t-weight <= p (or == exact_weight).

    ``connes=True`` restricts the leftmost slot to D_+ as well (used by the
    cyclic complex); ``lead_weight_min`` forces a minimum weight on it.
    """
    if p > d.P:
        raise ValueError(f"p = {p} exceeds the truncation level {d.P}")
    if d.m == 0:
        return []
    L = _Letters(d, p)
    out = []
    top = p if exact_weight is None else exact_weight
    lead_table = L.inner_from if connes else L.lead_from
    for obj in range(d.m):
        for lead in lead_table.get(obj, []):
            lw = L.weight[lead]
            if lw > top or lw < lead_weight_min:
                continue
            start = L.tgt[lead]
            goal = L.src[lead]
            interior: list[int] = []

            def extend(obj_now: int, budget: int):
                if obj_now == goal and (exact_weight is None or budget == 0):
                    out.append((lead,) + tuple(reversed(interior)))
                for c in L.inner_from.get(obj_now, []):
                    w = L.weight[c]
                    if w > budget:
                        continue
                    interior.append(c)
                    extend(L.tgt[c], budget - w)
                    interior.pop()

            extend(start, top - lw)
    return out


def word_weight(d: CurvedCategory, word: Sequence[int]) -> int:
    return sum(c // d.ngens for c in word)


def word_degree(d: CurvedCategory, word: Sequence[int]) -> int:
    n = d.ngens
    tot = 0
    for c in word:
        w, g = divmod(c, n)
        tot += d.b.gens[g].degree + 2 * w - 1
    return tot + 1


# ---------------------------------------------------------------------------
# the Hochschild differential


def _terms(d: CurvedCategory, L: _Letters, word: tuple[int, ...], p: int,
           with_d1=True, with_d2=True, with_d3=True):
    """Yield (target word, coefficient, kind) for b = d1 + d2 + d3 applied to ``word``.

    kind is 0 for the weight preserving part (d1, d2) and 3 for the insertion.
    """
    f = d.field
    mu = d.b.mu
    ngen = L.n
    X = word[::-1]  # X[i] = x_i
    n = len(X) - 1
    red = [L.red[c] for c in X]
    wts = [c // ngen for c in X]
    gens = [c % ngen for c in X]
    prefix = [0]
    for r in red:
        prefix.append(prefix[-1] + r)
    total_red = prefix[-1]
    unit0 = L.unit_codes0
    if with_d1:
        for i in range(n + 1):
            sgn = prefix[i] & 1
            wsum = 0
            for j in range(1, n - i + 2):
                wsum += wts[i + j - 1]
                key = tuple(gens[i + j - 1 - k] for k in range(j))
                out = mu.get(key)
                if not out:
                    continue
                lead = i + j - 1 == n
                for g, c in out.items():
                    if not lead and wsum == 0 and g in unit0:
                        continue
                    new = X[:i] + (wsum * ngen + g,) + X[i + j:]
                    yield new[::-1], (f.neg(c) if sgn else c), 0
    if with_d2:
        for i in range(1, n + 1):
            left = prefix[i]
            right = total_red - left
            base = (left * right) & 1
            for j in range(0, n - i + 1):
                seq = X[i + j:] + X[:i]  # a_1 first
                key = tuple(c % ngen for c in reversed(seq))
                out = mu.get(key)
                if not out:
                    continue
                wsum = sum(c // ngen for c in seq)
                sgn = (base + prefix[i + j] - prefix[i]) & 1
                rest = X[i:i + j]
                for g, c in out.items():
                    new = rest + (wsum * ngen + g,)
                    yield new[::-1], (f.neg(c) if sgn else c), 0
    if with_d3 and sum(wts) + 1 <= p:
        for i in range(n + 1):
            ins = L.t_unit_at[L.src[X[i]]]
            new = X[:i] + (ins,) + X[i:]
            yield new[::-1], (f.neg(1) if prefix[i] & 1 else f.one()), 3


@dataclass
class GradedBasis:
    """Words sorted into degrees, with lookup tables."""

    words: dict[int, list[tuple[int, ...]]]
    index: dict[tuple[int, ...], tuple[int, int]]

    @classmethod
    def from_words(cls, d: CurvedCategory, words: Iterable[tuple[int, ...]], degree_fn=None):
        degree_fn = degree_fn or (lambda w: word_degree(d, w))
        by_deg: dict[int, list] = {}
        for w in words:
            by_deg.setdefault(degree_fn(w), []).append(w)
        for k in by_deg:
            by_deg[k].sort()
        index = {w: (k, i) for k, ws in by_deg.items() for i, w in enumerate(ws)}
        return cls(dict(sorted(by_deg.items())), index)

    def dims(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.words.items()}


def _assemble(d: CurvedCategory, basis: GradedBasis, column_terms, field: Field,
              strict: bool = True) -> dict[int, SparseMatrix]:
    """Accumulate matrices from ``column_terms(word) -> iterable of (target, coef)``."""
    acc: dict[int, dict[tuple[int, int], object]] = {}
    for k, ws in basis.words.items():
        slot = acc.setdefault(k, {})
        for col, w in enumerate(ws):
            for tgt, coef in column_terms(w):
                loc = basis.index.get(tgt)
                if loc is None:
                    if strict:
                        raise ConventionViolation(
                            f"differential leaves the basis: {d.word_name(w)} -> {d.word_name(tgt)}", tgt)
                    continue
                if loc[0] != k + 1:
                    raise ConventionViolation(
                        f"differential of {d.word_name(w)} lands in degree {loc[0]}, expected {k + 1}", w)
                key = (loc[1], col)
                slot[key] = field.add(slot.get(key, 0), coef)
    mats = {}
    for k, entries in acc.items():
        rows = len(basis.words.get(k + 1, []))
        cols = len(basis.words[k])
        mats[k] = SparseMatrix(rows, cols, field, entries)
    return mats


@dataclass
class HochschildComplex:
    """C-bar / F^{p+1} with its differential split into weight-preserving and d3 parts."""

    curved: CurvedCategory
    p: int
    basis: GradedBasis
    d0: dict[int, SparseMatrix]
    d3: dict[int, SparseMatrix]

    @property
    def field(self) -> Field:
        return self.curved.field

    def complex(self) -> FiniteChainComplex:
        diffs = {}
        for k in set(self.d0) | set(self.d3):
            a = self.d0.get(k)
            b = self.d3.get(k)
            if a is None:
                diffs[k] = b
            elif b is None:
                diffs[k] = a
            else:
                f = self.field
                e = dict(a.entries)
                for key, v in b.entries.items():
                    e[key] = f.add(e.get(key, 0), v)
                diffs[k] = SparseMatrix(a.rows, a.cols, f, e)
        return FiniteChainComplex(self.basis.dims(), diffs, self.field, self.basis.words)

    def weights(self, k: int) -> list[int]:
        return [word_weight(self.curved, w) for w in self.basis.words.get(k, [])]


def hochschild_differential(d: CurvedCategory, p: int, check: bool = True) -> HochschildComplex:
    """Assemble b = d1 + d2 + d3 on reduced cyclic words of weight <= p."""
    if p > d.P:
        raise ValueError(f"p = {p} exceeds the truncation level {d.P}")
    words = enumerate_cyclic_words(d, p)
    basis = GradedBasis.from_words(d, words)
    L = _Letters(d, p)
    f = d.field
    acc0: dict[int, dict] = {}
    acc3: dict[int, dict] = {}
    for k, ws in basis.words.items():
        s0 = acc0.setdefault(k, {})
        s3 = acc3.setdefault(k, {})
        for col, w in enumerate(ws):
            for tgt, coef, kind in _terms(d, L, w, p):
                loc = basis.index.get(tgt)
                if loc is None:
                    raise ConventionViolation(
                        f"differential leaves the reduced basis: {d.word_name(w)} -> {d.word_name(tgt)}", tgt)
                if loc[0] != k + 1:
                    raise ConventionViolation(
                        f"{d.word_name(w)} -> {d.word_name(tgt)} changes degree by {loc[0] - k}", w)
                slot = s3 if kind == 3 else s0
                key = (loc[1], col)
                slot[key] = f.add(slot.get(key, 0), coef)
    d0 = {}
    d3 = {}
    for k in basis.words:
        shape = (len(basis.words.get(k + 1, [])), len(basis.words[k]))
        d0[k] = SparseMatrix(*shape, f, acc0[k])
        d3[k] = SparseMatrix(*shape, f, acc3[k])
    hc = HochschildComplex(d, p, basis, d0, d3)
    if check:
        try:
            hc.complex().check_d_squared()
        except InvalidComplexError as e:
            raise ConventionViolation(f"b o b != 0 at cohomological degree {e.degree}") from e
    return hc


def truncated_hochschild_betti(d: CurvedCategory, p: int, field: Field | None = None,
                               window: tuple[int, int] | None = None) -> dict[int, int]:
    """Betti numbers of C-bar / F^{p+1} in homological degrees."""
    if field is not None and field != d.field:
        d = build_curved(d.a, d.b, d.P, field)
    if d.m == 0:
        return {}
    hc = hochschild_differential(d, p)
    h = homology_dims(hc.complex(), check=False)
    out = {-k: v for k, v in h.items()}
    if window is not None:
        lo, hi = window
        out = {k: v for k, v in out.items() if lo <= k <= hi}
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# E^1 page


@dataclass
class E1Page:
    """E^1 dimensions and d^1 ranks, all in homological degrees.

    ``e1[w][deg]`` is dim HH_deg(C)^w (the column p = -w); ``d1_rank[w][deg]``
    is the rank of d^1 from weight w, homological degree deg, to weight w+1,
    degree deg - 1.  ``e2`` is only reported for weights whose neighbours are
    both inside the window (w < P).
    """

    P: int
    e1: dict[int, dict[int, int]]
    d1_rank: dict[int, dict[int, int]]
    e2: dict[int, dict[int, int]]
    m: int

    def column0_is_R(self) -> bool:
        col = {k: v for k, v in self.e1.get(0, {}).items() if v}
        return col == ({0: self.m} if self.m else {})


def _weight_blocks(hc: HochschildComplex):
    """Split basis and d0 by weight: returns {w: (dims, {k: matrix}, {k: [global indices]})}."""
    d = hc.curved
    f = hc.field
    blocks: dict[int, dict[int, list[int]]] = {}
    local: dict[int, dict[int, int]] = {}
    for k, ws in hc.basis.words.items():
        for i, w in enumerate(ws):
            wt = word_weight(d, w)
            lst = blocks.setdefault(wt, {}).setdefault(k, [])
            local[(k, i)] = len(lst)
            lst.append(i)
    mats: dict[int, dict[int, dict]] = {}
    for k, m in hc.d0.items():
        for (r, c), v in m.entries.items():
            wt = word_weight(d, hc.basis.words[k][c])
            mats.setdefault(wt, {}).setdefault(k, {})[(local[(k + 1, r)], local[(k, c)])] = v
    out = {}
    for wt, bydeg in blocks.items():
        dm = {}
        for k in bydeg:
            rows = len(bydeg.get(k + 1, []))
            dm[k] = SparseMatrix(rows, len(bydeg[k]), f, mats.get(wt, {}).get(k, {}))
        out[wt] = (bydeg, dm)
    return out, local


def associated_graded(hc: HochschildComplex) -> dict[int, FiniteChainComplex]:
    """The weight-w pieces of Gr F (differential d1 + d2 only)."""
    blocks, _ = _weight_blocks(hc)
    return {w: FiniteChainComplex({k: len(v) for k, v in bydeg.items()}, dm, hc.field)
            for w, (bydeg, dm) in sorted(blocks.items())}


def e1_page(d: CurvedCategory, P: int | None = None, field: Field | None = None) -> E1Page:
    """E^1 of the t-adic spectral sequence with the rank of d^1 (induced by d3).

    For each weight w and degree k: cycles Z of d0, boundaries B of d0 in
    weight w+1; rank d^1 = rank[d3(Z) | B] - rank B.
    """
    P = d.P if P is None else P
    if field is not None and field != d.field:
        d = build_curved(d.a, d.b, d.P, field)
    if d.m == 0:
        return E1Page(P, {}, {}, {}, 0)
    hc = hochschild_differential(d, P)
    f = hc.field
    blocks, local = _weight_blocks(hc)
    e1: dict[int, dict[int, int]] = {}
    ranks_d0: dict[int, dict[int, int]] = {}
    for w, (bydeg, dm) in blocks.items():
        ranks_d0[w] = {k: rank(m) for k, m in dm.items()}
        col = {}
        for k, idx in bydeg.items():
            h = len(idx) - ranks_d0[w].get(k, 0) - ranks_d0[w].get(k - 1, 0)
            if h:
                col[-k] = h
        e1[w] = col
    d1_rank: dict[int, dict[int, int]] = {}
    for w, (bydeg, dm) in blocks.items():
        if w + 1 > P or w + 1 not in blocks:
            continue
        nbydeg, ndm = blocks[w + 1]
        for k, idx in bydeg.items():
            if not e1[w].get(-k):
                continue
            tgt_idx = nbydeg.get(k + 1, [])
            if not tgt_idx:
                continue
            # cycles of d0 in weight w, degree k
            z = nullspace(dm[k]) if k in dm else [{i: 1} for i in range(len(idx))]
            tpos = {g: n for n, g in enumerate(tgt_idx)}
            d3k = hc.d3.get(k)
            cols_by = {}
            if d3k is not None:
                for (r, c), v in d3k.entries.items():
                    cols_by.setdefault(c, []).append((r, v))
            image_cols = []
            for vec in z:
                acc = {}
                for li, coef in vec.items():
                    for r, v in cols_by.get(idx[li], []):
                        if r in tpos:
                            acc[tpos[r]] = f.add(acc.get(tpos[r], 0), f.mul(coef, v))
                image_cols.append({r: v for r, v in acc.items() if v})
            bmat = ndm.get(k)  # d0: weight w+1, degree k -> k+1
            bcols = []
            if bmat is not None:
                by_col: dict[int, dict] = {}
                for (r, c), v in bmat.entries.items():
                    by_col.setdefault(c, {})[r] = v
                bcols = list(by_col.values())
            rows = len(tgt_idx)
            both = SparseMatrix(rows, len(bcols) + len(image_cols), f,
                                {(r, c): v for c, col in enumerate(bcols + image_cols) for r, v in col.items()})
            only_b = SparseMatrix(rows, len(bcols), f,
                                  {(r, c): v for c, col in enumerate(bcols) for r, v in col.items()})
            rk = rank(both) - rank(only_b)
            if rk:
                d1_rank.setdefault(w, {})[-k] = rk
    e2: dict[int, dict[int, int]] = {}
    for w in range(0, P):
        col = {}
        for deg, dim in e1.get(w, {}).items():
            out_rank = d1_rank.get(w, {}).get(deg, 0)
            in_rank = d1_rank.get(w - 1, {}).get(deg + 1, 0) if w > 0 else 0
            v = dim - out_rank - in_rank
            if v:
                col[deg] = v
        e2[w] = col
    page = E1Page(P, e1, d1_rank, e2, d.m)
    if not page.column0_is_R():
        raise ConventionViolation(f"E^1 weight-0 column is {e1.get(0)}, expected R in degree 0")
    return page


# ---------------------------------------------------------------------------
# Donaldson and Connes complexes


def _weight_preserving_complex(d: CurvedCategory, words, degree_fn, field: Field) -> FiniteChainComplex:
    basis = GradedBasis.from_words(d, words, degree_fn)
    L = _Letters(d, d.P)

    def terms(w):
        for tgt, coef, _ in _terms(d, L, w, d.P, with_d3=False):
            yield tgt, coef

    mats = _assemble(d, basis, terms, field, strict=True)
    c = FiniteChainComplex(basis.dims(), mats, field, basis.words)
    return c


def donaldson_complex(a: AInftyCategory | None, b: AInftyCategory, fiber_dim: int,
                      field: Field | None = None) -> FiniteChainComplex:
    """(B[d] + T(A_+[1]))^diag, realised on weight-one words with the t-letter leftmost.

    A word (tb, a_{n-1}, ..., a_0) of cyclic degree k sits in degree k - d - 2.
    """
    d = build_curved(a, b, 1, field)
    if d.m == 0:
        return FiniteChainComplex({}, {}, d.field)
    words = enumerate_cyclic_words(d, 1, exact_weight=1, lead_weight_min=1)
    shift = fiber_dim + 2
    c = _weight_preserving_complex(d, words, lambda w: word_degree(d, w) - shift, d.field)
    try:
        c.check_d_squared()
    except InvalidComplexError as e:
        raise ConventionViolation(f"Donaldson differential squares to a nonzero map at degree {e.degree}") from e
    return c


def cyclic_sign(d: CurvedCategory, word: Sequence[int]) -> int:
    """Exponent of the sign of the rotation (x_n, ..., x_0) -> (x_0, x_n, ..., x_1)."""
    n = d.ngens
    red = [d.b.gens[c % n].degree + 2 * (c // n) - 1 for c in word]
    return (red[-1] * (sum(red) - red[-1])) & 1


def _canonical(d: CurvedCategory, word: tuple[int, ...]):
    """Rotation-orbit representative of a D_+ word and the sign relating them.

    Returns (rep, sign) with word = sign * rep in the coinvariants, or
    (None, 0) when the orbit dies (an odd rotation fixes the word).
    """
    n = d.ngens
    rots = []
    cur = word
    sgn = 0  # word = (-1)^sgn * cur in coinvariants
    while True:
        rots.append((cur, sgn))
        s = cyclic_sign(d, cur)
        cur = (cur[-1],) + cur[:-1]
        sgn ^= s
        if cur == word:
            break
    # first return: an odd sign means x = -x
    if sgn:
        return None, 0
    best = None
    for w, s in rots:
        if w[0] // n == 0:
            continue
        if best is None or w < best[0]:
            best = (w, s)
    rep, s = best
    return rep, (-1 if s else 1)


def connes_complex(a: AInftyCategory | None, b: AInftyCategory, p: int, field: Field | None = None,
                   ) -> dict[int, FiniteChainComplex]:
    """Reduced Connes complex of C (no curvature), one complex per t-weight 1..p.

    Each weight-w complex has basis the rotation orbits of cyclic words of
    C_+ letters, represented with a positive-weight letter leftmost.
    Degrees agree with the Hochschild complex.
    """
    d = build_curved(a, b, p, field)
    if d.field.characteristic:
        warnings.warn(f"cyclic coinvariants over {d.field}: the identification with cyclic homology "
                      "assumes characteristic zero", RuntimeWarning, stacklevel=2)
    out = {}
    if d.m == 0:
        return out
    L = _Letters(d, p)
    f = d.field
    for w in range(1, p + 1):
        raw = enumerate_cyclic_words(d, p, exact_weight=w, lead_weight_min=1, connes=True)
        reps = sorted({r for r, s in (_canonical(d, x) for x in raw) if r is not None})
        basis = GradedBasis.from_words(d, reps)

        def terms(word):
            for tgt, coef, _ in _terms(d, L, word, p, with_d3=False):
                rep, s = _canonical(d, tgt)
                if rep is None:
                    continue
                yield rep, (f.neg(coef) if s < 0 else coef)

        mats = _assemble(d, basis, terms, f, strict=True)
        c = FiniteChainComplex(basis.dims(), mats, f, basis.words)
        try:
            c.check_d_squared()
        except InvalidComplexError as e:
            raise ConventionViolation(f"Connes differential (weight {w}) squares to nonzero at {e.degree}") from e
        out[w] = c
    return out
