"""Reduced bar complex of D and the comparisons around the simple module R.

A bar word is an open chain of D_+ letters stored leftmost-first,
``(x_n, ..., x_1)``, together with its end objects, so the empty word at
each object is ``(j, j, ())``.  Letters are the integer codes of
``CurvedCategory``.  The differential is mu^k on consecutive blocks plus
insertion of mu^0 = t e in every gap, both with sign (-1)^(sum of the
reduced degrees to the right).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from .ainfty import (AInftyCategory, Bimodule, CategoryError, Generator, directed_subcategory,
                     quotient_bimodule, validate_ainfty)
from .hochschild import ConventionViolation, CurvedCategory, _Letters, build_curved
from .linalg import Field, FiniteChainComplex, InvalidComplexError, SparseMatrix, homology_dims

BarWord = tuple  # (src object, tgt object, codes leftmost-first)


def bar_words(d: CurvedCategory, p: int, letter_ok: Callable[[int], bool] | None = None,
              exact_weight: int | None = None) -> list[BarWord]:
    """Open D_+ words of t-weight <= p (or exactly ``exact_weight``)."""
    if p > d.P:
        raise ValueError(f"p = {p} exceeds the truncation level {d.P}")
    L = _Letters(d, p)
    out: list[BarWord] = []
    for start in range(d.m):
        stack: list[int] = []

        def grow(obj: int, budget: int):
            if exact_weight is None or p - budget == exact_weight:
                out.append((start, obj, tuple(reversed(stack))))
            for c in L.inner_from.get(obj, []):
                w = L.weight[c]
                if w > budget or (letter_ok is not None and not letter_ok(c)):
                    continue
                stack.append(c)
                grow(L.tgt[c], budget - w)
                stack.pop()

        grow(start, p)
    return out


def bar_degree(L: _Letters, word: BarWord) -> int:
    return sum(L.red[c] for c in word[2])


def bar_word_name(d: CurvedCategory, word: BarWord) -> str:
    if not word[2]:
        return f"[]_{d.b.objects[word[0]]}"
    return "[" + "|".join(d.letter_name(c) for c in word[2]) + "]"


def _bar_terms(d: CurvedCategory, L: _Letters, word: BarWord, p: int, insert: bool = True):
    """Yield (target, coefficient) for the bar differential of ``word``."""
    f = d.field
    mu = d.b.mu
    n_g = L.n
    src, tgt, codes = word
    X = codes[::-1]  # X[0] = x_1 acts first
    n = len(X)
    prefix = [0]
    for c in X:
        prefix.append(prefix[-1] + L.red[c])
    for i in range(n):
        wsum = 0
        for j in range(1, n - i + 1):
            wsum += X[i + j - 1] // n_g
            key = tuple(X[i + k] % n_g for k in range(j - 1, -1, -1))
            out = mu.get(key)
            if not out:
                continue
            neg = prefix[i] & 1
            for g, c in out.items():
                if wsum == 0 and g in L.unit_codes0:
                    continue  # reduced: weight-zero units are quotiented out
                new = X[:i] + (wsum * n_g + g,) + X[i + j:]
                yield (src, tgt, new[::-1]), (f.neg(c) if neg else c)
    if insert and sum(c // n_g for c in X) + 1 <= p:
        for i in range(n + 1):
            obj = L.src[X[i]] if i < n else tgt
            new = X[:i] + (L.t_unit_at[obj],) + X[i:]
            yield (src, tgt, new[::-1]), (f.neg(1) if prefix[i] & 1 else f.one())


def _complex_from(d: CurvedCategory, L: _Letters, words: Iterable[BarWord], terms, what: str,
                  strict: bool = True) -> FiniteChainComplex:
    f = d.field
    by_deg: dict[int, list] = {}
    for w in words:
        by_deg.setdefault(bar_degree(L, w), []).append(w)
    for k in by_deg:
        by_deg[k].sort()
    index = {w: (k, i) for k, ws in by_deg.items() for i, w in enumerate(ws)}
    mats = {}
    for k, ws in by_deg.items():
        acc: dict = {}
        for col, w in enumerate(ws):
            for t, coef in terms(w):
                loc = index.get(t)
                if loc is None:
                    if strict:
                        raise ConventionViolation(
                            f"{what}: {bar_word_name(d, w)} -> {bar_word_name(d, t)} leaves the basis", w)
                    continue
                if loc[0] != k + 1:
                    raise ConventionViolation(
                        f"{what}: {bar_word_name(d, w)} -> {bar_word_name(d, t)} lands in degree {loc[0]}", w)
                acc[(loc[1], col)] = f.add(acc.get((loc[1], col), 0), coef)
        mats[k] = SparseMatrix(len(by_deg.get(k + 1, [])), len(ws), f, acc)
    c = FiniteChainComplex({k: len(v) for k, v in by_deg.items()}, mats, f, dict(sorted(by_deg.items())))
    try:
        c.check_d_squared()
    except InvalidComplexError as e:
        raise ConventionViolation(f"{what}: d o d != 0 at degree {e.degree}") from e
    return c


def bar_complex(d: CurvedCategory, p: int) -> FiniteChainComplex:
    """B-bar / F^{p+1}; labels hold the bar words per degree."""
    if d.m == 0:
        return FiniteChainComplex({}, {}, d.field)
    L = _Letters(d, p)
    return _complex_from(d, L, bar_words(d, p), lambda w: _bar_terms(d, L, w, p), f"bar complex p={p}")


# ---------------------------------------------------------------------------
# hom(R, R) over A


def simple_hom_complex(a: AInftyCategory) -> FiniteChainComplex:
    """hom_{D(A)}(R, R) built on dual words.

    The basis is dual to the words of T(A_+[1]), in degree minus the word
    degree; labels record the word each dual vector pairs with.  The
    differential is precomposition with the bar differential, computed
    coproduct-style: for each letter of the target word, every mu^k term
    producing that letter contributes.
    """
    if not a.is_directed():
        raise CategoryError("simple_hom_complex needs a directed category")
    f = a.field
    if a.m == 0:
        return FiniteChainComplex({}, {}, f)
    units = set((a.units or {}).values())
    plus = [g for g in range(len(a.gens)) if g not in units]
    red = [g.degree - 1 for g in a.gens]
    # words as (src, tgt, gens leftmost-first)
    words = []
    for start in range(a.m):
        stack: list[int] = []

        def grow(obj):
            words.append((start, obj, tuple(reversed(stack))))
            for g in plus:
                if a.gens[g].src == obj:
                    stack.append(g)
                    grow(a.gens[g].tgt)
                    stack.pop()

        grow(start)
    by_deg: dict[int, list] = {}
    for w in words:
        by_deg.setdefault(-sum(red[g] for g in w[2]), []).append(w)
    for k in by_deg:
        by_deg[k].sort()
    index = {w: (k, i) for k, ws in by_deg.items() for i, w in enumerate(ws)}
    # producers[g] = [(key, coef)] with mu(key) containing g
    producers: dict[int, list] = {}
    for key, out in a.mu.items():
        if any(k in units for k in key):
            continue
        for g, c in out.items():
            producers.setdefault(g, []).append((key, c))
    acc: dict[int, dict] = {k: {} for k in by_deg}
    for k, ws in by_deg.items():
        for w in ws:
            src, tgt, codes = w
            X = codes[::-1]
            for pos, g in enumerate(X):
                for key, c in producers.get(g, []):
                    ins = key[::-1]  # first-acting first
                    new_x = X[:pos] + ins + X[pos + 1:]
                    prefix = sum(red[h] for h in X[:pos])
                    coef = f.neg(c) if prefix & 1 else c
                    pre = (src, tgt, new_x[::-1])
                    loc = index.get(pre)
                    if loc is None:
                        continue
                    # d(pre) contains w, so (delta phi_w)(pre) = coef: phi_w -> coef * phi_pre
                    col = index[w]
                    if loc[0] != col[0] + 1:
                        raise ConventionViolation("simple_hom_complex degree mismatch", pre)
                    slot = acc[col[0]]
                    slot[(loc[1], col[1])] = f.add(slot.get((loc[1], col[1]), 0), coef)
    mats = {k: SparseMatrix(len(by_deg.get(k + 1, [])), len(by_deg[k]), f, acc[k]) for k in by_deg}
    c = FiniteChainComplex({k: len(v) for k, v in by_deg.items()}, mats, f, dict(sorted(by_deg.items())))
    c.check_d_squared()
    return c


# ---------------------------------------------------------------------------
# the p = 1 comparisons


@dataclass
class InsertAReport:
    acyclic: bool
    homology: dict[int, int]
    dims: dict[int, int]

    def summary(self) -> str:
        if self.acyclic:
            return f"insert-a cone acyclic (total dim {sum(self.dims.values())})"
        return f"insert-a cone NOT acyclic: homology {self.homology}"


def insert_a_complex(d: CurvedCategory) -> FiniteChainComplex:
    """Cone(T(A_+[1]) -> T(A_+[1]) tA[1] T(A_+[1])), as a subcomplex of B-bar / F^2."""
    if d.m == 0:
        return FiniteChainComplex({}, {}, d.field)
    if d.P < 1:
        d = build_curved(d.a, d.b, 1, d.field)
    L = _Letters(d, 1)
    n_g = L.n
    ok = lambda c: c // n_g == 0 or c % n_g in d.in_a  # noqa: E731
    words = bar_words(d, 1, letter_ok=ok)
    return _complex_from(d, L, words, lambda w: _bar_terms(d, L, w, 1), "insert-a cone")


def insert_a_subcomplex_check(d: CurvedCategory) -> InsertAReport:
    c = insert_a_complex(d)
    h = homology_dims(c, check=False)
    return InsertAReport(not h, h, dict(c.dims))


def q_word_complex(a: AInftyCategory, q: Bimodule, p: int) -> FiniteChainComplex:
    """T(A_+[1]) tQ[1] T(A_+[1]) ... tQ[1] T(A_+[1]) with p factors of tQ.

    The differential applies mu_A to blocks of A letters and the bimodule
    action to blocks holding one Q letter; blocks with two or more Q letters
    are dropped (Q.Q = 0).  Letters tq have reduced degree |q| + 1.
    """
    f = a.field
    if a.m == 0 or p < 0:
        return FiniteChainComplex({}, {}, f)
    units = set((a.units or {}).values())
    na = len(a.gens)
    plus = [g for g in range(na) if g not in units]
    # letter codes: g < na is an A letter, na + k is t q_k
    src = {g: a.gens[g].src for g in range(na)}
    tgt = {g: a.gens[g].tgt for g in range(na)}
    red = {g: a.gens[g].degree - 1 for g in range(na)}
    for k, g in enumerate(q.gens):
        src[na + k], tgt[na + k], red[na + k] = g.src, g.tgt, g.degree + 1
    qletters = [na + k for k in range(len(q.gens))]
    words = []
    for start in range(a.m):
        stack: list[int] = []

        def grow(obj, left):
            if left == 0:
                words.append((start, obj, tuple(reversed(stack))))
            for c in plus + (qletters if left else []):
                if src[c] != obj:
                    continue
                stack.append(c)
                grow(tgt[c], left - (c >= na))
                stack.pop()

        grow(start, p)
    action = {}
    for (left, k, right), out in q.action.items():
        action[tuple(left) + (na + k,) + tuple(right)] = {na + o: v for o, v in out.items()}

    def terms(word):
        s, t, codes = word
        X = codes[::-1]
        n = len(X)
        prefix = [0]
        for c in X:
            prefix.append(prefix[-1] + red[c])
        for i in range(n):
            nq = 0
            for j in range(1, n - i + 1):
                nq += X[i + j - 1] >= na
                if nq > 1:
                    break
                key = tuple(X[i + k] for k in range(j - 1, -1, -1))
                out = action.get(key) if nq else a.mu.get(key)
                if not out:
                    continue
                for g, c in out.items():
                    if g in units:
                        continue
                    new = X[:i] + (g,) + X[i + j:]
                    yield (s, t, new[::-1]), (f.neg(c) if prefix[i] & 1 else c)

    by_deg: dict[int, list] = {}
    for w in words:
        by_deg.setdefault(sum(red[c] for c in w[2]), []).append(w)
    for k in by_deg:
        by_deg[k].sort()
    index = {w: (k, i) for k, ws in by_deg.items() for i, w in enumerate(ws)}
    mats = {}
    for k, ws in by_deg.items():
        acc: dict = {}
        for col, w in enumerate(ws):
            for tw, coef in terms(w):
                loc = index.get(tw)
                if loc is None or loc[0] != k + 1:
                    raise ConventionViolation(f"q-word complex: term leaves the basis from {w}", w)
                acc[(loc[1], col)] = f.add(acc.get((loc[1], col), 0), coef)
        mats[k] = SparseMatrix(len(by_deg.get(k + 1, [])), len(ws), f, acc)
    c = FiniteChainComplex({k: len(v) for k, v in by_deg.items()}, mats, f, dict(sorted(by_deg.items())))
    try:
        c.check_d_squared()
    except InvalidComplexError as e:
        raise ConventionViolation(f"q-word complex (p={p}): d o d != 0 at degree {e.degree}") from e
    return c


def serre_step_complex(a: AInftyCategory, q: Bimodule) -> FiniteChainComplex:
    """T(A_+[1]) tQ[1] T(A_+[1]) in bar degrees (the quotient of B-bar/F^2 by the insert-a cone)."""
    return q_word_complex(a, q, 1)


@dataclass
class SerreStepReport:
    bar: dict[int, int]
    serre: dict[int, int]
    insert_a_acyclic: bool

    @property
    def match(self) -> bool:
        return self.bar == self.serre

    def summary(self) -> str:
        state = "match" if self.match else "MISMATCH"
        return f"serre-step {state}: bar p=1 {self.bar} vs Q-words {self.serre}"


def serre_step_check(d: CurvedCategory, q: Bimodule | None = None) -> SerreStepReport:
    """Compare H(B-bar/F^2) with H of the one-Q complex (same degrees)."""
    if d.m == 0:
        return SerreStepReport({}, {}, True)
    if d.P < 1:
        d = build_curved(d.a, d.b, 1, d.field)
    a = _a_over(d)
    if q is None:
        q = quotient_bimodule(d.b, a)
    bar = homology_dims(bar_complex(d, 1), check=False)
    serre = homology_dims(serre_step_complex(a, q), check=False)
    return SerreStepReport(bar, serre, insert_a_subcomplex_check(d).acyclic)


def _a_over(d: CurvedCategory) -> AInftyCategory:
    """A with B's generator names and d's field (the directed part of d.b)."""
    return directed_subcategory(d.b)


def q_word_report(d: CurvedCategory, p: int, q: Bimodule | None = None) -> dict:
    """Experimental: H(B-bar / F^{p+1}) beside H of the p-fold Q-word complex.

    Agreement is not expected in general; this only reports.
    """
    a = _a_over(d)
    if q is None:
        q = quotient_bimodule(d.b, a)
    bar = homology_dims(bar_complex(d, p), check=False) if d.m else {}
    qw = homology_dims(q_word_complex(a, q, p), check=False) if d.m else {}
    return {"p": p, "bar": bar, "q_words": qw, "agree": bar == qw}


# ---------------------------------------------------------------------------
# modules


@dataclass
class ModuleOverA:
    """Right A-infinity module M: M(X_j) tensor hom(X_i, X_j) ... -> M(X_i).

    ``gens`` are ``(name, object, degree)``; ``action[(m, (a_k, ..., a_1))]``
    maps module generator index -> coefficient.  Checked by viewing M as
    morphisms into an extra object.
    """

    base: AInftyCategory
    gens: tuple
    action: dict = dc_field(default_factory=dict)

    def as_category(self) -> AInftyCategory:
        a = self.base
        star = len(a.objects)
        off = len(a.gens)
        gens = a.gens + tuple(Generator(n, obj, star, deg) for n, obj, deg in self.gens)
        mu = {k: dict(v) for k, v in a.mu.items()}
        for (m, seq), out in self.action.items():
            mu[(off + m,) + tuple(seq)] = {off + o: c for o, c in out.items()}
        return AInftyCategory(a.objects + ("*",), gens, mu, dict(a.units) if a.units else None, a.field)

    def validate(self) -> dict:
        cat = self.as_category()
        off = len(self.base.gens)
        return validate_ainfty(cat, must_touch=lambda seq: seq[0] >= off)


def simple_module(a: AInftyCategory) -> ModuleOverA:
    """R: one copy of the field at each object, A_+ acting by zero."""
    gens = tuple((f"r{j + 1}", j, 0) for j in range(a.m))
    action = {(j, (a.units[j],)): {j: 1} for j in range(a.m)} if a.units else {}
    return ModuleOverA(a, gens, action)
