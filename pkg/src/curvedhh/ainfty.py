"""Finite A-infinity categories over R = K^m as explicit structure-constant tables.

Conventions (see CONVENTIONS.md for the full table):

* ``mu[(a_n, ..., a_1)]`` is mu^n(a_n, ..., a_1); ``a_1`` is applied first,
  so ``a_k`` runs from the target of ``a_{k-1}`` onwards.
* Relations: sum over i, j of (-1)^(||a_1|| + ... + ||a_i||)
  mu(a_n, ..., a_{i+j+1}, mu^j(a_{i+j}, ..., a_{i+1}), a_i, ..., a_1) = 0,
  with reduced degree ||a|| = |a| - 1.
* Strict units: mu^2(a, e) = a, mu^2(e, a) = (-1)^|a| a, mu^n(..., e, ...) = 0
  for n >= 3.
* V[1] lowers every degree by one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import QQ, Field

Coeffs = dict  # generator index -> coefficient


class CategoryError(ValueError):
    """Structural problem with a category or bimodule description."""


class DegreeError(CategoryError):
    pass


class RelationViolation(CategoryError):
    def __init__(self, inputs: tuple, residual: Mapping, what: str = "A-infinity relation"):
        self.inputs = inputs
        self.residual = dict(residual)
        super().__init__(f"{what} fails on {inputs}: residual {self.residual}")


@dataclass(frozen=True)
class Generator:
    name: str
    src: int
    tgt: int
    degree: int


@dataclass
class AInftyCategory:
    """Objects, graded hom bases, optional strict units and mu^n tables.

    ``mu`` keys are tuples of generator indices in mu^n(a_n, ..., a_1) order;
    values map output generator index to a nonzero coefficient.
    """

    objects: tuple[str, ...]
    gens: tuple[Generator, ...]
    mu: dict[tuple[int, ...], dict[int, object]] = dc_field(default_factory=dict)
    units: dict[int, int] | None = None
    field: Field = QQ

    def __post_init__(self):
        self.objects = tuple(self.objects)
        self.gens = tuple(self.gens)
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise CategoryError(f"duplicate generator names {dup}")
        self._by_name = {g.name: i for i, g in enumerate(self.gens)}
        m = len(self.objects)
        for g in self.gens:
            if not (0 <= g.src < m and 0 <= g.tgt < m):
                raise CategoryError(f"generator {g.name} refers to a missing object")
        self._hom: dict[tuple[int, int], list[int]] = {}
        for i, g in enumerate(self.gens):
            self._hom.setdefault((g.src, g.tgt), []).append(i)
        self._from: dict[int, list[int]] = {}
        for i, g in enumerate(self.gens):
            self._from.setdefault(g.src, []).append(i)
        clean = {}
        for key, out in self.mu.items():
            key = tuple(key)
            vals = {k: self.field(v) for k, v in out.items()}
            vals = {k: v for k, v in vals.items() if v != 0}
            if vals:
                clean[key] = vals
        self.mu = clean
        if self.units is not None:
            for obj, u in self.units.items():
                g = self.gens[u]
                if g.src != obj or g.tgt != obj or g.degree != 0:
                    raise CategoryError(f"unit {g.name} must be a degree 0 endomorphism of {self.objects[obj]}")
        self._unit_set = frozenset(self.units.values()) if self.units else frozenset()

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.objects)

    def index(self, name: str) -> int:
        return self._by_name[name]

    def gen(self, name: str) -> Generator:
        return self.gens[self._by_name[name]]

    def hom(self, src: int, tgt: int) -> list[int]:
        return self._hom.get((src, tgt), [])

    def starting_at(self, src: int) -> list[int]:
        return self._from.get(src, [])

    def is_unit(self, g: int) -> bool:
        return g in self._unit_set

    @property
    def is_unital(self) -> bool:
        return self.units is not None and len(self.units) == self.m

    @property
    def max_arity(self) -> int:
        return max((len(k) for k in self.mu), default=0)

    def is_directed(self) -> bool:
        return all(g.src < g.tgt or (self.is_unit(i)) for i, g in enumerate(self.gens))

    def composable(self, seq: Sequence[int]) -> bool:
        """``seq`` in mu order (a_n, ..., a_1)."""
        return all(self.gens[seq[k]].src == self.gens[seq[k + 1]].tgt for k in range(len(seq) - 1))

    def apply(self, seq: Sequence[int]) -> dict[int, object]:
        return self.mu.get(tuple(seq), {})

    def __eq__(self, other):
        if not isinstance(other, AInftyCategory):
            return NotImplemented
        return (self.objects == other.objects and self.gens == other.gens and self.mu == other.mu
                and (self.units or {}) == (other.units or {}) and self.field == other.field)

    def summary(self) -> str:
        arities = sorted({len(k) for k in self.mu})
        return (f"{self.m} objects, {len(self.gens)} generators, "
                f"{len(self.mu)} structure constants (arities {arities}), over {self.field}")

    # -- checks --------------------------------------------------------------

    def check_degrees(self) -> None:
        """Composability and the degree rule |mu^n| = sum |a_k| + 2 - n."""
        for key, out in self.mu.items():
            if not key:
                raise DegreeError("mu^0 entries are not allowed in an uncurved category")
            if not self.composable(key):
                raise DegreeError(f"inputs {self.names(key)} are not composable")
            src = self.gens[key[-1]].src
            tgt = self.gens[key[0]].tgt
            want = sum(self.gens[k].degree for k in key) + 2 - len(key)
            for o in out:
                g = self.gens[o]
                if (g.src, g.tgt) != (src, tgt):
                    raise DegreeError(f"mu{self.names(key)} -> {g.name}: output does not join the chain ends")
                if g.degree != want:
                    raise DegreeError(f"mu{self.names(key)} -> {g.name}: degree {g.degree}, expected {want}")

    def names(self, seq: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.gens[k].name for k in seq)


def reduced(deg: int) -> int:
    return deg - 1


def with_units(objects, gens, mu, unit_names: Mapping[str, str] | None = None, field: Field = QQ,
               extra_units: bool = True) -> AInftyCategory:
    """Build a strictly unital category, filling in every mu^2 with a unit input.

    ``gens`` is a list of ``Generator``; ``mu`` may be keyed by generator names.
    ``unit_names`` maps object name -> unit generator name.
    """
    objects = tuple(objects)
    gens = tuple(gens)
    by_name = {g.name: i for i, g in enumerate(gens)}

    def idx(x):
        return by_name[x] if isinstance(x, str) else x

    table: dict[tuple[int, ...], dict[int, object]] = {}
    for key, out in mu.items():
        k = tuple(idx(x) for x in key)
        table[k] = {idx(o): c for o, c in out.items()}
    units = {}
    if unit_names:
        for obj, name in unit_names.items():
            units[objects.index(obj)] = by_name[name]
    cat = AInftyCategory(objects, gens, table, units, field)
    if extra_units:
        cat = complete_units(cat)
    return cat


def complete_units(cat: AInftyCategory) -> AInftyCategory:
    """Add the strict unit products; reject tables that contradict them."""
    if not cat.is_unital:
        raise CategoryError("category has no unit on every object")
    f = cat.field
    table = {k: dict(v) for k, v in cat.mu.items()}
    for key in list(table):
        if len(key) >= 3 and any(cat.is_unit(k) for k in key):
            raise CategoryError(f"mu^{len(key)}{cat.names(key)} involves a unit but must vanish")
    for i, g in enumerate(cat.gens):
        right = {i: f(1)}
        left = {i: f(-1) if g.degree % 2 else f(1)}
        for key, want in (((i, cat.units[g.src]), right), ((cat.units[g.tgt], i), left)):
            have = table.get(key)
            if have is not None and have != want:
                raise CategoryError(f"mu^2{cat.names(key)} = {have} contradicts strict unitality")
            table[key] = want
    return AInftyCategory(cat.objects, cat.gens, table, dict(cat.units), f)


# ---------------------------------------------------------------------------
# A-infinity relations


def composable_tuples(cat: AInftyCategory, n: int, allowed: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """All composable tuples (a_n, ..., a_1) of length n, built from a_1 upwards."""
    pool = range(len(cat.gens)) if allowed is None else allowed
    pool_from: dict[int, list[int]] = {}
    for k in pool:
        pool_from.setdefault(cat.gens[k].src, []).append(k)

    def extend(chain: list[int]):
        if len(chain) == n:
            yield tuple(reversed(chain))
            return
        for k in pool_from.get(cat.gens[chain[-1]].tgt, []):
            chain.append(k)
            yield from extend(chain)
            chain.pop()

    for first in pool:
        yield from extend([first])


def relation_residual(cat: AInftyCategory, seq: tuple[int, ...]) -> dict[int, object]:
    """Left-hand side of the A-infinity relation on ``seq`` = (a_n, ..., a_1)."""
    f = cat.field
    n = len(seq)
    red = [reduced(cat.gens[k].degree) for k in reversed(seq)]  # red[k] = ||a_{k+1}||
    total: dict[int, object] = {}
    for i in range(n):
        sign = sum(red[:i]) % 2
        for j in range(1, n - i + 1):
            lo = n - i - j  # seq index of a_{i+j}
            inner = seq[lo:n - i]
            inner_out = cat.mu.get(inner)
            if not inner_out:
                continue
            for g, c in inner_out.items():
                outer = seq[:lo] + (g,) + seq[n - i:]
                for h, c2 in cat.mu.get(outer, {}).items():
                    v = f.mul(c, c2)
                    if sign:
                        v = f.neg(v)
                    total[h] = f.add(total.get(h, 0), v)
    return {h: v for h, v in total.items() if v != 0}


def relation_arity_bound(cat: AInftyCategory) -> int:
    k = cat.max_arity
    return max(0, 2 * k - 1)


def validate_ainfty(cat: AInftyCategory, max_arity: int | None = None,
                    allowed: Sequence[int] | None = None, must_touch=None) -> dict:
    """Check degrees, strict units and the A-infinity relations.

    Raises ``DegreeError`` / ``RelationViolation`` on the first failure, and
    returns a small report otherwise.  ``must_touch`` optionally restricts the
    relation check to tuples satisfying a predicate.
    """
    cat.check_degrees()
    if cat.units:
        for key in cat.mu:
            if len(key) >= 3 and any(cat.is_unit(k) for k in key):
                raise RelationViolation(cat.names(key), cat.mu[key], "strict unitality")
        for i, g in enumerate(cat.gens):
            if g.src in cat.units:
                if cat.apply((i, cat.units[g.src])) != {i: 1}:
                    raise RelationViolation(cat.names((i, cat.units[g.src])),
                                            cat.apply((i, cat.units[g.src])), "right unit")
            if g.tgt in cat.units:
                want = {i: cat.field(-1 if g.degree % 2 else 1)}
                if cat.apply((cat.units[g.tgt], i)) != want:
                    raise RelationViolation(cat.names((cat.units[g.tgt], i)),
                                            cat.apply((cat.units[g.tgt], i)), "left unit")
    top = relation_arity_bound(cat) if max_arity is None else max_arity
    checked = 0
    for n in range(1, top + 1):
        for seq in composable_tuples(cat, n, allowed):
            if must_touch is not None and not must_touch(seq):
                continue
            checked += 1
            res = relation_residual(cat, seq)
            if res:
                raise RelationViolation(cat.names(seq), {cat.gens[h].name: v for h, v in res.items()})
    return {"ok": True, "tuples_checked": checked, "max_arity": top}


# ---------------------------------------------------------------------------
# constructions


def directed_subcategory(b: AInftyCategory) -> AInftyCategory:
    """Keep hom(X_j, X_k) for j < k, the units on the diagonal, nothing for j > k."""
    if not b.is_unital:
        raise CategoryError("directed subcategory needs a strictly unital category")
    keep = [i for i, g in enumerate(b.gens) if g.src < g.tgt or b.is_unit(i)]
    new_index = {old: new for new, old in enumerate(keep)}
    gens = tuple(b.gens[i] for i in keep)
    table = {}
    for key, out in b.mu.items():
        if all(k in new_index for k in key):
            proj = {new_index[o]: c for o, c in out.items() if o in new_index}
            if proj:
                table[tuple(new_index[k] for k in key)] = proj
    units = {obj: new_index[u] for obj, u in b.units.items()}
    return AInftyCategory(b.objects, gens, table, units, b.field)


def augmentation_ideal(a: AInftyCategory) -> list[int]:
    """Generators spanning A_+ = ker(A -> R): everything except the units."""
    if not a.is_unital:
        raise CategoryError("augmentation needs a unital category")
    return [i for i in range(len(a.gens)) if not a.is_unit(i)]


def tensor_algebra_basis(a: AInftyCategory, plus: Sequence[int] | None = None) -> list[tuple]:
    """Basis of T(A_+[1]) over R.

    Returns pairs ``(word, obj)``: ``word`` is a composable tuple in mu order
    and ``obj`` is its source object (needed for the empty words).  The letters
    of A_+[1] carry degree |a| - 1, so a word has degree sum(|a_k| - 1).
    """
    plus = augmentation_ideal(a) if plus is None else list(plus)
    for k in plus:
        g = a.gens[k]
        if g.src >= g.tgt:
            raise CategoryError(f"{g.name} is not a forward arrow; T(A_+[1]) would be infinite")
    out = [((), j) for j in range(a.m)]
    for n in range(1, a.m):
        for seq in composable_tuples(a, n, plus):
            out.append((seq, a.gens[seq[-1]].src))
    return out


def word_degree(cat: AInftyCategory, seq: Sequence[int]) -> int:
    return sum(cat.gens[k].degree - 1 for k in seq)


# ---------------------------------------------------------------------------
# bimodules


@dataclass
class Bimodule:
    """A-infinity bimodule Q over ``base``.

    ``action[(left, q, right)]`` is mu^{r|1|s}(a_r..a_1, q, a'_s..a'_1) with
    ``left = (a_r, ..., a_1)`` and ``right = (a'_s, ..., a'_1)`` tuples of base
    generator indices; values map Q generator index -> coefficient.  A Q
    generator with ``src = i, tgt = j`` lives in Q(X_i, X_j) and composes like
    a morphism X_i -> X_j.
    """

    base: AInftyCategory
    gens: tuple[Generator, ...]
    action: dict[tuple[tuple[int, ...], int, tuple[int, ...]], dict[int, object]] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.gens = tuple(self.gens)
        f = self.base.field
        clean = {}
        for key, out in self.action.items():
            vals = {k: f(v) for k, v in out.items()}
            vals = {k: v for k, v in vals.items() if v != 0}
            if vals:
                clean[(tuple(key[0]), key[1], tuple(key[2]))] = vals
        self.action = clean

    @property
    def field(self) -> Field:
        return self.base.field

    def check_degrees(self) -> None:
        a = self.base
        for (left, q, right), out in self.action.items():
            seq_gens = [a.gens[k] for k in left] + [self.gens[q]] + [a.gens[k] for k in right]
            for k in range(len(seq_gens) - 1):
                if seq_gens[k].src != seq_gens[k + 1].tgt:
                    raise DegreeError(f"bimodule inputs {(left, q, right)} are not composable")
            want = sum(g.degree for g in seq_gens) + 1 - len(left) - len(right)
            for o in out:
                g = self.gens[o]
                if (g.src, g.tgt) != (seq_gens[-1].src, seq_gens[0].tgt):
                    raise DegreeError(f"bimodule output {g.name} does not join the chain ends")
                if g.degree != want:
                    raise DegreeError(f"bimodule output {g.name} has degree {g.degree}, expected {want}")

    def shifted(self, n: int) -> "Bimodule":
        return shift_bimodule(self, n)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def dual_action_sign(left_red: int, right_red: int, c_red: int) -> int:
    """(-1)^(total reduced degree of the inputs of mu(b_s..b_1, c, a_r..a_1))."""
    return _sign(left_red + right_red + c_red)


def dual_bimodule(a: AInftyCategory) -> Bimodule:
    """A^vee: Q(X_i, X_j) is the dual of hom_A(X_j, X_i), degrees negated.

    <mu(a_r..a_1, g^vee, b_s..b_1), c> = sign * <g^vee, mu(b_s..b_1, c, a_r..a_1)>.
    """
    f = a.field
    gens = tuple(Generator(g.name + "^", g.tgt, g.src, -g.degree) for g in a.gens)
    action: dict = {}
    red = [g.degree - 1 for g in a.gens]
    for key, out in a.mu.items():
        n = len(key)
        # key = (b_s..b_1, c, a_r..a_1); choose which slot is c
        for pos in range(n):
            right = key[:pos]          # b_s..b_1
            c = key[pos]
            left = key[pos + 1:]       # a_r..a_1
            lr = sum(red[k] for k in left)
            rr = sum(red[k] for k in right)
            cr = red[c]
            for g, coef in out.items():
                # output pairs with g^vee -> contributes to coefficient of c^vee
                s = dual_action_sign(lr, rr, cr)
                k = (left, g, right)
                slot = action.setdefault(k, {})
                val = f.mul(coef, f(s))
                slot[c] = f.add(slot.get(c, 0), val)
    return Bimodule(a, gens, action)


def shift_bimodule(q: Bimodule, n: int) -> Bimodule:
    """Q[n]: degrees drop by n; actions pick up (-1)^(n * sum ||left inputs||)."""
    if n == 0:
        return Bimodule(q.base, q.gens, dict(q.action))
    f = q.field
    gens = tuple(Generator(g.name, g.src, g.tgt, g.degree - n) for g in q.gens)
    red = [g.degree - 1 for g in q.base.gens]
    action = {}
    for (left, k, right), out in q.action.items():
        s = (n * sum(red[x] for x in left)) % 2
        action[(left, k, right)] = {o: (f.neg(c) if s else c) for o, c in out.items()}
    return Bimodule(q.base, gens, action)


def trivial_extension(a: AInftyCategory, q: Bimodule, validate: bool = True) -> AInftyCategory:
    """B = A + Q with Q.Q = 0."""
    if q.base is not a and q.base != a:
        raise CategoryError("bimodule is over a different category")
    names = {g.name for g in a.gens}
    clash = [g.name for g in q.gens if g.name in names]
    if clash:
        raise CategoryError(f"bimodule generator names clash with the category: {clash}")
    off = len(a.gens)
    gens = a.gens + q.gens
    table = {k: dict(v) for k, v in a.mu.items()}
    for (left, k, right), out in q.action.items():
        key = tuple(left) + (k + off,) + tuple(right)
        table[key] = {o + off: c for o, c in out.items()}
    cat = AInftyCategory(a.objects, gens, table, dict(a.units) if a.units else None, a.field)
    if validate:
        validate_ainfty(cat)
    return cat


def validate_bimodule(q: Bimodule) -> dict:
    """Bimodule relations = A-infinity relations of A + Q on tuples with one Q entry."""
    q.check_degrees()
    ext = trivial_extension(q.base, q, validate=False)
    off = len(q.base.gens)
    return validate_ainfty(ext, must_touch=lambda seq: sum(k >= off for k in seq) == 1,
                           max_arity=max(relation_arity_bound(ext), 1))


def quotient_bimodule(b: AInftyCategory, a: AInftyCategory) -> Bimodule:
    """Q = B / A with the induced A-action; bases are matched by generator name."""
    if a.objects != b.objects:
        raise CategoryError("subcategory must have the same objects")
    emb = {}
    for i, g in enumerate(a.gens):
        if g.name not in b._by_name:
            raise CategoryError(f"{g.name} is not a generator of the ambient category")
        j = b.index(g.name)
        if b.gens[j] != g:
            raise CategoryError(f"{g.name} differs between the two categories")
        emb[j] = i
    for key, out in a.mu.items():
        bkey = tuple(b.index(a.gens[k].name) for k in key)
        bout = b.apply(bkey)
        if {emb[o]: c for o, c in bout.items() if o in emb} != out:
            raise CategoryError(f"structure constant {a.names(key)} differs in the ambient category")
    rest = [j for j in range(len(b.gens)) if j not in emb]
    qidx = {j: n for n, j in enumerate(rest)}
    gens = tuple(b.gens[j] for j in rest)
    action = {}
    for key, out in b.mu.items():
        qpos = [p for p, k in enumerate(key) if k in qidx]
        if len(qpos) != 1:
            continue
        p = qpos[0]
        if not all(k in emb for k in key[:p] + key[p + 1:]):
            continue
        proj = {qidx[o]: c for o, c in out.items() if o in qidx}
        if proj:
            left = tuple(emb[k] for k in key[:p])
            right = tuple(emb[k] for k in key[p + 1:])
            action[(left, qidx[key[p]], right)] = proj
    return Bimodule(a, gens, action)


def rename_bimodule(q: Bimodule, fmt: str) -> Bimodule:
    gens = tuple(Generator(fmt.format(g.name), g.src, g.tgt, g.degree) for g in q.gens)
    return Bimodule(q.base, gens, dict(q.action))
