"""Exact linear algebra over Q and prime fields.

Everything here is exact: rationals are Python ``Fraction``/``int`` and prime
field elements are canonical residues ``0 <= x < p``.  Matrices are sparse
and immutable; rank and homology are pure functions of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping


class ConfigurationError(ValueError):
    """Incompatible fields or malformed linear-algebra input."""


class InvalidComplexError(ValueError):
    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"d o d != 0 at cohomological degree {degree}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ConfigurationError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return self.name

    def __call__(self, value) -> Fraction | int:
        """Coerce an int / Fraction / residue string into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise ConfigurationError(f"scalar over {value.field} used over {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            v = Fraction(value)
            return v.numerator if v.denominator == 1 else v
        v = Fraction(value)
        den = v.denominator % self.p
        if den == 0:
            raise ConfigurationError(f"{value} has no image in {self}")
        return (v.numerator * pow(den, -1, self.p)) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / Fraction(a)

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(None)
        for prefix in ("F", "GF", "Z/"):
            if t.startswith(prefix) and t[len(prefix):].isdigit():
                return cls(int(t[len(prefix):]))
        if t.isdigit():
            return cls(int(t))
        raise ConfigurationError(f"unknown field {text!r}; use Q or Fp")


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; arithmetic refuses to mix fields."""

    value: Fraction | int
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other) -> Fraction | int:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ConfigurationError(f"cannot mix {self.field} and {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field.add(self.value, self._other(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field.sub(self.value, self._other(other)), self.field)

    def __rsub__(self, other):
        return Scalar(self.field.sub(self._other(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar(self.field.mul(self.value, self._other(other)), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inverse(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return self * Scalar(self._other(other), self.field).inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (ConfigurationError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Scalar({self.value}, {self.field})"


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix; ``entries`` maps ``(row, col)`` to a nonzero value."""

    rows: int
    cols: int
    field: Field = QQ
    entries: Mapping[tuple[int, int], Fraction | int] = dc_field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ConfigurationError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = self.field(v)
            if v != 0:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_triples(cls, rows: int, cols: int, triples: Iterable[tuple], field: Field | None = None):
        """Build from ``(row, col, value)`` triples.

        Values may be ``Scalar`` objects, in which case they must all share one
        field.  Duplicate positions are rejected.
        """
        triples = list(triples)
        fields = {v.field for _, _, v in triples if isinstance(v, Scalar)}
        if field is not None:
            fields.add(field)
        if len(fields) > 1:
            raise ConfigurationError(f"mixed fields in matrix: {sorted(map(str, fields))}")
        fld = fields.pop() if fields else QQ
        entries = {}
        for i, j, v in triples:
            if (i, j) in entries:
                raise ConfigurationError(f"duplicate entry at ({i}, {j})")
            entries[(i, j)] = v.value if isinstance(v, Scalar) else v
        return cls(rows, cols, fld, entries)

    @classmethod
    def from_dense(cls, rows: list[list], field: Field = QQ):
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, field, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ):
        return cls(rows, cols, field, {})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, object]]:
        out: list[dict[int, object]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, self.field, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ConfigurationError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field != other.field:
            raise ConfigurationError(f"cannot multiply over {self.field} and {other.field}")
        f = self.field
        by_row = other.row_dicts()
        acc: dict[tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row[k].items():
                key = (i, j)
                acc[key] = f.add(acc.get(key, 0), f.mul(a, b))
        return SparseMatrix(self.rows, other.cols, f, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def permuted(self, row_perm: list[int], col_perm: list[int]) -> "SparseMatrix":
        """Entry (i, j) moves to (row_perm[i], col_perm[j])."""
        return SparseMatrix(self.rows, self.cols, self.field,
                            {(row_perm[i], col_perm[j]): v for (i, j), v in self.entries.items()})


# ---------------------------------------------------------------------------
# elimination


def _echelon_mod_p(rows: list[dict[int, int]], p: int) -> dict[int, dict[int, int]]:
    """Reduce rows in order; returns pivot column -> monic pivot row."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: (v * inv) % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in prow.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return pivots


def _primitive(r: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r
    if g > 1:
        return {k: v // g for k, v in r.items()}
    return r


def _integer_row(row: dict[int, object]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return _primitive({k: int(v * den) for k, v in row.items()})


def _echelon_rational(rows: list[dict[int, object]]) -> dict[int, dict[int, int]]:
    """Fraction-free elimination over Z with content removal after every step."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = _integer_row(row)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                if r[c] < 0:
                    r = {k: -v for k, v in r.items()}
                pivots[c] = r
                break
            a = prow[c]
            b = r[c]
            g = gcd(a, b)
            a //= g
            b //= g
            nr = {k: a * v for k, v in r.items()}
            for k, v in prow.items():
                nv = nr.get(k, 0) - b * v
                if nv:
                    nr[k] = nv
                else:
                    nr.pop(k, None)
            r = _primitive(nr)
    return pivots


def echelon(m: SparseMatrix) -> dict[int, dict[int, object]]:
    """Row echelon form of ``m``: maps pivot column to its (scaled) pivot row."""
    rows = [r for r in m.row_dicts() if r]
    if m.field.p is None:
        return _echelon_rational(rows)
    return _echelon_mod_p(rows, m.field.p)


def rank(m: SparseMatrix) -> int:
    """Exact rank of ``m`` over its field."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    # eliminate along the shorter side
    if m.rows > m.cols:
        m = m.transpose()
    return len(echelon(m))


def nullspace(m: SparseMatrix) -> list[dict[int, object]]:
    """Basis of ``{v : m v = 0}`` as sparse column vectors (index -> value)."""
    f = m.field
    piv = echelon(m)
    # back-substitute into reduced echelon form
    cols = sorted(piv, reverse=True)
    reduced: dict[int, dict[int, object]] = {}
    for c in cols:
        r = {k: f(v) for k, v in piv[c].items()}
        inv = f.inv(r[c])
        r = {k: f.mul(v, inv) for k, v in r.items()}
        for k in [k for k in r if k != c and k in reduced]:
            coef = r.get(k)
            if not coef:
                continue
            for kk, vv in reduced[k].items():
                nv = f.sub(r.get(kk, 0), f.mul(coef, vv))
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        reduced[c] = r
    basis = []
    for free in range(m.cols):
        if free in piv:
            continue
        v = {free: 1}
        for c, r in reduced.items():
            coef = r.get(free)
            if coef:
                v[c] = f.neg(coef)
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# chain complexes


@dataclass(frozen=True)
class FiniteChainComplex:
    """Cochain complex ``C^lo -> ... -> C^hi`` with sparse differentials.

    ``differentials[k]`` is the matrix of ``d: C^k -> C^{k+1}`` with shape
    ``(dim C^{k+1}, dim C^k)``.  Missing degrees have dimension zero.
    """

    dims: Mapping[int, int]
    differentials: Mapping[int, SparseMatrix]
    field: Field = QQ
    labels: Mapping[int, list] | None = None

    def __post_init__(self):
        dims = {k: v for k, v in self.dims.items() if v}
        object.__setattr__(self, "dims", dict(sorted(dims.items())))
        for k, d in self.differentials.items():
            if d.shape != (self.dim(k + 1), self.dim(k)):
                raise ConfigurationError(
                    f"differential at degree {k} has shape {d.shape}, "
                    f"expected {(self.dim(k + 1), self.dim(k))}")
            if d.field != self.field:
                raise ConfigurationError(f"differential at degree {k} is over {d.field}, complex over {self.field}")

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    @property
    def degrees(self) -> range:
        if not self.dims:
            return range(0)
        return range(min(self.dims), max(self.dims) + 1)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def d(self, k: int) -> SparseMatrix:
        m = self.differentials.get(k)
        if m is None:
            return SparseMatrix.zero(self.dim(k + 1), self.dim(k), self.field)
        return m

    def check_d_squared(self) -> None:
        for k in self.degrees:
            a = self.differentials.get(k)
            b = self.differentials.get(k + 1)
            if a is None or b is None or a.is_zero() or b.is_zero():
                continue
            if not (b @ a).is_zero():
                raise InvalidComplexError(k)

    def shifted(self, n: int) -> "FiniteChainComplex":
        """``C[n]``: the group in degree k becomes the old group in degree k + n.

        Differential signs are left alone; homology does not see them.
        """
        labels = None if self.labels is None else {k - n: v for k, v in self.labels.items()}
        return FiniteChainComplex({k - n: v for k, v in self.dims.items()},
                                  {k - n: v for k, v in self.differentials.items()}, self.field, labels)

    def dual(self) -> "FiniteChainComplex":
        """Linear dual, regraded cohomologically: ``(C^vee)^k = (C^{-k})^*``."""
        dims = {-k: v for k, v in self.dims.items()}
        diffs = {-(k + 1): m.transpose() for k, m in self.differentials.items()}
        labels = None if self.labels is None else {-k: v for k, v in self.labels.items()}
        return FiniteChainComplex(dims, diffs, self.field, labels)


def homology_dims(c: FiniteChainComplex, check: bool = True) -> dict[int, int]:
    """Cohomology dimensions ``dim ker d_k - rank d_{k-1}``, zero entries omitted."""
    if check:
        c.check_d_squared()
    ranks = {k: rank(m) for k, m in c.differentials.items()}
    out = {}
    for k in c.degrees:
        h = c.dim(k) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if h:
            out[k] = h
    return out


def euler_characteristic(c: FiniteChainComplex) -> int:
    return sum((-1) ** (k % 2) * n for k, n in c.dims.items())


def homological(h: Mapping[int, int]) -> dict[int, int]:
    """Negate degrees: cohomological bookkeeping to homological display."""
    return {-k: v for k, v in sorted(h.items(), key=lambda kv: -kv[0])}
