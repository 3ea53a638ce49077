"""Plain-text category descriptions.

One record per line, ``#`` starts a comment::

    field Q                      # or a prime: 2, 3, ...
    objects X1 X2
    gen e1 X1 X1 0               # name, source, target, degree
    gen a  X1 X2 1
    unit X1 e1
    mu b a -> f1 -1/2            # mu^2(b, a) has coefficient -1/2 on f1

Inputs of ``mu`` are listed as in mu^n(a_n, ..., a_1).  Products with a
unit are filled in automatically and may be omitted; the writer omits them.
Coefficients are exact: integers or ``a/b`` (reduced mod p over a prime
field).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .ainfty import (AInftyCategory, CategoryError, DegreeError, Generator, RelationViolation, complete_units,
                     validate_ainfty)
from .linalg import Field, QQ

KEYWORDS = ("field", "objects", "gen", "unit", "mu")


class CategoryFileError(Exception):
    """Diagnostic with a stable code and a source position."""

    def __init__(self, code: str, message: str, line: int = 0, column: int = 0, source: str = "<text>"):
        self.code = code
        self.line = line
        self.column = column
        self.source = source
        self.message = message
        super().__init__(self.render())

    @property
    def is_syntax(self) -> bool:
        return self.code in ("E-SYNTAX", "E-UNKNOWN-KEY", "E-IO")

    def render(self) -> str:
        where = f"{self.source}:{self.line}:{self.column}" if self.line else self.source
        return f"error[{self.code}] {where}: {self.message}"


@dataclass
class _Token:
    text: str
    col: int


def _tokens(line: str) -> list[_Token]:
    out = []
    i = 0
    n = len(line)
    while i < n:
        if line[i] == "#":
            break
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] != "#":
            j += 1
        out.append(_Token(line[i:j], i + 1))
        i = j
    return out


def _coefficient(tok: _Token, field: Field, lineno: int, src: str):
    try:
        value = Fraction(tok.text)
    except (ValueError, ZeroDivisionError):
        raise CategoryFileError("E-SYNTAX", f"bad coefficient {tok.text!r}", lineno, tok.col, src) from None
    if "." in tok.text or "e" in tok.text.lower():
        raise CategoryFileError("E-SYNTAX", f"coefficient {tok.text!r} is not an exact literal", lineno, tok.col, src)
    try:
        return field(value)
    except ZeroDivisionError:
        raise CategoryFileError("E-SYNTAX", f"{tok.text} has no value mod {field.p}", lineno, tok.col, src) from None


def parse_category(text: str, source: str = "<text>", validate: bool = True) -> AInftyCategory:
    """Parse and (by default) validate a category description."""
    field: Field | None = None
    objects: list[str] | None = None
    gens: list[Generator] = []
    gen_line: dict[str, int] = {}
    units: dict[int, int] = {}
    records: list[tuple[int, tuple[int, ...], int, object, int]] = []

    def need_objects(lineno, col):
        if objects is None:
            raise CategoryFileError("E-SYNTAX", "'objects' must come first", lineno, col, source)

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        key = toks[0]
        args = toks[1:]
        if key.text not in KEYWORDS:
            raise CategoryFileError("E-UNKNOWN-KEY", f"unknown record {key.text!r}", lineno, key.col, source)
        if key.text == "field":
            if len(args) != 1:
                raise CategoryFileError("E-SYNTAX", "field takes one argument", lineno, key.col, source)
            if field is not None:
                raise CategoryFileError("E-SYNTAX", "field given twice", lineno, key.col, source)
            try:
                field = Field.parse(args[0].text)
            except Exception as e:  # noqa: BLE001 - any parse failure is a syntax error here
                raise CategoryFileError("E-SYNTAX", str(e), lineno, args[0].col, source) from None
        elif key.text == "objects":
            if objects is not None:
                raise CategoryFileError("E-SYNTAX", "objects given twice", lineno, key.col, source)
            names = [t.text for t in args]
            for t in args:
                if names.count(t.text) > 1:
                    raise CategoryFileError("E-SYNTAX", f"object {t.text} repeated", lineno, t.col, source)
            objects = names
        elif key.text == "gen":
            need_objects(lineno, key.col)
            if len(args) != 4:
                raise CategoryFileError("E-SYNTAX", "gen takes: name source target degree", lineno, key.col, source)
            name, s, t, deg = args
            if name.text in gen_line:
                raise CategoryFileError("E-SYNTAX", f"generator {name.text} already defined on line "
                                        f"{gen_line[name.text]}", lineno, name.col, source)
            for tok in (s, t):
                if tok.text not in objects:
                    raise CategoryFileError("E-DANGLING", f"unknown object {tok.text!r}", lineno, tok.col, source)
            try:
                d = int(deg.text)
            except ValueError:
                raise CategoryFileError("E-SYNTAX", f"degree {deg.text!r} is not an integer",
                                        lineno, deg.col, source) from None
            gen_line[name.text] = lineno
            gens.append(Generator(name.text, objects.index(s.text), objects.index(t.text), d))
        elif key.text == "unit":
            need_objects(lineno, key.col)
            if len(args) != 2:
                raise CategoryFileError("E-SYNTAX", "unit takes: object generator", lineno, key.col, source)
            o, g = args
            if o.text not in objects:
                raise CategoryFileError("E-DANGLING", f"unknown object {o.text!r}", lineno, o.col, source)
            if g.text not in gen_line:
                raise CategoryFileError("E-DANGLING", f"unknown generator {g.text!r}", lineno, g.col, source)
            gi = [x.name for x in gens].index(g.text)
            gg = gens[gi]
            oi = objects.index(o.text)
            if gg.src != oi or gg.tgt != oi or gg.degree != 0:
                raise CategoryFileError("E-UNIT", f"{g.text} is not a degree 0 endomorphism of {o.text}",
                                        lineno, g.col, source)
            if oi in units:
                raise CategoryFileError("E-UNIT", f"{o.text} already has a unit", lineno, o.col, source)
            units[oi] = gi
        else:  # mu
            need_objects(lineno, key.col)
            arrow = [i for i, t in enumerate(args) if t.text == "->"]
            if len(arrow) != 1 or arrow[0] == 0 or len(args) - arrow[0] != 3:
                raise CategoryFileError("E-SYNTAX", "mu takes: inputs... -> output coefficient",
                                        lineno, key.col, source)
            ins = args[:arrow[0]]
            out, coef = args[arrow[0] + 1:]
            names = [x.name for x in gens]
            for tok in ins + [out]:
                if tok.text not in gen_line:
                    raise CategoryFileError("E-DANGLING", f"unknown generator {tok.text!r}", lineno, tok.col, source)
            records.append((lineno, tuple(names.index(t.text) for t in ins), names.index(out.text),
                            coef, key.col))
    if objects is None:
        objects = []
    field = QQ if field is None else field
    if len(units) not in (0, len(objects)):
        missing = [objects[i] for i in range(len(objects)) if i not in units]
        raise CategoryFileError("E-UNIT", f"objects without a unit: {missing}", 0, 0, source)
    table: dict[tuple[int, ...], dict[int, object]] = {}
    origin: dict[tuple[int, ...], int] = {}
    for lineno, key, out, coef, col in records:
        c = _coefficient(coef, field, lineno, source)
        slot = table.setdefault(key, {})
        if out in slot:
            raise CategoryFileError("E-SYNTAX", "duplicate structure constant", lineno, col, source)
        slot[out] = c
        origin.setdefault(key, lineno)
        # degree rule, checked per record so the diagnostic can point at it
        chain = [gens[k] for k in key]
        if any(chain[i].src != chain[i + 1].tgt for i in range(len(chain) - 1)):
            raise CategoryFileError("E-DEGREE", "inputs are not composable", lineno, col, source)
        g = gens[out]
        if (g.src, g.tgt) != (chain[-1].src, chain[0].tgt):
            raise CategoryFileError("E-DEGREE", f"output {g.name} does not join the chain ends", lineno, col, source)
        want = sum(x.degree for x in chain) + 2 - len(chain)
        if g.degree != want:
            raise CategoryFileError("E-DEGREE", f"output {g.name} has degree {g.degree}, the inputs need {want}",
                                    lineno, col, source)
    try:
        cat = AInftyCategory(tuple(objects), tuple(gens), table, units or None, field)
        if units:
            cat = complete_units(cat)
    except CategoryError as e:
        raise CategoryFileError("E-UNIT", str(e), 0, 0, source) from None
    if validate:
        try:
            validate_ainfty(cat)
        except RelationViolation as e:
            raise CategoryFileError("E-RELATION", str(e), 0, 0, source) from None
        except DegreeError as e:
            raise CategoryFileError("E-DEGREE", str(e), 0, 0, source) from None
    return cat


def read_category(path: str | Path, validate: bool = True) -> AInftyCategory:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise CategoryFileError("E-IO", f"cannot read: {e.strerror}", 0, 0, str(p)) from None
    return parse_category(text, str(p), validate)


def _literal(c) -> str:
    return str(Fraction(c))


def write_category(cat: AInftyCategory, header: str | None = None) -> str:
    """Serialise ``cat``; unit products are left implicit."""
    lines = []
    if header:
        lines += [f"# {ln}" if ln else "#" for ln in header.splitlines()]
    f = cat.field
    lines.append(f"field {'Q' if f.p is None else f.p}")
    lines.append("objects" + "".join(f" {o}" for o in cat.objects))
    for g in cat.gens:
        lines.append(f"gen {g.name} {cat.objects[g.src]} {cat.objects[g.tgt]} {g.degree}")
    for obj, u in sorted((cat.units or {}).items()):
        lines.append(f"unit {cat.objects[obj]} {cat.gens[u].name}")
    for key in sorted(cat.mu, key=lambda k: (len(k), k)):
        if cat.units and len(key) == 2 and any(cat.is_unit(k) for k in key):
            continue
        for out, c in sorted(cat.mu[key].items()):
            ins = " ".join(cat.gens[k].name for k in key)
            lines.append(f"mu {ins} -> {cat.gens[out].name} {_literal(c)}")
    return "\n".join(lines) + "\n"


def category_hash(cat: AInftyCategory) -> str:
    return hashlib.sha256(write_category(cat).encode()).hexdigest()[:16]

