"""Generators for the bundled example categories.

Each generator returns ``(A, B)`` with ``A = directed_subcategory(B)``.

``branched_cover``
    Morsification of x^(m+1): the fibre is m+1 points p_0..p_m and the
    vanishing cycles are the S^0's L_j = {p_{j-1}, p_j}.  Floer complexes of
    zero-dimensional Lagrangians are spanned by common points, with degree
    gr_{L'}(p) - gr_L(p), and composition is concatenation at a shared point.
    There are no polygons, so mu^n = 0 for n >= 3.
``two_spheres``
    Fibre T*S^{d-1} with two copies of the zero section.  Both hom spaces are
    H^*(S^{d-1}) = span(e, x), |x| = d - 1; after perturbation hom(X_1, X_2)
    has the two intersection points in the same degrees.  The category is the
    formal 2x2 matrix category over H^*(S^{d-1}); higher products vanish for
    degree reasons when d > 2 and the formal model already reproduces the
    published tables when d = 2, so no mu^3 is added.
``am_quiver``
    The A_m chain (adjacent spheres meet once): A is the A_m quiver with all
    length-two paths zero, B = A + A^vee[1 - d].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .ainfty import (AInftyCategory, Bimodule, Generator, dual_bimodule, directed_subcategory,
                     shift_bimodule, trivial_extension, validate_ainfty, with_units)
from .linalg import QQ, Field


@dataclass
class ExampleDescriptor:
    name: str
    params: dict
    notes: str
    build: Callable[..., tuple[AInftyCategory, AInftyCategory]] = dc_field(repr=False)


def _mu2_from_composition(gens, comp):
    """Turn an associative graded composition into signed mu^2.

    ``comp[(g2, g1)] = {g: c}`` means g2 o g1 = sum c g (g1 first).
    mu^2(a2, a1) = (-1)^|a1| a2 o a1.
    """
    deg = {g.name: g.degree for g in gens}
    mu = {}
    for (g2, g1), out in comp.items():
        s = -1 if deg[g1] % 2 else 1
        vals = {k: s * v for k, v in out.items() if v}
        if vals:
            mu[(g2, g1)] = vals
    return mu


def point_category(objects: list[str], points: list[dict[str, int]], field: Field = QQ) -> AInftyCategory:
    """Fukaya-type category of graded finite point sets.

    ``points[j]`` maps point label -> grading for object j.  The first point
    of each object (in insertion order) is absorbed into the unit: the
    endomorphism basis is e_j plus idempotents at the remaining points.
    """
    m = len(objects)
    # point basis u[(j, k, p)] : X_j -> X_k supported at p
    raw = []
    for j in range(m):
        for k in range(m):
            for p in points[j]:
                if p in points[k]:
                    raw.append((j, k, p, points[k][p] - points[j][p]))
    gens = []
    expand = {}  # new generator name -> {raw key: coef}
    for j in range(m):
        e = f"e{j + 1}" if m > 1 else "e"
        gens.append(Generator(e, j, j, 0))
        expand[e] = {(j, j, p): 1 for p in points[j]}
        for p in list(points[j])[1:]:
            nm = f"f{j + 1}{p}" if m > 1 else f"f{p}"
            gens.append(Generator(nm, j, j, 0))
            expand[nm] = {(j, j, p): 1}
    for (j, k, p, deg) in raw:
        if j == k:
            continue
        nm = f"u{j + 1}{k + 1}{p}"
        gens.append(Generator(nm, j, k, deg))
        expand[nm] = {(j, k, p): 1}
    # express raw elements in the new basis
    to_new: dict[tuple, dict[str, int]] = {}
    for j in range(m):
        pts = list(points[j])
        first = pts[0]
        e = f"e{j + 1}" if m > 1 else "e"
        v = {e: 1}
        for p in pts[1:]:
            v[f"f{j + 1}{p}" if m > 1 else f"f{p}"] = -1
        to_new[(j, j, first)] = v
        for p in pts[1:]:
            to_new[(j, j, p)] = {f"f{j + 1}{p}" if m > 1 else f"f{p}": 1}
    for (j, k, p, deg) in raw:
        if j != k:
            to_new[(j, k, p)] = {f"u{j + 1}{k + 1}{p}": 1}
    comp = {}
    for g1 in gens:
        for g2 in gens:
            if g2.src != g1.tgt:
                continue
            acc: dict[str, int] = {}
            for (j, k, p), c1 in expand[g1.name].items():
                for (k2, l, q), c2 in expand[g2.name].items():
                    if k2 != k or q != p:
                        continue
                    for nm, c3 in to_new[(j, l, p)].items():
                        acc[nm] = acc.get(nm, 0) + c1 * c2 * c3
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                comp[(g2.name, g1.name)] = acc
    mu = _mu2_from_composition(gens, comp)
    units = {objects[j]: (f"e{j + 1}" if m > 1 else "e") for j in range(m)}
    # unit products are recomputed by with_units; drop them here
    unit_names = set(units.values())
    mu = {k: v for k, v in mu.items() if not (set(k) & unit_names)}
    return with_units(objects, gens, mu, units, field)


def gen_branched_cover(m: int = 2, gradings: list[int] | None = None, field: Field = QQ):
    """(A, B) for the Morsification of x^(m+1), fibre m+1 points, d = 1.

    ``gradings[j]`` is the degree of the morphism X_{j+1} -> X_{j+2} at their
    common point (default all zero); the reverse morphism gets the negative.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    if isinstance(gradings, int):
        gradings = [gradings]
    gr = list(gradings) if gradings is not None else [0] * (m - 1)
    if len(gr) != m - 1:
        raise ValueError("one grading per adjacent pair")
    objects = [f"X{j + 1}" for j in range(m)]
    # object j holds points p_j, p_{j+1}; shift so that u_{j,j+1} at p_{j+1} has degree gr[j]
    offset = [0] * m
    for j in range(1, m):
        offset[j] = offset[j - 1] + gr[j - 1]
    points = [{f"p{j}": offset[j], f"p{j + 1}": offset[j]} for j in range(m)]
    b = point_category(objects, points, field)
    validate_ainfty(b)
    return directed_subcategory(b), b


def gen_two_spheres(d: int = 2, field: Field = QQ):
    """(A, B) for two identical vanishing cycles S^{d-1} in T*S^{d-1}."""
    if d < 2:
        raise ValueError("two_spheres needs d >= 2 (H^*(S^0) is not a square-zero extension)")
    gens = []
    for i in (1, 2):
        for j in (1, 2):
            gens.append(Generator(f"e{i}{j}" if i != j else f"e{i}", i - 1, j - 1, 0))
            gens.append(Generator(f"x{i}{j}", i - 1, j - 1, d - 1))

    def e(i, j):
        return f"e{i}" if i == j else f"e{i}{j}"

    comp = {}
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                comp[(e(j, k), e(i, j))] = {e(i, k): 1}
                comp[(e(j, k), f"x{i}{j}")] = {f"x{i}{k}": 1}
                comp[(f"x{j}{k}", e(i, j))] = {f"x{i}{k}": 1}
    mu = _mu2_from_composition(gens, comp)
    units = {"X1": "e1", "X2": "e2"}
    mu = {k: v for k, v in mu.items() if not (set(k) & set(units.values()))}
    b = with_units(["X1", "X2"], gens, mu, units, field)
    validate_ainfty(b)
    return directed_subcategory(b), b


def am_quiver(m: int, arrow_degree: int = 0, field: Field = QQ) -> AInftyCategory:
    """Directed A_m chain: arrows a_j: X_j -> X_{j+1}, all compositions zero."""
    objects = [f"X{j + 1}" for j in range(m)]
    gens = [Generator(f"e{j + 1}" if m > 1 else "e", j, j, 0) for j in range(m)]
    gens += [Generator(f"a{j + 1}", j, j + 1, arrow_degree) for j in range(m - 1)]
    units = {objects[j]: gens[j].name for j in range(m)}
    return with_units(objects, gens, {}, units, field)


def gen_am_quiver(m: int = 2, d: int = 3, arrow_degree: int = 0, field: Field = QQ):
    """(A, B) with B = A + A^vee[1 - d] (square-zero extension)."""
    if m < 1:
        raise ValueError("need m >= 1")
    a = am_quiver(m, arrow_degree, field)
    q = shift_bimodule(dual_bimodule(a), 1 - d)
    # dual names e1^ / a1^ become q-generators qe1 / qa1
    q = Bimodule(a, tuple(Generator("q" + g.name.rstrip("^"), g.src, g.tgt, g.degree) for g in q.gens), q.action)
    b = trivial_extension(a, q)
    return directed_subcategory(b), b


def gen_empty(field: Field = QQ):
    c = AInftyCategory((), (), {}, {}, field)
    return c, c


EXAMPLES = {
    "branched_cover": ExampleDescriptor(
        "branched_cover", {"m": 2},
        "d = 1: m+1 points, vanishing cycles {p_{j-1}, p_j}; point gradings 0; mu^2 only",
        gen_branched_cover),
    "two_spheres": ExampleDescriptor(
        "two_spheres", {"d": 2},
        "two copies of S^{d-1} in T*S^{d-1}; formal Mat_2(H^*(S^{d-1})); mu^2 only",
        gen_two_spheres),
    "am_quiver": ExampleDescriptor(
        "am_quiver", {"m": 2, "d": 3},
        "A_m chain with B = A + A^vee[1-d]; the square-zero (split) case",
        gen_am_quiver),
    "empty": ExampleDescriptor("empty", {}, "no vanishing cycles", gen_empty),
}


def generate(name: str, **params):
    try:
        desc = EXAMPLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return desc.build(**params)
