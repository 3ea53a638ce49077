from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from curvedhh.ainfty import validate_ainfty
from curvedhh.catfile import parse_category
from curvedhh.examples import EXAMPLES, am_quiver, gen_am_quiver, gen_branched_cover, gen_two_spheres, generate
from curvedhh.linalg import GF


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_branched_cover_hom_dimensions(m):
    _, b = gen_branched_cover(m)
    for i in range(m):
        for j in range(m):
            want = 2 if i == j else 1 if abs(i - j) == 1 else 0
            assert len(b.hom(i, j)) == want, (i, j)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_branched_cover_validates_for_any_grading(m, gr):
    _, b = gen_branched_cover(m, gr[:m - 1])
    assert validate_ainfty(b)["ok"]


def test_branched_cover_grading_lands_on_adjacent_morphisms():
    _, b = gen_branched_cover(3, [2, -1])
    degs = {g.name: g.degree for g in b.gens}
    assert degs["u12p1"] == 2 and degs["u21p1"] == -2
    assert degs["u23p2"] == -1 and degs["u32p2"] == 1


def test_branched_cover_rejects_wrong_grading_count():
    with pytest.raises(ValueError):
        gen_branched_cover(3, [0])


@pytest.mark.parametrize("d", [2, 3, 4])
def test_two_spheres_homs(d):
    _, b = gen_two_spheres(d)
    assert all(len(b.hom(i, j)) == 2 for i in range(2) for j in range(2))
    assert sorted({g.degree for g in b.gens}) == [0, d - 1]


def test_two_spheres_needs_d_at_least_two():
    with pytest.raises(ValueError):
        gen_two_spheres(1)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_am_quiver_extension_validates(m, d):
    a, b = gen_am_quiver(m, d)
    assert validate_ainfty(b)["ok"]
    assert len(b.gens) == 2 * len(a.gens)
    # the Q-copy of each generator sits in the opposite direction, degree d - 1 - |x|
    q = {g.name: g for g in b.gens if g.name.startswith("q")}
    for g in a.gens:
        dual = q["q" + g.name]
        assert (dual.src, dual.tgt, dual.degree) == (g.tgt, g.src, d - 1 - g.degree)


def test_one_object_quiver_is_ke_plus_kq():
    _, b = gen_am_quiver(1, 3)
    assert [(g.name, g.degree) for g in b.gens] == [("e", 0), ("qe", 2)]
    assert b.apply((1, 1)) == {}


def test_am_quiver_arrows_compose_to_zero():
    a = am_quiver(3)
    assert all(len(k) != 2 or any(a.is_unit(x) for x in k) for k in a.mu)


def test_prime_field_build():
    _, b = gen_branched_cover(2, field=GF(3))
    assert b.field == GF(3)
    assert validate_ainfty(b)["ok"]


def test_generate_dispatch():
    assert set(EXAMPLES) == {"branched_cover", "two_spheres", "am_quiver", "empty"}
    a, b = generate("am_quiver", m=3, d=2)
    assert b.m == 3 and a.m == 3
    with pytest.raises(KeyError):
        generate("nope")


SHIPPED = {
    "branched_cover_m2": ("branched_cover", {}),
    "branched_cover_m3": ("branched_cover", {"m": 3}),
    "two_spheres_d2": ("two_spheres", {}),
    "am_quiver_m2_d3": ("am_quiver", {}),
    "am_quiver_m1_d2": ("am_quiver", {"m": 1, "d": 2}),
    "empty": ("empty", {}),
}


@pytest.mark.parametrize("fixture", sorted(SHIPPED))
def test_shipped_fixture_matches_generator(fixture):
    name, params = SHIPPED[fixture]
    text = resources.files("curvedhh").joinpath(f"fixtures/{fixture}.cat").read_text()
    assert parse_category(text, fixture) == generate(name, **params)[1]
