from importlib import resources

import pytest

from curvedhh import cli as cli_mod
from curvedhh.catfile import parse_category
from curvedhh.examples import gen_two_spheres
from curvedhh.hochschild import ConventionViolation, build_curved, truncated_hochschild_betti
from curvedhh.report import BettiReport


def fixture(name):
    return str(resources.files("curvedhh").joinpath(f"fixtures/{name}.cat"))


def run(capsys, *argv):
    with pytest.raises(SystemExit) as e:
        cli_mod.main(list(argv))
    out = capsys.readouterr()
    return e.value.code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", fixture("two_spheres_d2"))
    assert code == 0 and out.startswith("ok ")


def test_hochschild_table(capsys):
    code, out, _ = run(capsys, "hochschild", fixture("branched_cover_m2"), "--pmax", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# hochschild over Q, input ")
    assert lines[1:] == ["p  -4  -2  -1  0", "0              2", "1       3   1", "2   3       1"]


def test_hochschild_csv_matches_memory_and_is_stable(capsys, tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(capsys, "hochschild", fixture("two_spheres_d2"), "--pmax", "2", "--csv", str(a))
    run(capsys, "hochschild", fixture("two_spheres_d2"), "--pmax", "2", "--csv", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()
    rep = BettiReport.read(a)
    a2, b2 = gen_two_spheres(2)
    d = build_curved(a2, b2, 2)
    assert rep == BettiReport({p: truncated_hochschild_betti(d, p) for p in range(3)}, "Q")
    assert len(rep.input_hash) == 16


def test_plot_written(capsys, tmp_path):
    png = tmp_path / "h.png"
    code, out, _ = run(capsys, "hochschild", fixture("branched_cover_m2"), "--pmax", "1", "--plot", str(png))
    assert code == 0 and png.stat().st_size > 1000
    assert f"# figure: {png}" in out


def test_empty_fixture(capsys):
    code, out, _ = run(capsys, "hochschild", fixture("empty"), "--pmax", "2")
    assert code == 0 and out.splitlines()[1:] == ["p", "0", "1", "2"]
    for cmd in ("bar", "connes", "e1"):
        assert run(capsys, cmd, fixture("empty"))[0] == 0
    code, out, _ = run(capsys, "donaldson", fixture("empty"), "--d", "2")
    assert code == 0 and out.splitlines()[-1] == "degree,dim"


def test_field_override(capsys):
    code, out, _ = run(capsys, "hochschild", fixture("two_spheres_d2"), "--pmax", "3", "--field", "F2")
    assert code == 0 and "over F2" in out


def test_bad_category_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("objects X\ngen e X X 0\ngen x X X 1\ngen f X X 1\nunit X e\nmu x x -> f 1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and err.startswith("error[E-DEGREE]") and ":6:" in err
    bad.write_text("objects X\nfoo\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and err.startswith("error[E-UNKNOWN-KEY]")
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.cat"))
    assert code == 2 and err.startswith("error[E-IO]")


def test_usage_error(capsys):
    code, _, err = run(capsys, "hochschild")
    assert code == 2 and err.startswith("error[E-USAGE]")


def test_convention_violation_exit_code(capsys, monkeypatch):
    def boom(*_):
        raise ConventionViolation("d o d != 0 at degree 3")

    monkeypatch.setattr(cli_mod, "truncated_hochschild_betti", boom)
    code, _, err = run(capsys, "hochschild", fixture("branched_cover_m2"), "--pmax", "1")
    assert code == 3 and err.startswith("error[E-CONVENTION]")


def test_gen_output_parses(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "two_spheres", "-p", "d=3")
    assert code == 0
    assert parse_category(out) == gen_two_spheres(3)[1]
    code, _, err = run(capsys, "gen", "branched_cover", "-p", "m=3", "-p", "gradings=1,2",
                       "-o", str(tmp_path / "x.cat"))
    assert code == 0 and (tmp_path / "x.cat").exists()
    code, _, err = run(capsys, "gen", "two_spheres", "-p", "d=1")
    assert code == 2 and err.startswith("error[E-PARAM]")


def test_connes_warning_banner(capsys):
    code, out, err = run(capsys, "connes", fixture("two_spheres_d2"), "--pmax", "1", "--field", "2")
    assert code == 0 and err.startswith("warning[W-CHARACTERISTIC]")
    code, out, err = run(capsys, "connes", fixture("two_spheres_d2"), "--pmax", "1")
    assert err == ""


def test_bar_checks(capsys):
    code, out, _ = run(capsys, "bar", fixture("am_quiver_m2_d3"), "--pmax", "2",
                       "--check-insert-a", "--check-serre-step", "--q-words")
    assert code == 0
    assert "# insert-a cone acyclic" in out
    assert "agree" in out


def test_e1_and_donaldson(capsys):
    code, out, _ = run(capsys, "e1", fixture("two_spheres_d2"), "--pmax", "2")
    assert code == 0 and "# weight-0 column is R: yes" in out
    code, out, _ = run(capsys, "donaldson", fixture("two_spheres_d2"), "--d", "2")
    assert code == 0 and out.splitlines()[-3:] == ["degree,dim", "1,2", "2,2"]
