import io as stdio
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from inscribe import cli
from inscribe.families import make_pn
from inscribe.geometry import INF, CirclePoint, Configuration, Point, circle_embed
from inscribe.io import (
    FormatError,
    chirotope_from_text,
    chirotope_to_text,
    points_from_text,
    points_to_text,
)
from inscribe.order_type import Chirotope, chirotope

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=300)
params = st.one_of(st.just(INF), fracs)
labels = st.text("abcdefghijklmnopqrstuvwxyz0123456789_", min_size=1, max_size=4)


@st.composite
def configurations(draw):
    names = draw(st.lists(labels, min_size=1, max_size=8, unique=True))
    points, circle = {}, {}
    for lbl in names:
        if draw(st.booleans()):
            c = CirclePoint(draw(params))
            circle[lbl] = c
            points[lbl] = circle_embed(c)
        else:
            points[lbl] = Point(draw(fracs), draw(fracs))
    marked = frozenset(l for l in names if draw(st.booleans()))
    return Configuration(points, circle, marked)


@given(configurations())
def test_points_file_byte_roundtrip(cfg):
    text = points_to_text(cfg)
    back = points_from_text(text)
    assert back.points == cfg.points and back.circle == cfg.circle and back.marked == cfg.marked
    assert points_to_text(back) == text


def test_points_file_example():
    cfg = Configuration({"a": Point.of(0, Fraction(1, 2)), "b": Point.of(-1, 0)}, {"b": CirclePoint(INF)}, frozenset("a"))
    text = points_to_text(cfg)
    assert text == "# inscribe-points v1\na 0/1 1/2 B\nb -1/1 0/1 t=1/0\n"
    assert points_from_text("# inscribe-points v1\n# comment\n\na 0 1/2 B  # trailing\nb -1 0 t=1/0\n").points == cfg.points


@pytest.mark.parametrize(
    "text",
    [
        "a 0 0\n",
        "# inscribe-points v1\na 0\n",
        "# inscribe-points v1\na 0 x\n",
        "# inscribe-points v1\na 0 0\na 1 1\n",
        "# inscribe-points v1\na 0 0 Q\n",
        "# inscribe-points v1\na 0 0 t=0\n",
        "# inscribe-points v1\na 0 0 t=2/0\n",
    ],
)
def test_points_format_errors(text):
    with pytest.raises(FormatError):
        points_from_text(text)


def test_chi_roundtrip():
    chi = chirotope(make_pn(3))
    text = chirotope_to_text(chi)
    assert chirotope_from_text(text) == chi
    plain = Chirotope(("0", "1", "2", "3"), (1, 1, -1, 1))
    assert "labels=" not in chirotope_to_text(plain)
    assert chirotope_from_text(chirotope_to_text(plain)) == plain


@pytest.mark.parametrize(
    "text",
    [
        "n=3\n+\n",
        "# inscribe-chi v1\n+\n",
        "# inscribe-chi v1\nn=x\n+\n",
        "# inscribe-chi v1\nn=4\n+++\n",
        "# inscribe-chi v1\nn=3\n*\n",
        "# inscribe-chi v1\nn=3\nlabels=a b\n+\n",
    ],
)
def test_chi_format_errors(text):
    with pytest.raises(FormatError):
        chirotope_from_text(text)


def run(*argv):
    out = stdio.StringIO()
    code = cli.run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def pn3(tmp_path):
    path = tmp_path / "p3.pts"
    code, text = run("gen", "pn", "3")
    assert code == 0
    path.write_text(text)
    return path


def test_cli_gen_and_chi(pn3, tmp_path):
    assert points_from_text(pn3.read_text()).points == make_pn(3).points
    code, text = run("chi", str(pn3))
    assert code == 0 and chirotope_from_text(text) == chirotope(make_pn(3))
    for fam, params in [("star", ["1,3,5,2,4"]), ("nonpascal", []), ("gadget", []), ("pnminus", ["3", "b1"])]:
        code, text = run("gen", fam, *params)
        assert code == 0 and text.startswith("# inscribe-points v1")


def test_cli_canon_is_stable(pn3, tmp_path):
    code, a = run("canon", str(pn3))
    chi_path = tmp_path / "p3.chi"
    chi_path.write_text(run("chi", str(pn3))[1])
    code2, b = run("canon", str(chi_path))
    assert code == code2 == 0 and a == b and a.strip()


def test_cli_count():
    assert run("count", "lozenge", "2", "2", "2") == (0, "20\n")
    code, text = run("count", "conowheel", "5")
    assert code == 0 and text.strip() == "4"
    code, text = run("count", "census", "3")
    assert code == 0 and "N0=1" in text.splitlines()


def test_cli_repr_and_inscribe_pair(tmp_path):
    pair = tmp_path / "pair.txt"
    pair.write_text("2 2\n1 2\n0 1\n")
    code, text = run("inscribe-pair", str(pair))
    assert code == 0
    cfg_path = tmp_path / "pair.pts"
    cfg_path.write_text(text)
    code, text = run("repr", str(cfg_path), "--L", "L", "--R", "R")
    assert code == 0 and text.split() == ["2", "2", "1", "2", "0", "1"]
    assert run("inscribe-pair", str(pair), "--no-push-out")[0] == 0


def test_cli_polygons(tmp_path):
    path = tmp_path / "cross.pts"
    pts = Configuration({"p1": Point.of(Fraction(1, 2), 0), "p2": Point.of(Fraction(-1, 4), Fraction(1, 3)), "p3": Point.of(Fraction(-1, 4), Fraction(-1, 3))})
    path.write_text(points_to_text(pts))
    code, text = run("polygons", str(path))
    assert code == 0 and text.startswith("polygons=")


def test_cli_contains_and_pascal(pn3, tmp_path):
    code, text = run("contains", str(pn3), str(pn3))
    assert code == 0 and "->" in text
    np_path = tmp_path / "np.pts"
    np_path.write_text(run("gen", "nonpascal")[1])
    code, text = run("pascal", str(np_path))
    # the Pascal command reads the first six points
    assert code == 0 and "collinear=false" in text


def test_cli_search_exit_codes(tmp_path, pn3):
    code, _ = run("search", str(pn3), "--B", "hull", "--restarts", "1", "--iters", "1", "--seed", "0")
    assert code == cli.EXIT_NOT_FOUND
    tri = tmp_path / "tri.pts"
    tri.write_text("# inscribe-points v1\na 0 0\nb 4 0\nc 0 4\n")
    code, text = run("search", str(tri), "--B", "hull", "--restarts", "5", "--iters", "200", "--seed", "1")
    assert code == 0
    assert "verdict=InscribedExact" in text
    back = points_from_text(text)
    assert all(l in back.circle for l in "abc")


def test_cli_usage_and_domain_errors(tmp_path):
    assert run("frobnicate")[0] == cli.EXIT_USAGE
    assert run("chi", str(tmp_path / "missing.pts"))[0] == cli.EXIT_USAGE
    assert run("gen", "star", "2,1,3")[0] == cli.EXIT_DOMAIN
    bad = tmp_path / "bad.pts"
    bad.write_text("not a points file\n")
    assert run("chi", str(bad))[0] == cli.EXIT_DOMAIN
