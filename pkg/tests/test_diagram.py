from dataclasses import replace

import pytest
from conftest import ALL, FIXTURES, fixture
from hypothesis import given
from hypothesis import strategies as st

from arcjones.diagram import (
    ParseError,
    ValidationError,
    check,
    diagram_stats,
    mirror,
    parse_kdt,
    render_kdt,
    seifert_circles,
    unknot,
    validate,
    writhe,
)


def test_fig8_data():
    d = fixture("fig8")
    assert d.n_cross == 4
    assert d.sign == (-1, 1, -1, 1)
    assert d.over == (3, 0, 1, 2)
    assert writhe(d) == 0


def test_unknot0():
    d = fixture("unknot0")
    assert d.n_cross == 0
    sc = seifert_circles(d)
    assert len(sc.circles) == 1 and sc.rot[0] in (1, -1)
    assert diagram_stats(d, 3) == (0, 0, 0)
    assert d == replace(unknot(), partarc_rot=d.partarc_rot)


@pytest.mark.parametrize("name", ALL)
def test_fixtures_validate(name):
    assert validate(fixture(name)).ok


@pytest.mark.parametrize("name", ALL)
def test_roundtrip(name):
    d = fixture(name)
    assert parse_kdt(render_kdt(d)) == d
    assert render_kdt(parse_kdt(render_kdt(d))) == render_kdt(d)


def test_circle_counts():
    assert len(seifert_circles(fixture("fig8")).circles) == 3
    assert len(seifert_circles(fixture("trefoil_right")).circles) == 2


def test_fig8_delta_n2():
    w, rk, delta = diagram_stats(fixture("fig8"), 2)
    assert w == 0 and delta == rk


def test_duplicate_sign():
    text = (FIXTURES / "fig8.kdt").read_text() + "sign 2 +\n"
    with pytest.raises(ParseError):
        parse_kdt(text)


@pytest.mark.parametrize("bad", ["bogus 1", "crossings x", "sign 9 +", "over 1"])
def test_malformed_lines(bad):
    text = (FIXTURES / "fig8.kdt").read_text() + bad + "\n"
    with pytest.raises(ParseError):
        parse_kdt(text)


def test_kink_rejected():
    d = fixture("fig8")
    over = list(d.over)
    old = over[1]
    over[1] = 1
    oo = [list(x) for x in d.over_order]
    oo[old].remove(1)
    oo[1].append(1)
    bad = replace(d, over=tuple(over), over_order=tuple(map(tuple, oo)))
    assert any("kink" in v for v in check(bad).violations)


def test_perturbed_rot_rejected():
    d = fixture("fig8")
    rots = [list(r) for r in d.partarc_rot]
    rots[0][0] += 1
    bad = replace(d, partarc_rot=tuple(map(tuple, rots)))
    with pytest.raises(ValidationError):
        validate(bad)


@pytest.mark.parametrize("name", ALL)
def test_mirror(name):
    d = fixture(name)
    m = mirror(d)
    assert m.sign == tuple(-s for s in d.sign)
    assert mirror(m) == d
    assert validate(m).ok


@given(st.sampled_from(ALL), st.data())
def test_dropped_line_never_crashes(name, data):
    lines = (FIXTURES / f"{name}.kdt").read_text().splitlines()
    k = data.draw(st.integers(0, len(lines) - 1))
    text = "\n".join(lines[:k] + lines[k + 1:])
    try:
        d = parse_kdt(text)
    except ParseError:
        return
    check(d)
