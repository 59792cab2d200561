import re

import pytest
from conftest import FIXTURES

from arcjones.cli import run
from arcjones.poly import parse

LINE = re.compile(r"^\w+ vs \w+: (EQUAL|EQUAL_UP_TO_UNIT -?1 -?\d+(/\d+)?|MISMATCH .+)$")


def call(capsys, *argv):
    code = run([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_alexander(capsys):
    code, out, _ = call(capsys, "alexander", FIXTURES / "fig8.kdt")
    assert code == 0
    assert out == "-t^-1 + 3 - t\n"
    assert parse(out) == parse("3 - t - t^-1")


def test_colored_unknot(capsys):
    assert call(capsys, "colored", FIXTURES / "unknot0.kdt", "-n", 3)[:2] == (0, "1\n")


@pytest.mark.parametrize("method", ["flow", "cabled", "sortings", "ferm"])
def test_colored_methods_agree(capsys, method):
    code, out, _ = call(capsys, "colored", FIXTURES / "fig8.kdt", "-n", 2, "--method", method)
    assert code == 0
    assert out == "t^-6 - t^-5 - t^-4 + 2*t^-3 - t^-2 - t^-1 + 3 - t - t^2 + 2*t^3 - t^4 - t^5 + t^6\n"


def test_jones_methods(capsys):
    a = call(capsys, "jones", FIXTURES / "trefoil_right.kdt")
    b = call(capsys, "jones", FIXTURES / "trefoil_right.kdt", "--method", "rmatrix")
    assert a == b and a[1] == "-t^-4 + t^-3 + t^-1\n"


def test_verify_fig8(capsys):
    code, out, _ = call(capsys, "verify", FIXTURES / "fig8.kdt", "--max-n", 2)
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines and all(LINE.match(l) and l.endswith("EQUAL") for l in lines)


def test_verify_reports_mismatch(capsys):
    code, out, _ = call(capsys, "verify", FIXTURES / "torus_2_5.kdt", "--max-n", 1, "--ferm")
    assert code == 1
    assert any(l.startswith("ferm vs flow: MISMATCH") for l in out.splitlines())


def test_deterministic(capsys):
    first = call(capsys, "verify", FIXTURES / "trefoil_left.kdt", "--max-n", 2)
    assert call(capsys, "verify", FIXTURES / "trefoil_left.kdt", "--max-n", 2) == first


def test_mmr(capsys):
    code, out, _ = call(capsys, "mmr", FIXTURES / "trefoil_right.kdt", "--orders", "10,20,40", "-D", 4)
    assert code == 0 and out.splitlines()[-1] == "monotone yes"


def test_selftests(capsys):
    code, out, _ = call(capsys, "selftest", "zeta", "--seed", 3, "--max-vertices", 3, "--degree", 4, "--count", 5)
    assert code == 0 and "FAIL" not in out
    assert "beta_dec b12^3 b21^2 b23 b24^2 b31 b34 b42^2 b45 b53" in out
    code, out, _ = call(capsys, "selftest", "qmm", "--fixtures", FIXTURES)
    assert code == 0 and "FAIL" not in out


def test_parse_error(capsys, tmp_path):
    p = tmp_path / "bad.kdt"
    p.write_text((FIXTURES / "fig8.kdt").read_text() + "sign 2 +\n")
    code, out, err = call(capsys, "alexander", p)
    assert code == 2 and out == "" and "duplicate" in err


def test_validation_error(capsys, tmp_path):
    text = (FIXTURES / "fig8.kdt").read_text().replace("rot 1 0 0", "rot 1 1 0")
    p = tmp_path / "bad.kdt"
    p.write_text(text)
    code, out, err = call(capsys, "colored", p)
    assert code == 2 and out == "" and "rotation" in err


@pytest.mark.parametrize("argv", [[], ["colored"], ["colored", "x.kdt", "-n", "0"], ["mmr", "x.kdt", "--orders", "a,b"]])
def test_bad_flags(capsys, argv):
    assert run(argv) == 2


def test_missing_file(capsys):
    code, out, err = call(capsys, "alexander", FIXTURES / "nope.kdt")
    assert code == 2 and err.startswith("error:")
