import pytest
from conftest import ALL, fixture
from hypothesis import given
from hypothesis import strategies as st

from arcjones.arcgraph import build_arc_graph, weight_matrix
from arcjones.invariants import jones_arcsum
from arcjones.poly import ONE, ZERO, t_pow
from arcjones.qalg import (
    Generator,
    MalformedWord,
    NCPoly,
    NonTerminating,
    Normalizer,
    QMatrix,
    build_B,
    build_Bprime,
    colored_jones_ferm,
    commutative_image,
    det_I_minus,
    det_q,
    evaluate_word,
    ferm,
    ferm_inverse_check,
    is_canonical,
    nc_normalize,
    qmm_inverse,
    qmm_terms,
    random_choice,
    row_col_orders,
    specialize,
    verify_nonc,
)

Q = t_pow(1)
a, b, c, d = (0, 0), (0, 1), (1, 0), (1, 1)
NONZERO = [n for n in ALL if n != "unknot0"]
SMALL = ["fig8", "trefoil_right", "trefoil_left", "trefoil_4"]


def generic(r):
    return QMatrix([[Generator("z", 0, i) for _ in range(r)] for i in range(r)])


def P(A, *terms):
    return NCPoly(A, {w: coef for coef, w in terms})


def test_one_by_one():
    A = generic(1)
    assert det_q(A) == P(A, (ONE, (a,)))
    assert ferm(A) == P(A, (ONE, ()), (-ONE, (a,)))
    assert qmm_inverse(A, 3) == P(A, *[(ONE, (a,) * k) for k in range(4)])
    assert qmm_inverse(A, 0) == NCPoly.const(A)


def test_two_by_two_det():
    A = generic(2)
    assert det_q(A) == P(A, (ONE, (a, d)), (-t_pow(-1), (c, b)))


def test_column_relation():
    A = generic(2)
    assert nc_normalize(P(A, (ONE, (c, a)))) == P(A, (Q, (a, c)))


def test_cross_relation():
    # ad - da = q^-1 cb - q bc; ad is already canonical here, so compare both sides
    A = generic(2)
    lhs = nc_normalize(P(A, (ONE, (a, d))))
    rhs = nc_normalize(P(A, (ONE, (d, a)), (t_pow(-1), (c, b)), (-Q, (b, c))))
    assert lhs == rhs


def test_budget():
    A = generic(3)
    w = tuple((i, j) for j in (2, 1, 0) for i in (2, 1, 0))
    with pytest.raises(NonTerminating):
        Normalizer(A, budget=3).word(w)


positions3 = st.tuples(st.integers(0, 2), st.integers(0, 2))


@given(st.lists(positions3, max_size=6))
def test_canonical_fixed(w):
    A = generic(3)
    w = tuple(sorted(w, key=lambda p: (p[1], p[0])))
    assert is_canonical(w)
    assert Normalizer(A).word(w) == {w: ONE}


@given(st.lists(positions3, max_size=6), st.integers(0, 10**6))
def test_generic_confluence(w, seed):
    A = generic(3)
    first = Normalizer(A).word(tuple(w))
    other = Normalizer(A, random_choice(seed)).word(tuple(w))
    assert first == other
    assert all(is_canonical(v) for v in first)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_generic_ferm_inverse(r):
    assert ferm_inverse_check(generic(r), 3)


@pytest.mark.parametrize("name", SMALL)
def test_bprime_ferm_inverse(name):
    assert ferm_inverse_check(build_Bprime(fixture(name)), 3)


@pytest.mark.parametrize("name", NONZERO)
def test_ferm_at_q1(name):
    A = build_Bprime(fixture(name))
    assert commutative_image(ferm(A)) == det_I_minus(A)


@pytest.mark.parametrize("name", NONZERO)
def test_specialization(name):
    dg = fixture(name)
    assert specialize(build_B(dg)) == weight_matrix(build_arc_graph(dg))


def test_unknot_matrix():
    assert build_B(fixture("unknot0")).r == 0


def test_fig8_orders():
    # recorded after checking the block rules by hand on the figure-8 data
    assert row_col_orders(fixture("fig8")) == ([1, 2, 0], [0, 2, 1])
    A = build_Bprime(fixture("fig8"))
    assert A.check_columns()


@pytest.mark.parametrize("name", ["fig8", "trefoil_right", "trefoil_left", "trefoil_4", "unknot_b"])
def test_bprime_z_free_confluence(name):
    # different rewrite routes may disagree only on words containing z
    A = build_Bprime(fixture(name))
    p = NCPoly(A)
    for _, g in qmm_terms(A, 3, by_label=True):
        p = p + g
    base = Normalizer(A).poly(p)
    for seed in range(3):
        other = Normalizer(A, random_choice(seed)).poly(p)
        diff = (base - other).terms
        assert all(any(A[x].kind == "z" for x in w) for w in diff)


def test_trace_examples():
    U = QMatrix([[Generator("u", 1, 0)]])
    for p in range(4):
        for n in (1, 2, 3):
            assert evaluate_word(U, ((0, 0),) * p, n) == t_pow(-p * n)
    R = QMatrix([[Generator("r", 1, 0)]])
    for n in (1, 2, 3):
        assert evaluate_word(R, ((0, 0),), n) == ONE - t_pow(-n)
    Z = generic(2)
    assert evaluate_word(Z, (a, c), 2) == ZERO


def test_malformed():
    A = QMatrix([[Generator("u", 1, 0), Generator("z", 0, 0)], [Generator("r", 1, 1), Generator("z", 0, 1)]])
    with pytest.raises(MalformedWord):
        evaluate_word(A, (c, a), 2)  # not canonical


@pytest.mark.parametrize("name", ["unknot0", "trefoil_right", "fig8"])
def test_ferm_route_n1(name):
    dg = fixture(name)
    assert colored_jones_ferm(dg, 1) == jones_arcsum(dg)
    r = verify_nonc(dg, 1)
    assert r.ok and r.result == "EQUAL"


@pytest.mark.xfail(strict=True, reason="position-based bc rule misprices unrelated u/r pairs beyond three vertices")
@pytest.mark.parametrize("name", ["torus_2_5", "unknot_a"])
def test_ferm_route_larger(name):
    assert verify_nonc(fixture(name), 1).ok
