import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import leibniz_det
from tridet import families
from tridet.closedforms import v_family
from tridet.exact import ExactError, QuadExt
from tridet.matrix import (
    MatrixError,
    Poly,
    RingMatrix,
    charpoly,
    det_bareiss,
    det_cofactor,
    identity,
    matmul,
    matvec,
    rank,
)


def square_ints(max_n=6, lo=-5, hi=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def square_rats(max_n=5):
    q = st.fractions(min_value=-4, max_value=4, max_denominator=6)
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(q, min_size=n, max_size=n), min_size=n, max_size=n)
    )


# --- determinants ---------------------------------------------------------------


def test_det_bareiss_examples():
    assert det_bareiss(RingMatrix([[1, -1], [1, 1]])) == 2
    assert det_bareiss(identity(5)) == 1
    assert det_bareiss(RingMatrix([[2, Fraction(-1, 2)], [1, 2]])) == Fraction(9, 2)


def test_det_bareiss_needs_pivot_swap():
    m = RingMatrix([[0, 1, 2], [1, 0, 3], [4, -3, 8]])
    assert det_bareiss(m) == leibniz_det(m.rows)


def test_zero_column_short_circuits():
    assert det_bareiss(RingMatrix([[0, 1], [0, 5]])) == 0


def test_det_cofactor_examples():
    assert det_cofactor(RingMatrix([[0, 1], [1, 0]])) == -1
    assert det_cofactor(families.absdiff(3)) == 4
    assert det_cofactor(families.b(4)) == 1


def test_det_cofactor_over_quadext():
    d = Fraction(-2, 3)
    lam = QuadExt(1, 3, d)
    m = RingMatrix([[lam, 0], [0, lam.conj()]])
    assert det_cofactor(m) == 7


def test_det_errors():
    with pytest.raises(MatrixError):
        det_bareiss(RingMatrix([[1, 2, 3], [4, 5, 6]]))
    with pytest.raises(MatrixError):
        det_cofactor(identity(9))
    with pytest.raises(MatrixError):
        det_bareiss(RingMatrix([[QuadExt(1, 1, -1)]]))


@settings(max_examples=80, deadline=None)
@given(square_ints())
def test_bareiss_agrees_with_cofactor_and_leibniz(rows):
    m = RingMatrix(rows)
    assert det_bareiss(m) == det_cofactor(m) == leibniz_det(rows)


@settings(max_examples=60, deadline=None)
@given(square_rats())
def test_bareiss_agrees_with_cofactor_on_rationals(rows):
    m = RingMatrix(rows, "rational")
    assert det_bareiss(m) == det_cofactor(m)


@pytest.mark.parametrize("tag", ["A1", "A2", "B", "ABSDIFF"])
def test_bareiss_agrees_with_cofactor_on_families(tag):
    for n in range(1, 9):
        m = families.gen(families.FamilyId(tag), n)
        assert det_bareiss(m) == det_cofactor(m)


@settings(max_examples=40, deadline=None)
@given(square_ints(4, -9, 9).filter(lambda r: len(r) == 4), square_ints(4, -9, 9).filter(lambda r: len(r) == 4))
def test_det_is_multiplicative(a, b):
    ma, mb = RingMatrix(a), RingMatrix(b)
    assert det_bareiss(ma @ mb) == det_bareiss(ma) * det_bareiss(mb)


# --- characteristic polynomial --------------------------------------------------------


def test_charpoly_examples():
    assert charpoly(families.a1(2)) == Poly([2, -2, 1])
    assert charpoly(RingMatrix([[0] * 3] * 3)) == Poly([0, 0, 0, 1])
    assert charpoly(families.a1(3)) == Poly([-1, 1]) * Poly([7, -2, 1])
    assert str(charpoly(families.a1(3))) == "x^3 - 3*x^2 + 9*x - 7"


@settings(max_examples=30, deadline=None)
@given(square_ints(5))
def test_cayley_hamilton_random(rows):
    m = RingMatrix(rows)
    zero = charpoly(m).eval_matrix(m)
    assert all(x == 0 for x in zero.entries())


@pytest.mark.parametrize("tag", ["A1", "B"])
@pytest.mark.parametrize("n", range(1, 7))
def test_cayley_hamilton_families(tag, n):
    m = families.gen(families.FamilyId(tag), n)
    assert all(x == 0 for x in charpoly(m).eval_matrix(m).entries())


@pytest.mark.parametrize("tag", ["A1", "A2", "B", "ABSDIFF", "HANKEL"])
def test_charpoly_constant_term(tag):
    for n in range(1, 21):
        m = families.gen(families.FamilyId(tag), n)
        cp = charpoly(m)
        assert cp.is_monic() and cp.degree == n
        assert cp.coeffs[0] == (-1) ** n * det_bareiss(m)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_charpoly_against_sympy(n):
    x = sympy.Symbol("x")
    for m in (families.a2(n), families.b(n)):
        sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in r] for r in m.rows])
        ref = sympy.Poly(sm.charpoly(x).as_expr(), x).all_coeffs()[::-1]
        assert charpoly(m).coeffs == tuple(Fraction(int(c.p), int(c.q)) for c in ref)


# --- rank and products ----------------------------------------------------------------


def test_rank_examples():
    assert rank(identity(4)) == 4
    assert rank(families.skew_diff(4)) == 2
    cols = [v_family(5, s) for s in (3, 4, 5)]
    assert rank(RingMatrix(list(zip(*cols)))) == 3


@pytest.mark.parametrize("tag", ["A1", "A2", "B", "ABSDIFF", "HANKEL"])
def test_full_rank_iff_nonzero_det(tag):
    for n in range(1, 13):
        m = families.gen(families.FamilyId(tag), n)
        assert (rank(m) == n) == (det_bareiss(m) != 0)


def test_matvec_examples():
    v = [3, -1, 4]
    assert matvec(identity(3), v) == v
    v3 = v_family(3, 3)
    assert matvec(families.a1(3), v3) == v3
    from tridet.closedforms import u_family

    u3 = u_family(3, 3)
    assert matvec(families.a2(3), u3) == [2 * x for x in u3]


def test_matvec_errors():
    with pytest.raises(MatrixError):
        matvec(identity(3), [1, 2])
    m = RingMatrix([[QuadExt(1, 1, -1)]])
    with pytest.raises(ExactError):
        matvec(m, [QuadExt(1, 1, -2)])


def test_matmul_shape_error():
    with pytest.raises(MatrixError):
        matmul(RingMatrix([[1, 2]]), RingMatrix([[1, 2]]))


def test_kind_inference_and_validation():
    assert RingMatrix([[1, 2]]).kind == "integer"
    assert RingMatrix([[1, Fraction(1, 2)]]).kind == "rational"
    assert RingMatrix([[QuadExt(1, 1, -1), 2]]).kind == "quadext"
    with pytest.raises(MatrixError):
        RingMatrix([[QuadExt(1, 1, -1), QuadExt(1, 1, -2)]])
    with pytest.raises(MatrixError):
        RingMatrix([[1, 2], [3]])
    assert RingMatrix([[-1, 7]], "mod", 5).rows == ((4, 2),)


def test_dump_format_roundtrip():
    m = families.a2(2)
    obj = json.loads(m.dumps())
    assert obj == {"rows": 2, "cols": 2, "kind": "rational", "entries": [["2/1", "-1/2"], ["1/1", "2/1"]]}
    assert RingMatrix.from_json(obj) == m
    q = RingMatrix([[QuadExt(1, 2, -3)]])
    assert RingMatrix.from_json(json.loads(q.dumps())) == q
