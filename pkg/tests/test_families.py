from fractions import Fraction

import pytest

from tridet import families
from tridet.families import FamilyError, FamilyId, gen, gen_a025276, gen_hankel
from tridet.matrix import det_bareiss


def rows(m):
    return [list(r) for r in m.rows]


def test_gen_examples():
    assert rows(gen("a1", 2)) == [[1, -1], [1, 1]]
    assert rows(gen("a2", 2)) == [[2, Fraction(-1, 2)], [1, 2]]
    assert rows(gen("b", 3)) == [[1, 1, 2], [1, 1, 1], [2, 1, 1]]
    assert rows(gen("t:1,2", 2)) == [[1, -1], [0, 1]]
    assert rows(gen("ttilde:3,1", 3)) == [[1, 0, 0], [0, 1, 0], [1, 0, 1]]
    assert gen("a2", 1).kind == "rational"
    assert rows(gen("a2", 1)) == [[2]]


@pytest.mark.parametrize("bad", ["t:1,1", "t:0,2", "ttilde:3,1"])
def test_bad_indices(bad):
    with pytest.raises(FamilyError):
        gen(bad, 2)


def test_bad_sizes_and_tags():
    with pytest.raises(FamilyError):
        gen("a1", 0)
    with pytest.raises(FamilyError):
        FamilyId.parse("c")
    with pytest.raises(FamilyError):
        FamilyId("T")


@pytest.mark.parametrize("text", ["a1", "a2", "b", "absdiff", "hankel", "t:2,5", "ttilde:4,1"])
def test_family_parse_roundtrip(text):
    assert str(FamilyId.parse(text)) == text
    assert FamilyId.parse(text.upper()) == FamilyId.parse(text)


def test_a025276():
    assert gen_a025276(10) == [1, 0, 0, 1, 2, 4, 8, 17, 38, 88]
    a = gen_a025276(6)
    assert a[4] == 2 == a[0] * a[3] + a[1] * a[2] + a[2] * a[1] + a[3] * a[0]
    assert a[5] == 4 == 2 * a[0] * a[4] + 2 * a[1] * a[3] + a[2] ** 2
    assert gen_a025276(1) == [1]


def test_hankel_examples():
    assert rows(gen_hankel(1)) == [[1]]
    assert rows(gen_hankel(2)) == [[1, 0], [0, 0]]
    assert rows(gen_hankel(3)) == [[1, 0, 0], [0, 0, 1], [0, 1, 2]]


@pytest.mark.parametrize("tag", ["A1", "A2", "ABSDIFF", "B"])
def test_toeplitz(tag):
    m = gen(FamilyId(tag), 9)
    for j in range(8):
        for k in range(8):
            assert m[j, k] == m[j + 1, k + 1]


def test_symmetry():
    for n in range(1, 10):
        assert families.b(n) == families.b(n).transpose()
        assert families.absdiff(n) == families.absdiff(n).transpose()
        off = families.a1(n).rows
        for j in range(n):
            for k in range(n):
                if j != k:
                    assert off[j][k] == -off[k][j]


@pytest.mark.parametrize("n", range(3, 13))
def test_vanishing_determinants(n):
    assert det_bareiss(families.skew_diff(n)) == 0
    assert det_bareiss(families.pow2_diff(n)) == 0


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_elementary_factor_determinants(n):
    for j0 in range(1, n + 1):
        for k0 in range(1, n + 1):
            if j0 != k0:
                assert det_bareiss(families.t(n, j0, k0)) == 1
                assert det_bareiss(families.ttilde(n, j0, k0)) == 1
