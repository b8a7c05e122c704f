from fractions import Fraction

import pytest

from tridet import closedforms as cf
from tridet import families
from tridet.closedforms import ClosedFormError
from tridet.exact import QuadExt
from tridet.families import FamilyId
from tridet.matrix import Poly, charpoly, det_bareiss, matvec


def test_det_closed_examples():
    assert cf.det_closed("a1", 15) == 4201
    assert [cf.det_closed("b", n) for n in (1, 2, 3)] == [1, 0, -1]
    assert cf.det_closed("a2", 2) == Fraction(9, 2)
    assert cf.det_closed("absdiff", 2) == -1
    assert isinstance(cf.det_closed("a2", 3), Fraction)
    with pytest.raises(ClosedFormError):
        cf.det_closed("hankel", 3)


@pytest.mark.parametrize("tag", ["A1", "A2", "B", "ABSDIFF"])
def test_det_closed_matches_bareiss(tag):
    for n in range(1, 41):
        assert cf.det_closed(tag, n) == det_bareiss(families.gen(FamilyId(tag), n)), n


def test_f_values_by_case():
    for n in range(1, 60):
        f = cf.det_b_closed(n)
        if n % 2 == 0:
            assert f == (1 if n % 4 == 0 else 0)
        else:
            assert f == ((n + 1) // 2 if n % 4 == 1 else (1 - n) // 2)
            assert f == 1 or f % 2 == 1 or f == 0


def test_charpoly_closed_examples():
    assert cf.charpoly_closed("a1", 3) == Poly([-7, 9, -3, 1])
    a2 = cf.charpoly_closed("a2", 3)
    assert a2 == Poly([-2, 1]) * Poly([Fraction(29, 4), -4, 1])
    assert a2.coeffs[0] == -Fraction(29, 2) == -cf.det_closed("a2", 3)
    for n in range(3, 10):
        assert cf.charpoly_closed("a1", n).coeffs[0] == (-1) ** n * cf.det_closed("a1", n)
    with pytest.raises(ClosedFormError):
        cf.charpoly_closed("a1", 2)


@pytest.mark.parametrize("tag", ["A1", "A2"])
def test_charpoly_closed_matches_computed(tag):
    for n in range(3, 26):
        assert charpoly(families.gen(FamilyId(tag), n)) == cf.charpoly_closed(tag, n)


def test_eigen_structure_examples():
    pairs = cf.eigen_structure("a1", 3)
    assert pairs[0].value * pairs[1].value == 7
    mu = cf.eigen_structure("a2", 3)[0].value
    assert mu == QuadExt(2, 1, Fraction(-13, 4))
    v4 = cf.eigen_structure("a1", 5)[3].vector
    assert [x.a for x in v4] == [2, -3, 0, 1, 0] and all(x.b == 0 for x in v4)
    with pytest.raises(ClosedFormError):
        cf.eigen_structure("a1", 2)


@pytest.mark.parametrize("tag", ["A1", "A2"])
@pytest.mark.parametrize("n", [3, 4, 7, 12, 25])
def test_every_eigenpair_satisfies_its_equation(tag, n):
    m = families.gen(FamilyId(tag), n)
    pairs = cf.eigen_structure(tag, n)
    assert len(pairs) == n
    for p in pairs:
        assert matvec(m, list(p.vector)) == [p.value * x for x in p.vector]
    # trace equals the sum of the eigenvalues
    assert sum((p.value for p in pairs), start=0) == m.trace()


def test_lambda1_imaginary_part_normalization():
    # (n sqrt(n^2-1) / (2 sqrt 3))^2 must equal b^2 * (-d) with b = n(n-1)/2
    for n in range(2, 40):
        lam = cf.lambda1(n)
        assert lam.b == Fraction(n * (n - 1), 2)
        assert lam.b**2 * -lam.d == Fraction(n * n * (n * n - 1), 12)
        assert lam.d < 0


def test_mu1_matches_printed_values():
    printed = {3: (Fraction(1, 2), 13), 4: (Fraction(1, 4), 194), 5: (Fraction(1, 4), 561), 6: (Fraction(3, 8), 626)}
    for n, form in printed.items():
        assert cf.mu1_radical_form(n) == form
    assert cf.a2_field(6) == Fraction(-2817, 32)
    assert Fraction(9 * 626, 64) == Fraction(2817, 32)


def test_a1_eigenvector_identity():
    assert cf.verify_a1_eigenvector(2)
    assert cf.verify_a1_eigenvector(3)
    assert cf.verify_a1_eigenvector(10)
    with pytest.raises(ClosedFormError):
        cf.verify_a1_eigenvector(1)


def test_a1_eigenvector_hand_row():
    # n = 3 in Q(sqrt(-2/3)); the last row of A1 is (2, 1, 1)
    d = Fraction(-2, 3)
    v = cf.v1(3)
    assert v == [QuadExt(Fraction(-1, 5), Fraction(6, 5), d), QuadExt(Fraction(2, 5), Fraction(3, 5), d), QuadExt(1, 0, d)]
    lhs = 2 * v[0] + 1 * v[1] + 1 * v[2]
    assert lhs == QuadExt(1, 3, d) * v[2]


def test_a2_eigenvector_identity():
    assert cf.verify_a2_eigenvector(1)
    assert cf.verify_a2_eigenvector(3).checks == {"norm_identity": True, "x_forms_agree": True, "eigen": True}
    assert cf.verify_a2_eigenvector(8)
    # n = 3 norm identity: 16 + 13/4 = 7 * 11/4
    assert Fraction(16) - cf.a2_field(3) == 7 * Fraction(11, 4) == Fraction(77, 4)
    mu = cf.mu1(8)
    assert mu.norm() * 2**6 == cf.det_closed("a2", 8)


def test_interface_names_are_aliases():
    assert cf.verify_lemma_2_1 is cf.verify_a1_eigenvector
    assert cf.verify_lemma_2_2 is cf.verify_a2_eigenvector


def test_eigen_checks_report_failures(monkeypatch):
    monkeypatch.setattr(cf, "lambda1", lambda n: QuadExt(1, Fraction(n * (n - 1), 2) + 1, cf.a1_field(n)))
    res = cf.verify_a1_eigenvector(4)
    assert not res and res.failing_j == 1


def test_verify_spectrum_examples():
    rep = cf.verify_spectrum("a1", 3)
    assert rep.verified and rep.independence_rank == 1
    rep = cf.verify_spectrum("a2", 6)
    assert rep.verified and rep.independence_rank == 4
    assert cf.verify_spectrum("a1", 20).verified
    with pytest.raises(ClosedFormError):
        cf.verify_spectrum("b", 5)


def test_spectrum_report_names_failures(monkeypatch):
    monkeypatch.setattr(cf, "charpoly_closed", lambda fam, n: Poly([1]))
    rep = cf.verify_spectrum("a1", 4)
    assert not rep.verified and "charpoly" in rep.failures
    assert rep.to_json()["verified"] is False


def test_hankel_transform_check():
    rep = cf.hankel_transform_check(12)
    assert rep.ok and rep.prefix_ok
    assert rep.rows[0] == (1, 1, 1)
    assert rep.rows[2] == (3, -1, -1)
    assert rep.rows[3] == (4, 1, 1)
