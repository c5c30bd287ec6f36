from fractions import Fraction
from math import comb, isqrt

import pytest

from shapiro_ct.arith import RationalFunction, charpoly
from shapiro_ct.errors import DominanceError, MultiplicityError
from shapiro_ct.scheme import build_scheme, iterate_sequence
from shapiro_ct.spectra import (
    check_charpoly,
    check_eigenvector,
    closed_form_charpoly,
    k_eigenvalues,
    k_matrix,
    montgomery_check,
    pole_constant,
    prop3_expected,
    prop3_residue,
    saffari_gap,
    saffari_residue,
)


def test_k_matrix_examples():
    assert k_matrix(0) == [[1]]
    assert k_matrix(1) == [[1, 1], [1, 1]]
    assert k_matrix(2) == [[1, 4, 1], [1, 0, 1], [1, 4, 1]]


@pytest.mark.parametrize("n", range(0, 13))
def test_k_matrix_structure(n):
    K = k_matrix(n)
    assert all(row[0] == 1 for row in K)
    for m in range(n + 1):
        for r in range(n + 1):
            v = K[m][r]
            assert v >= 0 and isqrt(v) ** 2 == v
            assert v == K[n - m][r]


def test_charpoly_small_cases_by_hand():
    assert closed_form_charpoly(1) == (0, -2, 1)
    assert closed_form_charpoly(2) == (0, -8, -2, 1)
    assert charpoly(k_matrix(2)) == (0, -8, -2, 1)
    assert check_charpoly(1) and check_charpoly(2)


@pytest.mark.parametrize("n", range(1, 21))
def test_check_charpoly(n):
    assert check_charpoly(n)


def test_eigenvector_row_by_hand():
    K = k_matrix(2)
    assert sum(Fraction(K[0][r], comb(2, r)) for r in range(3)) == 4


@pytest.mark.parametrize("n", range(1, 51))
def test_check_eigenvector(n):
    assert check_eigenvector(n)


@pytest.mark.parametrize("n", range(1, 51))
def test_top_eigenvalue_is_strictly_dominant(n):
    lams = k_eigenvalues(n)
    assert lams[0] == 2 ** n
    assert all(abs(x) < 2 ** n for x in lams[1:])


def test_saffari_examples():
    r1 = saffari_residue(1)
    assert r1.residue == 1 and r1.match and r1.dominant_root_ok
    r2 = saffari_residue(2)
    assert r2.residue == Fraction(4, 3) and r2.match and r2.dominant_root_ok
    r3 = saffari_residue(3)
    assert r3.residue == 2 and r3.match
    _, q = pole_constant(r3.genfun, 8)
    assert q == (1, 4)


def test_pole_constant_errors():
    with pytest.raises(DominanceError):
        pole_constant(RationalFunction((1,), (1, -2)), 4)
    with pytest.raises(MultiplicityError):
        pole_constant(RationalFunction((1,), (1, -4, 4)), 2)


def test_mixed_important_constant_examples():
    assert prop3_residue(1, 0) == 1 == prop3_expected(1, 0)
    assert prop3_residue(2, 1) == Fraction(2, 3) == prop3_expected(2, 1)
    assert prop3_residue(3, 3) == saffari_residue(3).residue
    with pytest.raises(ValueError):
        prop3_residue(2, 3)


@pytest.mark.parametrize("n", range(1, 6))
def test_saffari_gap_shrinks(n):
    seq = iterate_sequence(build_scheme((0, n, n, 0, 0)), 20)
    assert saffari_gap(n, 20, seq[20]) * 2 <= saffari_gap(n, 10, seq[10])


def test_montgomery_preconditions():
    with pytest.raises(ValueError):
        montgomery_check(1, 1)
    with pytest.raises(ValueError):
        montgomery_check(1, 2, k_max=10)
    rep = montgomery_check(1, 2, k_max=10, strict=False)
    assert rep.low_confidence


def test_montgomery_examples():
    rep = montgomery_check(1, 2, 60)
    assert rep.passed and rep.label == "HEURISTIC" and rep.squared
    rep = montgomery_check(2, 4, 60)
    assert rep.passed and not rep.squared
    # the ratios do not decay monotonically
    diffs = [rep.ratios[k + 1] - rep.ratios[k] for k in range(60)]
    assert any(d > 0 for d in diffs) and any(d < 0 for d in diffs)
