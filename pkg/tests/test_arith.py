from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from shapiro_ct.arith import (
    LaurentPoly,
    RationalFunction,
    berlekamp_massey,
    berlekamp_massey_mod,
    charpoly,
    dense_convolve,
    poly_exact_div,
    poly_gcd,
    poly_mul,
    reconstruct_rational,
)
from shapiro_ct.errors import ReconstructionError

z = LaurentPoly.monomial(1)
zinv = LaurentPoly.monomial(-1)


def schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


laurent = st.dictionaries(
    st.integers(-6, 6), st.integers(-5, 5), max_size=6
).map(LaurentPoly)


# -- Laurent polynomials ------------------------------------------------------

def test_add_examples():
    assert (1 + z) + (1 - z) == LaurentPoly.constant(2)
    p = 3 * z ** 2 - zinv
    assert LaurentPoly() + p == p
    assert (zinv + z) + (zinv - z) == 2 * zinv


def test_zero_is_empty():
    assert len((1 + z) - (1 + z)) == 0
    assert not LaurentPoly({3: 0})


def test_mul_examples():
    assert (1 + z) * (1 + zinv) == zinv + 2 + z
    p2 = 1 + z + z ** 2 - z ** 3
    expected = LaurentPoly.from_dense(schoolbook([1, 1, 1, -1], [1, 1, 1, -1]))
    assert p2 * p2 == expected
    assert p2 * p2 == LaurentPoly.from_dense([1, 2, 3, 0, -1, -2, 1])
    assert p2 * LaurentPoly() == LaurentPoly()


def test_substitute_examples():
    assert (1 + z).substitute(-1, 2) == 1 - z ** 2
    assert (1 + z).substitute(1, -1) == 1 + zinv
    p1 = 1 + z
    p2 = p1.substitute(1, 2) + z * p1.substitute(-1, 2)
    assert p2 == 1 + z + z ** 2 - z ** 3


def test_ct_examples():
    p = LaurentPoly({-2: 4, -1: 11, 0: 101, 1: 5, 15: 11})
    assert p.ct() == 101
    assert LaurentPoly().ct() == 0
    assert (z + zinv).ct() == 0


def test_substitute_rejects_bad_arguments():
    with pytest.raises(ValueError):
        z.substitute(2, 1)
    with pytest.raises(ValueError):
        z.substitute(1, 0)


@given(laurent, laurent)
def test_ct_of_product_is_symmetric(p, q):
    assert (p * q).ct() == (q * p).ct()


@given(laurent)
def test_ct_invariant_under_dihedral_substitutions(p):
    assert p.substitute(1, -1).ct() == p.ct()
    assert p.substitute(-1, 1).ct() == p.ct()
    assert p.substitute(-1, -1).ct() == p.ct()


@given(st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=1, max_size=80),
       st.lists(st.integers(-7, 7), min_size=1, max_size=80))
def test_dense_convolve_matches_schoolbook(a, b):
    assert dense_convolve(a, b) == schoolbook(a, b)


def test_dense_and_sparse_products_agree():
    rng = random.Random(7)
    a = LaurentPoly({e: rng.choice([-1, 1]) for e in range(-40, 60)})
    b = LaurentPoly({e: rng.randint(-9, 9) for e in range(-20, 50)})
    sparse = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            sparse[e1 + e2] = sparse.get(e1 + e2, 0) + c1 * c2
    assert a * b == LaurentPoly(sparse)


# -- rational functions --------------------------------------------------------

def test_normalize_examples():
    rf = RationalFunction.normalize((2, 8), poly_mul((2,), poly_mul((1, 2), (1, -4))))
    assert rf == RationalFunction((1, 4), (1, -2, -8))
    assert RationalFunction.normalize((0, 1), (1, 1)) == RationalFunction((0, 1), (1, 1))
    assert RationalFunction.normalize((1, 0, -4), (1, -2)) == RationalFunction((1, 2), (1,))


def test_normalize_rejects_vanishing_constant_term():
    with pytest.raises(ValueError):
        RationalFunction.normalize((1,), (0, 1))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4),
       st.lists(st.integers(-20, 20), min_size=0, max_size=3),
       st.integers(-50, 50).filter(bool))
def test_normalize_idempotent_and_scale_stable(num, tail, a):
    den = (1, *tail)
    rf = RationalFunction.normalize(num, den)
    assert RationalFunction.normalize(rf.num, rf.den) == rf
    assert RationalFunction.normalize([a * c for c in num], [a * c for c in den]) == rf


def test_normalize_cancels_common_factor():
    g = (1, 3, -5)
    rf = RationalFunction.normalize(poly_mul((2, 7), g), poly_mul((1, -4), g))
    assert rf == RationalFunction((2, 7), (1, -4))


def test_series_examples():
    assert RationalFunction((1,), (1, -2)).series(4) == [1, 2, 4, 8]
    closed = [Fraction(4, 3) * 4 ** k - Fraction(1, 3) * (-2) ** k for k in range(4)]
    assert RationalFunction((1, 4), (1, -2, -8)).series(4) == closed == [1, 6, 20, 88]
    assert RationalFunction((1, 16), (1, -4, -32)).series(2) == [1, 20]


def test_poly_gcd_and_exact_division():
    assert poly_gcd((1, 0, -1), (1, 1)) == (1, 1)
    assert poly_gcd((2, 4), (3, 6)) == (1, 2)
    assert poly_gcd((1, 1), (1, 2)) == (1,)
    assert poly_exact_div((1, 0, -1), (1, 1)) == (1, -1)
    with pytest.raises(ArithmeticError):
        poly_exact_div((1, 0, 1), (1, 1))


# -- reconstruction -------------------------------------------------------------

def test_reconstruct_examples():
    assert reconstruct_rational([2 ** k for k in range(10)], 1) == RationalFunction((1,), (1, -2))
    assert reconstruct_rational([1] * 12, 1) == RationalFunction((1,), (1, -1))
    seq = [int(Fraction(4, 3) * 4 ** k - Fraction(1, 3) * (-2) ** k) for k in range(20)]
    assert seq[:5] == [1, 6, 20, 88, 336]
    assert reconstruct_rational(seq, 6) == RationalFunction((1, 4), (1, -2, -8))


def test_reconstruct_eventually_recurrent_sequence():
    # 1 + 2t, a polynomial: linear complexity 2 with connection polynomial 1
    assert reconstruct_rational([1, 2] + [0] * 10, 2) == RationalFunction((1, 2), (1,))


def test_reconstruct_requires_guard_terms():
    with pytest.raises(ValueError):
        reconstruct_rational([1, 2, 4, 8], 1)


def test_reconstruct_fails_when_order_too_small():
    seq = [int(Fraction(4, 3) * 4 ** k - Fraction(1, 3) * (-2) ** k) for k in range(12)]
    with pytest.raises(ReconstructionError):
        reconstruct_rational(seq, 1)


def test_modular_and_rational_berlekamp_massey_agree():
    seq = [int(Fraction(4, 3) * 4 ** k - Fraction(1, 3) * (-2) ** k) for k in range(20)]
    L, C = berlekamp_massey(seq)
    p = (1 << 61) - 1
    Lp, Cp = berlekamp_massey_mod(seq, p)
    assert L == Lp == 2
    assert [c % p for c in C] == Cp


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda d: st.tuples(
    st.just(d),
    st.lists(st.lists(st.integers(-3, 3), min_size=d, max_size=d), min_size=d, max_size=d),
    st.lists(st.integers(-3, 3), min_size=d, max_size=d),
)))
def test_reconstruct_round_trip_matrix_sequences(data):
    d, M, v = data
    seq = []
    x = v
    for _ in range(2 * d + 8):
        seq.append(x[0])
        x = [sum(M[i][j] * x[j] for j in range(d)) for i in range(d)]
    rf = reconstruct_rational(seq, d)
    assert rf.series(len(seq)) == seq
    assert rf.den[0] == 1


# -- characteristic polynomial --------------------------------------------------------

def test_charpoly_examples():
    assert charpoly([[1, 1], [1, 1]]) == (0, -2, 1)
    assert charpoly([[5]]) == (-5, 1)
    assert charpoly([[1, 4, 1], [1, 0, 1], [1, 4, 1]]) == (0, -8, -2, 1)


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda d: st.lists(st.lists(st.integers(-9, 9), min_size=d, max_size=d), min_size=d, max_size=d)))
def test_cayley_hamilton(M):
    d = len(M)
    p = charpoly(M)
    assert len(p) == d + 1 and p[-1] == 1
    acc = [[0] * d for _ in range(d)]
    power = [[int(i == j) for j in range(d)] for i in range(d)]
    for c in p:
        acc = [[a + c * b for a, b in zip(r1, r2)] for r1, r2 in zip(acc, power)]
        power = _matmul(power, M)
    assert all(x == 0 for row in acc for x in row)
