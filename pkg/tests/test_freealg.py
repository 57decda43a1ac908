from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from uqace.coeffs import EXACT, RatQ, make_field, qint
from uqace.freealg import (AlphabetMismatch, NCPoly, W, bidegree, commutator, ncmul, parse_word, q_commutator,
                           serre_relators, word)

Q = RatQ.q()
W0, W1 = W(0), W(1)


def mono(text, c=1):
    return NCPoly.from_word(parse_word(text, "W"), "W", EXACT, RatQ(c))


small_words = st.lists(st.integers(0, 1), max_size=3).map(word)
small_polys = st.dictionaries(small_words, st.integers(-3, 3).map(RatQ), max_size=3).map(
    lambda d: NCPoly(d, "W", EXACT))


def test_concatenation_examples():
    assert ncmul(W0, W1) == mono("W0W1")
    assert ncmul(W0 + W1, W0) == mono("W0W0") + mono("W1W0")
    one = NCPoly.scalar(1)
    assert ncmul(one, W0 + W1) == W0 + W1


def test_commutator_examples():
    assert commutator(W0, W0).is_zero()
    assert q_commutator(W0, W1) == mono("W0W1").scale(Q) - mono("W1W0").scale(Q ** -1)


def test_serre_expansion():
    q3 = RatQ(qint(3))
    expected = mono("W0W0W0W1") - mono("W0W0W1W0").scale(q3) + mono("W0W1W0W0").scale(q3) - mono("W1W0W0W0")
    assert serre_relators()[0] == expected
    nested = commutator(W0, q_commutator(W0, q_commutator(W0, W1), -1))
    assert nested == expected


def test_bidegree_examples():
    assert bidegree(mono("W0W1W0")) == {(2, 1)}
    assert bidegree(NCPoly({}, "W")) == set()
    assert bidegree(serre_relators()[0]) == {(3, 1)}


def test_alphabet_mismatch():
    x = NCPoly.letter(0, "x")
    with pytest.raises(AlphabetMismatch):
        ncmul(W0, x)


@given(small_polys, small_polys, small_polys)
def test_product_is_associative_and_unital(a, b, c):
    assert ncmul(ncmul(a, b), c) == ncmul(a, ncmul(b, c))
    one = NCPoly.scalar(1)
    assert ncmul(one, a) == a == ncmul(a, one)


@given(small_polys, small_polys, small_polys)
def test_commutator_bilinear_antisymmetric(a, b, c):
    assert commutator(a + b, c) == commutator(a, c) + commutator(b, c)
    assert commutator(a, b) == -commutator(b, a)


@given(small_polys, small_polys)
def test_q_commutator_at_q_one_is_commutator(a, b):
    # specialise at q = 1 coefficientwise; q = 1 has no poles for Laurent coefficients
    at_one = lambda p: {w: c.eval_at(1) for w, c in p.terms.items() if c.eval_at(1)}
    assert at_one(q_commutator(a, b)) == at_one(commutator(a, b))


@given(st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), max_size=4))
def test_bidegree_is_additive(u, v):
    a, b = NCPoly.from_word(word(u)), NCPoly.from_word(word(v))
    (da,), (db,) = bidegree(a), bidegree(b)
    assert bidegree(ncmul(a, b)) == {(da[0] + db[0], da[1] + db[1])}


def test_eval_field_polynomials():
    f = make_field(Fraction(7, 5))
    p = q_commutator(W(0, f), W(1, f))
    assert p.coeff(parse_word("W0W1", "W")) == Fraction(7, 5)
