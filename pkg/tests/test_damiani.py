from fractions import Fraction

import pytest

from oracles import pbw_counts, root_vector
from uqace.coeffs import EXACT, RatQ, make_field
from uqace.damiani import (EIndex, check_com3, check_damiani, check_imag_relations, check_wecom, e_elem,
                           e_elem_uncached, e_image, pbw_independence, pbw_monomials, pbw_rank, root_vectors)
from uqace.freealg import NCPoly, W, bidegree, letters, parse_word
from uqace.shuffle import natmap

Q = RatQ.q()
EVAL = make_field(Fraction(7, 5))
INDICES = [EIndex(k, n) for n in range(4) for k in ("a0", "a1", "d") if not (k == "d" and n == 0)]

# sorted PBW monomials per letter-length 0..6, from the generating-function oracle
PBW_COUNTS = [1, 2, 4, 8, 14, 24, 40]


def mono(text, c=1):
    return NCPoly.from_word(parse_word(text, "W"), "W", EXACT, c)


def test_root_vector_examples():
    assert e_elem(EIndex("a0", 0)) == W(0)
    assert e_elem(EIndex("d", 1)) == mono("W1W0", Q ** -2) - mono("W0W1")
    expected = (mono("W1W0W0", Q ** -2) - mono("W0W1W0") - mono("W0W1W0", Q ** -2) + mono("W0W0W1"))
    assert e_elem(EIndex("a0", 1)) == expected.scale(RatQ(1) / (Q + Q ** -1))


def test_invalid_indices():
    with pytest.raises(ValueError):
        EIndex("d", 0)
    with pytest.raises(ValueError):
        EIndex("b", 1)


@pytest.mark.parametrize("i", INDICES, ids=str)
def test_bidegree_law(i):
    assert bidegree(e_elem(i)) == {i.bidegree}
    assert i.length == sum(i.bidegree)


@pytest.mark.parametrize("i", INDICES, ids=str)
def test_root_vectors_match_oracle_and_cache(i):
    got = {tuple(letters(w)): c for w, c in e_elem(i).terms.items()}
    assert got == root_vector(i.kind, i.n)
    assert e_elem_uncached(i) == e_elem(i)


@pytest.mark.parametrize("i", INDICES, ids=str)
def test_image_from_recursion_matches_expanded_polynomial(i):
    assert e_image(i).to_ncpoly() == natmap(e_elem(i))


def test_suite_sizes():
    assert len(check_com3(1).instances) == 2
    assert len(check_wecom(0).instances) == 2
    imag = check_imag_relations(1)
    assert imag.passed and not any(x.id == "imag.commute" for x in imag.instances)


def test_small_exact_suites_pass():
    assert check_damiani(3, 4).passed


def test_eval_suite_matches_exact():
    exact = check_damiani(3, 4)
    ev = check_damiani(3, 4, EVAL)
    assert [(i.id, i.indices, i.status) for i in exact.instances] == [(i.id, i.indices, i.status)
                                                                      for i in ev.instances]


def test_pbw_order():
    order = [str(i) for i in root_vectors(5)]
    assert order == ["E[0,a0]", "E[1,a0]", "E[2,a0]", "E[1,d]", "E[2,d]", "E[2,a1]", "E[1,a1]", "E[0,a1]"]


def test_pbw_counts_match_oracle():
    assert pbw_counts(6) == PBW_COUNTS
    assert [len(pbw_monomials(L)) for L in range(7)] == PBW_COUNTS


def test_pbw_small_cases():
    assert pbw_monomials(0) == [()]
    assert pbw_rank(1) == (2, 2)
    rep = pbw_independence(4)
    assert rep.passed and [i.indices for i in rep.instances] == [[L] for L in range(5)]


def test_pbw_monomials_are_sorted():
    for L in range(7):
        for m in pbw_monomials(L):
            keys = [i.pbw_key() for i in m]
            assert keys == sorted(keys)
            assert sum(i.length for i in m) == L
