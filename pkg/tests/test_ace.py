from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import canonical_letters
from uqace.ace import (E, ModelElem, StraightenStats, W, canonicalize, check_compact, check_expanded,
                       check_xy_and_steps, commutator, compact_terms, equals, g_cap, g_index, gt_item, gtilde,
                       measure, mul, project_to_z, q_commutator, residual, straighten, w_minus, w_plus, zpoly_mul)
from uqace.atoms import W0_ATOM, W1_ATOM
from uqace.coeffs import EXACT, RatQ, make_field
from uqace.freealg import NCPoly, letters, word
from uqace.shuffle import natmap

Q = RatQ.q()
QQ = Q - Q ** -1
EVAL = make_field(Fraction(7, 5))
W0, W1 = W(0), W(1)
ONE = ModelElem.scalar(1)

ITEMS = {"W0": W0_ATOM, "W1": W1_ATOM, "g1": gt_item(1), "g2": gt_item(2), "g3": gt_item(3)}


def mixed_words(max_len=4, max_weight=4):
    return st.lists(st.sampled_from(sorted(ITEMS)), max_size=max_len).filter(
        lambda w: sum(int(x[1]) for x in w if x[0] == "g") <= max_weight)


def as_elem(names, field=EXACT):
    out = ModelElem.scalar(1, field)
    for n in names:
        item = ITEMS[n]
        f = (ModelElem.atom(item, field) if item[0] == "W" else gtilde(item[1], field))
        out = mul(out, f)
    return out


# -- constructors -----------------------------------------------------------------------

def test_gtilde_examples():
    assert gtilde(1).terms == {((), (1,)): RatQ(1)}
    assert equals(mul(gtilde(2), gtilde(1)), mul(gtilde(1), gtilde(2)))
    (key,), = [gtilde(3).terms]
    assert sum(key[1]) == 3
    with pytest.raises(ValueError):
        gtilde(0)


def test_w_examples():
    assert equals(w_plus(0), W1)
    assert equals(w_minus(0), W0)
    expected = mul(W0, gtilde(1)) - E("a0", 1).scale(Q ** 3 / QQ ** 2)
    assert equals(w_minus(1), expected)


def test_g_examples():
    expected = gtilde(1) + commutator(W1, W0).scale(RatQ(1) / (1 - Q ** -2))
    assert equals(g_cap(0), expected)
    assert equals(g_index(0), ONE)
    assert equals(g_index(1), g_cap(0))


def test_straighten_examples():
    c = Q ** 2 / QQ
    assert equals(mul(gtilde(1), W0), mul(W0, gtilde(1)) - E("a0", 1).scale(c))
    assert equals(mul(gtilde(1), W1), mul(W1, gtilde(1)) + E("a1", 1).scale(c))
    e = w_minus(2)
    again = straighten({w + tuple(gt_item(k) for k in m): c for (w, m), c in e.terms.items()})
    assert again.terms == e.terms


def test_mul_examples():
    assert mul(W0, W1).terms == {((W0_ATOM, W1_ATOM), ()): RatQ(1)}
    a, b, c = gtilde(1), W0, W1
    assert equals(mul(mul(a, b), c), mul(a, mul(b, c)))


def test_equals_examples():
    assert equals(w_plus(2), w_plus(2))
    assert equals(commutator(W0, w_minus(1)), ModelElem({}))
    assert not equals(mul(W0, W1), mul(W1, W0))


def test_project_to_z_examples():
    assert project_to_z(gtilde(2)) == {(2,): RatQ(1)}
    assert project_to_z(w_plus(3)) == {}
    assert project_to_z(w_minus(2)) == {}
    assert project_to_z(g_index(1)) == {(1,): RatQ(1)}
    assert project_to_z(g_cap(1)) == {(2,): RatQ(1)}


# -- relation suites at small bounds ------------------------------------------------------

def test_small_suites_pass():
    assert check_compact(1).passed
    assert check_expanded(1).passed
    assert check_xy_and_steps(2).passed


def test_step_and_recursion_examples():
    assert equals(commutator(gtilde(1), E("d", 1)), ModelElem({}))
    wmk = q_commutator(gtilde(1), W0).scale(RatQ(1) / QQ)
    assert equals(wmk, w_minus(1))


def test_wrong_coefficient_is_detected():
    lhs = commutator(gtilde(2), W1)
    rhs = lhs - compact_terms("gt_w1", (1,), EXACT)
    assert residual(lhs - rhs) == 0
    assert residual(lhs - rhs.scale(Q)) > 0


def test_eval_mode_model():
    assert check_compact(1, EVAL).passed
    assert equals(w_minus(1, EVAL), q_commutator(gtilde(1, EVAL), W(0, EVAL)).scale(1 / (EVAL.q - 1 / EVAL.q)))


# -- straightening ------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(mixed_words())
def test_straighten_matches_multiplication(names):
    direct = straighten({tuple(ITEMS[n] for n in names): 1})
    assert equals(direct, as_elem(names))


@settings(max_examples=25, deadline=None)
@given(mixed_words(max_len=4, max_weight=3))
def test_straighten_matches_letter_oracle(names):
    mixed = {tuple(ITEMS[n][1] if n[0] == "W" else ("G", ITEMS[n][1]) for n in names): EXACT.one}
    want = canonical_letters(mixed)
    got = canonicalize(straighten({tuple(ITEMS[n] for n in names): 1})).terms()
    assert {(tuple(letters(w)), m): c for (w, m), c in got.items()} == want


@settings(max_examples=40, deadline=None)
@given(mixed_words(max_len=6, max_weight=6))
def test_measure_strictly_decreases(names):
    stats = StraightenStats()
    straighten({tuple(ITEMS[n] for n in names): 1}, stats=stats, check_measure=True)
    pairs = measure(tuple(ITEMS[n] for n in names))[1]
    assert (stats.rewrites == 0) == (pairs == 0)


@settings(max_examples=30, deadline=None)
@given(mixed_words(3, 3), mixed_words(3, 3), mixed_words(3, 3))
def test_multiplication_is_associative(a, b, c):
    x, y, z = as_elem(a), as_elem(b), as_elem(c)
    assert equals(mul(mul(x, y), z), mul(x, mul(y, z)))


@settings(max_examples=30, deadline=None)
@given(mixed_words(), mixed_words())
def test_project_to_z_is_multiplicative(a, b):
    x, y = as_elem(a), as_elem(b)
    assert project_to_z(mul(x, y)) == zpoly_mul(project_to_z(x), project_to_z(y))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), max_size=4))
def test_pure_words_compare_like_their_images(u, v):
    a = as_elem(["W0" if i == 0 else "W1" for i in u])
    b = as_elem(["W0" if i == 0 else "W1" for i in v])
    images_equal = natmap(NCPoly.from_word(word(u))) == natmap(NCPoly.from_word(word(v)))
    assert equals(a, b) == images_equal
