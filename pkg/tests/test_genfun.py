from fractions import Fraction

import pytest

from uqace.ace import ModelElem, W, equals, model
from uqace.coeffs import EXACT, make_field
from uqace.genfun import (INF, NAMES, RELATION_NAMES, TruncSeries2, build_canonical, canonical_specs,
                          check_canonical_relations, check_gfmain, check_genfun, commutator, q_commutator,
                          relation_difference, series)

EVAL = make_field(Fraction(7, 5))


def test_basic_series():
    gt = series("Gtilde", "t", 2)
    assert equals(gt.coefficient(0, 0), ModelElem.scalar(1))
    assert equals(series("Wplus", "t", 2).coefficient(0, 0), W(1))
    assert series("Wminus", "s", 3).window() == ((0, 0), (3, INF))
    with pytest.raises(KeyError):
        series("Wminus", "s", 3).coefficient(4, 0)


def test_canonical_examples():
    assert build_canonical("A", 2).coefficient(0, 0).is_zero()
    assert build_canonical("C", 2).coefficient(0, 0).is_zero()
    i = build_canonical("I", 2)
    assert i.residual_terms() == 0
    with pytest.raises(KeyError):
        build_canonical("O", 2)


def test_windows_track_shifts():
    assert build_canonical("A", 2).window() == ((0, 0), (2, 2))
    assert build_canonical("P", 2).window() == ((-1, -1), (1, 1))
    assert build_canonical("D", 2).window() == ((0, 0), (2, 2))


def _products(N, field=EXACT):
    wm_s, g_t = series("Wminus", "s", N, field), series("G", "t", N, field)
    wp_t, gt_s = series("Wplus", "t", N, field), series("Gtilde", "s", N, field)
    inv = TruncSeries2.scalar_poly({(-1, 0): 1, (0, -1): 1}, field)
    return {
        "wm*g": wm_s * g_t,
        "shifted": (wm_s * wp_t).shift(-1, 0) + inv * (gt_s * g_t),
        "qcom": q_commutator(wm_s, wp_t) + commutator(gt_s, g_t).shift(1, 1),
    }


@pytest.mark.parametrize("name", ["wm*g", "shifted", "qcom"])
def test_window_soundness_against_higher_degree(name):
    low, high = _products(2)[name], _products(3)[name]
    (lo, hi) = low.window()
    assert any(not v.is_zero() for v in low.coeffs.values())
    for i in range(lo[0], hi[0] + 1):
        for j in range(lo[1], hi[1] + 1):
            assert equals(low.coefficient(i, j), high.coefficient(i, j)), (i, j)


def test_product_coefficients_are_exact():
    m = model(EXACT)
    p = _products(2)["wm*g"]
    for i in range(3):
        for j in range(3):
            assert equals(p.coefficient(i, j), m.mul(m.elem("Wm", i), m.elem("G", j)))


def test_perturbed_series_is_detected():
    m = model(EXACT)
    wm_t = series("Wminus", "t", 2)
    coeffs = {(n, 0): m.elem("Wm", n) for n in range(3)}
    coeffs[(1, 0)] = coeffs[(1, 0)] + W(1)
    bad = TruncSeries2(coeffs, (0, 0), (2, INF))
    assert commutator(bad, wm_t).residual_terms() > 0
    k_wrong = (q_commutator(series("Wminus", "s", 2), series("G", "t", 2), 2)
               - q_commutator(series("Wminus", "t", 2), series("G", "s", 2), 2))
    assert k_wrong.residual_terms() > 0


def test_relation_catalogue():
    assert len(RELATION_NAMES) == 38
    assert sum(n.startswith("extra.") for n in RELATION_NAMES) == 2
    assert len(NAMES) == 18 and "O" not in NAMES
    assert [s.id for s in canonical_specs(2, "C")] == ["canon.extra.C", "canon.w0.C", "canon.w1.C"]
    with pytest.raises(KeyError):
        canonical_specs(2, "nope")


@pytest.mark.parametrize("name", ["w0.A", "w0.B", "extra.C", "extra.J"])
def test_selected_relations_at_degree_2(name):
    assert relation_difference(name, 2).residual_terms() == 0


def test_gfmain_at_degree_2():
    rep = check_gfmain(2)
    assert rep.passed and len(rep.instances) == 18


def test_all_relations_at_degree_1():
    assert check_canonical_relations(1).passed


def test_eval_mode_degree_2():
    rep = check_genfun(2, EVAL)
    assert rep.passed and len(rep.instances) == 56
