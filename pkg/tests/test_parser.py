import pytest
from hypothesis import given, settings, strategies as st

from uqace.ace import ModelElem, W, equals, g_index, gtilde, mul, w_minus, w_plus
from uqace.coeffs import RatQ
from uqace.damiani import EIndex, e_elem
from uqace.freealg import NCPoly, W as FW, q_commutator
from uqace.parser import ParseError, parse_expr, parse_free, parse_shuffle, parse_words
from uqace.shuffle import natmap

Q = RatQ.q()


def test_q_commutator_literal():
    assert parse_free("[W0,W1]_q") == q_commutator(FW(0), FW(1))
    assert parse_free("[W0,W1]_{q^-1}") == q_commutator(FW(0), FW(1), -1)
    assert parse_free("[W0,W1]_{q}") == parse_free("[W0,W1]_q")


def test_root_vector_literal():
    assert parse_free("E[1,d]") == e_elem(EIndex("d", 1))
    assert equals(parse_expr("E[1,d]"), parse_expr("q^-2*W1*W0 - W0*W1"))


def test_model_atoms():
    assert equals(parse_expr("Gt[2]"), gtilde(2))
    assert equals(parse_expr("Wm[1]"), w_minus(1))
    assert equals(parse_expr("Wp[0]"), W(1))
    assert equals(parse_expr("Wp[1]"), w_plus(1))
    assert equals(parse_expr("G[1]"), g_index(1))
    assert equals(parse_expr("Gt[1] W0"), mul(gtilde(1), W(0)))
    assert equals(parse_expr("Gt[0]"), ModelElem.scalar(1))
    assert equals(parse_expr("G[0] + Gt[0]"), ModelElem.scalar(2))


def test_coefficient_literals():
    v = parse_free("(q^2-q^-2)/(q-q^-1) * W0")
    assert v == FW(0).scale(Q + Q ** -1)
    assert parse_free("2^3") == NCPoly.scalar(8)


def test_shuffle_and_word_backends():
    assert parse_shuffle("x*y") == parse_words("xy + q^-2*yx")
    assert parse_shuffle("x*y") == natmap(parse_free("W0*W1"))


@pytest.mark.parametrize("text,pos,expected", [
    ("E[0,d]", 2, ()),
    ("W0 +", 4, ("integer", "'q'", "atom", "'('", "'['")),
    ("[W0,W1", 6, ("']'",)),
    ("[W0 W1]", 6, ("','",)),
    ("E[1,b]", 4, ("'a0'", "'a1'", "'d'")),
    ("W0)", 2, ("'+'", "'-'", "'*'", "end of input")),
    ("[W0,W1]_r", 8, ("'q'", "'{'")),
])
def test_errors_report_position_and_expectation(text, pos, expected):
    with pytest.raises(ParseError) as err:
        parse_expr(text)
    assert err.value.pos == pos
    assert err.value.expected == expected
    assert "^" in str(err.value)


@pytest.mark.parametrize("text", ["W0/W1", "W0^-1", "1/(q-q)", "", "E[0,d]", "Wm[-1]", "x", "W2"])
def test_rejected_inputs(text):
    with pytest.raises(ParseError):
        parse_expr(text)


def test_letters_belong_to_their_algebra():
    with pytest.raises(ParseError):
        parse_free("x")
    with pytest.raises(ParseError):
        parse_shuffle("W0")


ATOMS = ["W0", "W1", "Gt[1]", "Gt[2]", "G[1]", "Wm[1]", "Wp[1]", "E[1,a0]", "E[1,a1]", "E[1,d]", "q", "2"]


@st.composite
def expressions(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        return draw(st.sampled_from(ATOMS))
    a, b = draw(expressions(depth=depth - 1)), draw(expressions(depth=depth - 1))
    form = draw(st.sampled_from(["{a} + {b}", "{a} - {b}", "{a}*{b}", "[{a},{b}]", "[{a},{b}]_q",
                                 "[{a},{b}]_{{q^-1}}", "({a})"]))
    return form.format(a=a, b=b)


@settings(max_examples=40, deadline=None)
@given(expressions())
def test_render_then_parse_round_trips(text):
    e = parse_expr(text)
    assert equals(parse_expr(str(e)), e)


@settings(max_examples=60, deadline=None)
@given(expressions(), st.sampled_from(["[", "]", "(", ")"]), st.integers(0, 40))
def test_unbalanced_brackets_are_rejected(text, ch, at):
    at = min(at, len(text))
    broken = text[:at] + ch + text[at:]
    opens = broken.count("[") + broken.count("(") + broken.count("{")
    closes = broken.count("]") + broken.count(")") + broken.count("}")
    assert opens != closes
    with pytest.raises(ParseError):
        parse_expr(broken)
