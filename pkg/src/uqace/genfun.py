"""Truncated generating functions in two commuting variables s, t over the model.

A :class:`TruncSeries2` stores coefficients (i, j) -> ModelElem together with a
lower bound ``lo`` below which every coefficient is zero and an exactness
window ``hi``: coefficients with i <= hi[0] and j <= hi[1] equal those of the
untruncated series.  ``INF`` marks a variable in which the series is exact
(for instance a series in s alone is exact in t).

For a product the window is  hi = min(hi_a + lo_b, hi_b + lo_a)  in each
variable, which is exactly the range where no coefficient outside a window can
contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from . import ace
from .ace import ModelElem, model
from .coeffs import EXACT
from .report import InstanceSpec, Report, run_instances

INF = 10 ** 9

Exp = Tuple[int, int]

BASIC = ("Wminus", "Wplus", "G", "Gtilde")
NAMES = tuple("ABCDEFGHIJKLMNPQRS")


class TruncSeries2:
    __slots__ = ("field", "coeffs", "lo", "hi")

    def __init__(self, coeffs: Mapping[Exp, ModelElem], lo: Exp, hi: Exp, field=EXACT):
        self.field = field
        self.lo = lo
        self.hi = hi
        self.coeffs: Dict[Exp, ModelElem] = {
            k: v for k, v in coeffs.items()
            if v.terms and lo[0] <= k[0] <= hi[0] and lo[1] <= k[1] <= hi[1]}

    # -- constructors -----------------------------------------------------------
    @classmethod
    def constant(cls, e: ModelElem) -> "TruncSeries2":
        return cls({(0, 0): e}, (0, 0), (INF, INF), e.field)

    @classmethod
    def scalar_poly(cls, terms: Mapping[Exp, object], field=EXACT) -> "TruncSeries2":
        """Exact polynomial in s, s^-1, t, t^-1 with scalar coefficients."""
        lo = (min(i for i, _ in terms), min(j for _, j in terms))
        return cls({k: ModelElem.scalar(c, field) for k, c in terms.items()}, lo, (INF, INF), field)

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other: "TruncSeries2") -> "TruncSeries2":
        lo = (min(self.lo[0], other.lo[0]), min(self.lo[1], other.lo[1]))
        hi = (min(self.hi[0], other.hi[0]), min(self.hi[1], other.hi[1]))
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return TruncSeries2(out, lo, hi, self.field)

    def __neg__(self) -> "TruncSeries2":
        return TruncSeries2({k: -v for k, v in self.coeffs.items()}, self.lo, self.hi, self.field)

    def __sub__(self, other: "TruncSeries2") -> "TruncSeries2":
        return self + (-other)

    def scale(self, c) -> "TruncSeries2":
        return TruncSeries2({k: v.scale(c) for k, v in self.coeffs.items()}, self.lo, self.hi, self.field)

    def shift(self, a: int, b: int) -> "TruncSeries2":
        """Multiply by s^a t^b."""
        sh = lambda x, d: x if x >= INF else x + d
        return TruncSeries2({(i + a, j + b): v for (i, j), v in self.coeffs.items()},
                            (self.lo[0] + a, self.lo[1] + b), (sh(self.hi[0], a), sh(self.hi[1], b)), self.field)

    def __mul__(self, other: "TruncSeries2") -> "TruncSeries2":
        if not isinstance(other, TruncSeries2):
            return self.scale(other)
        lo = (self.lo[0] + other.lo[0], self.lo[1] + other.lo[1])
        hi = tuple(min(_add(self.hi[v], other.lo[v]), _add(other.hi[v], self.lo[v])) for v in (0, 1))
        m = model(self.field)
        out: Dict[Exp, ModelElem] = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                if k[0] > hi[0] or k[1] > hi[1]:
                    continue
                p = m.mul(a, b)
                out[k] = out[k] + p if k in out else p
        return TruncSeries2(out, lo, hi, self.field)

    # -- inspection ------------------------------------------------------------------
    def window(self) -> Tuple[Exp, Exp]:
        return self.lo, self.hi

    def coefficient(self, i: int, j: int) -> ModelElem:
        if not (self.lo[0] <= i <= self.hi[0] and self.lo[1] <= j <= self.hi[1]):
            raise KeyError(f"coefficient ({i}, {j}) lies outside the exactness window")
        return self.coeffs.get((i, j), ModelElem({}, self.field))

    def residuals(self) -> Dict[Exp, int]:
        """Canonical residual term count of every stored coefficient."""
        return {k: ace.residual(v) for k, v in sorted(self.coeffs.items())}

    def residual_terms(self) -> int:
        return sum(self.residuals().values())


def _add(x: int, d: int) -> int:
    return INF if x >= INF else x + d


def commutator(a: TruncSeries2, b: TruncSeries2) -> TruncSeries2:
    return a * b - b * a


def q_commutator(a: TruncSeries2, b: TruncSeries2, k: int = 1) -> TruncSeries2:
    f = a.field
    return (a * b).scale(f.qpow(k)) - (b * a).scale(f.qpow(-k))


# -- basic series -----------------------------------------------------------------------

_GEN = {"Wminus": "Wm", "Wplus": "Wp", "G": "G", "Gtilde": "Gt"}


def series(name: str, var: str, N: int, field=EXACT) -> TruncSeries2:
    """W^-(var), W^+(var), G(var) or Gtilde(var), truncated after var^N."""
    if name not in _GEN:
        raise KeyError(f"unknown series {name!r}")
    if var not in ("s", "t"):
        raise ValueError("var must be 's' or 't'")
    if N < 0:
        raise ValueError("N must be nonnegative")
    m = model(field)
    gen = _GEN[name]
    coeffs = {}
    for n in range(N + 1):
        coeffs[(n, 0) if var == "s" else (0, n)] = m.elem(gen, n)
    hi = (N, INF) if var == "s" else (INF, N)
    return TruncSeries2(coeffs, (0, 0), hi, field)


@dataclass
class _Ctx:
    field: object
    N: int

    def __post_init__(self):
        f = self.field
        self.cache: Dict[str, TruncSeries2] = {}
        self.q = f.q
        self.qq = f.q - f.q ** -1
        self.q2 = f.q ** 2 - f.q ** -2
        self.qi = f.q + f.q ** -1
        self.one_m = 1 - f.qpow(-2)

    def s(self, name):
        return series(name, "s", self.N, self.field)

    def t(self, name):
        return series(name, "t", self.N, self.field)

    def poly(self, terms):
        return TruncSeries2.scalar_poly(terms, self.field)

    def W(self, i):
        return TruncSeries2.constant(ace.W(i, self.field))

    def get(self, name):
        hit = self.cache.get(name)
        if hit is None:
            hit = self.cache[name] = _DEFS[name](self)
        return hit


def _def_A(c):
    return commutator(c.s("Wminus"), c.t("Wminus"))


def _def_B(c):
    return commutator(c.s("Wplus"), c.t("Wplus"))


def _def_C(c):
    return commutator(c.s("Wminus"), c.t("Wplus")) + commutator(c.s("Wplus"), c.t("Wminus"))


def _sym(c, x, y):
    """s[x(s), y(t)] + t[y(s), x(t)]."""
    return commutator(c.s(x), c.t(y)).shift(1, 0) + commutator(c.s(y), c.t(x)).shift(0, 1)


def _def_P(c, a, b, wa, wb):
    """t^-1[a(s), b(t)] - s^-1[a(t), b(s)] - q[wa(t), wb(s)]_q + q[wa(s), wb(t)]_q."""
    x = commutator(c.s(a), c.t(b)).shift(0, -1) - commutator(c.t(a), c.s(b)).shift(-1, 0)
    y = q_commutator(c.s(wa), c.t(wb)) - q_commutator(c.t(wa), c.s(wb))
    return x + y.scale(c.q)


def _def_R(c, a, b, wa, wb):
    """[a(s), b(t)]_q - [a(t), b(s)]_q - qt[wa(t), wb(s)] + qs[wa(s), wb(t)]."""
    x = q_commutator(c.s(a), c.t(b)) - q_commutator(c.t(a), c.s(b))
    y = commutator(c.s(wa), c.t(wb)).shift(1, 0) - commutator(c.t(wa), c.s(wb)).shift(0, 1)
    return x + y.scale(c.q)


_DEFS: Dict[str, Callable[[_Ctx], TruncSeries2]] = {
    "A": _def_A,
    "B": _def_B,
    "C": _def_C,
    "D": lambda c: _sym(c, "Wminus", "G"),
    "E": lambda c: _sym(c, "Wminus", "Gtilde"),
    "F": lambda c: _sym(c, "Wplus", "G"),
    "G": lambda c: _sym(c, "Wplus", "Gtilde"),
    "H": lambda c: commutator(c.s("G"), c.t("G")),
    "I": lambda c: commutator(c.s("Gtilde"), c.t("Gtilde")),
    "J": lambda c: commutator(c.s("Gtilde"), c.t("G")) + commutator(c.s("G"), c.t("Gtilde")),
    "K": lambda c: q_commutator(c.s("Wminus"), c.t("G")) - q_commutator(c.t("Wminus"), c.s("G")),
    "L": lambda c: q_commutator(c.s("G"), c.t("Wplus")) - q_commutator(c.t("G"), c.s("Wplus")),
    "M": lambda c: q_commutator(c.s("Gtilde"), c.t("Wminus")) - q_commutator(c.t("Gtilde"), c.s("Wminus")),
    "N": lambda c: q_commutator(c.s("Wplus"), c.t("Gtilde")) - q_commutator(c.t("Wplus"), c.s("Gtilde")),
    "P": lambda c: _def_P(c, "G", "Gtilde", "Wminus", "Wplus"),
    "Q": lambda c: _def_P(c, "Gtilde", "G", "Wplus", "Wminus"),
    "R": lambda c: _def_R(c, "G", "Gtilde", "Wminus", "Wplus"),
    "S": lambda c: _def_R(c, "Gtilde", "G", "Wplus", "Wminus"),
}

_CTX: Dict[Tuple[object, int], _Ctx] = {}


def _ctx(N: int, field) -> _Ctx:
    key = (field, N)
    c = _CTX.get(key)
    if c is None:
        c = _CTX[key] = _Ctx(field, N)
    return c


def clear_cache():
    _CTX.clear()


def build_canonical(name: str, N: int, field=EXACT) -> TruncSeries2:
    """One of the generating functions A, ..., S (no O), truncated at degree N."""
    if name not in _DEFS:
        raise KeyError(f"unknown generating function {name!r}")
    if N < 1:
        raise ValueError("N must be at least 1")
    return _ctx(N, field).get(name)


# -- canonical relations ----------------------------------------------------------------

def _relations(c: _Ctx) -> Dict[str, Callable[[], Tuple[TruncSeries2, TruncSeries2]]]:
    """name -> (lhs, rhs), both sides multiplied through by any scalar series divisor."""
    g = c.get
    W0, W1 = c.W(0), c.W(1)
    zero = lambda: TruncSeries2({}, (0, 0), (INF, INF), c.field)
    st = lambda x: x.shift(1, 1)
    s_plus_t = c.poly({(1, 0): 1, (0, 1): 1})
    inv_sum = c.poly({(-1, 0): 1, (0, -1): 1})
    inv_st = lambda x: x.shift(-1, -1)
    qq, q2, qi, om = c.qq, c.q2, c.qi, c.one_m
    com, qcom = commutator, q_commutator
    rel = {
        "w0.A": lambda: (com(W0, g("A")), zero()),
        "w0.B": lambda: (st(com(W0, g("B"))), (g("G") - g("F")).scale(om)),
        "w0.C": lambda: (st(com(W0, g("C"))), (g("E") - g("D")).scale(om)),
        "w0.D": lambda: (qcom(W0, g("D")), (s_plus_t * g("A")).scale(qq)),
        "w0.E": lambda: (qcom(g("E"), W0), (s_plus_t * g("A")).scale(qq)),
        "w0.F": lambda: (qcom(W0, g("F")), (g("S") - g("H").scale(qi)).scale(om)),
        "w0.G": lambda: (qcom(g("G"), W0), (g("S") - g("I").scale(qi)).scale(om)),
        "w0.H": lambda: (qcom(W0, g("H"), 2), g("K").scale(qq)),
        "w0.I": lambda: (qcom(g("I"), W0, 2), g("M").scale(qq)),
        "w0.J": lambda: (com(W0, g("J")), (g("M") - g("K")).scale(qq)),
        "w0.K": lambda: (qcom(W0, g("K")), g("A").scale(q2)),
        "w0.L": lambda: (qcom(W0, g("L")), (g("P") - inv_sum * g("H")).scale(qq)),
        "w0.M": lambda: (qcom(g("M"), W0), g("A").scale(q2)),
        "w0.N": lambda: (qcom(g("N"), W0), (g("Q") - inv_sum * g("I")).scale(qq)),
        "w0.P": lambda: (com(g("P"), W0), (inv_sum * g("K") - inv_st(g("E")).scale(qi)).scale(qq)),
        "w0.Q": lambda: (com(W0, g("Q")), (inv_sum * g("M") - inv_st(g("D")).scale(qi)).scale(qq)),
        "w0.R": lambda: (com(W0, g("R")), (inv_sum * (g("E") - g("D"))).scale(qq)),
        "w0.S": lambda: (com(W0, g("S")), (g("M") - g("K")).scale(q2)),
        "w1.A": lambda: (st(com(W1, g("A"))), (g("D") - g("E")).scale(om)),
        "w1.B": lambda: (com(W1, g("B")), zero()),
        "w1.C": lambda: (st(com(W1, g("C"))), (g("F") - g("G")).scale(om)),
        "w1.D": lambda: (qcom(g("D"), W1), (g("R") - g("H").scale(qi)).scale(om)),
        "w1.E": lambda: (qcom(W1, g("E")), (g("R") - g("I").scale(qi)).scale(om)),
        "w1.F": lambda: (qcom(g("F"), W1), (s_plus_t * g("B")).scale(qq)),
        "w1.G": lambda: (qcom(W1, g("G")), (s_plus_t * g("B")).scale(qq)),
        "w1.H": lambda: (qcom(g("H"), W1, 2), g("L").scale(qq)),
        "w1.I": lambda: (qcom(W1, g("I"), 2), g("N").scale(qq)),
        "w1.J": lambda: (com(W1, g("J")), (g("L") - g("N")).scale(qq)),
        "w1.K": lambda: (qcom(g("K"), W1), (g("P") - inv_sum * g("H")).scale(qq)),
        "w1.L": lambda: (qcom(g("L"), W1), g("B").scale(q2)),
        "w1.M": lambda: (qcom(W1, g("M")), (g("Q") - inv_sum * g("I")).scale(qq)),
        "w1.N": lambda: (qcom(W1, g("N")), g("B").scale(q2)),
        "w1.P": lambda: (com(W1, g("P")), (inv_sum * g("L") - inv_st(g("G")).scale(qi)).scale(qq)),
        "w1.Q": lambda: (com(g("Q"), W1), (inv_sum * g("N") - inv_st(g("F")).scale(qi)).scale(qq)),
        "w1.R": lambda: (com(W1, g("R")), (g("L") - g("N")).scale(q2)),
        "w1.S": lambda: (com(W1, g("S")), (inv_sum * (g("F") - g("G"))).scale(qq)),
    }
    # C and J in multiplied-through form: both sides times st (q^2 - s^-1 t)(q^2 - s t^-1).
    f = c.field
    q = f.q
    cross = c.poly({(2, 0): -(q ** 2), (0, 2): -(q ** 2), (1, 1): q ** 4 + 1})
    PQ = lambda: g("P") + g("Q")
    RS = lambda: g("R") + g("S")
    rel["extra.C"] = lambda: ((cross * g("C")).scale(q ** -1),
                              st(PQ()).scale(qi) - s_plus_t * RS())
    rel["extra.J"] = lambda: ((cross * g("J")).scale(q ** -2),
                              st(RS()).scale(qi) - st(s_plus_t * PQ()))
    return rel


RELATION_NAMES: Tuple[str, ...] = tuple(sorted(_relations(_Ctx(EXACT, 1)).keys()))


def relation_difference(name: str, N: int, field=EXACT) -> TruncSeries2:
    c = _ctx(N, field)
    rels = _relations(c)
    if name not in rels:
        raise KeyError(f"unknown canonical relation {name!r}")
    lhs, rhs = rels[name]()
    return lhs - rhs


def evaluate(spec: InstanceSpec, field) -> int:
    kind, _, name = spec.id.partition(".")
    N = spec.indices[0]
    if kind == "gf":
        return build_canonical(name, N, field).residual_terms()
    if kind == "canon":
        return relation_difference(name, N, field).residual_terms()
    raise KeyError(f"unknown genfun instance {spec.id!r}")


_EVAL = "uqace.genfun.evaluate"


def gfmain_specs(N: int) -> List[InstanceSpec]:
    return [InstanceSpec(f"gf.{n}", (N,)) for n in NAMES]


def canonical_specs(N: int, relation: Optional[str] = None) -> List[InstanceSpec]:
    names = RELATION_NAMES
    if relation is not None:
        names = [n for n in names if n == relation or n.endswith("." + relation)]
        if not names:
            raise KeyError(f"unknown canonical relation {relation!r}")
    return [InstanceSpec(f"canon.{n}", (N,)) for n in names]


def check_gfmain(N: int = 3, field=EXACT, jobs: int = 1) -> Report:
    if N < 1:
        raise ValueError("N must be at least 1")
    return run_instances("genfun.gfmain", {"degree": N}, gfmain_specs(N), _EVAL, field, jobs)


def check_canonical_relations(N: int = 3, field=EXACT, jobs: int = 1, relation: Optional[str] = None) -> Report:
    if N < 1:
        raise ValueError("N must be at least 1")
    return run_instances("genfun.canonical", {"degree": N}, canonical_specs(N, relation), _EVAL, field, jobs)


def check_genfun(N: int = 3, field=EXACT, jobs: int = 1, relation: Optional[str] = None) -> Report:
    """Generating functions A..S and the canonical relations in one report."""
    specs = canonical_specs(N, relation)
    if relation is None:
        specs = gfmain_specs(N) + specs
    return run_instances("genfun", {"degree": N}, specs, _EVAL, field, jobs)
