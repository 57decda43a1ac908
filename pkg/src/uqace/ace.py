"""A model of the alternating central extension of U^+_q.

Elements are finite sums of terms ``(atom word, g-monomial) -> coefficient``
where the atom word is a product of atoms of U^+_q (see :mod:`uqace.atoms`)
and the g-monomial is a sorted tuple of positive integers standing for a
product of the commuting generators gt_n.  Every stored element is straightened:
all gt factors stand to the right of the U^+_q part.

Products are straightened by passing gt_n to the right through an atom ``a``:

    gt_n a = sum_{m=0}^{n} beta_m(a) gt_{n-m},

where beta_m on the generators comes from the letter rules and is extended
multiplicatively.  Equality is decided by mapping the U^+_q part of each
g-monomial bucket into the q-shuffle algebra (:func:`canonicalize`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .atoms import (W0_ATOM, W1_ATOM, AtomTable, AtomWord, e_atom, table,
                    word_bidegree)
from .coeffs import EXACT
from .freealg import render_terms, word_str
from .report import InstanceSpec, Report, run_instances
from .shuffle import SVec

GMono = Tuple[int, ...]
Key = Tuple[AtomWord, GMono]

GT = "Gt"


def gmono_mul(a: GMono, b: GMono) -> GMono:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def gmono_str(m: GMono) -> str:
    return "*".join(f"Gt[{k}]" for k in m)


class ModelElem:
    """Straightened element of the model: map (atom word, g-monomial) -> coefficient."""

    __slots__ = ("field", "terms")

    def __init__(self, terms: Optional[Mapping[Key, object]] = None, field=EXACT):
        self.field = field
        self.terms: Dict[Key, object] = {k: v for k, v in (terms or {}).items() if v}

    # -- constructors -----------------------------------------------------------
    @classmethod
    def scalar(cls, c, field=EXACT) -> "ModelElem":
        return cls({((), ()): field(c)}, field)

    @classmethod
    def atom(cls, a, field=EXACT) -> "ModelElem":
        return cls({((a,), ()): field.one}, field)

    @classmethod
    def gmono(cls, m: GMono, field=EXACT) -> "ModelElem":
        return cls({((), tuple(sorted(m))): field.one}, field)

    # -- linear structure ---------------------------------------------------------
    def _lift(self, other) -> "ModelElem":
        if isinstance(other, ModelElem):
            if other.field != self.field:
                raise TypeError("coefficient fields differ")
            return other
        return ModelElem.scalar(other, self.field)

    def __add__(self, other) -> "ModelElem":
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return ModelElem(out, self.field)

    __radd__ = __add__

    def __neg__(self) -> "ModelElem":
        return ModelElem({k: -v for k, v in self.terms.items()}, self.field)

    def __sub__(self, other) -> "ModelElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ModelElem":
        return self._lift(other) - self

    def scale(self, c) -> "ModelElem":
        c = self.field(c)
        if not c:
            return ModelElem({}, self.field)
        return ModelElem({k: v * c for k, v in self.terms.items()}, self.field)

    def __mul__(self, other) -> "ModelElem":
        if isinstance(other, ModelElem):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "ModelElem":
        return self.scale(other)

    def __truediv__(self, c) -> "ModelElem":
        return self.scale(self.field.one / self.field(c))

    def __pow__(self, n: int) -> "ModelElem":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ModelElem.scalar(1, self.field)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        """Structural zero; use :func:`equals` for equality in the model."""
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_scalar(self):
        """The coefficient if the element is a scalar, else None."""
        if not self.terms:
            return self.field.zero
        if len(self.terms) == 1 and ((), ()) in self.terms:
            return self.terms[((), ())]
        return None

    def __eq__(self, other):
        if not isinstance(other, ModelElem):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"ModelElem({self})"

    def __str__(self):
        src = table(self.field).source
        items = []
        for (w, m), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), repr(kv[0]))):
            parts = [src(a) for a in w] + ([gmono_str(m)] if m else [])
            items.append(("*".join(parts) or "1", c))
        return render_terms(items)


# -- straightening ---------------------------------------------------------------

class Model:
    """Caches for one coefficient field."""

    def __init__(self, field=EXACT):
        self.field = field
        self.table: AtomTable = table(field)
        self._pass: Dict[Tuple[GMono, AtomWord], Dict[Key, object]] = {}
        self._elems: Dict[tuple, ModelElem] = {}
        self._products: Dict[Tuple[tuple, tuple], ModelElem] = {}

    def pass_through(self, m: GMono, w: AtomWord) -> Dict[Key, object]:
        """Straightened form of gt_m * w, as a map (word, g-monomial) -> coefficient."""
        key = (m, w)
        hit = self._pass.get(key)
        if hit is not None:
            return hit
        one = self.field.one
        if not m or not w:
            out = {(w, m): one}
        else:
            n, rest = m[-1], m[:-1]
            inner: Dict[Key, object] = {}
            bw = self.table.beta_word
            for r in range(n + 1):
                left = (n - r,) if n - r else ()
                for w2, c in bw(r, w).items():
                    k = (w2, left)
                    prev = inner.get(k)
                    inner[k] = c if prev is None else prev + c
            out = {}
            for (w2, m2), c in inner.items():
                for (w3, m3), c3 in self.pass_through(rest, w2).items():
                    k = (w3, gmono_mul(m3, m2))
                    v = c * c3
                    prev = out.get(k)
                    out[k] = v if prev is None else prev + v
            out = {k: v for k, v in out.items() if v}
        self._pass[key] = out
        return out

    def mul(self, a: ModelElem, b: ModelElem) -> ModelElem:
        out: Dict[Key, object] = {}
        get = out.get
        for (w1, m1), c1 in a.terms.items():
            for (w2, m2), c2 in b.terms.items():
                c = c1 * c2
                if not m1 or not w2:
                    k = (w1 + w2, gmono_mul(m1, m2))
                    prev = get(k)
                    out[k] = c if prev is None else prev + c
                    continue
                for (w3, m3), c3 in self.pass_through(m1, w2).items():
                    k = (w1 + w3, gmono_mul(m3, m2))
                    v = c * c3
                    prev = get(k)
                    out[k] = v if prev is None else prev + v
        return ModelElem(out, self.field)

    # -- named generators -----------------------------------------------------------
    def elem(self, name: str, k: int) -> ModelElem:
        """Cached generator: ``Wm`` W_{-k}, ``Wp`` W_{k+1}, ``G`` G_k, ``Gt`` gt_k, ``E*`` root vectors."""
        key = (name, k)
        hit = self._elems.get(key)
        if hit is None:
            hit = self._elems[key] = _BUILDERS[name](k, self.field)
        return hit

    def product(self, x: Tuple[str, int], y: Tuple[str, int]) -> ModelElem:
        key = (x, y)
        hit = self._products.get(key)
        if hit is None:
            hit = self._products[key] = self.mul(self.elem(*x), self.elem(*y))
        return hit


_MODELS: Dict[object, Model] = {}


def model(field=EXACT) -> Model:
    m = _MODELS.get(field)
    if m is None:
        m = _MODELS[field] = Model(field)
    return m


def clear_models():
    _MODELS.clear()


def mul(a: ModelElem, b: ModelElem) -> ModelElem:
    """Product in the model (straightened)."""
    if a.field != b.field:
        raise TypeError("coefficient fields differ")
    return model(a.field).mul(a, b)


# -- mixed words and the rewriting form of straightening ----------------------------

def is_gt(item) -> bool:
    return item[0] == GT


def gt_item(n: int):
    return (GT, n)


def measure(mixed: tuple) -> Tuple[int, int]:
    """(total gt weight, number of (gt, atom to its right) pairs)."""
    weight = pairs = 0
    atoms_right = 0
    for item in reversed(mixed):
        if is_gt(item):
            weight += item[1]
            pairs += atoms_right
        else:
            atoms_right += 1
    return weight, pairs


@dataclass
class StraightenStats:
    rewrites: int = 0
    max_terms: int = 0


def straighten(mixed: Mapping[tuple, object], field=EXACT, stats: Optional[StraightenStats] = None,
               check_measure: bool = False) -> ModelElem:
    """Straighten a sum of mixed words (atoms and ``("Gt", n)`` items in any order).

    Rewrites the leftmost gt that has an atom immediately to its right by
    gt_n a -> sum_m beta_m(a) gt_{n-m} until every gt stands at the right end.
    With ``check_measure`` each rewrite is checked to lower :func:`measure`
    lexicographically.
    """
    t = table(field)
    work: Dict[tuple, object] = {}
    for w, c in mixed.items():
        c = field(c)
        if c:
            w = tuple(i for i in w if not (is_gt(i) and i[1] == 0))
            work[w] = work.get(w, field.zero) + c
    done: Dict[Key, object] = {}
    while work:
        w, c = work.popitem()
        if not c:
            continue
        pos = next((i for i in range(len(w) - 1) if is_gt(w[i]) and not is_gt(w[i + 1])), None)
        if pos is None:
            atoms = tuple(i for i in w if not is_gt(i))
            gm = tuple(sorted(i[1] for i in w if is_gt(i)))
            k = (atoms, gm)
            done[k] = done.get(k, field.zero) + c
            continue
        n, a = w[pos][1], w[pos + 1]
        before = measure(w) if check_measure else None
        if stats is not None:
            stats.rewrites += 1
        for m in range(n + 1):
            for c2, b in t.beta(m, a):
                new = w[:pos] + (b,) + ((gt_item(n - m),) if n > m else ()) + w[pos + 2:]
                if check_measure and not measure(new) < before:
                    raise AssertionError(f"rewrite did not lower the measure: {w} -> {new}")
                work[new] = work.get(new, field.zero) + c * c2
        if stats is not None:
            stats.max_terms = max(stats.max_terms, len(work))
    return ModelElem(done, field)


# -- canonical forms ----------------------------------------------------------------------

class CanonElem:
    """Canonical form: for each g-monomial, the q-shuffle image of its U^+_q part."""

    __slots__ = ("field", "buckets")

    def __init__(self, field, buckets: Dict[GMono, SVec]):
        self.field = field
        self.buckets = {m: v for m, v in buckets.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.buckets

    def residual_terms(self) -> int:
        return sum(v.support_size() for v in self.buckets.values())

    def terms(self) -> Dict[Tuple[int, GMono], object]:
        """Map (packed shuffle word, g-monomial) -> coefficient."""
        out = {}
        make = self.field.ring_make
        for m, v in self.buckets.items():
            for w, n in v.nums.items():
                if n:
                    out[(w, m)] = make(n, v.den)
        return out

    def __str__(self):
        items = []
        for (w, m), c in sorted(self.terms().items(), key=lambda kv: (kv[0][1], kv[0][0])):
            parts = ([word_str(w, "x")] if w != 1 else []) + ([gmono_str(m)] if m else [])
            items.append(("*".join(parts) or "1", c))
        return render_terms(items)


def canonicalize(e: ModelElem) -> CanonElem:
    t = table(e.field)
    groups: Dict[GMono, Dict[AtomWord, object]] = {}
    for (w, m), c in e.terms.items():
        groups.setdefault(m, {})[w] = c
    buckets = {}
    for m, items in groups.items():
        by_deg: Dict[Tuple[int, int], Dict[AtomWord, object]] = {}
        for w, c in items.items():
            by_deg.setdefault(word_bidegree(w), {})[w] = c
        total = None
        for part in by_deg.values():
            v = t.combination_image(part)
            total = v if total is None else total + v
        buckets[m] = total.pruned()
    return CanonElem(e.field, buckets)


def equals(a: ModelElem, b: ModelElem) -> bool:
    return canonicalize(a - b).is_zero()


def residual(e: ModelElem) -> int:
    return canonicalize(e).residual_terms()


def project_to_z(e: ModelElem) -> Dict[GMono, object]:
    """Image under W_{-n}, W_{n+1} -> 0, G_n, gt_n -> z_n, as a map z-monomial -> coefficient."""
    out: Dict[GMono, object] = {}
    for (w, m), c in e.terms.items():
        if not w:
            out[m] = out.get(m, e.field.zero) + c
    return {m: c for m, c in out.items() if c}


def zpoly_mul(a: Mapping[GMono, object], b: Mapping[GMono, object]) -> Dict[GMono, object]:
    out: Dict[GMono, object] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            k = gmono_mul(m1, m2)
            v = c1 * c2
            out[k] = out[k] + v if k in out else v
    return {m: c for m, c in out.items() if c}


# -- generators ----------------------------------------------------------------------

def W(i: int, field=EXACT) -> ModelElem:
    return ModelElem.atom(W0_ATOM if i == 0 else W1_ATOM, field)


def E(kind: str, n: int, field=EXACT) -> ModelElem:
    return ModelElem.atom(e_atom(kind, n), field)


def gt(k: int, field=EXACT) -> ModelElem:
    """gt_k with gt_0 = 1."""
    if k < 0:
        raise ValueError("gt index must be nonnegative")
    return ModelElem.scalar(1, field) if k == 0 else ModelElem.gmono((k,), field)


def gtilde(k: int, field=EXACT) -> ModelElem:
    if k < 1:
        raise ValueError("gtilde needs k >= 1; the identity stands for index 0")
    return ModelElem.gmono((k,), field)


def _qq(field):
    return field.q - field.q ** -1


def _expand_e_gt(kind: str, n: int, coeff, field) -> ModelElem:
    terms = {}
    for k in range(n + 1):
        c = coeff(k)
        terms[((e_atom(kind, k),), ((n - k,) if n - k else ()))] = c
    return ModelElem(terms, field)


def w_plus(n: int, field=EXACT) -> ModelElem:
    """W_{n+1} = sum_k E_{k delta + alpha1} gt_{n-k} (-1)^k q^k / (q - q^-1)^{2k}."""
    if n < 0:
        raise ValueError("w_plus needs n >= 0")
    d = _qq(field)
    return _expand_e_gt("a1", n, lambda k: field(-1) ** k * field.qpow(k) / d ** (2 * k), field)


def w_minus(n: int, field=EXACT) -> ModelElem:
    """W_{-n} = sum_k E_{k delta + alpha0} gt_{n-k} (-1)^k q^{3k} / (q - q^-1)^{2k}."""
    if n < 0:
        raise ValueError("w_minus needs n >= 0")
    d = _qq(field)
    return _expand_e_gt("a0", n, lambda k: field(-1) ** k * field.qpow(3 * k) / d ** (2 * k), field)


def g_cap(k: int, field=EXACT) -> ModelElem:
    """G_{k+1} = gt_{k+1} + [W1, W_{-k}] / (1 - q^-2)."""
    if k < 0:
        raise ValueError("g_cap needs k >= 0")
    m = model(field)
    c = commutator(W(1, field), m.elem("Wm", k))
    return gtilde(k + 1, field) + c.scale(field.one / (1 - field.qpow(-2)))


def g_index(n: int, field=EXACT) -> ModelElem:
    """G_n with G_0 = 1."""
    return ModelElem.scalar(1, field) if n == 0 else g_cap(n - 1, field)


_BUILDERS = {
    "Wm": w_minus,
    "Wp": w_plus,
    "G": g_index,
    "Gt": gt,
    "W": W,
    "Ea0": lambda n, f: E("a0", n, f),
    "Ea1": lambda n, f: E("a1", n, f),
    "Ed": lambda n, f: E("d", n, f),
}


def commutator(a: ModelElem, b: ModelElem) -> ModelElem:
    return a * b - b * a


def q_commutator(a: ModelElem, b: ModelElem, k: int = 1) -> ModelElem:
    f = a.field
    return (a * b).scale(f.qpow(k)) - (b * a).scale(f.qpow(-k))


# -- relation suites --------------------------------------------------------------------

class _Gens:
    """Shorthand for cached generators and their pairwise products."""

    def __init__(self, field):
        self.f = field
        self.m = model(field)

    def __call__(self, name, k):
        return self.m.elem(name, k)

    def pr(self, x, y):
        return self.m.product(x, y)

    def com(self, x, y):
        return self.pr(x, y) - self.pr(y, x)

    def qcom(self, x, y, k=1):
        f = self.f
        return self.pr(x, y).scale(f.qpow(k)) - self.pr(y, x).scale(f.qpow(-k))


def compact_terms(rel: str, idx: Sequence[int], field) -> ModelElem:
    """Left minus right side of one relation of the compact presentation."""
    f = field
    g = _Gens(f)
    w0, w1 = ("W", 0), ("W", 1)
    W0, W1 = g(*w0), g(*w1)
    q2 = f.q ** 2 - f.q ** -2
    if rel == "serre_w0":
        return commutator(W0, q_commutator(W0, q_commutator(W0, W1), -1))
    if rel == "serre_w1":
        return commutator(W1, q_commutator(W1, q_commutator(W1, W0), -1))
    if rel == "gt1_w1":
        return g.com(("Gt", 1), w1) - commutator(q_commutator(W0, W1), W1).scale(f.q / q2)
    if rel == "w0_gt1":
        return g.com(w0, ("Gt", 1)) - commutator(W0, q_commutator(W0, W1)).scale(f.q / q2)
    den = (1 - f.qpow(-2)) * q2
    if rel == "gt_w1":
        k = idx[0]
        rhs = commutator(q_commutator(g.qcom(("Gt", k), w0), W1), W1)
        return g.com(("Gt", k + 1), w1) - rhs.scale(f.one / den)
    if rel == "w0_gt":
        k = idx[0]
        rhs = commutator(W0, q_commutator(W0, g.qcom(w1, ("Gt", k))))
        return g.com(w0, ("Gt", k + 1)) - rhs.scale(f.one / den)
    if rel == "gt_gt":
        k, l = idx
        return g.com(("Gt", k + 1), ("Gt", l + 1))
    raise KeyError(f"unknown compact relation {rel!r}")


def expanded_terms(rel: str, idx: Sequence[int], field) -> List[ModelElem]:
    """Differences that must vanish for one relation of the expanded presentation."""
    f = field
    g = _Gens(f)
    q = f.q
    qq = _qq(f)
    w0, w1 = ("W", 0), ("W", 1)
    k = idx[0]
    l = idx[1] if len(idx) > 1 else None
    Wm = lambda n: ("Wm", n)
    Wp = lambda n: ("Wp", n)  # W_{n+1}
    G = lambda n: ("G", n)
    Gt = lambda n: ("Gt", n)
    if rel == "w_pair":
        a, b = g.com(w0, Wp(k)), g.com(Wm(k), w1)
        c = (g(*Gt(k + 1)) - g(*G(k + 1))).scale(1 - f.qpow(-2))
        return [a - b, b - c]
    if rel == "qcom_w0_g":
        a, b = g.qcom(w0, G(k + 1)), g.qcom(Gt(k + 1), w0)
        return [a - b, b - g(*Wm(k + 1)).scale(qq)]
    if rel == "qcom_g_w1":
        a, b = g.qcom(G(k + 1), w1), g.qcom(w1, Gt(k + 1))
        return [a - b, b - g(*Wp(k + 1)).scale(qq)]
    if rel == "com_w_same":
        return [g.com(Wm(k), Wm(l)), g.com(Wp(k), Wp(l))]
    if rel == "com_wm_wp":
        return [g.com(Wm(k), Wp(l)) + g.com(Wp(k), Wm(l))]
    if rel == "com_wm_g":
        return [g.com(Wm(k), G(l + 1)) + g.com(G(k + 1), Wm(l))]
    if rel == "com_wm_gt":
        return [g.com(Wm(k), Gt(l + 1)) + g.com(Gt(k + 1), Wm(l))]
    if rel == "com_wp_g":
        return [g.com(Wp(k), G(l + 1)) + g.com(G(k + 1), Wp(l))]
    if rel == "com_wp_gt":
        return [g.com(Wp(k), Gt(l + 1)) + g.com(Gt(k + 1), Wp(l))]
    if rel == "com_g_same":
        return [g.com(G(k + 1), G(l + 1)), g.com(Gt(k + 1), Gt(l + 1))]
    if rel == "com_gt_g":
        return [g.com(Gt(k + 1), G(l + 1)) + g.com(G(k + 1), Gt(l + 1))]
    if rel == "qsym_g_w":
        return [g.qcom(Wm(k), G(l)) - g.qcom(Wm(l), G(k)),
                g.qcom(G(k), Wp(l)) - g.qcom(G(l), Wp(k))]
    if rel == "qsym_gt_w":
        return [g.qcom(Gt(k), Wm(l)) - g.qcom(Gt(l), Wm(k)),
                g.qcom(Wp(l), Gt(k)) - g.qcom(Wp(k), Gt(l))]
    if rel == "com_g_gt_shift":
        lhs = g.com(G(k), Gt(l + 1)) - g.com(G(l), Gt(k + 1))
        rhs = (g.qcom(Wm(l), Wp(k)) - g.qcom(Wm(k), Wp(l))).scale(q)
        return [lhs - rhs]
    if rel == "com_gt_g_shift":
        lhs = g.com(Gt(k), G(l + 1)) - g.com(Gt(l), G(k + 1))
        rhs = (g.qcom(Wp(l), Wm(k)) - g.qcom(Wp(k), Wm(l))).scale(q)
        return [lhs - rhs]
    if rel == "qcom_g_gt":
        lhs = g.qcom(G(k + 1), Gt(l + 1)) - g.qcom(G(l + 1), Gt(k + 1))
        rhs = (g.com(Wm(l), Wp(k + 1)) - g.com(Wm(k), Wp(l + 1))).scale(q)
        return [lhs - rhs]
    if rel == "qcom_gt_g":
        lhs = g.qcom(Gt(k + 1), G(l + 1)) - g.qcom(Gt(l + 1), G(k + 1))
        rhs = (g.com(Wp(l), Wm(k + 1)) - g.com(Wp(k), Wm(l + 1))).scale(q)
        return [lhs - rhs]
    raise KeyError(f"unknown expanded relation {rel!r}")


def xy_terms(rel: str, idx: Sequence[int], field) -> List[ModelElem]:
    f = field
    g = _Gens(f)
    inv = f.one / _qq(f)
    w0, w1 = ("W", 0), ("W", 1)
    n = idx[0]
    if rel == "wplus":
        return [g("Wp", n) - g.qcom(w1, ("Gt", n)).scale(inv)]
    if rel == "wminus":
        return [g("Wm", n) - g.qcom(("Gt", n), w0).scale(inv)]
    if rel == "step1":
        return [g.com(w0, ("Wp", n)) - g.com(("Wm", n), w1)]
    if rel == "step2":
        return [g.com(("Gt", n), ("Ed", 1))]
    if rel == "step3":
        return [g.com(("Wm", n), w0)]
    if rel == "step4":
        return [g.com(("Wp", n), w1)]
    if rel == "gwwg.w1":
        return [g.qcom(("G", n + 1), w1) - g.qcom(w1, ("Gt", n + 1))]
    if rel == "gwwg.w0":
        return [g.qcom(w0, ("G", n + 1)) - g.qcom(("Gt", n + 1), w0)]
    raise KeyError(f"unknown relation {rel!r}")


COMPACT = ("serre_w0", "serre_w1", "gt1_w1", "w0_gt1", "gt_w1", "w0_gt", "gt_gt")
EXPANDED_ONE = ("w_pair", "qcom_w0_g", "qcom_g_w1")
EXPANDED_TWO = ("com_w_same", "com_wm_wp", "com_wm_g", "com_wm_gt", "com_wp_g", "com_wp_gt", "com_g_same", "com_gt_g",
                "qsym_g_w", "qsym_gt_w", "com_g_gt_shift", "com_gt_g_shift", "qcom_g_gt", "qcom_gt_g")


def evaluate(spec: InstanceSpec, field) -> int:
    suite, _, rel = spec.id.partition(".")
    if suite == "compact":
        return residual(compact_terms(rel, spec.indices, field))
    if suite == "expanded":
        return sum(residual(d) for d in expanded_terms(rel, spec.indices, field))
    if suite == "xy":
        return sum(residual(d) for d in xy_terms(rel, spec.indices, field))
    raise KeyError(f"unknown ace instance {spec.id!r}")


_EVAL = "uqace.ace.evaluate"


def compact_specs(max_k: int) -> List[InstanceSpec]:
    out = [InstanceSpec(f"compact.{r}", ()) for r in COMPACT[:4]]
    out += [InstanceSpec(f"compact.{r}", (k,)) for r in COMPACT[4:6] for k in range(1, max_k + 1)]
    out += [InstanceSpec("compact.gt_gt", (k, l)) for k in range(max_k + 1) for l in range(max_k + 1)]
    return out


def expanded_specs(max_k: int) -> List[InstanceSpec]:
    out = [InstanceSpec(f"expanded.{r}", (k,)) for r in EXPANDED_ONE for k in range(max_k + 1)]
    out += [InstanceSpec(f"expanded.{r}", (k, l)) for r in EXPANDED_TWO
            for k in range(max_k + 1) for l in range(max_k + 1)]
    return out


def xy_specs(max_n: int, max_step: Optional[int] = None, max_gwwg: Optional[int] = None) -> List[InstanceSpec]:
    max_step = max_n - 1 if max_step is None else max_step
    max_gwwg = max_n - 1 if max_gwwg is None else max_gwwg
    out = [InstanceSpec(f"xy.{r}", (n,)) for r in ("wplus", "wminus") for n in range(max_n + 1)]
    out += [InstanceSpec(f"xy.step{i}", (n,)) for i in (1, 3, 4) for n in range(max_step + 1)]
    out += [InstanceSpec("xy.step2", (n,)) for n in range(1, max_step + 1)]
    out += [InstanceSpec(f"xy.gwwg.{r}", (k,)) for r in ("w0", "w1") for k in range(max_gwwg + 1)]
    return out


def check_compact(max_k: int = 4, field=EXACT, jobs: int = 1) -> Report:
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    return run_instances("ace.compact", {"max_k": max_k}, compact_specs(max_k), _EVAL, field, jobs)


def check_expanded(max_k: int = 4, field=EXACT, jobs: int = 1) -> Report:
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    return run_instances("ace.expanded", {"max_k": max_k}, expanded_specs(max_k), _EVAL, field, jobs)


def check_xy_and_steps(max_n: int = 5, field=EXACT, jobs: int = 1, max_step: Optional[int] = None,
                       max_gwwg: Optional[int] = None) -> Report:
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    specs = xy_specs(max_n, max_step, max_gwwg)
    bounds = {"max_n": max_n}
    if max_step is not None:
        bounds["max_step"] = max_step
    if max_gwwg is not None:
        bounds["max_gwwg"] = max_gwwg
    return run_instances("ace.xy", bounds, specs, _EVAL, field, jobs)


def check_ace(max_k: int = 4, max_n: int = 5, field=EXACT, jobs: int = 1) -> Report:
    """Compact, expanded and W_{n+1}/W_{-n} expansion suites in one report."""
    specs = compact_specs(max_k) + expanded_specs(max_k) + xy_specs(max_n)
    return run_instances("ace", {"max_k": max_k, "max_n": max_n}, specs, _EVAL, field, jobs)
