"""Damiani root vectors of U^+_q and checks of their commutation relations.

Root vectors come in three kinds: ``a0`` (E_{n delta + alpha0}, n >= 0),
``a1`` (E_{n delta + alpha1}, n >= 0) and ``d`` (E_{n delta}, n >= 1).  They
are available both as free-algebra polynomials (:func:`e_elem`) and through
their q-shuffle images, computed homomorphically from the same recursions
(:func:`e_image`).  Every identity is decided by comparing shuffle images.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .atoms import KINDS, AtomWord, e_atom, svec_combination, table
from .coeffs import EXACT
from .freealg import NCPoly, W, commutator
from .report import InstanceSpec, Report, run_instances
from .shuffle import SVec, _rank


@dataclass(frozen=True, order=True)
class EIndex:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown root vector kind {self.kind!r}")
        if self.n < 0 or (self.kind == "d" and self.n < 1):
            raise ValueError(f"invalid root vector index {self}")

    @property
    def length(self) -> int:
        return 2 * self.n if self.kind == "d" else 2 * self.n + 1

    @property
    def bidegree(self) -> Tuple[int, int]:
        n = self.n
        return {"a0": (n + 1, n), "a1": (n, n + 1), "d": (n, n)}[self.kind]

    def pbw_key(self) -> Tuple[int, int]:
        """Position in the PBW order: a0 ascending, then d ascending, then a1 descending."""
        if self.kind == "a0":
            return (0, self.n)
        if self.kind == "d":
            return (1, self.n)
        return (2, -self.n)

    @property
    def atom(self):
        return e_atom(self.kind, self.n)

    def __str__(self):
        return f"E[{self.n},{self.kind}]"


@lru_cache(maxsize=None)
def _e_elem(kind: str, n: int, field) -> NCPoly:
    f = field
    if kind == "a0" and n == 0:
        return W(0, f)
    if kind == "a1" and n == 0:
        return W(1, f)
    if kind == "d" and n == 1:
        return W(1, f) * W(0, f) * f.qpow(-2) - W(0, f) * W(1, f)
    inv = f.one / (f.q + f.q ** -1)
    ed = _e_elem("d", 1, f)
    if kind == "a0":
        return commutator(ed, _e_elem("a0", n - 1, f)).scale(inv)
    if kind == "a1":
        return commutator(_e_elem("a1", n - 1, f), ed).scale(inv)
    prev = _e_elem("a1", n - 1, f)
    return prev * W(0, f) * f.qpow(-2) - W(0, f) * prev


def e_elem(i: EIndex, field=EXACT) -> NCPoly:
    """Root vector as a polynomial in the free algebra on W0, W1 (cached)."""
    if not isinstance(i, EIndex):
        raise TypeError("e_elem expects an EIndex")
    return _e_elem(i.kind, i.n, field)


def e_elem_uncached(i: EIndex, field=EXACT) -> NCPoly:
    return _e_elem.__wrapped__(i.kind, i.n, field)


def e_image(i: EIndex, field=EXACT) -> SVec:
    """q-shuffle image of a root vector, computed from the recursions."""
    return table(field).image(i.atom)


# -- helpers for building identities -------------------------------------------

def E(kind: str, n: int):
    return e_atom(kind, n)


def combo_image(terms: Sequence[Tuple[object, AtomWord]], field) -> SVec:
    """Image of sum c * (product of atoms)."""
    t = table(field)
    return svec_combination([(c, t.word_image(tuple(w))) for c, w in terms], field)


def residual_count(terms, field) -> int:
    return combo_image(terms, field).support_size()


# -- relation families ------------------------------------------------------------

def com3_terms(family: str, i: int, j: int, field) -> List[Tuple[object, AtomWord]]:
    """Left minus right side of the commutation rule for E_i, E_j (i > j) of one family."""
    if not i > j >= 0:
        raise ValueError("com3 needs i > j >= 0")
    f = field
    k = family
    qq = f.q ** 2 - f.q ** -2
    gap = i - j
    r = gap // 2
    if k == "a0":
        out = [(f.one, (E(k, i), E(k, j))), (-f.qpow(-2), (E(k, j), E(k, i)))]
    else:
        out = [(f.one, (E(k, j), E(k, i))), (-f.qpow(-2), (E(k, i), E(k, j)))]
    top = r if gap % 2 else r - 1
    for l in range(1, top + 1):
        c = qq * f.qpow(-2 * l)
        pair = (E(k, j + l), E(k, i - l)) if k == "a0" else (E(k, i - l), E(k, j + l))
        out.append((c, pair))
    if gap % 2 == 0:
        c = f.qpow(j - i + 1) * (f.q - f.q ** -1)
        out.append((c, (E(k, r + j), E(k, r + j))))
    return out


def mutcom_terms(i: int, j: int, field):
    f = field
    return [(f.one, (E("d", i), E("d", j))), (-f.one, (E("d", j), E("d", i)))]


def qcome_terms(i: int, j: int, field):
    f = field
    a, b = E("a0", i), E("a1", j)
    return [(f.q, (a, b)), (-f.q ** -1, (b, a)), (f.q, (E("d", i + j + 1),))]


def wecom_terms(family: str, i: int, field):
    """[W0, E_i]_q/(q - q^-1) - sum E_l E_{i-l}  (resp. the a1 mirror)."""
    f = field
    inv = f.one / (f.q - f.q ** -1)
    if family == "a0":
        w, e = E("a0", 0), E("a0", i)
        out = [(f.q * inv, (w, e)), (-f.q ** -1 * inv, (e, w))]
        out += [(-f.one, (E("a0", l), E("a0", i - l))) for l in range(i + 1)]
    else:
        w, e = E("a1", 0), E("a1", i)
        out = [(f.q * inv, (e, w)), (-f.q ** -1 * inv, (w, e))]
        out += [(-f.one, (E("a1", i - l), E("a1", l))) for l in range(i + 1)]
    return out


def evaluate(spec: InstanceSpec, field) -> int:
    rel, idx = spec.id, spec.indices
    if rel.startswith("com3."):
        return residual_count(com3_terms(rel[5:], idx[0], idx[1], field), field)
    if rel == "imag.commute":
        return residual_count(mutcom_terms(idx[0], idx[1], field), field)
    if rel == "imag.qcom":
        return residual_count(qcome_terms(idx[0], idx[1], field), field)
    if rel.startswith("wecom."):
        return residual_count(wecom_terms(rel[6:], idx[0], field), field)
    if rel == "pbw":
        return pbw_deficit(idx[0], field)
    raise KeyError(f"unknown damiani instance {rel!r}")


_EVAL = "uqace.damiani.evaluate"


def com3_specs(max_i: int) -> List[InstanceSpec]:
    return [InstanceSpec(f"com3.{k}", (i, j)) for i in range(1, max_i + 1) for j in range(i) for k in ("a0", "a1")]


def imag_specs(max_n: int) -> List[InstanceSpec]:
    out = [InstanceSpec("imag.commute", (i, j)) for i in range(1, max_n + 1) for j in range(i + 1, max_n + 1)]
    out += [InstanceSpec("imag.qcom", (i, j)) for i in range(max_n) for j in range(max_n) if i + j + 1 <= max_n]
    return out


def wecom_specs(max_i: int) -> List[InstanceSpec]:
    return [InstanceSpec(f"wecom.{k}", (i,)) for i in range(max_i + 1) for k in ("a0", "a1")]


def check_com3(max_i: int, field=EXACT, jobs: int = 1) -> Report:
    if max_i < 1:
        raise ValueError("max_i must be at least 1")
    return run_instances("damiani.com3", {"max_i": max_i}, com3_specs(max_i), _EVAL, field, jobs)


def check_imag_relations(max_n: int, field=EXACT, jobs: int = 1) -> Report:
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    return run_instances("damiani.imag", {"max_n": max_n}, imag_specs(max_n), _EVAL, field, jobs)


def check_wecom(max_i: int, field=EXACT, jobs: int = 1) -> Report:
    if max_i < 0:
        raise ValueError("max_i must be nonnegative")
    return run_instances("damiani.wecom", {"max_i": max_i}, wecom_specs(max_i), _EVAL, field, jobs)


def check_damiani(max_index: int = 5, max_imag: int = 6, field=EXACT, jobs: int = 1) -> Report:
    """All three families in one report."""
    specs = com3_specs(max_index) + imag_specs(max_imag) + wecom_specs(max_index)
    return run_instances("damiani", {"max_index": max_index, "max_imag": max_imag}, specs, _EVAL, field, jobs)


# -- PBW basis ------------------------------------------------------------------

def root_vectors(max_len: int) -> List[EIndex]:
    out = []
    for n in range(max_len + 1):
        for k in KINDS:
            if k == "d" and n == 0:
                continue
            i = EIndex(k, n)
            if i.length <= max_len:
                out.append(i)
    return sorted(out, key=EIndex.pbw_key)


def pbw_monomials(length: int) -> List[Tuple[EIndex, ...]]:
    """Sorted PBW monomials whose letter-length is exactly ``length``."""
    roots = root_vectors(length)
    out: List[Tuple[EIndex, ...]] = []

    def rec(start: int, remaining: int, acc: List[EIndex]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(start, len(roots)):
            r = roots[p]
            if r.length <= remaining:
                acc.append(r)
                rec(p, remaining - r.length, acc)
                acc.pop()

    rec(0, length, [])
    return out


def pbw_image(mono: Tuple[EIndex, ...], field=EXACT) -> SVec:
    return table(field).word_image(tuple(i.atom for i in mono))


def pbw_rank(length: int, field=EXACT) -> Tuple[int, int]:
    """(number of monomials, rank of their images) at one letter-length."""
    monos = pbw_monomials(length)
    by_deg: Dict[Tuple[int, int], List[Tuple[EIndex, ...]]] = {}
    for m in monos:
        x = sum(i.bidegree[0] for i in m)
        by_deg.setdefault((x, length - x), []).append(m)
    rank = 0
    make = field.ring_make
    for group in by_deg.values():
        rows = []
        for m in group:
            img = pbw_image(m, field)
            rows.append({w: make(v, img.den) for w, v in img.nums.items() if v})
        rank += _rank(rows)
    return len(monos), rank


def pbw_deficit(length: int, field=EXACT) -> int:
    count, rank = pbw_rank(length, field)
    return count - rank


def pbw_independence(max_len: int, field=EXACT, jobs: int = 1) -> Report:
    """One instance per letter-length; images in distinct bidegrees are independent."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    specs = [InstanceSpec("pbw", (L,)) for L in range(max_len + 1)]
    return run_instances("pbw", {"max_len": max_len}, specs, _EVAL, field, jobs)
