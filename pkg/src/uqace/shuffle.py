"""The q-shuffle algebra on the letters x, y and the embedding of U^+_q.

Letters pair by <a, b> = 2 if a == b and -2 otherwise.  For words u, v the
product u * v sums the interleavings w of u and v, each weighted by
q^{e(w)} with e(w) the sum of <u_i, v_j> over letters v_j placed before u_i.

Internally elements are :class:`SVec` values: a common denominator and a map
from packed words to numerators, so that long sums never normalise individual
coefficients.  Products use a dynamic programme over the prefix tries of both
factors, which shares work between words with common prefixes.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import math

from . import kernel
from .coeffs import EXACT, LaurentPoly, ONE
from .freealg import EMPTY, AlphabetMismatch, NCPoly, word, word_bidegree, word_len, letters


def pairing(a: int, b: int) -> int:
    return 2 if a == b else -2


# -- word-level products --------------------------------------------------------

@lru_cache(maxsize=200_000)
def star_words(u: int, v: int) -> Dict[int, LaurentPoly]:
    """q-shuffle of two packed words via (au')*(bv') = a(u'*bv') + q^<u,b> b(u*v').

    The returned dict is cached and must not be mutated.
    """
    if u == EMPTY:
        return {v: ONE}
    if v == EMPTY:
        return {u: ONE}
    lu, lv = word_len(u), word_len(v)
    n = lu + lv
    a, b = (u >> (lu - 1)) & 1, (v >> (lv - 1)) & 1
    u_rest = u - (1 << lu) - (a << (lu - 1)) + (1 << (lu - 1))
    v_rest = v - (1 << lv) - (b << (lv - 1)) + (1 << (lv - 1))
    ones = bin(u).count("1") - 1
    same = ones if b else lu - ones
    c = 2 * same - 2 * (lu - same)
    out: Dict[int, LaurentPoly] = {}
    off = (1 + a) << (n - 1)
    for w, p in star_words(u_rest, v).items():
        out[w + off] = p
    off = (1 + b) << (n - 1)
    for w, p in star_words(u, v_rest).items():
        w += off
        p = p.shift(c)
        prev = out.get(w)
        if prev is None:
            out[w] = p
        else:
            s = prev + p
            if s:
                out[w] = s
            else:
                del out[w]
    return out


def star_crossing(u: int, v: int) -> Dict[int, LaurentPoly]:
    """Same product as :func:`star_words`, by direct enumeration of interleavings.

    Kept as an independent reference implementation for tests.
    """
    a, b = letters(u), letters(v)
    m, n = len(a), len(b)
    # cross[c][j]: sum of <c, b_t> over the first j letters of v
    cross = [[0] * (n + 1) for _ in range(2)]
    for c in (0, 1):
        for t in range(n):
            cross[c][t + 1] = cross[c][t] + pairing(c, b[t])
    out: Dict[int, Dict[int, int]] = {}
    for pos in combinations(range(m + n), m):
        pset = set(pos)
        w, e = [], 0
        i = j = 0
        for k in range(m + n):
            if k in pset:
                w.append(a[i])
                e += cross[a[i]][j]
                i += 1
            else:
                w.append(b[j])
                j += 1
        d = out.setdefault(word(w), {})
        d[e] = d.get(e, 0) + 1
    res = {w: LaurentPoly(d) for w, d in out.items()}
    return {w: p for w, p in res.items() if p}


def count_interleavings(u: int, v: int) -> int:
    """Number of interleavings summed by the word product (before merging)."""
    total = 0
    for p in star_words(u, v).values():
        total += sum(v for _, v in p.items())
    return total


# -- common-denominator vectors ------------------------------------------------

class SVec:
    """Element sum_w (nums[w] / den) * w of the shuffle algebra over ``field``."""

    __slots__ = ("field", "den", "nums")

    def __init__(self, field, den, nums: Dict[int, object]):
        self.field = field
        self.den = den
        self.nums = nums

    @classmethod
    def zero(cls, field=EXACT) -> "SVec":
        return cls(field, field.ring_one, {})

    @classmethod
    def letter(cls, i: int, field=EXACT) -> "SVec":
        return cls(field, field.ring_one, {word([i]): field.ring_one})

    @classmethod
    def unit(cls, field=EXACT) -> "SVec":
        return cls(field, field.ring_one, {EMPTY: field.ring_one})

    @classmethod
    def from_laurent_terms(cls, terms: Dict[int, LaurentPoly], field=EXACT) -> "SVec":
        if field.exact:
            return cls(field, field.ring_one, {w: p for w, p in terms.items() if p})
        return cls.from_field_terms({w: field.laurent(p) for w, p in terms.items()}, field)

    @classmethod
    def from_ncpoly(cls, p: NCPoly) -> "SVec":
        return cls.from_field_terms(p.terms, p.field)

    @classmethod
    def from_field_terms(cls, terms: Dict[int, object], f) -> "SVec":
        den = f.ring_one
        parts = []
        for w, c in terms.items():
            if not c:
                continue
            n, d = f.split(c)
            parts.append((w, n, d))
            den = f.ring_lcm(den, d)
        nums = {}
        for w, n, d in parts:
            nums[w] = n if d == den else n * f.ring_div(den, d)
        return cls(f, den, nums)

    def to_ncpoly(self) -> NCPoly:
        make = self.field.ring_make
        den = self.den
        return NCPoly({w: make(n, den) for w, n in self.nums.items() if n}, "x", self.field)

    def is_zero(self) -> bool:
        return not any(self.nums.values())

    def support_size(self) -> int:
        return sum(1 for v in self.nums.values() if v)

    def scale(self, c) -> "SVec":
        f = self.field
        n, d = f.split(c)
        if not n:
            return SVec.zero(f)
        return SVec(f, self.den * d, {w: v * n for w, v in self.nums.items()})

    def __neg__(self):
        return SVec(self.field, self.den, {w: -v for w, v in self.nums.items()})

    def __add__(self, other: "SVec") -> "SVec":
        f = self.field
        if self.den == other.den:
            a, b, den = self.nums, other.nums, self.den
            out = dict(a)
            for w, v in b.items():
                prev = out.get(w)
                out[w] = v if prev is None else prev + v
            return SVec(f, den, out)
        den = f.ring_lcm(self.den, other.den)
        ra = f.ring_div(den, self.den)
        rb = f.ring_div(den, other.den)
        out = {w: v * ra for w, v in self.nums.items()}
        for w, v in other.nums.items():
            v = v * rb
            prev = out.get(w)
            out[w] = v if prev is None else prev + v
        return SVec(f, den, out)

    def __sub__(self, other: "SVec") -> "SVec":
        return self + (-other)

    def pruned(self) -> "SVec":
        return SVec(self.field, self.den, {w: v for w, v in self.nums.items() if v})

    def __mul__(self, other: "SVec") -> "SVec":
        return star_svec(self, other)

    def __eq__(self, other):
        if not isinstance(other, SVec):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"SVec({self.to_ncpoly()})"


def _homogeneous_parts(nums: Dict[int, object]) -> Dict[Tuple[int, int], Dict[int, object]]:
    parts: Dict[Tuple[int, int], Dict[int, object]] = {}
    for w, v in nums.items():
        if v:
            parts.setdefault(word_bidegree(w), {})[w] = v
    return parts


def _rational_step(field) -> kernel.RationalStep:
    st = getattr(field, "_kernel_step", None)
    if st is None:
        st = field._kernel_step = kernel.RationalStep(field.a.numerator, field.a.denominator)
    return st


def star_svec(a: SVec, b: SVec) -> SVec:
    """q-shuffle product of two vectors over the same field."""
    f = a.field
    if b.field != f:
        raise TypeError("coefficient fields differ")
    pa, pb = _homogeneous_parts(a.nums), _homogeneous_parts(b.nums)
    if f.exact:
        out: Dict[int, object] = {}
        for da, A in pa.items():
            for db, B in pb.items():
                part = kernel.star_laurent(A, B, da, db)
                if not out:
                    out = part
                    continue
                for w, v in part.items():
                    prev = out.get(w)
                    out[w] = v if prev is None else prev + v
        return SVec(f, a.den * b.den, {w: v for w, v in out.items() if v})
    step = _rational_step(f)
    parts = []
    den = 1
    for da, A in pa.items():
        for db, B in pb.items():
            nums, extra = kernel.star_rational(A, B, da, db, step)
            parts.append((nums, extra))
            den = den if den % extra == 0 else math.lcm(den, extra)
    out = {}
    for nums, extra in parts:
        r = den // extra
        for w, v in nums.items():
            if r != 1:
                v *= r
            prev = out.get(w)
            out[w] = v if prev is None else prev + v
    return SVec(f, a.den * b.den * den, {w: v for w, v in out.items() if v})


def star(u: NCPoly, v: NCPoly) -> NCPoly:
    """q-shuffle product of two polynomials over the alphabet {x, y}."""
    if u.alphabet != "x" or v.alphabet != "x":
        raise AlphabetMismatch("the q-shuffle product needs polynomials in x, y")
    if u.field != v.field:
        raise TypeError("coefficient fields differ")
    return star_svec(SVec.from_ncpoly(u), SVec.from_ncpoly(v)).to_ncpoly()


def star_commutator(a: SVec, b: SVec) -> SVec:
    return star_svec(a, b) - star_svec(b, a)


# -- the natural map -----------------------------------------------------------

def _natmap_rec(nums: Dict[int, object], field) -> SVec:
    """Image of sum_w nums[w] * w (free words in W0, W1), denominator 1.

    Uses sum_w c_w w = sum_a (sum_{w'a} c_{w'a} w') a, so shared prefixes are
    mapped once.
    """
    const = nums.get(EMPTY)
    total = SVec(field, field.ring_one, {EMPTY: const} if const else {})
    groups: Dict[int, Dict[int, object]] = {0: {}, 1: {}}
    for w, c in nums.items():
        if w != EMPTY and c:
            groups[w & 1][w >> 1] = c
    for a, g in groups.items():
        if g:
            total = total + star_svec(_natmap_rec(g, field), SVec.letter(a, field))
    return total.pruned()


def natmap_svec(p: NCPoly) -> SVec:
    if p.alphabet != "W":
        raise AlphabetMismatch("natmap expects a polynomial in W0, W1")
    s = SVec.from_ncpoly(p)
    img = _natmap_rec(s.nums, p.field)
    return SVec(p.field, img.den * s.den, img.nums)


def natmap(p: NCPoly) -> NCPoly:
    """Algebra map W0 -> x, W1 -> y into the q-shuffle algebra."""
    return natmap_svec(p).to_ncpoly()


# -- alternating words ---------------------------------------------------------

ROWS = ("x", "y", "yx", "xy")


def alternating_words(family: str, max_len: int) -> List[int]:
    """Alternating words of one row with length <= max_len, shortest first.

    Rows: ``x`` (x, xyx, ...), ``y`` (y, yxy, ...), ``yx`` (yx, yxyx, ...) and
    ``xy`` (xy, xyxy, ...).
    """
    if family not in ROWS:
        raise ValueError(f"unknown alternating row {family!r}")
    first = 0 if family[0] == "x" else 1
    start = 1 if len(family) == 1 else 2
    out = []
    for n in range(start, max_len + 1, 2):
        out.append(word([(first + i) & 1 for i in range(n)]))
    return out


def row_commutator(u: int, v: int, field=EXACT) -> SVec:
    a = SVec.from_laurent_terms(star_words(u, v), field)
    b = SVec.from_laurent_terms(star_words(v, u), field)
    return (a - b).pruned()


# -- linear algebra -------------------------------------------------------------

def rank_of(elems: Sequence[NCPoly], field=None) -> int:
    """Dimension of the span of ``elems`` by Gaussian elimination.

    ``field`` overrides the coefficient field (e.g. an evaluation field for the
    fast probabilistic mode); coefficients are converted with ``from_ratq``.
    """
    rows: List[Dict[int, object]] = []
    for e in elems:
        if field is None or field == e.field:
            rows.append(dict(e.terms))
        else:
            rows.append({w: field.from_ratq(c) for w, c in e.terms.items() if field.from_ratq(c)})
    return _rank(rows)


def _rank(rows: List[Dict[int, object]]) -> int:
    pivots: Dict[int, Dict[int, object]] = {}
    rank = 0
    for row in rows:
        row = {w: c for w, c in row.items() if c}
        while row:
            w = max(row)
            piv = pivots.get(w)
            if piv is None:
                inv = 1 / row[w] if not hasattr(row[w], "inverse") else row[w].inverse()
                pivots[w] = {k: c * inv for k, c in row.items()}
                rank += 1
                break
            c = row[w]
            for k, v in piv.items():
                nv = row.get(k)
                nv = -(v * c) if nv is None else nv - v * c
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


# -- row commutation suites ------------------------------------------------------

def _row_word(family: str, length: int) -> int:
    first = 0 if family[0] == "x" else 1
    return word([(first + i) & 1 for i in range(length)])


def evaluate_row(spec, field) -> object:
    """``rows.<family>`` pairs must commute; ``rows.cross.<f>.<g>`` pairs must not."""
    parts = spec.id.split(".")
    a, b = spec.indices
    if parts[1] == "cross":
        res = row_commutator(_row_word(parts[2], a), _row_word(parts[3], b), field).support_size()
        return res, res > 0
    return row_commutator(_row_word(parts[1], a), _row_word(parts[1], b), field).support_size()


def row_specs(family: str, max_len: int):
    from .report import InstanceSpec
    lengths = [word_len(w) for w in alternating_words(family, max_len)]
    return [InstanceSpec(f"rows.{family}", (a, b)) for i, a in enumerate(lengths) for b in lengths[i + 1:]]


CROSS_WITNESSES = (("x", "y", 1, 1), ("x", "xy", 1, 2), ("yx", "xy", 2, 2))


def check_row_commutation(family: str, max_len: int, field=EXACT, jobs: int = 1):
    """Star-commutators of all pairs of distinct words in one alternating row."""
    from .report import run_instances
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    return run_instances(f"rows.{family}", {"max_len": max_len}, row_specs(family, max_len),
                         "uqace.shuffle.evaluate_row", field, jobs)


def check_rows(max_len: int = 9, field=EXACT, jobs: int = 1):
    """All four rows plus cross-row pairs that must fail to commute."""
    from .report import InstanceSpec, run_instances
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    specs = [s for fam in ROWS for s in row_specs(fam, max_len)]
    specs += [InstanceSpec(f"rows.cross.{f}.{g}", (a, b)) for f, g, a, b in CROSS_WITNESSES]
    return run_instances("rows", {"max_len": max_len}, specs, "uqace.shuffle.evaluate_row", field, jobs)
