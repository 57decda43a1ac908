"""Exact coefficients: integer Laurent polynomials in q and their quotients.

Two coefficient fields are provided behind a small common interface:

* :class:`ExactField` -- elements are :class:`RatQ`, rational functions in q
  kept in a canonical normal form.
* :class:`EvalField` -- elements are :class:`fractions.Fraction`, obtained by
  specialising q to a fixed nonzero rational that is not a root of unity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import math as _math
from math import gcd as igcd
from typing import Dict, Iterable, List, Mapping, Tuple, Union


class CoefficientError(ArithmeticError):
    pass


class PoleError(CoefficientError):
    """Evaluation hit a zero of the denominator (or q = 0)."""


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients.

    The zero polynomial has no terms.  Instances are immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], int, None] = None):
        if terms is None:
            c = {}
        elif isinstance(terms, int):
            c = {0: terms} if terms else {}
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            c = {}
            for e, v in items:
                v = c.get(e, 0) + v
                if v:
                    c[e] = v
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, int]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls._raw({e: c} if c else {})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def low(self) -> int:
        return min(self._c)

    def high(self) -> int:
        return max(self._c)

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def lead(self) -> int:
        return self._c[max(self._c)]

    def content(self) -> int:
        g = 0
        for v in self._c.values():
            g = igcd(g, v)
        return g

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._c) > len(self._c):
            self, other = other, self
        c = dict(self._c)
        for e, v in other._c.items():
            v = c.get(e, 0) + v
            if v:
                c[e] = v
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            v = c.get(e, 0) - v
            if v:
                c[e] = v
            else:
                del c[e]
        return LaurentPoly._raw(c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) == 1:
            (ea, va), = a.items()
            return LaurentPoly._raw({e + ea: v * va for e, v in b.items()})
        if len(b) == 1:
            (eb, vb), = b.items()
            return LaurentPoly._raw({e + eb: v * vb for e, v in a.items()})
        c: Dict[int, int] = {}
        get = c.get
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                c[e] = get(e, 0) + va * vb
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly._raw({e * n: v ** -n})
            raise CoefficientError("negative power of a non-unit Laurent polynomial")
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def scale_exponents(self, k: int) -> "LaurentPoly":
        """Substitute q -> q**k (k may be negative)."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def eval_at(self, a) -> Fraction:
        a = Fraction(a)
        if not self._c:
            return Fraction(0)
        if a == 0 and min(self._c) < 0:
            raise PoleError("negative power of q evaluated at q = 0")
        return sum((v * a ** e for e, v in self._c.items()), Fraction(0))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)

    # -- dense conversions ------------------------------------------------
    def to_dense(self) -> Tuple[int, List[int]]:
        """Return (lowest exponent, coefficient list from low to high)."""
        lo, hi = min(self._c), max(self._c)
        out = [0] * (hi - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return lo, out

    @classmethod
    def from_dense(cls, lo: int, coeffs: List[int]) -> "LaurentPoly":
        return cls._raw({lo + i: v for i, v in enumerate(coeffs) if v})


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()


def format_laurent(p: LaurentPoly, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        v = p.coeff(e)
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if e == 0:
            body = str(a)
        else:
            mon = var if e == 1 else f"{var}^{e}" if e > 0 else f"{var}^{e}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# -- dense integer polynomial helpers (coefficient lists, low to high) -------

def _trim(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: List[int]) -> int:
    g = 0
    for v in p:
        g = igcd(g, v)
    return g


def _primitive(p: List[int]) -> List[int]:
    g = _content(p)
    if g > 1:
        p = [v // g for v in p]
    if p and p[-1] < 0:
        p = [-v for v in p]
    return p


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of a by b (both nonzero, trimmed)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [v * lb for v in a]
        for i, bv in enumerate(b):
            a[i + shift] -= la * bv
        _trim(a)
    return a


def _poly_gcd(a: List[int], b: List[int]) -> List[int]:
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    a, b = _primitive(_trim(list(a))), _primitive(_trim(list(b)))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _primitive(a)


def _exact_div(a: List[int], b: List[int]) -> List[int]:
    """Exact quotient a / b of integer polynomials; raises if inexact."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(a) - 1 < db:
        if any(a):
            raise CoefficientError("inexact polynomial division")
        return []
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        v = a[k + db]
        if v % lb:
            raise CoefficientError("inexact polynomial division")
        c = v // lb
        out[k] = c
        if c:
            for i, bv in enumerate(b):
                a[k + i] -= c * bv
    if any(a):
        raise CoefficientError("inexact polynomial division")
    return out


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd in Z[q] of the q-shift-normalised polynomials (lowest exponent 0)."""
    if a.is_zero():
        return b.shift(-b.low()) if b else ZERO
    if b.is_zero():
        return a.shift(-a.low())
    return _gcd_cached(a.shift(-a.low()), b.shift(-b.low()))


@lru_cache(maxsize=1 << 16)
def _gcd_cached(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    _, da = a.to_dense()
    _, db = b.to_dense()
    return LaurentPoly.from_dense(0, _poly_gcd(da, db))


def laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b in Z[q, 1/q]."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    if len(b) == 1:
        (eb, vb), = b.items()
        out = {}
        for e, v in a.items():
            if v % vb:
                raise CoefficientError("inexact polynomial division")
            out[e - eb] = v // vb
        return LaurentPoly._raw(out)
    la, da = a.to_dense()
    lb, db = b.to_dense()
    return LaurentPoly.from_dense(la - lb, _exact_div(da, db))


class RatQ:
    """Element of Q(q) stored as a normalised pair of Laurent polynomials.

    Normal form: the denominator has lowest exponent 0, is coprime to the
    numerator, and the pair carries no common integer factor; the leading
    coefficient of the denominator is positive.  Equal field elements
    therefore have identical ``(num, den)``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, _normal: bool = False):
        if not isinstance(num, LaurentPoly):
            if isinstance(num, Fraction):
                num, den = LaurentPoly(num.numerator), LaurentPoly(num.denominator) * den
            else:
                num = LaurentPoly(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("RatQ with zero denominator")
        self._hash = None
        if _normal:
            self.num, self.den = num, den
            return
        self.num, self.den = _normalise(num, den)

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "RatQ":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatQ":
        return cls._make(p, ONE)

    @classmethod
    def q(cls, k: int = 1) -> "RatQ":
        return cls._make(LaurentPoly.monomial(k), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatQ):
            return other
        if isinstance(other, (int, LaurentPoly)):
            return RatQ._make(LaurentPoly(other) if isinstance(other, int) else other, ONE)
        if isinstance(other, Fraction):
            return RatQ(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            num = self.num + other.num
            if self.den == ONE:
                return RatQ._make(num, ONE)
            return RatQ(num, self.den)
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatQ._make(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RatQ._make(ZERO, ONE)
        if self.den == ONE and other.den == ONE:
            return RatQ._make(self.num * other.num, ONE)
        # cross-cancel before multiplying
        g1 = laurent_gcd(self.num, other.den)
        g2 = laurent_gcd(other.num, self.den)
        n1, d2 = laurent_exact_div(self.num, g1), laurent_exact_div(other.den, g1)
        n2, d1 = laurent_exact_div(other.num, g2), laurent_exact_div(self.den, g2)
        return RatQ(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatQ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RatQ(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatQ(self.num ** n, self.den ** n)

    # -- comparison / evaluation -------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def eval_at(self, a) -> Fraction:
        a = Fraction(a)
        if a == 0:
            raise PoleError("q = 0 is not allowed")
        d = self.den.eval_at(a)
        if d == 0:
            raise PoleError(f"denominator vanishes at q = {a}")
        return self.num.eval_at(a) / d

    def __repr__(self):
        return f"RatQ({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"


def _normalise(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return ZERO, ONE
    lo = den.low()
    if lo:
        num, den = num.shift(-lo), den.shift(-lo)
    if len(den) > 1:
        g = laurent_gcd(num, den)
        if not g.is_constant():
            num, den = laurent_exact_div(num, g), laurent_exact_div(den, g)
    c = igcd(num.content(), den.content())
    if den.lead() < 0:
        c = -c
    if c != 1:
        num = LaurentPoly._raw({e: v // c for e, v in num.items()})
        den = LaurentPoly._raw({e: v // c for e, v in den.items()})
    return num, den


def qint(n: int) -> LaurentPoly:
    """The q-integer [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def eval_at(f: Union[RatQ, LaurentPoly], a) -> Fraction:
    """Exact value of f at q = a (a a nonzero rational)."""
    a = Fraction(a)
    if a == 0:
        raise PoleError("q = 0 is not allowed")
    return f.eval_at(a)


# -- coefficient fields -------------------------------------------------------

class ExactField:
    """Q(q) with :class:`RatQ` elements."""

    name = "exact"
    exact = True

    def __init__(self):
        self.zero = RatQ._make(ZERO, ONE)
        self.one = RatQ._make(ONE, ONE)
        self.q = RatQ.q()

    def __call__(self, x) -> RatQ:
        if isinstance(x, RatQ):
            return x
        if isinstance(x, LaurentPoly):
            return RatQ._make(x, ONE)
        return RatQ(x)

    def laurent(self, p: LaurentPoly) -> RatQ:
        return RatQ._make(p, ONE)

    def qpow(self, k: int) -> RatQ:
        return RatQ.q(k)

    def from_ratq(self, r: RatQ) -> RatQ:
        return r

    def __eq__(self, other):
        return isinstance(other, ExactField)

    def __hash__(self):
        return hash("exact")

    def __repr__(self):
        return "ExactField()"


class EvalField:
    """Q with q specialised to a fixed rational (not 0, not +-1)."""

    exact = False

    def __init__(self, a):
        a = Fraction(a)
        if a == 0 or abs(a) == 1:
            raise ValueError("evaluation point must be a rational other than 0, 1, -1")
        self.a = a
        self.name = f"eval:{a}"
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.q = a
        self._powers: Dict[int, Fraction] = {}

    def __call__(self, x) -> Fraction:
        if isinstance(x, (RatQ, LaurentPoly)):
            return x.eval_at(self.a)
        return Fraction(x)

    def qpow(self, k: int) -> Fraction:
        v = self._powers.get(k)
        if v is None:
            v = self.a ** k
            self._powers[k] = v
        return v

    def laurent(self, p: LaurentPoly) -> Fraction:
        qp = self.qpow
        return sum((v * qp(e) for e, v in p.items()), Fraction(0))

    def from_ratq(self, r: RatQ) -> Fraction:
        return r.eval_at(self.a)

    def __eq__(self, other):
        return isinstance(other, EvalField) and other.a == self.a

    def __hash__(self):
        return hash(("eval", self.a))

    def __repr__(self):
        return f"EvalField({self.a})"


EXACT = ExactField()


def make_field(eval_q=None):
    """Exact field when ``eval_q`` is None, else the specialisation at it."""
    return EXACT if eval_q is None else EvalField(eval_q)


# -- accumulators ---------------------------------------------------------------
#
# Sums of the form  sum_i c_i * P_i  where c_i is a field element and P_i maps
# keys to integer Laurent polynomials.  The exact accumulator keeps a single
# common denominator so that no gcd is taken per key while summing.

def laurent_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    g = laurent_gcd(a, b)
    return laurent_exact_div(a * b, g)


class ExactAccumulator:
    __slots__ = ("den", "nums")

    def __init__(self):
        self.den = ONE
        self.nums: Dict[object, LaurentPoly] = {}

    def _multiplier(self, c: RatQ) -> LaurentPoly:
        d = c.den
        if d == self.den:
            return c.num
        if d == ONE:
            return c.num * self.den
        lcm = laurent_lcm(self.den, d)
        if lcm != self.den:
            r = laurent_exact_div(lcm, self.den)
            self.nums = {k: v * r for k, v in self.nums.items()}
            self.den = lcm
        return c.num * laurent_exact_div(lcm, d)

    def add_laurent(self, c: RatQ, terms: Mapping[object, LaurentPoly]):
        if not c.num:
            return
        m = self._multiplier(c)
        nums = self.nums
        get = nums.get
        for k, p in terms.items():
            v = m * p
            prev = get(k)
            nums[k] = v if prev is None else prev + v

    def add_field(self, c: RatQ, terms: Mapping[object, RatQ]):
        for k, v in terms.items():
            self.add_laurent(c * v, {k: ONE})

    def is_zero(self) -> bool:
        return all(not v for v in self.nums.values())

    def nonzero_keys(self):
        return [k for k, v in self.nums.items() if v]

    def result(self) -> Dict[object, RatQ]:
        den = self.den
        return {k: RatQ(v, den) for k, v in self.nums.items() if v}


class EvalAccumulator:
    __slots__ = ("field", "nums")

    def __init__(self, field: "EvalField"):
        self.field = field
        self.nums: Dict[object, Fraction] = {}

    def add_laurent(self, c: Fraction, terms: Mapping[object, LaurentPoly]):
        if not c:
            return
        ev = self.field.laurent
        nums = self.nums
        get = nums.get
        for k, p in terms.items():
            v = c * ev(p)
            prev = get(k)
            nums[k] = v if prev is None else prev + v

    def add_field(self, c: Fraction, terms: Mapping[object, Fraction]):
        nums = self.nums
        for k, v in terms.items():
            nums[k] = nums.get(k, 0) + c * v

    def is_zero(self) -> bool:
        return all(not v for v in self.nums.values())

    def nonzero_keys(self):
        return [k for k, v in self.nums.items() if v]

    def result(self) -> Dict[object, Fraction]:
        return {k: v for k, v in self.nums.items() if v}


ExactField.accumulator = lambda self: ExactAccumulator()
EvalField.accumulator = lambda self: EvalAccumulator(self)


# -- numerator rings ------------------------------------------------------------
#
# Shuffle-algebra vectors are stored as (common denominator, numerators).  For
# the exact field both are integer Laurent polynomials; for an evaluation field
# both are integers.


def _exact_split(self, c: RatQ):
    return c.num, c.den


def _exact_lcm(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a == b or b == ONE:
        return a
    if a == ONE:
        return b
    return laurent_lcm(a, b)


ExactField.ring_one = ONE
ExactField.ring_zero = ZERO
ExactField.split = _exact_split
ExactField.ring_lcm = _exact_lcm
ExactField.ring_div = staticmethod(laurent_exact_div)
ExactField.ring_make = staticmethod(lambda n, d: RatQ(n, d))


EvalField.ring_one = 1
EvalField.ring_zero = 0
EvalField.split = lambda self, c: (c.numerator, c.denominator)
EvalField.ring_lcm = lambda self, a, b: a if a == b else _math.lcm(a, b)
EvalField.ring_div = staticmethod(lambda a, b: a // b)
EvalField.ring_make = staticmethod(lambda n, d: Fraction(n, d))
