"""Free noncommutative polynomials on a two-letter alphabet.

Words are packed into Python ints: a word of length n with letters
b_0 b_1 ... b_{n-1} (each 0 or 1) is stored as ``(1 << n) | b_0 b_1 ... b_{n-1}``
read as a binary number.  The leading sentinel bit keeps words of different
lengths distinct; the empty word is ``1``.

Letter 0 is ``W0`` (resp. ``x``) and letter 1 is ``W1`` (resp. ``y``).
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, List, Tuple

from .coeffs import EXACT

EMPTY = 1

ALPHABETS: Dict[str, Tuple[str, str]] = {"W": ("W0", "W1"), "x": ("x", "y")}


class AlphabetMismatch(TypeError):
    pass


# -- packed words --------------------------------------------------------------

def word(letters: Iterable[int]) -> int:
    w = 1
    for b in letters:
        w = (w << 1) | (b & 1)
    return w


def word_len(w: int) -> int:
    return w.bit_length() - 1


def letters(w: int) -> List[int]:
    n = w.bit_length() - 1
    return [(w >> (n - 1 - i)) & 1 for i in range(n)]


def concat(u: int, v: int) -> int:
    n = v.bit_length() - 1
    return (u << n) | (v ^ (1 << n))


def count_ones(w: int) -> int:
    return bin(w).count("1") - 1


def word_bidegree(w: int) -> Tuple[int, int]:
    n = w.bit_length() - 1
    ones = bin(w).count("1") - 1
    return n - ones, ones


def word_str(w: int, alphabet: str = "W") -> str:
    if w == EMPTY:
        return "1"
    a, b = ALPHABETS[alphabet]
    return "".join(b if x else a for x in letters(w))


def parse_word(text: str, alphabet: str) -> int:
    """Parse ``"xyx"`` or ``"W0W1W0"`` into a packed word."""
    a, b = ALPHABETS[alphabet]
    out, i = [], 0
    while i < len(text):
        if text.startswith(a, i):
            out.append(0)
            i += len(a)
        elif text.startswith(b, i):
            out.append(1)
            i += len(b)
        elif text[i].isspace() or text[i] == "*":
            i += 1
        else:
            raise ValueError(f"unexpected character {text[i]!r} in word {text!r}")
    return word(out)


# -- polynomials ---------------------------------------------------------------

class NCPoly:
    """Finite sum of packed words with coefficients in a field.

    ``alphabet`` is ``"W"`` (free algebra on W0, W1) or ``"x"`` (words in x, y,
    used for the q-shuffle algebra).  The product ``*`` is concatenation; the
    q-shuffle product lives in :mod:`uqace.shuffle`.
    """

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, terms: Dict[int, object] | None = None, alphabet: str = "W", field=EXACT):
        if alphabet not in ALPHABETS:
            raise ValueError(f"unknown alphabet {alphabet!r}")
        self.alphabet = alphabet
        self.field = field
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms, alphabet, field):
        obj = cls.__new__(cls)
        obj.alphabet, obj.field, obj.terms = alphabet, field, terms
        return obj

    @classmethod
    def letter(cls, i: int, alphabet: str = "W", field=EXACT) -> "NCPoly":
        return cls._raw({word([i]): field.one}, alphabet, field)

    @classmethod
    def scalar(cls, c, alphabet: str = "W", field=EXACT) -> "NCPoly":
        c = field(c)
        return cls._raw({EMPTY: c} if c else {}, alphabet, field)

    @classmethod
    def from_word(cls, w: int, alphabet: str = "W", field=EXACT, coeff=None) -> "NCPoly":
        c = field.one if coeff is None else field(coeff)
        return cls._raw({w: c} if c else {}, alphabet, field)

    def zero(self) -> "NCPoly":
        return NCPoly._raw({}, self.alphabet, self.field)

    def _check(self, other: "NCPoly"):
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"alphabets {self.alphabet!r} and {other.alphabet!r} differ")
        if other.field != self.field:
            raise TypeError("coefficient fields differ")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.scalar(other, self.alphabet, self.field)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[int, object]]:
        return iter(self.terms.items())

    def coeff(self, w: int):
        return self.terms.get(w, self.field.zero)

    # -- linear structure ---------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return NCPoly._raw(out, self.alphabet, self.field)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.alphabet, self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = self.field(c)
        if not c:
            return self.zero()
        return NCPoly._raw({w: v * c for w, v in self.terms.items()}, self.alphabet, self.field)

    def __truediv__(self, c):
        return self.scale(self.field.one / self.field(c))

    # -- concatenation product ----------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[int, object] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = concat(u, v)
                c = a * b
                prev = out.get(w)
                out[w] = c if prev is None else prev + c
        return NCPoly._raw({w: c for w, c in out.items() if c}, self.alphabet, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = NCPoly.scalar(1, self.alphabet, self.field)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            if other.alphabet != self.alphabet or other.field != self.field:
                return False
            return (self - other).is_zero()
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def bidegree(self) -> set:
        return {word_bidegree(w) for w in self.terms}

    def map_coefficients(self, f: Callable, field) -> "NCPoly":
        return NCPoly({w: f(c) for w, c in self.terms.items()}, self.alphabet, field)

    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        return render_terms(((word_str(w, self.alphabet), c) for w, c in sorted(self.terms.items())))


def render_terms(items: Iterable[Tuple[str, object]]) -> str:
    parts = []
    for mono, c in items:
        cs = str(c)
        if mono == "1":
            body = cs
        elif cs == "1":
            body = mono
        elif cs == "-1":
            body = "-" + mono
        else:
            if " " in cs or "/" in cs:
                cs = f"({cs})"
            body = f"{cs}*{mono}"
        parts.append(body)
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def ncmul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def commutator(a, b, mul: Callable = None):
    """[a, b] = ab - ba for any elements supporting ``*`` (or ``mul``)."""
    mul = mul or (lambda x, y: x * y)
    return mul(a, b) - mul(b, a)


def q_commutator(a, b, k: int = 1, mul: Callable = None):
    """[a, b]_{q^k} = q^k ab - q^{-k} ba."""
    mul = mul or (lambda x, y: x * y)
    f = a.field
    return mul(a, b).scale(f.qpow(k)) - mul(b, a).scale(f.qpow(-k))


def bidegree(a: NCPoly) -> set:
    return a.bidegree()


def W(i: int, field=EXACT) -> NCPoly:
    return NCPoly.letter(i, "W", field)


def serre_relators(field=EXACT, alphabet: str = "W") -> Tuple[NCPoly, NCPoly]:
    """The two q-Serre relators [A,[A,[A,B]_q]_{q^-1}] with (A,B) = (0,1), (1,0)."""
    out = []
    for i, j in ((0, 1), (1, 0)):
        A, B = NCPoly.letter(i, alphabet, field), NCPoly.letter(j, alphabet, field)
        out.append(commutator(A, q_commutator(A, q_commutator(A, B), -1)))
    return out[0], out[1]
