"""Recursive-descent parser for algebra expressions.

Grammar (whitespace is ignored)::

    expr     := ['+' | '-'] term (('+' | '-') term)*
    term     := power (['*' | '/'] power)*        juxtaposition multiplies
    power    := primary ['^' ['-'] INT]
    primary  := INT | 'q' | atom | '(' expr ')' | '[' expr ',' expr ']' [suffix]
    suffix   := '_q' | '_{' qpow '}'              qpow := 'q' ['^' ['-'] INT]
    atom     := 'W0' | 'W1' | 'x' | 'y' | 'Gt[' INT ']' | 'G[' INT ']'
              | 'Wm[' INT ']' | 'Wp[' INT ']' | 'E[' INT ',' ('a0' | 'a1' | 'd') ']'

``[a, b]`` is ab - ba and ``[a, b]_{q^k}`` is q^k ab - q^-k ba.  Division and
negative powers are only allowed for scalars, so coefficient literals such as
``(q^2-q^-2)/(q-q^-1)`` are ordinary expressions.

Which atoms are available depends on the target algebra (the backend):
the free algebra on W0, W1, the q-shuffle algebra on x, y, or the model of
the central extension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .coeffs import EXACT, CoefficientError


class ParseError(ValueError):
    """Syntax or semantic error with the offending position and what was expected."""

    def __init__(self, message: str, text: str, pos: int, expected: Sequence[str] = ()):
        self.message = message
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        super().__init__(self.render())

    def render(self) -> str:
        exp = f" (expected {' or '.join(self.expected)})" if self.expected else ""
        return f"{self.message} at position {self.pos}{exp}\n  {self.text}\n  {' ' * self.pos}^"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>Gt|Wm|Wp|W0|W1|G|E|a0|a1|d|x|y|q)
  | (?P<sym>[-+*/^()\[\],_{}])
  | (?P<bad>[A-Za-z][A-Za-z0-9]*|.)
""", re.VERBOSE)


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- backends -----------------------------------------------------------------------

class Backend:
    """Target algebra: how to build scalars and atoms and how to multiply."""

    field = EXACT

    def scalar(self, c):
        raise NotImplementedError

    def atom(self, name: str, index: Tuple, fail):
        raise NotImplementedError

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def as_scalar(self, a):
        raise NotImplementedError


class FreeBackend(Backend):
    """Free algebra on W0, W1 (concatenation product); root vectors allowed."""

    def __init__(self, field=EXACT):
        self.field = field

    def scalar(self, c):
        from .freealg import NCPoly
        return NCPoly.scalar(self.field(c), "W", self.field)

    def atom(self, name, index, fail):
        from .freealg import W
        if name in ("W0", "W1"):
            return W(int(name[1]), self.field)
        if name == "E":
            from .damiani import EIndex, e_elem
            return e_elem(EIndex(index[1], index[0]), self.field)
        fail(f"atom {name} is not available in the free algebra on W0, W1")

    def as_scalar(self, a):
        if not a.terms:
            return self.field.zero
        if set(a.terms) == {1}:
            return a.terms[1]
        return None


class ShuffleBackend(FreeBackend):
    """q-shuffle algebra on x, y; ``*`` and juxtaposition are the q-shuffle product."""

    def scalar(self, c):
        from .freealg import NCPoly
        return NCPoly.scalar(self.field(c), "x", self.field)

    def atom(self, name, index, fail):
        from .freealg import NCPoly
        if name in ("x", "y"):
            return NCPoly.letter(0 if name == "x" else 1, "x", self.field)
        fail(f"atom {name} is not available in the q-shuffle algebra (use x, y)")

    def mul(self, a, b):
        from .shuffle import star
        return star(a, b)


class WordBackend(ShuffleBackend):
    """Words in x, y with the concatenation product (for shuffle-algebra vectors)."""

    def mul(self, a, b):
        return a * b


class ModelBackend(Backend):
    """The model of the central extension."""

    def __init__(self, field=EXACT):
        self.field = field

    def scalar(self, c):
        from .ace import ModelElem
        return ModelElem.scalar(c, self.field)

    def atom(self, name, index, fail):
        from . import ace
        f = self.field
        if name in ("W0", "W1"):
            return ace.W(int(name[1]), f)
        if name == "E":
            return ace.E(index[1], index[0], f)
        if name == "Gt":
            return ace.gt(index[0], f)
        if name == "G":
            return ace.g_index(index[0], f)
        if name == "Wm":
            return ace.model(f).elem("Wm", index[0])
        if name == "Wp":
            return ace.model(f).elem("Wp", index[0])
        fail(f"atom {name} belongs to the q-shuffle algebra; use the shuffle command")

    def as_scalar(self, a):
        return a.as_scalar()


# -- parser ---------------------------------------------------------------------------

_ATOMS_WITH_INDEX = ("Gt", "G", "Wm", "Wp", "E")
_MIN_INDEX = {"Gt": 0, "G": 0, "Wm": 0, "Wp": 0}
_STARTS = ("int", "name", "(", "[")


class Parser:
    def __init__(self, text: str, backend: Backend):
        self.text = text
        self.backend = backend
        self.field = backend.field
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers --------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, expected: Sequence[str] = (), pos: Optional[int] = None):
        raise ParseError(msg, self.text, self.tok.pos if pos is None else pos, expected)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "end"

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", [repr(text)])
        t = self.tok
        self.i += 1
        return t

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["integer"])
        v = int(self.tok.text)
        self.i += 1
        return v

    def starts_primary(self) -> bool:
        t = self.tok
        return t.kind in ("int", "name") or t.text in ("(", "[")

    # -- grammar ------------------------------------------------------------------------
    def parse(self):
        if self.tok.kind == "end":
            self.error("empty expression", ["expression"])
        v = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}", ["'+'", "'-'", "'*'", "end of input"])
        return v

    def expr(self):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.power()
        while True:
            if self.at("*"):
                self.i += 1
                v = self.backend.mul(v, self.power())
            elif self.at("/"):
                pos = self.tok.pos
                self.i += 1
                d = self.power()
                c = self.backend.as_scalar(d)
                if c is None:
                    self.error("division by a non-scalar expression", pos=pos)
                if not c:
                    self.error("division by zero", pos=pos)
                v = self.backend.scale(v, self.field.one / c)
            elif self.starts_primary():
                v = self.backend.mul(v, self.power())
            else:
                return v

    def power(self):
        start = self.tok.pos
        v = self.primary()
        if not self.at("^"):
            return v
        self.i += 1
        neg = False
        if self.at("-"):
            neg = True
            self.i += 1
        n = self.expect_int()
        if neg:
            c = self.backend.as_scalar(v)
            if c is None:
                self.error("negative powers are only defined for scalars", pos=start)
            if not c:
                self.error("division by zero", pos=start)
            return self.backend.scalar(c ** -n)
        out = self.backend.scalar(1)
        for _ in range(n):
            out = self.backend.mul(out, v)
        return out

    def primary(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return self.backend.scalar(int(t.text))
        if t.text == "(":
            self.i += 1
            v = self.expr()
            self.expect(")")
            return v
        if t.text == "[":
            return self.bracket()
        if t.kind == "name":
            return self.atom()
        found = t.text or "end of input"
        self.error(f"unexpected {found!r}", ["integer", "'q'", "atom", "'('", "'['"])

    def bracket(self):
        self.expect("[")
        a = self.expr()
        self.expect(",")
        b = self.expr()
        self.expect("]")
        k = 0
        if self.at("_"):
            self.i += 1
            if self.at("q"):
                self.i += 1
                k = 1
            elif self.at("{"):
                self.i += 1
                self.expect("q")
                k = 1
                if self.at("^"):
                    self.i += 1
                    neg = self.at("-")
                    if neg:
                        self.i += 1
                    k = self.expect_int() * (-1 if neg else 1)
                self.expect("}")
            else:
                self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["'q'", "'{'"])
        mul = self.backend.mul
        if k == 0:
            return mul(a, b) - mul(b, a)
        f = self.field
        return self.backend.scale(mul(a, b), f.qpow(k)) - self.backend.scale(mul(b, a), f.qpow(-k))

    def atom(self):
        t = self.tok
        name = t.text
        self.i += 1
        if name == "q":
            return self.backend.scalar(self.field.q)
        if name in ("a0", "a1", "d"):
            self.error(f"unexpected {name!r}", ["integer", "'q'", "atom", "'('", "'['"], pos=t.pos)
        index: Tuple = ()
        if name in _ATOMS_WITH_INDEX:
            self.expect("[")
            ipos = self.tok.pos
            n = self.expect_int()
            if name == "E":
                self.expect(",")
                if self.tok.text not in ("a0", "a1", "d"):
                    self.error(f"unexpected {self.tok.text or 'end of input'!r}", ["'a0'", "'a1'", "'d'"])
                kind = self.tok.text
                self.i += 1
                if kind == "d" and n < 1:
                    self.error("E[n,d] needs n >= 1", pos=ipos)
                index = (n, kind)
            else:
                lo = _MIN_INDEX[name]
                if n < lo:
                    self.error(f"{name} index must be >= {lo}", pos=ipos)
                index = (n,)
            self.expect("]")

        def fail(msg):
            self.error(msg, pos=t.pos)

        return self.backend.atom(name, index, fail)


def parse(text: str, backend: Backend):
    try:
        return Parser(text, backend).parse()
    except CoefficientError as e:
        raise ParseError(str(e), text, 0) from e


def parse_expr(text: str, field=EXACT):
    """Parse into the model of the central extension (a ModelElem)."""
    return parse(text, ModelBackend(field))


def parse_free(text: str, field=EXACT):
    """Parse into the free algebra on W0, W1 (an NCPoly)."""
    return parse(text, FreeBackend(field))


def parse_shuffle(text: str, field=EXACT):
    """Parse into the q-shuffle algebra: products of x, y are q-shuffle products."""
    return parse(text, ShuffleBackend(field))


def parse_words(text: str, field=EXACT):
    """Parse a linear combination of x, y words (concatenation), e.g. rendered output."""
    return parse(text, WordBackend(field))


def parse_coefficient(text: str, field=EXACT):
    """Parse a scalar such as ``(q^2-q^-2)/(q-q^-1)``."""
    v = parse_free(text, field)
    c = FreeBackend(field).as_scalar(v)
    if c is None:
        raise ParseError("expression is not a scalar", text, 0, ["coefficient"])
    return c
