"""Elements of U^+_q written as words in named atoms, with cached shuffle images.

An atom is a hashable key:

* ``("W", i)``        the generator W0 or W1;
* ``("E", kind, n)``  a Damiani root vector, ``kind`` in ``a0``, ``a1``, ``d``;
* ``("B", m, a)``     beta_m(a) for an atom ``a`` and ``m >= 1``.

The maps beta_m come from passing a generator gt_n of the commutative part
through an element X of U^+_q:

    gt_n X = sum_{m=0}^{n} beta_m(X) gt_{n-m}.

beta_0 is the identity, beta is multiplicative in the sense
beta_m(XY) = sum_{r+s=m} beta_r(X) beta_s(Y), and on the generators it is read
off from the two letter rules (``gc_coeff``).  beta of any other atom is
obtained by expanding that atom's definition, so only the letter rules and the
root vector recursions are ever used.

Every atom has a definition as a linear combination of words in strictly
simpler atoms, and its image in the q-shuffle algebra is computed from that
definition.  Images are memoized per coefficient field.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .coeffs import EXACT
from .freealg import render_terms
from .shuffle import SVec, star_svec

Atom = tuple
AtomWord = Tuple[Atom, ...]

W0_ATOM: Atom = ("W", 0)
W1_ATOM: Atom = ("W", 1)

KINDS = ("a0", "a1", "d")


def e_atom(kind: str, n: int) -> Atom:
    if kind not in KINDS:
        raise ValueError(f"unknown root vector kind {kind!r}")
    if n < 0 or (kind == "d" and n < 1):
        raise ValueError(f"invalid root vector index ({n}, {kind})")
    if n == 0:
        return W0_ATOM if kind == "a0" else W1_ATOM
    return ("E", kind, n)


def atom_bidegree(a: Atom) -> Tuple[int, int]:
    tag = a[0]
    if tag == "W":
        return (1, 0) if a[1] == 0 else (0, 1)
    if tag == "E":
        kind, n = a[1], a[2]
        if kind == "a0":
            return (n + 1, n)
        if kind == "a1":
            return (n, n + 1)
        return (n, n)
    m, base = a[1], a[2]
    x, y = atom_bidegree(base)
    return (x + m, y + m)


def word_bidegree(w: AtomWord) -> Tuple[int, int]:
    x = y = 0
    for a in w:
        dx, dy = atom_bidegree(a)
        x += dx
        y += dy
    return x, y


def atom_str(a: Atom) -> str:
    tag = a[0]
    if tag == "W":
        return f"W{a[1]}"
    if tag == "E":
        return f"E[{a[2]},{a[1]}]"
    return f"B{a[1]}({atom_str(a[2])})"


def atom_word_str(w: AtomWord) -> str:
    return "*".join(atom_str(a) for a in w) if w else "1"


def gc_coeff(letter: int, k: int, field=EXACT):
    """Coefficient c with beta_k(W_letter) = c * E_{k delta + alpha_letter}, k >= 1."""
    d = (field.q - field.q ** -1) ** (2 * k - 1)
    if letter == 1:
        return field(-1) ** (k + 1) * field.qpow(k + 1) / d
    return field(-1) ** k * field.qpow(3 * k - 1) / d


def compositions(m: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``m``."""
    if parts == 0:
        if m == 0:
            yield ()
        return
    if parts == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in compositions(m - first, parts - 1):
            yield (first,) + rest


class AtomTable:
    """Definitions, shuffle images and beta maps of atoms over one field."""

    def __init__(self, field=EXACT):
        self.field = field
        self._defs: Dict[Atom, List[Tuple[object, AtomWord]]] = {}
        self._images: Dict[Atom, SVec] = {}
        self._word_images: Dict[AtomWord, SVec] = {}
        self._beta: Dict[Tuple[int, Atom], List[Tuple[object, Atom]]] = {}
        self._beta_word: Dict[Tuple[int, AtomWord], Dict[AtomWord, object]] = {}
        self._sources: Dict[Atom, str] = {}
        f = field
        self._inv_qq = f.one / (f.q + f.q ** -1)
        self._qm2 = f.qpow(-2)

    # -- definitions ----------------------------------------------------------
    def definition(self, a: Atom) -> List[Tuple[object, AtomWord]]:
        """``a`` as a combination of words in simpler atoms (empty for letters)."""
        hit = self._defs.get(a)
        if hit is not None:
            return hit
        f = self.field
        tag = a[0]
        if tag == "W":
            out: List[Tuple[object, AtomWord]] = []
        elif tag == "E":
            kind, n = a[1], a[2]
            ed = e_atom("d", 1)
            if kind == "a0":
                prev = e_atom("a0", n - 1)
                c = self._inv_qq
                out = [(c, (ed, prev)), (-c, (prev, ed))]
            elif kind == "a1":
                prev = e_atom("a1", n - 1)
                c = self._inv_qq
                out = [(c, (prev, ed)), (-c, (ed, prev))]
            else:
                prev = e_atom("a1", n - 1)
                out = [(self._qm2, (prev, W0_ATOM)), (-f.one, (W0_ATOM, prev))]
        else:
            m, base = a[1], a[2]
            acc: Dict[AtomWord, object] = {}
            for c, w in self.definition(base):
                for w2, c2 in self.beta_word(m, w).items():
                    v = acc.get(w2)
                    acc[w2] = c * c2 if v is None else v + c * c2
            out = [(c, w) for w, c in acc.items() if c]
        self._defs[a] = out
        return out

    def source(self, a: Atom) -> str:
        """Parseable text for ``a``; beta atoms are written out as their definitions."""
        if a[0] != "B":
            return atom_str(a)
        hit = self._sources.get(a)
        if hit is None:
            body = render_terms(("*".join(self.source(b) for b in w) or "1", c) for c, w in self.definition(a))
            hit = self._sources[a] = f"({body})"
        return hit

    # -- images ---------------------------------------------------------------
    def image(self, a: Atom) -> SVec:
        hit = self._images.get(a)
        if hit is not None:
            return hit
        if a[0] == "W":
            img = SVec.letter(a[1], self.field)
        else:
            img = svec_combination([(c, self.word_image(w)) for c, w in self.definition(a)], self.field)
        self._images[a] = img
        return img

    def word_image(self, w: AtomWord) -> SVec:
        hit = self._word_images.get(w)
        if hit is not None:
            return hit
        if not w:
            img = SVec.unit(self.field)
        elif len(w) == 1:
            img = self.image(w[0])
        else:
            img = star_svec(self.word_image(w[:-1]), self.image(w[-1]))
        self._word_images[w] = img
        return img

    def combination_image(self, items: Dict[AtomWord, object]) -> SVec:
        """Image of sum c_w * w, grouping words by a shared end atom.

        sum_w c_w w = sum_a (sum_{ua} c_{ua} u) a, and likewise for the first
        atom; whichever end has fewer distinct atoms is split off, so each
        group costs a single product.
        """
        f = self.field
        parts = []
        long_items = []
        for w, c in items.items():
            if not c:
                continue
            if len(w) <= 1:
                parts.append((c, self.word_image(w)))
            else:
                long_items.append((w, c))
        heads = {w[0] for w, _ in long_items}
        tails = {w[-1] for w, _ in long_items}
        by_tail = len(tails) <= len(heads)
        groups: Dict[Atom, Dict[AtomWord, object]] = {}
        for w, c in long_items:
            if by_tail:
                groups.setdefault(w[-1], {})[w[:-1]] = c
            else:
                groups.setdefault(w[0], {})[w[1:]] = c
        for a, g in groups.items():
            if len(g) == 1:
                (u, c), = g.items()
                parts.append((c, self.word_image(u + (a,) if by_tail else (a,) + u)))
            elif by_tail:
                parts.append((f.one, star_svec(self.combination_image(g), self.image(a))))
            else:
                parts.append((f.one, star_svec(self.image(a), self.combination_image(g))))
        return svec_combination(parts, f)

    def is_zero_atom(self, a: Atom) -> bool:
        return self.image(a).is_zero()

    # -- beta maps ------------------------------------------------------------
    def beta(self, m: int, a: Atom) -> List[Tuple[object, Atom]]:
        """beta_m(a) as a list of (coefficient, atom); empty means zero."""
        if m == 0:
            return [(self.field.one, a)]
        key = (m, a)
        hit = self._beta.get(key)
        if hit is not None:
            return hit
        if a[0] == "W":
            i = a[1]
            out = [(gc_coeff(i, m, self.field), e_atom("a1" if i else "a0", m))]
        else:
            b = ("B", m, a)
            out = [] if self.is_zero_atom(b) else [(self.field.one, b)]
        self._beta[key] = out
        return out

    def beta_word(self, m: int, w: AtomWord) -> Dict[AtomWord, object]:
        """beta_m applied to the product of the atoms in ``w``."""
        key = (m, w)
        hit = self._beta_word.get(key)
        if hit is not None:
            return hit
        one = self.field.one
        if m == 0:
            out = {w: one}
        elif not w:
            out = {}
        else:
            out = {}
            head, tail = w[0], w[1:]
            for r in range(m + 1):
                left = self.beta(r, head)
                if not left:
                    continue
                right = self.beta_word(m - r, tail)
                for c1, a1 in left:
                    for w2, c2 in right.items():
                        nw = (a1,) + w2
                        v = c1 * c2
                        prev = out.get(nw)
                        out[nw] = v if prev is None else prev + v
            out = {k: v for k, v in out.items() if v}
        self._beta_word[key] = out
        return out


def svec_combination(items, field) -> SVec:
    """sum c_i * v_i over a common denominator."""
    items = [(c, v) for c, v in items if c and v.nums]
    if not items:
        return SVec.zero(field)
    parts = []
    den = field.ring_one
    for c, v in items:
        n, d = field.split(c)
        d = d * v.den
        parts.append((n, d, v))
        den = field.ring_lcm(den, d)
    out: Dict[int, object] = {}
    get = out.get
    for n, d, v in parts:
        m = n if d == den else n * field.ring_div(den, d)
        for w, x in v.nums.items():
            y = m * x
            prev = get(w)
            out[w] = y if prev is None else prev + y
    return SVec(field, den, {w: x for w, x in out.items() if x})


_TABLES: Dict[object, AtomTable] = {}


def table(field=EXACT) -> AtomTable:
    t = _TABLES.get(field)
    if t is None:
        t = _TABLES[field] = AtomTable(field)
    return t


def clear_tables():
    _TABLES.clear()
