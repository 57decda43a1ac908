"""Slow reference implementations used to cross-check the package.

Nothing here reuses the package's product kernels, atom tables or beta maps;
only the coefficient field is shared.  Words are plain tuples of 0 (x or W0)
and 1 (y or W1).
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Tuple

from uqace.coeffs import EXACT

Word = Tuple[int, ...]


def _add(d, k, c):
    v = d.get(k)
    v = c if v is None else v + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def poly_mul(a: Dict[Word, object], b: Dict[Word, object]) -> Dict[Word, object]:
    out: Dict[Word, object] = {}
    for u, c in a.items():
        for v, d in b.items():
            _add(out, u + v, c * d)
    return out


def poly_lin(*pairs) -> Dict[Word, object]:
    """sum c_i * p_i for pairs (c_i, p_i)."""
    out: Dict[Word, object] = {}
    for c, p in pairs:
        for w, x in p.items():
            _add(out, w, c * x)
    return out


# -- q-shuffle by enumerating interleavings -------------------------------------------

def shuffle_words(u: Word, v: Word, field=EXACT) -> Dict[Word, object]:
    """Sum over interleavings, weighting each u-letter by q^<a,b> for every v-letter b before it."""
    m, n = len(u), len(v)
    out: Dict[Word, object] = {}
    for pos in combinations(range(m + n), m):
        pos = set(pos)
        w, e, i, j = [], 0, 0, 0
        for k in range(m + n):
            if k in pos:
                e += sum(2 if u[i] == v[t] else -2 for t in range(j))
                w.append(u[i])
                i += 1
            else:
                w.append(v[j])
                j += 1
        _add(out, tuple(w), field.qpow(e))
    return out


def shuffle_poly(a: Dict[Word, object], b: Dict[Word, object], field=EXACT) -> Dict[Word, object]:
    out: Dict[Word, object] = {}
    for u, c in a.items():
        for v, d in b.items():
            for w, x in shuffle_words(u, v, field).items():
                _add(out, w, c * d * x)
    return out


def natmap_poly(p: Dict[Word, object], field=EXACT) -> Dict[Word, object]:
    out: Dict[Word, object] = {}
    for w, c in p.items():
        img = {(): field.one}
        for a in w:
            img = shuffle_poly(img, {(a,): field.one}, field)
        for v, x in img.items():
            _add(out, v, c * x)
    return out


# -- root vectors from their recursions ---------------------------------------------------

def root_vector(kind: str, n: int, field=EXACT) -> Dict[Word, object]:
    one = field.one
    W0, W1 = {(0,): one}, {(1,): one}
    qi = field.q + field.q ** -1
    q2 = field.qpow(-2)
    if kind == "a0" and n == 0:
        return W0
    if kind == "a1" and n == 0:
        return W1
    if kind == "d":
        prev = root_vector("a1", n - 1, field)
        return poly_lin((q2, poly_mul(prev, W0)), (-one, poly_mul(W0, prev)))
    ed = root_vector("d", 1, field)
    prev = root_vector(kind, n - 1, field)
    if kind == "a0":
        return poly_lin((one / qi, poly_mul(ed, prev)), (-one / qi, poly_mul(prev, ed)))
    return poly_lin((one / qi, poly_mul(prev, ed)), (-one / qi, poly_mul(ed, prev)))


# -- letter-level straightening ---------------------------------------------------------

def _gc(letter: int, k: int, field):
    d = (field.q - field.q ** -1) ** (2 * k - 1)
    if letter == 1:
        return (-1) ** (k + 1) * field.qpow(k + 1) / d
    return (-1) ** k * field.qpow(3 * k - 1) / d


def straighten_letters(mixed: Dict[tuple, object], field=EXACT) -> Dict[Tuple[Word, Tuple[int, ...]], object]:
    """Straighten words of letters 0/1 and items ("G", n) using the commutation rules.

    gt_n W_i = W_i gt_n + sum_k c_i(k) E_{k delta + alpha_i} gt_{n-k},
    with every root vector expanded into letters.
    """
    work = dict(mixed)
    done: Dict[Tuple[Word, Tuple[int, ...]], object] = {}
    while work:
        w, c = work.popitem()
        pos = next((i for i in range(len(w) - 1)
                    if isinstance(w[i], tuple) and not isinstance(w[i + 1], tuple)), None)
        if pos is None:
            letters = tuple(a for a in w if not isinstance(a, tuple))
            gm = tuple(sorted(a[1] for a in w if isinstance(a, tuple)))
            _add(done, (letters, gm), c)
            continue
        n, a = w[pos][1], w[pos + 1]
        _add(work, w[:pos] + (a, w[pos]) + w[pos + 2:], c)
        for k in range(1, n + 1):
            rest = (("G", n - k),) if n > k else ()
            for e, x in root_vector("a1" if a else "a0", k, field).items():
                _add(work, w[:pos] + e + rest + w[pos + 2:], c * _gc(a, k, field) * x)
    return done


def canonical_letters(mixed: Dict[tuple, object], field=EXACT) -> Dict[Tuple[Word, Tuple[int, ...]], object]:
    """Straighten, then map the letter part of each g-bucket into the q-shuffle algebra."""
    buckets: Dict[Tuple[int, ...], Dict[Word, object]] = {}
    for (w, m), c in straighten_letters(mixed, field).items():
        buckets.setdefault(m, {})[w] = c
    out = {}
    for m, p in buckets.items():
        for v, c in natmap_poly(p, field).items():
            out[(v, m)] = c
    return out


# -- PBW monomial counts ------------------------------------------------------------------

def pbw_counts(max_len: int):
    """Number of sorted PBW monomials of each letter-length 0..max_len.

    Two real root vectors of each odd length and one imaginary root vector of
    each even length, so the counts are the coefficients of
    prod_{L odd} (1 - t^L)^-2 * prod_{L even} (1 - t^L)^-1.
    """
    series = [1] + [0] * max_len
    for L in range(1, max_len + 1):
        for _ in range(2 if L % 2 else 1):
            for d in range(L, max_len + 1):
                series[d] += series[d - L]
    return series
