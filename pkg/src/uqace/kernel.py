"""Integer kernels for the q-shuffle product of homogeneous word maps.

Both factors are maps from packed words to integers.  The product is computed
by a dynamic programme over pairs (prefix of A, prefix of B), processed in
layers of decreasing total prefix length so only two layers are alive.

For a node whose remaining suffixes have letter counts (rx, ry) and (sx, sy),
every interleaving of the suffixes has q-weight in [-m, M] with
m = 2(rx*sy + ry*sx) and M = 2(rx*sx + ry*sy).  Values are stored as
true * q^m * (scale), which keeps every transition a multiplication by a
nonnegative power:

* placing x from A multiplies by q^{2 sy}, placing y from A by q^{2 sx};
* placing x from B multiplies by q^{2 rx}, placing y from B by q^{2 ry}.

Two numeric back ends share this scheme.

``packed``: integer Laurent polynomials are Kronecker-packed into Python ints
with ``bits`` bits per coefficient, so q^k becomes a left shift.  ``bits`` is
chosen from an a priori bound on every intermediate coefficient, which makes
packing and unpacking exact.

``rational``: q = n/d is a fixed rational.  With stored = true * n^m * d^M the
transitions become multiplications by n^i d^j, all in integers.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

import numpy as np

from .coeffs import LaurentPoly, ZERO

EMPTY = 1


def _trie_by_len(nums: Dict[int, int], length: int):
    trie: Dict[int, Dict[int, int]] = {}
    for w, v in nums.items():
        for k in range(length + 1):
            r = length - k
            trie.setdefault(w >> r, {})[(w & ((1 << r) - 1)) | (1 << r)] = v
    levels: List[List[Tuple[int, int, int]]] = [[] for _ in range(length + 1)]
    for p in trie:
        k = p.bit_length() - 1
        ones = bin(p).count("1") - 1
        levels[k].append((p, k - ones, ones))
    return trie, levels


def _merge(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    if not a:
        return b
    if not b:
        return a
    res = {**a, **b}
    for w in a.keys() & b.keys():
        res[w] = a[w] + b[w]
    return res


def star_homogeneous(A: Dict[int, int], B: Dict[int, int], a_deg: Tuple[int, int], b_deg: Tuple[int, int],
                     factor, shift: bool) -> Dict[int, int]:
    """Shared dynamic programme.

    ``factor(i, j)`` gives the multiplier for q^i with scale exponent j; with
    ``shift`` set the multiplier is a left-shift amount instead of a factor.
    """
    ax, ay = a_deg
    bx, by = b_deg
    la, lb = ax + ay, bx + by
    ta, lva = _trie_by_len(A, la)
    tb, lvb = _trie_by_len(B, lb)
    prev: Dict[Tuple[int, int], Dict[int, int]] = {}
    for k in range(la + lb, -1, -1):
        cur: Dict[Tuple[int, int], Dict[int, int]] = {}
        for i in range(max(0, k - lb), min(la, k) + 1):
            j = k - i
            ka, kb = la - i, lb - j
            top = ka + kb - 1
            off0, off1 = (1 << top, 2 << top) if top >= 0 else (0, 0)
            for pa, za, oa in lva[i]:
                rx, ry = ax - za, ay - oa
                sa = ta[pa]
                pa0, pa1 = pa << 1, (pa << 1) | 1
                for pb, zb, ob in lvb[j]:
                    if ka == 0:
                        c = sa[EMPTY]
                        cur[(pa, pb)] = {w: c * v for w, v in tb[pb].items()}
                        continue
                    if kb == 0:
                        c = tb[pb][EMPTY]
                        cur[(pa, pb)] = {w: v * c for w, v in sa.items()}
                        continue
                    sx, sy = bx - zb, by - ob
                    a0 = prev.get((pa0, pb))
                    a1 = prev.get((pa1, pb))
                    b0 = prev.get((pa, pb << 1))
                    b1 = prev.get((pa, (pb << 1) | 1))
                    # words starting with x, then words starting with y
                    parts = []
                    for ch, fi, fj, off in ((a0, 2 * sy, 2 * sx, off0), (b0, 2 * rx, 2 * ry, off0),
                                            (a1, 2 * sx, 2 * sy, off1), (b1, 2 * ry, 2 * rx, off1)):
                        if ch is None:
                            parts.append(None)
                            continue
                        f = factor(fi, fj)
                        if shift:
                            parts.append({w + off: v << f for w, v in ch.items()} if f else
                                         {w + off: v for w, v in ch.items()})
                        else:
                            parts.append({w + off: v * f for w, v in ch.items()})
                    x_part = _merge(parts[0] or {}, parts[1] or {})
                    y_part = _merge(parts[2] or {}, parts[3] or {})
                    if len(x_part) < len(y_part):
                        x_part, y_part = y_part, x_part
                    x_part.update(y_part)
                    cur[(pa, pb)] = x_part
        prev = cur
    out = prev[(EMPTY, EMPTY)]
    return {w: v for w, v in out.items() if v}


def weight_range(a_deg, b_deg) -> Tuple[int, int]:
    """(m, M): q-weights of interleavings lie in [-m, M]."""
    ax, ay = a_deg
    bx, by = b_deg
    return 2 * (ax * by + ay * bx), 2 * (ax * bx + ay * by)


# -- packed Laurent polynomials ------------------------------------------------

def l1(p: LaurentPoly) -> int:
    return sum(abs(v) for _, v in p.items())


def choose_bits(bound: int) -> int:
    """Bits per packed coefficient for |coefficients| <= bound, a multiple of 64."""
    need = bound.bit_length() + 2
    return max(64, -(-need // 64) * 64)


def pack(p: LaurentPoly, lo: int, bits: int) -> int:
    v = 0
    for e, c in p.items():
        v += c << (bits * (e - lo))
    return v


@lru_cache(maxsize=256)
def _bias(bits: int, slots: int) -> int:
    unit = 1 << (bits - 1)
    total = 0
    for i in range(slots):
        total |= unit << (bits * i)
    return total


_TOP64 = np.uint64(1 << 63)


def unpack(v: int, lo: int, bits: int) -> LaurentPoly:
    if not v:
        return ZERO
    slots = v.bit_length() // bits + 2
    u = v + _bias(bits, slots)
    if bits == 64:
        arr = np.frombuffer(u.to_bytes(8 * slots, "little"), dtype=np.uint64)
        vals = (arr ^ _TOP64).view(np.int64)
        nz = np.flatnonzero(vals)
        return LaurentPoly._raw({int(i) + lo: int(vals[i]) for i in nz})
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = {}
    for i in range(slots):
        c = ((u >> (bits * i)) & mask) - half
        if c:
            out[i + lo] = c
    return LaurentPoly._raw(out)


def star_laurent(A: Dict[int, LaurentPoly], B: Dict[int, LaurentPoly], a_deg, b_deg) -> Dict[int, LaurentPoly]:
    """Exact product of homogeneous maps with integer Laurent coefficients."""
    if not A or not B:
        return {}
    lo_a = min(p.low() for p in A.values())
    lo_b = min(p.low() for p in B.values())
    la, lb = sum(a_deg), sum(b_deg)
    bound = sum(map(l1, A.values())) * sum(map(l1, B.values())) * comb(la + lb, la)
    bits = choose_bits(bound)
    pa = {w: pack(p, lo_a, bits) for w, p in A.items()}
    pb = {w: pack(p, lo_b, bits) for w, p in B.items()}
    m, _ = weight_range(a_deg, b_deg)
    out = star_homogeneous(pa, pb, a_deg, b_deg, lambda i, j: bits * i, True)
    lo = lo_a + lo_b - m
    return {w: unpack(v, lo, bits) for w, v in out.items()}


# -- rational specialisation ------------------------------------------------------

class RationalStep:
    """Transition multipliers n^i d^j for q = n/d."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self._cache: Dict[Tuple[int, int], int] = {}

    def factor(self, i: int, j: int) -> int:
        key = (i, j)
        f = self._cache.get(key)
        if f is None:
            f = self._cache[key] = self.n ** i * self.d ** j
        return f

    def __call__(self, v: int, i: int, j: int) -> int:
        return v * self.factor(i, j)


def star_rational(A: Dict[int, int], B: Dict[int, int], a_deg, b_deg, step: RationalStep) -> Tuple[Dict[int, int], int]:
    """Product at q = n/d on integer numerators; returns (numerators, extra denominator)."""
    if not A or not B:
        return {}, 1
    m, M = weight_range(a_deg, b_deg)
    out = star_homogeneous(A, B, a_deg, b_deg, step.factor, False)
    return out, step.factor(m, M)
