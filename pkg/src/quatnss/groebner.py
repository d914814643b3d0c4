"""Buchberger's algorithm for submodules of Q[x]^n.

Vectors are sparse dicts {(position, exponent): Fraction}.  The module order
is position-over-term: a lower position index is larger, ties broken by the
configured monomial order.  Because of this, a basis element whose leading
position is p has no entries in positions < p, which is what the
elimination tricks in `submod` rely on.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable

from .poly import mono_div, mono_divides, mono_lcm, mono_mul, order_key

Vec = dict


class ModuleOrder:
    def __init__(self, term_order: str = "degrevlex"):
        self.name = term_order
        self._key = order_key(term_order)

    def key(self, term):
        pos, e = term
        return (-pos, self._key(e))

    def leading(self, v: Vec):
        return max(v, key=self.key)


def vec_add_scaled(f: Vec, g: Vec, c: Fraction, shift) -> None:
    """f += c * x^shift * g, in place."""
    for (pos, e), v in g.items():
        t = (pos, mono_mul(e, shift))
        s = f.get(t, 0) + c * v
        if s:
            f[t] = s
        else:
            f.pop(t, None)


def monic(v: Vec, order: ModuleOrder) -> Vec:
    lt = order.leading(v)
    c = v[lt]
    if c == 1:
        return dict(v)
    inv = 1 / c
    return {t: x * inv for t, x in v.items()}


class Basis:
    """A list of monic vectors indexed by leading position for fast division."""

    def __init__(self, order: ModuleOrder, elems: Iterable[Vec] = ()):
        self.order = order
        self.elems: list[Vec] = []
        self.lts: list = []
        self.by_pos: dict[int, list[int]] = {}
        for g in elems:
            self.add(g)

    def add(self, g: Vec) -> int:
        g = monic(g, self.order)
        lt = self.order.leading(g)
        idx = len(self.elems)
        self.elems.append(g)
        self.lts.append(lt)
        self.by_pos.setdefault(lt[0], []).append(idx)
        return idx

    def find_divisor(self, term, skip: int = -1):
        pos, e = term
        for idx in self.by_pos.get(pos, ()):
            if idx != skip and mono_divides(self.lts[idx][1], e):
                return idx
        return None

    def reduce(self, f: Vec, skip: int = -1) -> Vec:
        """Normal form of f."""
        f = dict(f)
        rem: Vec = {}
        key = self.order.key
        while f:
            lt = max(f, key=key)
            c = f[lt]
            idx = self.find_divisor(lt, skip)
            if idx is None:
                rem[lt] = c
                del f[lt]
                continue
            g = self.elems[idx]
            shift = mono_div(lt[1], self.lts[idx][1])
            vec_add_scaled(f, g, -c, shift)
        return rem


def normal_form(f: Vec, basis: Basis) -> Vec:
    return basis.reduce(f)


def _spoly(g1: Vec, lt1, g2: Vec, lt2) -> Vec:
    lcm = mono_lcm(lt1[1], lt2[1])
    s: Vec = {}
    vec_add_scaled(s, g1, Fraction(1), mono_div(lcm, lt1[1]))
    vec_add_scaled(s, g2, Fraction(-1), mono_div(lcm, lt2[1]))
    return s


def groebner(gens: Iterable[Vec], term_order: str = "degrevlex") -> list[Vec]:
    """Reduced Gröbner basis, sorted by decreasing leading term."""
    order = ModuleOrder(term_order)
    basis = Basis(order)
    heap: list = []
    pending: set = set()
    tkey = order._key

    def push_pairs(new: int):
        lt_new = basis.lts[new]
        for old in basis.by_pos.get(lt_new[0], ()):
            if old == new:
                continue
            lcm = mono_lcm(basis.lts[old][1], lt_new[1])
            heapq.heappush(heap, (sum(lcm), tkey(lcm), old, new))
            pending.add((old, new))

    for g in gens:
        g = {t: c for t, c in g.items() if c}
        if not g:
            continue
        h = basis.reduce(g)
        if h:
            push_pairs(basis.add(h))

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lt_i, lt_j = basis.lts[i], basis.lts[j]
        lcm = mono_lcm(lt_i[1], lt_j[1])
        if _chain_criterion(basis, i, j, lcm, pending):
            continue
        s = _spoly(basis.elems[i], lt_i, basis.elems[j], lt_j)
        h = basis.reduce(s)
        if h:
            push_pairs(basis.add(h))

    return _interreduce(basis)


def _chain_criterion(basis: Basis, i: int, j: int, lcm, pending: set) -> bool:
    pos = basis.lts[i][0]
    for k in basis.by_pos.get(pos, ()):
        if k in (i, j):
            continue
        if not mono_divides(basis.lts[k][1], lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _interreduce(basis: Basis) -> list[Vec]:
    order = basis.order
    n = len(basis.elems)
    keep = []
    for idx in range(n):
        pos, e = basis.lts[idx]
        redundant = False
        for other in basis.by_pos.get(pos, ()):
            if other == idx:
                continue
            oe = basis.lts[other][1]
            if mono_divides(oe, e) and (oe != e or other < idx):
                redundant = True
                break
        if not redundant:
            keep.append(idx)
    minimal = Basis(order, [basis.elems[i] for i in keep])
    out = []
    for idx, g in enumerate(minimal.elems):
        lt = minimal.lts[idx]
        tail = {t: c for t, c in g.items() if t != lt}
        reduced = minimal.reduce(tail, skip=idx) if tail else {}
        reduced[lt] = Fraction(1)
        out.append(reduced)
    out.sort(key=lambda v: order.key(order.leading(v)), reverse=True)
    return out
