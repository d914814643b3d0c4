"""Noncommutative quaternionic polynomials and the ring of polynomial functions H^d -> H.

Raw elements live in the free algebra H<x_1..x_d>: a word is the tuple
(u0, v1, u1, ..., vm, um) of basis-unit indices u (0..3 for 1, i, j, k)
interleaved with variable indices v, so the term map {word: rational} is a
canonical free-algebra form.  Function equality is decided by the image
under phi in H_c[y_{1,1}..y_{d,4}], which is the canonical form of H[x].
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .poly import QPoly, VariableCountError, _join_terms, default_names
from .quat import BASIS, I, J, K, UNIT_TABLE, UNITS, ZERO, Quaternion

_canon_lock = threading.Lock()


class NCPoly:
    __slots__ = ("nvars", "terms", "_canon")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) % 2 != 1:
                raise ValueError(f"malformed word {w}")
            if any(not 0 <= v < nvars for v in w[1::2]):
                raise VariableCountError(f"word {w} uses a variable outside 1..{nvars}")
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}
        self._canon = None

    @classmethod
    def zero(cls, nvars: int) -> "NCPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, q, nvars: int) -> "NCPoly":
        q = Quaternion.coerce(q)
        return cls(nvars, {(u,): c for u, c in enumerate(q.components) if c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "NCPoly":
        return cls(nvars, {(0, i, 0): 1})

    def is_zero_raw(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        """Zero as a function on H^d."""
        return self.canon.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def degree(self) -> int:
        return max(((len(w) - 1) // 2 for w in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            if other.nvars != self.nvars:
                raise VariableCountError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction, Quaternion)):
            return NCPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.nvars, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ncmul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _ncmul(other, self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = NCPoly.constant(1, self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        return NCPoly(self.nvars, {w: c * v for w, v in self.terms.items()})

    def star(self) -> "NCPoly":
        return nc_conjugate(self)

    @property
    def canon(self) -> QPoly:
        if self._canon is None:
            with _canon_lock:
                if self._canon is None:
                    self._canon = phi(self, _cached=False)
        return self._canon

    def evaluate(self, point: Sequence) -> Quaternion:
        return nc_evaluate(self, point)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Quaternion)):
            other = NCPoly.constant(other, self.nvars)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.canon == other.canon

    def __hash__(self):
        return hash(self.canon)

    def __str__(self):
        return format_ncpoly(self)

    def __repr__(self):
        return f"NCPoly({format_ncpoly(self)!r}, nvars={self.nvars})"


def _ncmul(f: NCPoly, g: NCPoly) -> NCPoly:
    out: dict = {}
    for w1, c1 in f.terms.items():
        for w2, c2 in g.terms.items():
            sign, u = UNIT_TABLE[w1[-1]][w2[0]]
            w = w1[:-1] + (u,) + w2[1:]
            out[w] = out.get(w, 0) + sign * c1 * c2
    return NCPoly(f.nvars, out)


def _phi_variable(i: int, d: int) -> QPoly:
    n4 = 4 * d
    x = QPoly.zero(n4)
    for c in range(4):
        x = x + QPoly.var(4 * i + c, n4) * QPoly.from_quaternion(BASIS[c], n4)
    return x


def phi(f: NCPoly, _cached: bool = True) -> QPoly:
    """Image in H_c[y_{1,1}, ..., y_{d,4}] under x_i -> y_{i,1} + y_{i,2} i + y_{i,3} j + y_{i,4} k.

    Variable y_{i,c} has index 4(i-1) + (c-1).
    """
    if _cached:
        return f.canon
    d = f.nvars
    n4 = 4 * d
    xs = [_phi_variable(i, d) for i in range(d)]
    units = [QPoly.from_quaternion(u, n4) for u in BASIS]
    total = QPoly.zero(n4)
    for w, c in f.terms.items():
        acc = units[w[0]]
        for pos in range(1, len(w), 2):
            acc = acc * xs[w[pos]] * units[w[pos + 1]]
        total = total + acc.scale(c)
    return total


def rho(point: Sequence) -> tuple:
    """H^d -> Q^{4d}: concatenate components (1, i, j, k) of each coordinate."""
    out = []
    for q in point:
        out.extend(Quaternion.coerce(q).components)
    return tuple(out)


def rho_inverse(coords: Sequence) -> tuple:
    if len(coords) % 4:
        raise ValueError("coordinate count is not a multiple of 4")
    return tuple(Quaternion(*coords[i:i + 4]) for i in range(0, len(coords), 4))


def nc_evaluate(f: NCPoly, point: Sequence) -> Quaternion:
    """Substitute quaternions into the raw words, multiplying in word order."""
    if len(point) != f.nvars:
        raise VariableCountError(f"point has {len(point)} coordinates, expected {f.nvars}")
    pt = [Quaternion.coerce(q) for q in point]
    total = ZERO
    for w, c in f.terms.items():
        acc = BASIS[w[0]]
        for pos in range(1, len(w), 2):
            acc = acc * pt[w[pos]] * BASIS[w[pos + 1]]
        total = total + acc * c
    return total


def nc_conjugate(f: NCPoly) -> NCPoly:
    """Pointwise conjugate: -1/2 (f + i f i + j f j + k f k)."""
    d = f.nvars
    i, j, k = (NCPoly.constant(u, d) for u in (I, J, K))
    return (f + i * f * i + j * f * j + k * f * k).scale(Fraction(-1, 2))


def format_word(w: tuple, names: Sequence[str]) -> list[str]:
    factors = []
    for pos, sym in enumerate(w):
        if pos % 2 == 0:
            if sym:
                factors.append(UNITS[sym])
        else:
            factors.append(names[sym])
    return factors


def format_ncpoly(f: NCPoly, names: Sequence[str] | None = None) -> str:
    names = names or default_names(f.nvars)
    words = sorted(f.terms, key=lambda w: (-(len(w) // 2), w))
    return _join_terms((f.terms[w], format_word(w, names)) for w in words)
