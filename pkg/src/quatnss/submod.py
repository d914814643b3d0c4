"""Finitely generated submodules of Q[x]^n and H_c[x]^n.

H_c-submodules are handled through scalar restriction: a row of H_c[x]^n is
unfolded into a row of Q[x]^{4n} (coordinate j, unit c -> position 4j + c),
and the generators are closed under left multiplication by i, j, k first, so
the rational module obtained is exactly the H_c-submodule seen over Q[x].
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import groebner as gb
from .poly import DEFAULT_ORDER, Poly, QPoly, format_poly, format_qpoly
from .quat import BASIS, ONE, Quaternion, QuatSubspace, annihilator

RINGS = ("Q", "Hc")


class RankMismatch(ValueError):
    pass


class UnsupportedPrime(ValueError):
    """Raised when a construction is asked for at a prime that is not a rational maximal ideal."""


# ---------------------------------------------------------------------------
# Row conversions


def as_row(row: Sequence, ring: str, nvars: int) -> tuple:
    out = []
    for x in row:
        if ring == "Q":
            if isinstance(x, QPoly):
                if any(x.comp[1:]):
                    raise TypeError("quaternionic entry in a rational row")
                x = x.comp[0]
            elif not isinstance(x, Poly):
                x = Poly.constant(x, nvars)
        else:
            x = QPoly.coerce(x, nvars)
        if x.nvars != nvars:
            raise ValueError(f"entry has {x.nvars} variables, expected {nvars}")
        out.append(x)
    return tuple(out)


def row_to_vec(row: Sequence, ring: str) -> gb.Vec:
    v: gb.Vec = {}
    if ring == "Q":
        for j, p in enumerate(row):
            for e, c in p.terms.items():
                v[(j, e)] = c
    else:
        for j, q in enumerate(row):
            for u, p in enumerate(q.comp):
                for e, c in p.terms.items():
                    v[(4 * j + u, e)] = c
    return v


def vec_to_row(v: gb.Vec, ring: str, rank: int, nvars: int) -> tuple:
    width = rank if ring == "Q" else 4 * rank
    buckets: list[dict] = [{} for _ in range(width)]
    for (pos, e), c in v.items():
        buckets[pos][e] = c
    polys = [Poly(nvars, b, _trusted=True) for b in buckets]
    if ring == "Q":
        return tuple(polys)
    return tuple(QPoly(polys[4 * j:4 * j + 4]) for j in range(rank))


def unit_closure(row: tuple) -> list[tuple]:
    nv = row[0].nvars if row else 0
    out = []
    for u in BASIS:
        uq = QPoly.from_quaternion(u, nv)
        out.append(tuple(uq * x for x in row))
    return out


def zero_row(ring: str, rank: int, nvars: int) -> tuple:
    z = Poly.zero(nvars) if ring == "Q" else QPoly.zero(nvars)
    return (z,) * rank


def unit_row(ring: str, rank: int, nvars: int, j: int, scalar=ONE) -> tuple:
    row = list(zero_row(ring, rank, nvars))
    if ring == "Q":
        row[j] = Poly.constant(Quaternion.coerce(scalar).a, nvars)
    else:
        row[j] = QPoly.from_quaternion(scalar, nvars)
    return tuple(row)


def row_is_zero(row: Sequence) -> bool:
    return all(x.is_zero() for x in row)


def format_row(row: Sequence, names=None) -> str:
    fmt = format_poly if row and isinstance(row[0], Poly) else format_qpoly
    return "(" + ", ".join(fmt(x, names) for x in row) + ")"


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Submodule:
    ring: str
    nvars: int
    rank: int
    generators: tuple
    order: str = DEFAULT_ORDER
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"ring must be one of {RINGS}, got {self.ring!r}")
        rows = []
        for g in self.generators:
            if len(g) != self.rank:
                raise RankMismatch(f"generator of length {len(g)} in a rank-{self.rank} module")
            rows.append(as_row(g, self.ring, self.nvars))
        object.__setattr__(self, "generators", tuple(rows))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ring: str, nvars: int, rank: int,
                  order: str = DEFAULT_ORDER) -> "Submodule":
        return cls(ring, nvars, rank, tuple(tuple(r) for r in rows), order)

    @classmethod
    def full(cls, ring: str, nvars: int, rank: int, order: str = DEFAULT_ORDER) -> "Submodule":
        return cls(ring, nvars, rank, tuple(unit_row(ring, rank, nvars, j) for j in range(rank)), order)

    @classmethod
    def zero(cls, ring: str, nvars: int, rank: int, order: str = DEFAULT_ORDER) -> "Submodule":
        return cls(ring, nvars, rank, (), order)

    def _like(self, rows) -> "Submodule":
        return Submodule(self.ring, self.nvars, self.rank, tuple(rows), self.order)

    # -- rational view -----------------------------------------------------

    @property
    def width(self) -> int:
        """Rank of the underlying Q[x]-module."""
        return self.rank if self.ring == "Q" else 4 * self.rank

    def restricted_vectors(self) -> list[gb.Vec]:
        """Generators of the underlying rational module (unit-closed for H_c)."""
        out = []
        for g in self.generators:
            rows = [g] if self.ring == "Q" else unit_closure(g)
            out.extend(row_to_vec(r, self.ring) for r in rows)
        return [v for v in out if v]

    @property
    def groebner(self) -> list[gb.Vec]:
        cached = self._cache.get("gb")
        if cached is None:
            with self._lock:
                cached = self._cache.get("gb")
                if cached is None:
                    cached = gb.groebner(self.restricted_vectors(), self.order)
                    self._cache["gb"] = cached
        return cached

    def _basis(self) -> gb.Basis:
        cached = self._cache.get("basis")
        if cached is None:
            cached = gb.Basis(gb.ModuleOrder(self.order), self.groebner)
            self._cache["basis"] = cached
        return cached

    # -- membership --------------------------------------------------------

    def _check(self, f: Sequence) -> tuple:
        if len(f) != self.rank:
            raise RankMismatch(f"row of length {len(f)} tested against a rank-{self.rank} module")
        return as_row(f, self.ring, self.nvars)

    def normal_form_vec(self, f: Sequence) -> gb.Vec:
        return self._basis().reduce(row_to_vec(self._check(f), self.ring))

    def normal_form(self, f: Sequence) -> tuple:
        return vec_to_row(self.normal_form_vec(f), self.ring, self.rank, self.nvars)

    def member(self, f: Sequence) -> bool:
        return not self.normal_form_vec(f)

    __contains__ = member

    def contains(self, other: "Submodule") -> bool:
        self._compatible(other)
        return all(self.member(g) for g in other.generators)

    def same_as(self, other: "Submodule") -> bool:
        return self.contains(other) and other.contains(self)

    def is_full(self) -> bool:
        return all(self.member(unit_row(self.ring, self.rank, self.nvars, j)) for j in range(self.rank))

    def is_zero(self) -> bool:
        return not self.groebner

    def _compatible(self, other: "Submodule"):
        if (self.ring, self.nvars, self.rank) != (other.ring, other.nvars, other.rank):
            raise RankMismatch(
                f"incompatible modules: {(self.ring, self.nvars, self.rank)} vs "
                f"{(other.ring, other.nvars, other.rank)}")

    def __add__(self, other: "Submodule") -> "Submodule":
        self._compatible(other)
        return self._like(self.generators + other.generators)

    def extended(self, rows: Iterable[Sequence]) -> "Submodule":
        return self._like(self.generators + tuple(tuple(r) for r in rows))

    def basis_rows(self) -> list[tuple]:
        """Reduced Gröbner basis elements as rows of the declared ring."""
        return [vec_to_row(v, "Q" if self.ring == "Q" else "Hc", self.rank, self.nvars)
                for v in self.groebner]

    def format_groebner(self, names=None) -> str:
        """Canonical text: one rational basis vector per line."""
        lines = []
        for v in self.groebner:
            row = vec_to_row(v, "Q", self.width, self.nvars)
            lines.append(format_row(row, names))
        return "\n".join(lines)

    def __repr__(self):
        return (f"Submodule(ring={self.ring!r}, nvars={self.nvars}, rank={self.rank}, "
                f"{len(self.generators)} generators)")


def groebner_basis(n: Submodule) -> list[tuple]:
    return n.basis_rows()


def member(f: Sequence, n: Submodule) -> bool:
    return n.member(f)


# ---------------------------------------------------------------------------
# Intersections and colon ideals


def _rational(n: Submodule) -> Submodule:
    """The same module as a Q[x]-module of rank 4n (identity for ring Q)."""
    if n.ring == "Q":
        return n
    rows = [vec_to_row(v, "Q", n.width, n.nvars) for v in n.restricted_vectors()]
    return Submodule("Q", n.nvars, n.width, tuple(rows), n.order)


def _intersect_vecs(a: list[gb.Vec], b: list[gb.Vec], width: int, order: str) -> list[gb.Vec]:
    gens = []
    for g in a:
        v = dict(g)
        v.update({(pos + width, e): c for (pos, e), c in g.items()})
        gens.append(v)
    gens.extend(dict(h) for h in b)
    out = []
    for v in gb.groebner(gens, order):
        if min(pos for pos, _ in v) >= width:
            out.append({(pos - width, e): c for (pos, e), c in v.items()})
    return out


def intersect(n1: Submodule, n2: Submodule) -> Submodule:
    n1._compatible(n2)
    vecs = _intersect_vecs(n1.groebner, n2.groebner, n1.width, n1.order)
    if n1.ring == "Q":
        rows = [vec_to_row(v, "Q", n1.rank, n1.nvars) for v in vecs]
    else:
        rows = [vec_to_row(v, "Hc", n1.rank, n1.nvars) for v in vecs]
    return n1._like(rows)


def intersect_all(mods: Sequence[Submodule]) -> Submodule:
    if not mods:
        raise ValueError("empty intersection")
    acc = mods[0]
    for m in mods[1:]:
        acc = intersect(acc, m)
    return acc


def _rational_quotient(vecs: list[gb.Vec], width: int, pos: int, nvars: int, order: str) -> Submodule:
    """{r in Q[x] : r e_pos in the rational module spanned by vecs}."""
    line = [{(pos, (0,) * nvars): Fraction(1)}]
    inter = _intersect_vecs(gb.groebner(vecs, order), line, width, order)
    rows = []
    for v in inter:
        rows.append((Poly(nvars, {e: c for (p, e), c in v.items() if p == pos}),))
    return Submodule("Q", nvars, 1, tuple(rows), order)


def colon_rational(n: Submodule) -> Submodule:
    """(N : M~) = {r in Q[x] : r M~ in N}, over the scalar-restricted module."""
    vecs = n.groebner
    parts = [_rational_quotient(vecs, n.width, p, n.nvars, n.order) for p in range(n.width)]
    if not parts:
        return Submodule.full("Q", n.nvars, 1, n.order)
    return intersect_all(parts)


def colon_module(n: Submodule) -> Submodule:
    """(N : M) as an ideal of the base ring (rank-1 module of the same ring).

    For H_c the ideal is two-sided and generated by the rational ideal
    (N : M~), so the generators returned are rational.
    """
    rat = colon_rational(n)
    if n.ring == "Q":
        return rat
    return Submodule("Hc", n.nvars, 1, tuple((QPoly.from_poly(g[0]),) for g in rat.generators), n.order)


def colon_direct_hc(n: Submodule) -> Submodule:
    """(N : M) for an H_c-module computed as the left ideal intersection of the (N : e_i).

    Independent of `colon_rational`; used to cross-check (N : M~) H_c = (N : M).
    """
    if n.ring != "Hc":
        raise ValueError("colon_direct_hc needs an H_c module")
    nv = n.nvars
    parts = []
    for i in range(n.rank):
        line = Submodule("Hc", nv, n.rank, (unit_row("Hc", n.rank, nv, i),), n.order)
        inter = intersect(n, line)
        rows = [(r[i],) for r in inter.generators]
        parts.append(Submodule("Hc", nv, 1, tuple(rows), n.order))
    if not parts:
        return Submodule.full("Hc", nv, 1, n.order)
    return intersect_all(parts)


# ---------------------------------------------------------------------------
# Pointed constructions at rational maximal ideals


@dataclass(frozen=True)
class PointedFiber:
    point: tuple
    vector: tuple
    ring: str = "Q"

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(Fraction(x) for x in self.point))
        if self.ring == "Q":
            vec = []
            for x in self.vector:
                q = Quaternion.coerce(x)
                if not q.is_real():
                    raise TypeError("quaternionic vector for a rational fiber")
                vec.append(q.a)
        else:
            vec = [Quaternion.coerce(x) for x in self.vector]
        object.__setattr__(self, "vector", tuple(vec))

    def is_zero(self) -> bool:
        return all(not x for x in self.vector)


def fiber_from_polynomial(point: Sequence, u: Sequence, ring: str = "Q") -> PointedFiber:
    """The fiber (a, u(a)) for a polynomial vector u; u(a) must be nonzero."""
    return PointedFiber(tuple(point), tuple(x.evaluate(point) for x in u), ring)


def maximal_ideal_rows(point: Sequence, ring: str, rank: int, order: str = DEFAULT_ORDER) -> list[tuple]:
    """Generators (x_i - a_i) e_j of m_a^n."""
    d = len(point)
    rows = []
    for i, a in enumerate(point):
        shift = Poly.var(i, d) - Fraction(a)
        for j in range(rank):
            row = list(zero_row(ring, rank, d))
            row[j] = shift if ring == "Q" else QPoly.from_poly(shift)
            rows.append(tuple(row))
    return rows


def maximal_ideal(point: Sequence, ring: str = "Q", rank: int = 1, order: str = DEFAULT_ORDER) -> Submodule:
    return Submodule(ring, len(point), rank, tuple(maximal_ideal_rows(point, ring, rank)), order)


def _constant_row(vals: Sequence, ring: str, nvars: int) -> tuple:
    if ring == "Q":
        return tuple(Poly.constant(Quaternion.coerce(x).a, nvars) for x in vals)
    return tuple(QPoly.from_quaternion(x, nvars) for x in vals)


def _rational_orthogonal(v: Sequence[Fraction]) -> list[list[Fraction]]:
    p = next(i for i, x in enumerate(v) if x)
    rows = []
    for j in range(len(v)):
        if j == p:
            continue
        w = [Fraction(0)] * len(v)
        w[j] = Fraction(1)
        w[p] = -v[j] / v[p]
        rows.append(w)
    return rows


def c_module(fiber: PointedFiber, order: str = DEFAULT_ORDER) -> Submodule:
    """C_{m_a, v} = {f : sum_i f_i(a) v_i = 0}."""
    if fiber.is_zero():
        raise ValueError("C-module needs a nonzero vector")
    a, v, ring = fiber.point, fiber.vector, fiber.ring
    n, d = len(v), len(a)
    rows = maximal_ideal_rows(a, ring, n)
    if ring == "Q":
        consts = _rational_orthogonal(v)
    else:
        consts = annihilator(QuatSubspace.span("right", n, [v])).basis
    rows.extend(_constant_row(w, ring, d) for w in consts)
    return Submodule(ring, d, n, tuple(rows), order)


def evaluate_row(row: Sequence, point: Sequence) -> tuple:
    return tuple(x.evaluate(point) for x in row)


def pair_at(row: Sequence, fiber: PointedFiber) -> Quaternion:
    """<f(a), v> = sum_i f_i(a) v_i."""
    acc = Quaternion()
    for x, vi in zip(row, fiber.vector):
        acc = acc + Quaternion.coerce(x.evaluate(fiber.point)) * Quaternion.coerce(vi)
    return acc


def point_of_maximal_ideal(ideal: Submodule | Sequence) -> tuple:
    """Recover a from generators of m_a; any other ideal is unsupported."""
    if isinstance(ideal, Submodule):
        if ideal.rank != 1:
            raise UnsupportedPrime("expected an ideal (rank-1 module)")
        polys = [g[0] for g in ideal.generators]
    else:
        polys = [g[0] if isinstance(g, tuple) else g for g in ideal]
    rational = []
    for g in polys:
        if isinstance(g, QPoly):
            if any(g.comp[1:]):
                raise UnsupportedPrime("only rational maximal ideals m_a are supported")
            g = g.comp[0]
        rational.append((g,))
    if not rational:
        raise UnsupportedPrime("the zero ideal is not maximal")
    d = rational[0][0].nvars
    basis = Submodule("Q", d, 1, tuple(rational)).groebner
    zero = (0,) * d
    point = [None] * d
    for v in basis:
        lin = [e for (_, e) in v if e != zero]
        if len(lin) != 1 or sum(lin[0]) != 1:
            raise UnsupportedPrime("only rational maximal ideals m_a are supported")
        point[lin[0].index(1)] = -v.get((0, zero), Fraction(0))
    if len(basis) != d or None in point:
        raise UnsupportedPrime("only rational maximal ideals m_a are supported")
    return tuple(point)


def k_module(n: Submodule, at, order: str | None = None) -> Submodule:
    """K(N, m_a): the smallest m_a-prime submodule containing N.

    `at` is a rational point a, or generators of an ideal which must be m_a.
    Result: {m : m(a) in span{g(a)}} with the left H-span for H_c.
    """
    order = order or n.order
    if isinstance(at, Submodule) or any(isinstance(x, (Poly, QPoly, tuple)) for x in at):
        at = point_of_maximal_ideal(at)
    a = tuple(Fraction(x) for x in at)
    if len(a) != n.nvars:
        raise ValueError(f"point has {len(a)} coordinates, expected {n.nvars}")
    values = [evaluate_row(g, a) for g in n.generators]
    span = QuatSubspace.span("left", n.rank, [[Quaternion.coerce(x) for x in val] for val in values])
    rows = maximal_ideal_rows(a, n.ring, n.rank)
    rows.extend(_constant_row(w, n.ring, n.nvars) for w in span.basis)
    return Submodule(n.ring, n.nvars, n.rank, tuple(rows), order)


def restrict_scalars(n: Submodule) -> Submodule:
    """View an H_c-module of rank n as a Q[x]-module of rank 4n."""
    if n.ring != "Hc":
        raise ValueError("restrict_scalars needs an H_c module")
    return _rational(n)


def unfold_row(row: Sequence) -> tuple:
    """An H_c row as a rational row of 4x the length."""
    return vec_to_row(row_to_vec(row, "Hc"), "Q", len(row) * 4, row[0].nvars)


# ---------------------------------------------------------------------------
# Witness checks


def hermitian_combinations(tuples: Sequence[Sequence]) -> list[tuple]:
    """[sum_i f_{i,j}^* f_i for j = 1..n]."""
    if not tuples:
        raise ValueError("empty tuple")
    n = len(tuples[0])
    out = []
    for j in range(n):
        acc = None
        for f in tuples:
            c = f[j].star()
            term = tuple(c * x for x in f)
            acc = term if acc is None else tuple(p + q for p, q in zip(acc, term))
        out.append(acc)
    return out


@dataclass(frozen=True)
class WitnessVerdict:
    hypothesis: tuple  # per j: hermitian combination j is in N
    members: tuple  # per i: f_i in N
    verdict: str  # "real-violated" | "consistent" | "inapplicable"


def realness_witness_check(tuples: Sequence[Sequence], n: Submodule) -> WitnessVerdict:
    rows = [n._check(f) for f in tuples]
    hyp = tuple(n.member(h) for h in hermitian_combinations(rows))
    mem = tuple(n.member(f) for f in rows)
    if not all(hyp):
        verdict = "inapplicable"
    elif all(mem):
        verdict = "consistent"
    else:
        verdict = "real-violated"
    return WitnessVerdict(hyp, mem, verdict)


def semiprime_witness_check(f: Sequence, n: Submodule) -> str:
    """f_i A f in N for all i but f not in N witnesses that N is not semiprime."""
    f = n._check(f)
    units = [ONE] if n.ring == "Q" else list(BASIS)
    for x in f:
        for u in units:
            ux = x * (QPoly.from_quaternion(u, n.nvars) if n.ring == "Hc" else 1)
            if not n.member(tuple(ux * y for y in f)):
                return "inapplicable"
    return "consistent" if n.member(f) else "semiprime-violated"
