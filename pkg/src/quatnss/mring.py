"""Matrix polynomials over Q[x], H_c[x] and H[x], and left ideals of M_n(A) as row modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ncpoly import NCPoly, phi, rho
from .poly import Poly, QPoly
from .quat import Quaternion, QuatMatrix
from .submod import Submodule, hermitian_combinations

MATRIX_RINGS = ("Q", "Hc", "H")


def entry_type(ring: str):
    return {"Q": Poly, "Hc": QPoly, "H": NCPoly}[ring]


def coerce_entry(x, ring: str, nvars: int):
    if ring == "Q":
        if isinstance(x, Poly):
            return x
        if isinstance(x, QPoly) and not any(x.comp[1:]):
            return x.comp[0]
        q = Quaternion.coerce(x)
        if not q.is_real():
            raise TypeError("quaternion entry in a rational matrix")
        return Poly.constant(q.a, nvars)
    if ring == "Hc":
        if isinstance(x, NCPoly):
            raise TypeError("noncommutative entry in an H_c matrix")
        return QPoly.coerce(x, nvars)
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (Poly, QPoly)):
        raise TypeError("commutative entry in an H[x] matrix")
    return NCPoly.constant(x, nvars)


@dataclass(frozen=True, eq=False)
class MatPoly:
    ring: str
    nvars: int
    entries: tuple  # row tuples

    def __post_init__(self):
        if self.ring not in MATRIX_RINGS:
            raise ValueError(f"ring must be one of {MATRIX_RINGS}, got {self.ring!r}")
        grid = tuple(tuple(coerce_entry(x, self.ring, self.nvars) for x in r) for r in self.entries)
        if grid and any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("ragged matrix")
        for r in grid:
            for x in r:
                if x.nvars != self.nvars:
                    raise ValueError(f"entry has {x.nvars} variables, expected {self.nvars}")
        object.__setattr__(self, "entries", grid)

    @classmethod
    def identity(cls, n: int, ring: str, nvars: int) -> "MatPoly":
        return cls(ring, nvars, tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: str, nvars: int) -> "MatPoly":
        return cls(ring, nvars, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def from_row(cls, row: Sequence, n_rows: int, ring: str, nvars: int) -> "MatPoly":
        """Square matrix whose first row is `row` and whose other rows are zero."""
        zero = (0,) * len(row)
        return cls(ring, nvars, (tuple(row),) + (zero,) * (n_rows - 1))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    @property
    def n(self) -> int:
        r, c = self.shape
        if r != c:
            raise ValueError(f"matrix of shape {r}x{c} is not square")
        return r

    def rows(self) -> list[tuple]:
        return list(self.entries)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def _compatible(self, other: "MatPoly"):
        if (self.ring, self.nvars) != (other.ring, other.nvars):
            raise ValueError("matrices over different rings")

    def __add__(self, other: "MatPoly") -> "MatPoly":
        self._compatible(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return MatPoly(self.ring, self.nvars, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatPoly":
        return MatPoly(self.ring, self.nvars, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        return self + (-other)

    def __mul__(self, other: "MatPoly") -> "MatPoly":
        self._compatible(other)
        (r1, c1), (r2, c2) = self.shape, other.shape
        if c1 != r2:
            raise ValueError("shape mismatch")
        zero = coerce_entry(0, self.ring, self.nvars)
        out = []
        for r in range(r1):
            row = []
            for c in range(c2):
                acc = zero
                for k in range(c1):
                    acc = acc + self.entries[r][k] * other.entries[k][c]
                row.append(acc)
            out.append(tuple(row))
        return MatPoly(self.ring, self.nvars, tuple(out))

    def star(self) -> "MatPoly":
        """Conjugate transpose [a_ij]* = [a_ji*]."""
        r, c = self.shape
        return MatPoly(self.ring, self.nvars, tuple(
            tuple(self.entries[i][j].star() for i in range(r)) for j in range(c)))

    def evaluate(self, point: Sequence) -> QuatMatrix:
        return QuatMatrix.from_rows([[Quaternion.coerce(x.evaluate(point)) for x in r] for r in self.entries])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return (self.ring, self.nvars) == (other.ring, other.nvars) and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.nvars, self.entries))

    def __str__(self):
        from .grammar import format_matrix
        return format_matrix(self)

    def __repr__(self):
        return f"MatPoly({self.ring!r}, {str(self)!r})"


def mat_evaluate(p: MatPoly, point: Sequence, v: Sequence) -> tuple:
    """P(a) v as a tuple of quaternions."""
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    return p.evaluate(point).apply(v)


def phi_n(f: MatPoly) -> MatPoly:
    """Entrywise phi: M_n(H[x_1..x_d]) -> M_n(H_c[y_{1,1}..y_{d,4}])."""
    if f.ring != "H":
        raise ValueError("phi_n needs an H[x] matrix")
    return MatPoly("Hc", 4 * f.nvars, tuple(tuple(phi(x) for x in r) for r in f.entries))


def module_ring(ring: str) -> str:
    return "Q" if ring == "Q" else "Hc"


def module_nvars(ring: str, nvars: int) -> int:
    return 4 * nvars if ring == "H" else nvars


def transport(f: MatPoly) -> MatPoly:
    """Matrices over H[x] go through phi_n; others are returned unchanged."""
    return phi_n(f) if f.ring == "H" else f


def transport_point(point: Sequence, ring: str) -> tuple:
    if ring == "H":
        return rho(point)
    return tuple(Fraction(Quaternion.coerce(x).a) if Quaternion.coerce(x).is_real() else _bad_point(x)
                 for x in point)


def _bad_point(x):
    raise ValueError(f"point coordinate {x} must be rational for this ring")


@dataclass(frozen=True, eq=False)
class LeftIdeal:
    """Left ideal of M_n(A) stored as the row submodule N of A^n (through phi for H[x])."""

    ring: str
    nvars: int
    n: int
    module: Submodule

    def contains(self, p: MatPoly) -> bool:
        if p.shape[1] != self.n:
            raise ValueError("matrix width does not match the ideal")
        return all(self.module.member(r) for r in transport(p).rows())

    __contains__ = contains

    def row_member(self, row: Sequence) -> bool:
        if self.ring == "H":
            row = tuple(phi(x) for x in row)
        return self.module.member(row)


def ideal_of_rows(mats: Sequence[MatPoly], ring: str | None = None, nvars: int | None = None,
                  n: int | None = None, order: str = "degrevlex") -> LeftIdeal:
    if mats:
        ring = mats[0].ring
        nvars = mats[0].nvars
        n = mats[0].shape[1]
        for m in mats:
            if (m.ring, m.nvars, m.shape[1]) != (ring, nvars, n):
                raise ValueError("matrices disagree on ring or size")
    if ring is None or nvars is None or n is None:
        raise ValueError("ring, nvars and n are required when no matrices are given")
    rows = [r for m in mats for r in transport(m).rows()]
    mod = Submodule(module_ring(ring), module_nvars(ring, nvars), n, tuple(rows), order)
    return LeftIdeal(ring, nvars, n, mod)


def hermitian_square_rows(mats: Sequence[MatPoly]) -> list[tuple]:
    """For each k, sum_{i,j} a*_{i,j,k} a_{i,j} over the rows a_{i,j} of the A_i.

    These are the rows of sum_i A_i^* A_i.
    """
    rows = [r for m in mats for r in m.rows()]
    return hermitian_combinations(rows)


def hermitian_square_sum(mats: Sequence[MatPoly]) -> MatPoly:
    acc = None
    for m in mats:
        t = m.star() * m
        acc = t if acc is None else acc + t
    return acc


def first_row_lifts(rows: Sequence[Sequence], ring: str, nvars: int) -> list[MatPoly]:
    """F_i: the square matrix with first row f_i and zeros elsewhere."""
    n = len(rows[0])
    return [MatPoly.from_row(r, n, ring, nvars) for r in rows]
