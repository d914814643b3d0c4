"""Exact quaternions over Q and linear algebra over the skew field H."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

UNITS = ("1", "i", "j", "k")

# UNIT_TABLE[a][b] = (sign, c) with e_a * e_b = sign * e_c, basis order (1, i, j, k).
UNIT_TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class Quaternion:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @classmethod
    def unit(cls, index: int) -> "Quaternion":
        comps = [0, 0, 0, 0]
        comps[index] = 1
        return cls(*comps)

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        return cls(_frac(x))

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_real(self) -> bool:
        return not (self.b or self.c or self.d)

    def __add__(self, other):
        other = _maybe_quat(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        other = _maybe_quat(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _maybe_quat(other)
        if other is NotImplemented:
            return other
        return quat_mul(self, other)

    def __rmul__(self, other):
        other = _maybe_quat(other)
        if other is NotImplemented:
            return other
        return quat_mul(other, self)

    def __truediv__(self, other):
        other = _maybe_quat(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        return Quaternion(self.a / n, -self.b / n, -self.c / n, -self.d / n)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_quaternion(self)

    def __repr__(self):
        return f"Quaternion({format_quaternion(self)!r})"


def _maybe_quat(x):
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, Fraction)):
        return Quaternion(x)
    return NotImplemented


ZERO = Quaternion()
ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)
BASIS = (ONE, I, J, K)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product with ij = k."""
    a1, b1, c1, d1 = p.a, p.b, p.c, p.d
    a2, b2, c2, d2 = q.a, q.b, q.c, q.d
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def scalar_part(w: Quaternion) -> Fraction:
    """(w - i w i - j w j - k w k) / 4, using ring operations only."""
    s = w - I * w * I - J * w * J - K * w * K
    assert s.is_real()
    return s.a / 4


def component_extract(w: Quaternion, index: int) -> Fraction:
    """Coefficient of the index-th basis element (1-based, order 1, i, j, k).

    Only two-sided products u*w*v are used: component e of w is the scalar part
    of conj(e)*w, and the scalar part itself comes from the sum above.
    """
    if not 1 <= index <= 4:
        raise ValueError(f"component index must be in 1..4, got {index}")
    e = BASIS[index - 1]
    return scalar_part(e.conjugate() * w)


def format_quaternion(q: Quaternion) -> str:
    parts = []
    for coeff, unit in zip(q.components, UNITS):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        if unit == "1":
            body = str(mag)
        elif mag == 1:
            body = unit
        else:
            body = f"{mag}*{unit}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Matrices and subspaces

Vector = tuple  # tuple[Quaternion, ...]


@dataclass(frozen=True)
class QuatMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Quaternion

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry grid does not match declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QuatMatrix":
        grid = tuple(tuple(Quaternion.coerce(x) for x in r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QuatMatrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls(n, n, tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n)))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, r: int) -> Vector:
        return self.entries[r]

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self.entries)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QuatMatrix(self.rows, self.cols, tuple(
            tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __mul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.column(c) for c in range(other.cols)]
        return QuatMatrix(self.rows, other.cols, tuple(
            tuple(_dot(r, col) for col in cols) for r in self.entries))

    def apply(self, v: Sequence) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        v = tuple(Quaternion.coerce(x) for x in v)
        return tuple(_dot(r, v) for r in self.entries)

    def conjugate_transpose(self) -> "QuatMatrix":
        return QuatMatrix(self.cols, self.rows, tuple(
            tuple(self.entries[r][c].conjugate() for r in range(self.rows)) for c in range(self.cols)))

    star = conjugate_transpose

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.entries) + "]"


def _dot(row: Sequence[Quaternion], col: Sequence[Quaternion]) -> Quaternion:
    acc = ZERO
    for x, y in zip(row, col):
        if x and y:
            acc = acc + x * y
    return acc


def pairing(s: Sequence, m: Sequence) -> Quaternion:
    """<s, m> = sum s_i m_i with s on the left."""
    return _dot([Quaternion.coerce(x) for x in s], [Quaternion.coerce(x) for x in m])


@dataclass(frozen=True)
class RowOp:
    kind: str  # "scale": row <- scalar*row ; "addmul": row <- row + scalar*src ; "swap"
    row: int
    scalar: Quaternion = ONE
    src: int = -1


@dataclass(frozen=True)
class Reduction:
    echelon: QuatMatrix
    rank: int
    pivots: tuple
    side: str
    ops: tuple = field(repr=False)
    transform: QuatMatrix = field(repr=False)

    def replay(self, m: QuatMatrix) -> QuatMatrix:
        """Apply the recorded elementary operations to `m`."""
        if self.side == "left":
            return _replay_left(self.ops, m)
        # right-side ops were recorded as left ops on the conjugate transpose
        return _replay_left(self.ops, m.conjugate_transpose()).conjugate_transpose()


def _replay_left(ops, m: QuatMatrix) -> QuatMatrix:
    rows = [list(r) for r in m.entries]
    for op in ops:
        _apply_op(rows, op)
    return QuatMatrix(m.rows, m.cols, tuple(tuple(r) for r in rows))


def _apply_op(rows, op: RowOp):
    if op.kind == "swap":
        rows[op.row], rows[op.src] = rows[op.src], rows[op.row]
    elif op.kind == "scale":
        rows[op.row] = [op.scalar * x for x in rows[op.row]]
    else:
        src = rows[op.src]
        rows[op.row] = [x + op.scalar * y for x, y in zip(rows[op.row], src)]


def _left_reduce(m: QuatMatrix):
    rows = [list(r) for r in m.entries]
    ops = []
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            op = RowOp("swap", r, src=p)
            _apply_op(rows, op)
            ops.append(op)
        inv = rows[r][c].inverse()
        if inv != ONE:
            op = RowOp("scale", r, inv)
            _apply_op(rows, op)
            ops.append(op)
        for i in range(m.rows):
            if i != r and rows[i][c]:
                op = RowOp("addmul", i, -rows[i][c], r)
                _apply_op(rows, op)
                ops.append(op)
        pivots.append(c)
        r += 1
    ech = QuatMatrix(m.rows, m.cols, tuple(tuple(x) for x in rows))
    return ech, len(pivots), tuple(pivots), tuple(ops)


def row_reduce(m: QuatMatrix, side: str = "left") -> Reduction:
    """Reduced echelon form over H.

    side="left" reduces rows with left multiplications (left row space);
    side="right" reduces columns with right multiplications (right column
    space), done as the conjugate transpose of a left reduction.
    """
    if side == "left":
        ech, rank, piv, ops = _left_reduce(m)
        transform = _replay_left(ops, QuatMatrix.identity(m.rows))
        return Reduction(ech, rank, piv, side, ops, transform)
    if side == "right":
        ech, rank, piv, ops = _left_reduce(m.conjugate_transpose())
        transform = _replay_left(ops, QuatMatrix.identity(m.cols)).conjugate_transpose()
        return Reduction(ech.conjugate_transpose(), rank, piv, side, ops, transform)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class QuatSubspace:
    """Left span of row vectors or right span of column vectors in H^m.

    The basis is kept in reduced echelon form, so equal subspaces compare equal.
    """

    side: str
    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, side: str, ambient_dim: int, vectors: Iterable[Sequence]) -> "QuatSubspace":
        vecs = [tuple(Quaternion.coerce(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if not vecs:
            return cls(side, ambient_dim, ())
        if side == "left":
            ech, rank, _, _ = _left_reduce(QuatMatrix.from_rows(vecs, ambient_dim))
            basis = ech.entries[:rank]
        elif side == "right":
            conj_rows = [tuple(x.conjugate() for x in v) for v in vecs]
            ech, rank, _, _ = _left_reduce(QuatMatrix.from_rows(conj_rows, ambient_dim))
            basis = tuple(tuple(x.conjugate() for x in r) for r in ech.entries[:rank])
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return cls(side, ambient_dim, tuple(basis))

    @classmethod
    def full(cls, side: str, m: int) -> "QuatSubspace":
        return cls.span(side, m, QuatMatrix.identity(m).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        v = tuple(Quaternion.coerce(x) for x in v)
        return QuatSubspace.span(self.side, self.ambient_dim, self.basis + (v,)).dim == self.dim


def annihilator(s: QuatSubspace) -> QuatSubspace:
    """S -> S° for a left subspace, T -> T_∘ for a right subspace."""
    m = s.ambient_dim
    if s.side == "left":
        return QuatSubspace.span("right", m, _right_kernel(s.basis, m))
    # T_∘ = {w : sum w_i t_i = 0}; conjugating gives sum conj(t_i) conj(w_i) = 0.
    conj_basis = [tuple(x.conjugate() for x in t) for t in s.basis]
    kernel = _right_kernel(conj_basis, m)
    return QuatSubspace.span("left", m, [tuple(x.conjugate() for x in w) for w in kernel])


def _right_kernel(rows, m: int) -> list:
    """Basis of {x column : sum_j r_j x_j = 0 for every row r} (a right subspace)."""
    if not rows:
        return [tuple(QuatMatrix.identity(m).entries[c]) for c in range(m)]
    ech, rank, pivots, _ = _left_reduce(QuatMatrix.from_rows(rows, m))
    free = [c for c in range(m) if c not in pivots]
    out = []
    for f in free:
        x = [ZERO] * m
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -ech.entries[r][f]
        out.append(tuple(x))
    return out


@dataclass(frozen=True)
class SolutionSet:
    consistent: bool
    particular: tuple | None
    nullspace: QuatSubspace


def solve_linear(a: QuatMatrix, b: Sequence) -> SolutionSet:
    """Solve A x = b for a column x over H."""
    if len(b) != a.rows:
        raise ValueError("right-hand side has wrong length")
    aug = QuatMatrix.from_rows([tuple(r) + (Quaternion.coerce(bi),) for r, bi in zip(a.entries, b)],
                               a.cols + 1)
    ech, rank, pivots, _ = _left_reduce(aug)
    null = QuatSubspace.span("right", a.cols, _right_kernel(a.entries, a.cols)) if a.rows else \
        QuatSubspace.full("right", a.cols)
    if pivots and pivots[-1] == a.cols:
        return SolutionSet(False, None, null)
    x = [ZERO] * a.cols
    for r, p in enumerate(pivots):
        x[p] = ech.entries[r][a.cols]
    return SolutionSet(True, tuple(x), null)


def rank(m: QuatMatrix) -> int:
    return _left_reduce(m)[1]
