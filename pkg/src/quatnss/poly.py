"""Sparse polynomials over Q and over H with central variables (H_c[x])."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .quat import BASIS, I, J, K, Quaternion, UNITS

Exponent = tuple  # tuple[int, ...] of length nvars


# ---------------------------------------------------------------------------
# Monomial orders.  A key maps an exponent tuple to something whose natural
# ordering is the monomial order (larger key = larger monomial).

def degrevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


def deglex_key(e: Exponent):
    return (sum(e), e)


def lex_key(e: Exponent):
    return e


ORDERS: dict[str, Callable] = {
    "degrevlex": degrevlex_key,
    "deglex": deglex_key,
    "lex": lex_key,
}
DEFAULT_ORDER = "degrevlex"


def order_key(name: str) -> Callable:
    try:
        return ORDERS[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}; choose from {sorted(ORDERS)}") from None


def mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exponent, a: Exponent) -> Exponent:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_up_to(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of total degree <= degree, in increasing degrevlex order."""
    out = []

    def rec(prefix, left, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e, slots - 1)

    rec([], degree, nvars)
    out.sort(key=degrevlex_key)
    return out


class VariableCountError(ValueError):
    pass


def _check_nvars(f, g):
    if f.nvars != g.nvars:
        raise VariableCountError(f"variable count mismatch: {f.nvars} vs {g.nvars}")


# ---------------------------------------------------------------------------


class Poly:
    """Element of Q[x_1..x_d] stored as {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None, *, _trusted: bool = False):
        self.nvars = nvars
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for mono, c in (terms or {}).items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise VariableCountError(f"exponent {mono} has wrong length for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The variable x_{i+1} (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "Poly":
        return cls(len(e), {tuple(e): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, Poly):
            _check_nvars(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()}, _trusted=True)

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
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: c * v for m, v in self.terms.items()}, _trusted=True)

    def mul_term(self, e: Exponent, c: Fraction) -> "Poly":
        return Poly(self.nvars, {mono_mul(m, e): c * v for m, v in self.terms.items()}, _trusted=True)

    def star(self) -> "Poly":
        return self

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise VariableCountError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def sorted_terms(self, order: str = DEFAULT_ORDER) -> list:
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.nvars)
        if isinstance(other, QPoly):
            return other == self
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"


class QPoly:
    """Element of H_c[x] = H (x) Q[x] stored as four Poly components c1 + c2 i + c3 j + c4 k."""

    __slots__ = ("nvars", "comp", "_hash")

    def __init__(self, comp: Sequence[Poly]):
        comp = tuple(comp)
        if len(comp) != 4:
            raise ValueError("QPoly needs exactly four components")
        nv = comp[0].nvars
        for c in comp:
            if c.nvars != nv:
                raise VariableCountError("components disagree on variable count")
        self.nvars = nv
        self.comp = comp
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> "QPoly":
        z = Poly.zero(nvars)
        return cls((z, z, z, z))

    @classmethod
    def from_poly(cls, p: Poly) -> "QPoly":
        z = Poly.zero(p.nvars)
        return cls((p, z, z, z))

    @classmethod
    def from_quaternion(cls, q, nvars: int) -> "QPoly":
        q = Quaternion.coerce(q)
        return cls(tuple(Poly.constant(c, nvars) for c in q.components))

    @classmethod
    def var(cls, i: int, nvars: int) -> "QPoly":
        return cls.from_poly(Poly.var(i, nvars))

    @classmethod
    def coerce(cls, x, nvars: int) -> "QPoly":
        if isinstance(x, QPoly):
            return x
        if isinstance(x, Poly):
            return cls.from_poly(x)
        return cls.from_quaternion(x, nvars)

    def is_zero(self) -> bool:
        return not any(self.comp)

    def __bool__(self):
        return not self.is_zero()

    def degree(self) -> int:
        return max(c.degree() for c in self.comp)

    def scalar(self) -> Poly:
        return self.comp[0]

    def _coerce(self, other):
        if isinstance(other, QPoly):
            _check_nvars(self, other)
            return other
        if isinstance(other, Poly):
            _check_nvars(self, other)
            return QPoly.from_poly(other)
        if isinstance(other, (int, Fraction, Quaternion)):
            return QPoly.from_quaternion(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QPoly(tuple(a + b for a, b in zip(self.comp, other.comp)))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-a for a in self.comp))

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
        return _qmul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return _qmul(other, self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = QPoly.from_quaternion(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "QPoly":
        return QPoly(tuple(a.scale(c) for a in self.comp))

    def star(self) -> "QPoly":
        """Involution: conjugate coefficients, fix variables."""
        a, b, c, d = self.comp
        return QPoly((a, -b, -c, -d))

    def evaluate(self, point: Sequence) -> Quaternion:
        return Quaternion(*(c.evaluate(point) for c in self.comp))

    def decompose(self) -> tuple[Poly, Poly, Poly, Poly]:
        return self.comp

    def __eq__(self, other):
        if isinstance(other, (Poly, int, Fraction, Quaternion)):
            other = self._coerce(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.comp == other.comp

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.comp)
        return self._hash

    def __str__(self):
        return format_qpoly(self)

    def __repr__(self):
        return f"QPoly({format_qpoly(self)!r}, nvars={self.nvars})"


def _qmul(p: QPoly, q: QPoly) -> QPoly:
    a1, b1, c1, d1 = p.comp
    a2, b2, c2, d2 = q.comp
    return QPoly((
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ))


def decompose(f: QPoly, route: str = "direct") -> tuple[Poly, Poly, Poly, Poly]:
    """Split f into (c1, c2, c3, c4) with f = c1 + c2 i + c3 j + c4 k.

    route="two-sided" recovers each component by the coefficientwise
    two-sided formula (g - i g i - j g j - k g k)/4 with g = conj(e) f,
    never reading the stored components of f directly.
    """
    if route == "direct":
        return f.comp
    if route != "two-sided":
        raise ValueError(f"unknown route {route!r}")
    nv = f.nvars
    units = [QPoly.from_quaternion(u, nv) for u in (I, J, K)]
    out = []
    for e in BASIS:
        g = QPoly.from_quaternion(e.conjugate(), nv) * f
        s = g - units[0] * g * units[0] - units[1] * g * units[1] - units[2] * g * units[2]
        s = s.scale(Fraction(1, 4))
        assert not any(s.comp[1:])
        out.append(s.comp[0])
    return tuple(out)


def recompose(parts: Sequence[Poly]) -> QPoly:
    return QPoly(parts)


def evaluate(f, point: Sequence):
    return f.evaluate(point)


# ---------------------------------------------------------------------------
# Printing


def default_names(nvars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(nvars)]


def phi_names(d: int) -> list[str]:
    """Names y{i}_{c} for the 4d real coordinates of d quaternion variables."""
    return [f"y{i + 1}_{c + 1}" for i in range(d) for c in range(4)]


def format_monomial(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _coeff_str(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def _join_terms(items: Iterable[tuple[Fraction, list[str]]]) -> str:
    out = ""
    for c, factors in items:
        neg = c < 0
        mag = -c if neg else c
        if mag == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([_coeff_str(mag)] + factors)
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def format_poly(p: Poly, names: Sequence[str] | None = None, order: str = DEFAULT_ORDER) -> str:
    names = names or default_names(p.nvars)
    items = []
    for m, c in p.sorted_terms(order):
        mono = format_monomial(m, names)
        items.append((c, [mono] if mono else []))
    return _join_terms(items)


def format_qpoly(f: QPoly, names: Sequence[str] | None = None, order: str = DEFAULT_ORDER) -> str:
    names = names or default_names(f.nvars)
    key = order_key(order)
    monos = set()
    for c in f.comp:
        monos.update(c.terms)
    items = []
    for m in sorted(monos, key=key, reverse=True):
        mono = format_monomial(m, names)
        for u, comp in enumerate(f.comp):
            c = comp.terms.get(m)
            if c:
                factors = ([UNITS[u]] if u else []) + ([mono] if mono else [])
                items.append((c, factors))
    return _join_terms(items)
