"""Nullstellensatz harness: zero sets, vanishing modules, real-closure certificates, instance checks.

Everything runs at module level: a matrix generator over H[x] is transported
row by row through phi into H_c in 4d variables, and its points through rho.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .grammar import format_value, names_for
from .mring import (MatPoly, LeftIdeal, hermitian_square_sum, module_nvars, module_ring,
                    transport_point)
from .ncpoly import NCPoly, phi
from .poly import DEFAULT_ORDER, Poly, QPoly, decompose, monomials_up_to, order_key
from .quat import BASIS, QuatSubspace, Quaternion, annihilator
from .submod import (PointedFiber, Submodule, as_row, c_module, hermitian_combinations,
                     intersect_all, pair_at, unit_row)

PROVENANCE = ("fixture", "grid-search", "solver")


class SoundnessViolation(AssertionError):
    """An algebraically derived element fails to vanish on the zero set: a bug, never data."""


class CertificateError(ValueError):
    pass


class DecompositionError(ValueError):
    pass


class InconsistentZeroSet(ValueError):
    pass


def transport_row(row: Sequence, ring: str, nvars: int) -> tuple:
    """A row of the instance ring as a row of the module ring."""
    if ring == "H":
        return tuple(phi(x) if isinstance(x, NCPoly) else QPoly.coerce(x, 4 * nvars) for x in row)
    return as_row(row, module_ring(ring), nvars)


def row_degree(row: Sequence) -> int:
    return max((x.degree() for x in row), default=-1)


def _rows_of(items, ring: str, nvars: int) -> list[tuple]:
    out = []
    for it in items:
        rows = it.rows() if isinstance(it, MatPoly) else [it]
        out.extend(transport_row(r, ring, nvars) for r in rows)
    return out


# ---------------------------------------------------------------------------
# Zero sets


@dataclass(frozen=True)
class ZeroPair:
    point: tuple
    vector: tuple
    provenance: str = "fixture"


class ZeroSet:
    """Finite list of pairs (a, v) with v != 0; validated against generators when given."""

    def __init__(self, ring: str, nvars: int, n: int, pairs: Sequence = (), generators: Sequence = ()):
        self.ring, self.nvars, self.n = ring, nvars, n
        clean = []
        for p in pairs:
            if not isinstance(p, ZeroPair):
                p = ZeroPair(*p)
            if p.provenance not in PROVENANCE:
                raise ValueError(f"unknown provenance {p.provenance!r}")
            point = tuple(Quaternion.coerce(x) for x in p.point)
            vector = tuple(Quaternion.coerce(x) for x in p.vector)
            if len(point) != nvars or len(vector) != n:
                raise ValueError(f"pair {p} does not match d={nvars}, n={n}")
            if all(x.is_zero() for x in vector):
                raise ValueError("zero-set vectors must be nonzero")
            if ring != "H" and not all(x.is_real() for x in point):
                raise ValueError("points must be rational for this ring")
            if ring == "Q" and not all(x.is_real() for x in vector):
                raise ValueError("vectors must be rational for ring Q")
            clean.append(ZeroPair(point, vector, p.provenance))
        self.pairs = tuple(clean)
        if generators:
            self.validate(generators)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def fibers(self) -> list[PointedFiber]:
        mr = module_ring(self.ring)
        return [PointedFiber(transport_point(p.point, self.ring), p.vector, mr) for p in self.pairs]

    def annihilates(self, row: Sequence) -> bool:
        """<f(a), v> = 0 at every pair, for a row of the module ring."""
        return all(pair_at(row, fib).is_zero() for fib in self.fibers())

    def validate(self, generators: Sequence):
        rows = _rows_of(generators, self.ring, self.nvars)
        for fib, p in zip(self.fibers(), self.pairs):
            for r in rows:
                if not pair_at(r, fib).is_zero():
                    raise InconsistentZeroSet(
                        f"pair at {[str(x) for x in p.point]} does not annihilate generator "
                        f"{format_value(r)}")

    def extended(self, other: "ZeroSet") -> "ZeroSet":
        return ZeroSet(self.ring, self.nvars, self.n, self.pairs + other.pairs)


def vanishing_module(s: ZeroSet, order: str = DEFAULT_ORDER) -> Submodule:
    """J(S) = intersection of the C-modules of the pairs."""
    mr, mv = module_ring(s.ring), module_nvars(s.ring, s.nvars)
    if not s.pairs:
        warnings.warn("empty zero set: vanishing module is the full module", stacklevel=2)
        return Submodule.full(mr, mv, s.n, order)
    return intersect_all([c_module(f, order) for f in s.fibers()])


def rational_roots(p: Poly) -> list[Fraction]:
    """Rational roots of a univariate polynomial (rational root theorem)."""
    if p.nvars != 1:
        raise ValueError("rational_roots needs a univariate polynomial")
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    coeffs = {e[0]: c for e, c in p.terms.items()}
    low = min(coeffs)
    roots = {Fraction(0)} if low > 0 else set()
    lcm = 1
    for c in coeffs.values():
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = {k - low: int(c * lcm) for k, c in coeffs.items()}
    top = max(ints)
    if top == 0:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[top])
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if p.evaluate((cand,)) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _fiber_basis(rows: Sequence, point: tuple, n: int) -> list[tuple]:
    values = [[Quaternion.coerce(x.evaluate(point)) for x in r] for r in rows]
    return list(annihilator(QuatSubspace.span("left", n, values)).basis)


def _scan_points(generators, ring: str, nvars: int, n: int, points, provenance: str) -> ZeroSet:
    rows = _rows_of(generators, ring, nvars)
    pairs = []
    for pt in points:
        for v in _fiber_basis(rows, transport_point(pt, ring), n):
            pairs.append(ZeroPair(tuple(pt), v, provenance))
    return ZeroSet(ring, nvars, n, pairs)


def grid_zero_set(generators, ring: str, nvars: int, n: int, box: int = 1, denominator: int = 1) -> ZeroSet:
    """Zero-set pairs at the grid points p/q with q <= denominator and |p/q| <= box.

    For H[x] every quaternion component ranges over the grid.
    """
    vals = sorted({Fraction(p, q) for q in range(1, denominator + 1) for p in range(-box * q, box * q + 1)})
    if ring == "H":
        coord = [Quaternion(*c) for c in itertools.product(vals, repeat=4)]
    else:
        coord = [Quaternion(v) for v in vals]
    points = itertools.product(coord, repeat=nvars)
    return _scan_points(generators, ring, nvars, n, points, "grid-search")


def univariate_zero_set(generators, ring: str, n: int) -> ZeroSet:
    """For d = 1 over Q or H_c: test every rational root of every scalar entry component."""
    if ring == "H":
        raise ValueError("univariate root search is for the commutative rings")
    rows = _rows_of(generators, ring, 1)
    cands: set = set()
    for r in rows:
        for x in r:
            parts = (x,) if isinstance(x, Poly) else x.comp
            for p in parts:
                if not p.is_zero() and not p.is_constant():
                    cands.update(rational_roots(p))
    return _scan_points(generators, ring, 1, n, [(Quaternion(c),) for c in sorted(cands)], "solver")


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class Step:
    rows: tuple
    uses: tuple | None = None  # indices into generators + previously admitted rows; None = all


@dataclass(frozen=True)
class Certificate:
    steps: tuple
    target: tuple | None = None  # rows

    def format(self, names=None) -> str:
        lines = []
        for k, st in enumerate(self.steps):
            uses = "all prior" if st.uses is None else ",".join(map(str, st.uses))
            rows = ", ".join(format_value(r, names) for r in st.rows)
            lines.append(f"step {k + 1}: admit {rows} [uses {uses}]")
        if self.target is not None:
            lines.append("target: " + ", ".join(format_value(r, names) for r in self.target))
        return "\n".join(lines)


@dataclass
class CertificateVerdict:
    accepted: bool
    steps_ok: tuple
    target_member: bool | None
    module: Submodule
    reason: str = ""


def verify_certificate(cert: Certificate, generators, ring: str, n: int, nvars: int,
                       order: str = DEFAULT_ORDER) -> CertificateVerdict:
    """Replay each step; the hermitian combinations must lie in the module built so far."""
    mr, mv = module_ring(ring), module_nvars(ring, nvars)
    elements = _rows_of(generators, ring, nvars)
    module = Submodule(mr, mv, n, tuple(elements), order)
    oks = []
    for k, st in enumerate(cert.steps):
        if not st.rows:
            raise CertificateError(f"step {k + 1} is empty")
        rows = [transport_row(r, ring, nvars) for r in st.rows]
        if any(len(r) != n for r in rows):
            raise CertificateError(f"step {k + 1} has a row of the wrong length")
        if st.uses is None:
            base = module
        else:
            bad = [u for u in st.uses if not 0 <= u < len(elements)]
            if bad:
                raise CertificateError(f"step {k + 1} uses unknown elements {bad}")
            base = Submodule(mr, mv, n, tuple(elements[u] for u in st.uses), order)
        ok = all(base.member(h) for h in hermitian_combinations(rows))
        oks.append(ok)
        if not ok:
            return CertificateVerdict(False, tuple(oks), None, module,
                                      f"step {k + 1}: a hermitian combination is not a member")
        elements.extend(rows)
        module = module.extended(rows)
    target_ok = None
    if cert.target is not None:
        target_ok = all(module.member(transport_row(r, ring, nvars)) for r in cert.target)
    accepted = target_ok is not False
    return CertificateVerdict(accepted, tuple(oks), target_ok, module,
                              "" if accepted else "target is not in the derived module")


# ---------------------------------------------------------------------------
# Bounded closure


class Closure(NamedTuple):
    module: Submodule
    certificate: Certificate


def _normalize_hc(row: tuple) -> tuple:
    """Left unit multiple of an H_c row whose leading coefficient is a positive rational."""
    for x in row:
        if x.is_zero():
            continue
        lead = max((m for c in x.comp for m in c.terms), key=order_key(DEFAULT_ORDER))
        u = next(u for u in range(4) if x.comp[u].terms.get(lead))
        c = x.comp[u].terms[lead]
        scale = QPoly.from_quaternion(BASIS[u].conjugate() * (1 if c > 0 else -1), x.nvars)
        return tuple(scale * y for y in row)
    return row


def _row_key(row) -> tuple:
    return (row_degree(row), format_value(row))


def default_pool(gen_rows: Sequence, mr: str, n: int, mv: int, bound: int,
                 zero_set: ZeroSet | None = None, extra: Sequence = (), order: str = DEFAULT_ORDER) -> list:
    """Monomial multiples of the generators, the vanishing-module basis and monomial unit rows.

    Everything is cut at total degree `bound`; `extra` rows are added unconditionally.
    """
    monos = monomials_up_to(mv, bound)
    cands = []
    for g in gen_rows:
        dg = row_degree(g)
        for m in monos:
            if dg + sum(m) <= bound:
                mp = Poly.monomial(m) if mr == "Q" else QPoly.from_poly(Poly.monomial(m))
                cands.append(tuple(mp * x for x in g))
    if zero_set is not None and zero_set.pairs:
        for b in vanishing_module(zero_set, order).basis_rows():
            if row_degree(b) <= bound:
                cands.append(b)
    for m in monos:
        mp = Poly.monomial(m) if mr == "Q" else QPoly.from_poly(Poly.monomial(m))
        for j in range(n):
            e = unit_row(mr, n, mv, j)
            cands.append(tuple(mp * x for x in e))
    cands.extend(extra)
    if mr == "Hc":
        cands = [_normalize_hc(c) for c in cands]
    seen, out = set(), []
    for c in sorted(cands, key=_row_key):
        if all(x.is_zero() for x in c) or c in seen:
            continue
        seen.add(c)
        out.append(c)
    return out


def _vec_sum(vecs) -> dict:
    acc: dict = {}
    for v in vecs:
        for t, c in v.items():
            s = acc.get(t, 0) + c
            if s:
                acc[t] = s
            else:
                acc.pop(t, None)
    return acc


def _key(vecs, sign=1) -> tuple:
    return tuple(frozenset((t, sign * c) for t, c in v.items()) for v in vecs)


def _find_tuple(nfs: list, n: int, max_tuple: int):
    """Smallest (by size, then lexicographically) index tuple whose normal forms sum to zero.

    Sizes up to 4 are found by meeting in the middle over sums of at most two
    candidates; larger sizes fall back to enumeration.
    """
    count = len(nfs)
    zero = _key([{}] * n)
    singles = {}
    for i in range(count):
        singles.setdefault(_key(nfs[i]), []).append((i,))
    if max_tuple >= 1 and zero in singles:
        return singles[zero][0]
    if max_tuple < 2 or count < 2:
        return None
    pairs: dict = {}
    for a, b in itertools.combinations(range(count), 2):
        k = _key([_vec_sum((nfs[a][j], nfs[b][j])) for j in range(n)])
        pairs.setdefault(k, []).append((a, b))
    if zero in pairs:
        return pairs[zero][0]
    best = None
    if max_tuple >= 3:
        for i in range(count):
            for p in pairs.get(_key(nfs[i], -1), ()):
                if i not in p:
                    cand = tuple(sorted((i,) + p))
                    best = cand if best is None or cand < best else best
        if best is not None:
            return best
    if max_tuple >= 4:
        for k, plist in pairs.items():
            neg = tuple(frozenset((t, -c) for t, c in part) for part in k)
            for p in plist:
                for q in pairs.get(neg, ()):
                    if not set(p) & set(q):
                        cand = tuple(sorted(p + q))
                        best = cand if best is None or cand < best else best
        if best is not None:
            return best
    for size in range(5, min(max_tuple, count) + 1):
        for combo in itertools.combinations(range(count), size):
            if all(not _vec_sum(nfs[i][j] for i in combo) for j in range(n)):
                return combo
    return None


def real_closure_bounded(generators, ring: str, n: int, nvars: int, degree_bound: int = 2,
                         pool: Sequence | None = None, max_tuple: int = 4,
                         zero_set: ZeroSet | None = None, extra: Sequence = (),
                         order: str = DEFAULT_ORDER) -> Closure:
    """Sound under-approximation of the real radical.

    Repeatedly admits the first tuple (by size, then pool order) of
    non-members whose hermitian combinations all reduce to zero modulo the
    current module.  No completeness claim at any bound.
    """
    mr, mv = module_ring(ring), module_nvars(ring, nvars)
    gens = _rows_of(generators, ring, nvars)
    extra_rows = _rows_of(extra, ring, nvars)
    if pool is None:
        pool = default_pool(gens, mr, n, mv, degree_bound, zero_set, extra_rows, order)
    else:
        pool = sorted(set(_rows_of(pool, ring, nvars)), key=_row_key)
    module = Submodule(mr, mv, n, tuple(gens), order)
    count = len(gens)
    steps = []
    while True:
        live = [c for c in pool if not module.member(c)]
        if not live:
            break
        nfs = [[module.normal_form_vec(h) for h in hermitian_combinations([c])] for c in live]
        found = _find_tuple(nfs, n, max_tuple)
        if found is None:
            break
        rows = tuple(live[i] for i in found)
        steps.append(Step(rows, tuple(range(count))))
        count += len(rows)
        module = module.extended(rows)
    return Closure(module, Certificate(tuple(steps)))


# ---------------------------------------------------------------------------
# Instances


@dataclass
class Instance:
    name: str
    theorem: str
    ring: str
    nvars: int
    n: int
    generators: tuple  # MatPoly or rows, instance ring
    query: tuple  # rows, instance ring
    zero_set: ZeroSet
    certificate: Certificate | None = None
    degree_bound: int = 2
    max_tuple: int = 4
    known_radical: bool = False
    expect: dict = field(default_factory=dict)
    order: str = DEFAULT_ORDER
    note: str = ""

    @property
    def names(self) -> list[str]:
        mv = module_nvars(self.ring, self.nvars)
        return names_for(mv, "y" if self.ring == "H" else "x")


@dataclass
class Report:
    name: str
    theorem: str
    options: dict
    geometric: bool
    certificate_accepted: bool | None
    closure_member: bool
    algebraic: bool
    radical_equality: bool | None
    soundness_ok: bool
    expectations_met: bool
    consistent: bool
    status: str
    closure_certificate: str
    violations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "theorem": self.theorem,
            "options": self.options,
            "geometric": self.geometric,
            "certificate_accepted": self.certificate_accepted,
            "closure_member": self.closure_member,
            "algebraic": self.algebraic,
            "radical_equality": self.radical_equality,
            "soundness_ok": self.soundness_ok,
            "expectations_met": self.expectations_met,
            "consistent": self.consistent,
            "status": self.status,
            "closure_certificate": self.closure_certificate,
            "violations": self.violations,
        }

    def to_text(self) -> str:
        opts = " ".join(f"{k}={v}" for k, v in self.options.items())
        lines = [
            f"instance: {self.name} (theorem {self.theorem})",
            f"options: {opts}",
            f"geometric: {_yn(self.geometric)}",
            f"certificate: {'none' if self.certificate_accepted is None else _verdict(self.certificate_accepted)}",
            f"closure member: {_yn(self.closure_member)}",
            f"algebraic: {_yn(self.algebraic)}",
        ]
        if self.radical_equality is not None:
            lines.append(f"closure = vanishing module: {_yn(self.radical_equality)}")
        lines.append(f"soundness: {'ok' if self.soundness_ok else 'VIOLATED'}")
        lines.extend(f"  violation: {v}" for v in self.violations)
        lines.append(f"expectations: {'met' if self.expectations_met else 'NOT MET'}")
        lines.append(f"status: {self.status}")
        if self.closure_certificate:
            lines.append("closure certificate:")
            lines.extend("  " + s for s in self.closure_certificate.splitlines())
        lines.append(f"consistent: {_yn(self.consistent)}")
        return "\n".join(lines)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _verdict(b: bool) -> str:
    return "accepted" if b else "rejected"


def check_nullstellensatz_instance(inst: Instance, strict: bool = True,
                                   degree_bound: int | None = None, max_tuple: int | None = None) -> Report:
    bound = inst.degree_bound if degree_bound is None else degree_bound
    mt = inst.max_tuple if max_tuple is None else max_tuple
    s = inst.zero_set
    query = [transport_row(r, inst.ring, inst.nvars) for r in inst.query]

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        vm = vanishing_module(s, inst.order)
    geometric = all(vm.member(q) for q in query)
    direct = all(s.annihilates(q) for q in query)
    if geometric != direct:
        raise SoundnessViolation(f"{inst.name}: vanishing-module membership disagrees with evaluation")

    cert_ok = None
    violations = []
    if inst.certificate is not None:
        cert = inst.certificate
        if cert.target is None:
            cert = Certificate(cert.steps, tuple(inst.query))
        cv = verify_certificate(cert, inst.generators, inst.ring, inst.n, inst.nvars, inst.order)
        cert_ok = cv.accepted
        if cv.accepted:
            for st in cert.steps:
                for r in st.rows:
                    r = transport_row(r, inst.ring, inst.nvars)
                    if not s.annihilates(r):
                        violations.append(f"certificate row {format_value(r, inst.names)} does not vanish")

    closure = real_closure_bounded(inst.generators, inst.ring, inst.n, inst.nvars, bound,
                                   max_tuple=mt, zero_set=s, extra=inst.query, order=inst.order)
    closure_member = all(closure.module.member(q) for q in query)
    for st in closure.certificate.steps:
        for r in st.rows:
            if not s.annihilates(r):
                violations.append(f"admitted row {format_value(r, inst.names)} does not vanish")
    algebraic = bool(cert_ok) or closure_member
    if algebraic and not geometric:
        violations.append("query is algebraically derived but does not vanish on the zero set")
    soundness_ok = not violations
    if not soundness_ok and strict:
        raise SoundnessViolation(f"{inst.name}: " + "; ".join(violations))

    radical_eq = None
    if inst.known_radical:
        radical_eq = closure.module.same_as(vm)

    observed = {"geometric": geometric, "algebraic": algebraic, "certificate": cert_ok,
                "closure_member": closure_member}
    expectations_met = all(observed.get(k) == v for k, v in inst.expect.items())

    if not soundness_ok:
        status = "SOUNDNESS VIOLATION"
    elif geometric and algebraic:
        status = "confirmed: query vanishes and is derived"
    elif geometric:
        status = "closure bound insufficient or zero set incomplete"
    else:
        status = "query does not vanish on the zero set"
    consistent = soundness_ok and expectations_met and radical_eq is not False
    options = {"ring": inst.ring, "order": inst.order, "degree_bound": bound, "max_tuple": mt}
    return Report(inst.name, inst.theorem, options, geometric, cert_ok, closure_member, algebraic,
                  radical_eq, soundness_ok, expectations_met, consistent, status,
                  closure.certificate.format(inst.names), violations)


# ---------------------------------------------------------------------------
# Matrix-level witness checks


@dataclass(frozen=True)
class StrongWitnessVerdict:
    g_member: bool
    h_member: bool
    members: tuple
    pointwise: tuple  # per pair: (quadratic form vanishes, every F_i(a) v vanishes)
    verdict: str  # accept | hypothesis-failed | real-violated


def strongly_real_witness_check(tuples: Sequence[MatPoly], ideal: LeftIdeal, g: MatPoly, h: MatPoly,
                                zero_set: ZeroSet | None = None) -> StrongWitnessVerdict:
    """Check sum F_i^* F_i = G + H^*, then G, H in I, then each F_i in I."""
    if hermitian_square_sum(tuples) != g + h.star():
        raise DecompositionError("sum F_i^* F_i differs from G + H^*")
    gm, hm = ideal.contains(g), ideal.contains(h)
    members = tuple(ideal.contains(f) for f in tuples)
    pointwise = []
    if zero_set is not None:
        for p in zero_set.pairs:
            v = p.vector
            pt = p.point if g.ring == "H" else transport_point(p.point, g.ring)
            gv = g.evaluate(pt).apply(v)
            hv = h.evaluate(pt).apply(v)
            quad = sum((x.conjugate() * y for x, y in zip(v, gv)), Quaternion())
            quad = quad + sum((y.conjugate() * x for x, y in zip(v, hv)), Quaternion())
            vals = [f.evaluate(pt).apply(v) for f in tuples]
            norms = sum((x.norm() for fv in vals for x in fv), Fraction(0))
            if Quaternion(norms) != quad:
                raise DecompositionError("pointwise identity v* sum F_i^*F_i v = v*(G + H^*)v fails")
            pointwise.append((quad.is_zero(), all(x.is_zero() for fv in vals for x in fv)))
    if not (gm and hm):
        verdict = "hypothesis-failed"
    elif all(members):
        verdict = "accept"
    else:
        verdict = "real-violated"
    return StrongWitnessVerdict(gm, hm, members, tuple(pointwise), verdict)


@dataclass(frozen=True)
class TransferVerdict:
    hypothesis: bool
    scalar_identity: bool
    scalar_in_j: bool
    components: tuple  # per witness: (alpha, beta, gamma, delta) membership in the real module
    verdict: str  # accept | hypothesis-failed | incomplete


def reality_transfer(j_generators: Sequence[Poly], witnesses: Sequence[QPoly],
                              certificate: Certificate | None = None, nvars: int | None = None) -> TransferVerdict:
    """From sum w_s^* w_s in J H_c, conclude every component of every w_s lies in the real ideal.

    The ideal in which components are tested is J extended by `certificate`
    (which must replay against J), or J itself when no certificate is given.
    """
    if nvars is None:
        pool = list(j_generators) + list(witnesses)
        if not pool:
            raise ValueError("cannot infer the number of variables")
        nvars = pool[0].nvars
    jrows = tuple((g,) for g in j_generators)
    jq = Submodule("Q", nvars, 1, jrows)
    jh = Submodule("Hc", nvars, 1, tuple((QPoly.from_poly(g),) for g in j_generators))
    total = QPoly.zero(nvars)
    for w in witnesses:
        total = total + w.star() * w
    hypothesis = jh.member((total,))
    if not hypothesis:
        return TransferVerdict(False, False, False, (), "hypothesis-failed")
    parts = [decompose(w) for w in witnesses]
    squares = Poly.zero(nvars)
    for ps in parts:
        for p in ps:
            squares = squares + p * p
    scalar_identity = total.comp[0] == squares and not any(total.comp[1:])
    scalar_in_j = jq.member((total.comp[0],))
    real = jq
    if certificate is not None:
        cv = verify_certificate(certificate, jrows, "Q", 1, nvars)
        if not cv.accepted:
            raise CertificateError("certificate for J does not replay: " + cv.reason)
        real = cv.module
    comps = tuple(tuple(real.member((p,)) for p in ps) for ps in parts)
    ok = all(all(c) for c in comps)
    return TransferVerdict(True, scalar_identity, scalar_in_j, comps, "accept" if ok else "incomplete")
