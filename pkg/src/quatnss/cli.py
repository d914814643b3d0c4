"""Command-line front end.

Exit codes: 0 success or consistent, 1 mathematical refutation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .grammar import ParseError, format_value, names_for, parse, parse_point
from .instances import InstanceError, instance_files, load_instance
from .mring import MatPoly, module_nvars, module_ring, phi_n
from .ncpoly import NCPoly, nc_conjugate, phi
from .nss import (Certificate, CertificateError, InconsistentZeroSet, SoundnessViolation,
                  check_nullstellensatz_instance, real_closure_bounded, transport_row,
                  verify_certificate)
from .poly import ORDERS, Poly, QPoly, VariableCountError
from .quat import Quaternion, format_quaternion
from .submod import PointedFiber, RankMismatch, Submodule, UnsupportedPrime, c_module, k_module

OK, REFUTED, INPUT_ERROR = 0, 1, 2
INPUT_ERRORS = (ParseError, InstanceError, RankMismatch, VariableCountError, InconsistentZeroSet,
                CertificateError, UnsupportedPrime, OSError, TypeError, ValueError)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Parsing helpers


def _nvars_of(v) -> int:
    if isinstance(v, tuple):
        return max((x.nvars for x in v), default=0)
    return v.nvars


def _is_quaternionic(v) -> bool:
    if isinstance(v, MatPoly):
        return v.ring != "Q"
    if isinstance(v, tuple):
        return any(isinstance(x, (QPoly, NCPoly)) for x in v)
    return isinstance(v, (QPoly, NCPoly))


def parse_all(texts, ring: str, nvars: int | None):
    """Parse several expressions into one ring with a common number of variables."""
    first = [parse(t, ring, nvars) for t in texts]
    if ring == "auto":
        ring = "Hc" if any(_is_quaternionic(v) for v in first) else "Q"
    if nvars is None:
        nvars = max((_nvars_of(v) for v in first), default=0)
    return [parse(t, ring, nvars) for t in texts], ring, nvars


def _rows(v) -> list[tuple]:
    if isinstance(v, MatPoly):
        return v.rows()
    if isinstance(v, tuple):
        return [v]
    return [(v,)]


def _module_from(texts, ring: str, nvars: int | None, order: str):
    values, ring, nvars = parse_all(texts, ring, nvars)
    mod, rows = _module_of(values, ring, nvars, order)
    return mod, ring, nvars, rows


def _module_of(values, ring: str, nvars: int, order: str):
    rows = [r for v in values for r in _rows(v)]
    if not rows:
        raise UsageError("no generators given")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise RankMismatch("generators have different lengths")
    mrows = [transport_row(r, ring, nvars) for r in rows]
    mod = Submodule(module_ring(ring), module_nvars(ring, nvars), n, tuple(mrows), order)
    return mod, rows


def _names(ring: str, nvars: int) -> list[str]:
    return names_for(module_nvars(ring, nvars), "y" if ring == "H" else "x")


# ---------------------------------------------------------------------------
# Output


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None):
        self.data[key] = value
        self.lines.append(f"{key}: {value if text is None else text}")

    def line(self, s: str):
        self.lines.append(s)

    def flush(self):
        if self.fmt == "json":
            self.stream.write(json.dumps(self.data, indent=2, sort_keys=True) + "\n")
        else:
            self.stream.write("\n".join(self.lines) + "\n")


def _echo(out: Out, args, *keys):
    opts = {k: getattr(args, k) for k in keys}
    out.data["options"] = opts
    out.lines.append("options: " + " ".join(f"{k}={v}" for k, v in opts.items()))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_eval(args, out: Out) -> int:
    expr = parse(args.expr, args.ring, args.nvars)
    point = parse_point(args.at)
    _echo(out, args, "ring")
    if isinstance(expr, (MatPoly, tuple)):
        m = expr if isinstance(expr, MatPoly) else MatPoly(_ring_of(expr), _nvars_of(expr), (expr,))
        if m.ring != "H":
            point = _rational_point(point)
        if args.vector:
            vals = m.evaluate(point).apply(parse_point(args.vector))
            out.put("value", "(" + ", ".join(format_quaternion(q) for q in vals) + ")")
        else:
            ev = m.evaluate(point)
            if isinstance(expr, tuple):
                out.put("value", "(" + ", ".join(format_quaternion(q) for q in ev.entries[0]) + ")")
            else:
                out.put("value", "[" + "; ".join(", ".join(format_quaternion(q) for q in r)
                                                 for r in ev.entries) + "]")
        return OK
    if not isinstance(expr, NCPoly):
        point = _rational_point(point)
    val = expr.evaluate(point)
    out.put("value", format_quaternion(Quaternion.coerce(val)))
    return OK


def _rational_point(point) -> tuple:
    if not all(q.is_real() for q in point):
        raise UsageError("commuting variables need a rational point")
    return tuple(q.a for q in point)


def _ring_of(row) -> str:
    x = row[0]
    return "Q" if isinstance(x, Poly) else "Hc" if isinstance(x, QPoly) else "H"


def cmd_member(args, out: Out) -> int:
    values, ring, nvars = parse_all(args.generators + [args.element], args.ring, args.nvars)
    mod, _ = _module_of(values[:-1], ring, nvars, args.order)
    elems = [transport_row(r, ring, nvars) for r in _rows(values[-1])]
    _echo(out, args, "ring", "order")
    ok = all(mod.member(e) for e in elems)
    out.put("member", ok, "member" if ok else "not a member")
    return OK if ok else REFUTED


def cmd_groebner(args, out: Out) -> int:
    mod, ring, nvars, _ = _module_from(args.generators, args.ring, args.nvars, args.order)
    _echo(out, args, "ring", "order")
    names = _names(ring, nvars)
    basis = [format_value(r, names) for r in mod.basis_rows()]
    out.data["basis"] = basis
    out.line("basis:")
    for b in basis:
        out.line("  " + b)
    if mod.ring == "Hc":
        rational = mod.format_groebner(names).splitlines()
        out.data["restricted_basis"] = rational
        out.line("restricted basis:")
        for b in rational:
            out.line("  " + b)
    return OK


def _ring_for_points(ring: str, vector) -> str:
    if ring == "auto":
        return "Q" if all(q.is_real() for q in vector) else "Hc"
    if ring == "H":
        raise UsageError("point constructions work over Q or Hc; transport H[x] data with phi first")
    return ring


def cmd_cmodule(args, out: Out) -> int:
    point, vector = parse_point(args.at), parse_point(args.vector)
    if not all(q.is_real() for q in point):
        raise UsageError("the point must be rational")
    ring = _ring_for_points(args.ring, vector)
    mod = c_module(PointedFiber(tuple(q.a for q in point), vector, ring), args.order)
    args.ring = ring
    _echo(out, args, "ring", "order")
    names = _names(ring, len(point))
    basis = [format_value(r, names) for r in mod.basis_rows()]
    out.data["basis"] = basis
    out.line("basis:")
    for b in basis:
        out.line("  " + b)
    return OK


def cmd_kmodule(args, out: Out) -> int:
    mod, ring, nvars, _ = _module_from(args.generators, args.ring, args.nvars, args.order)
    if ring == "H":
        raise UsageError("kmodule works over Q or Hc")
    point = parse_point(args.at)
    if not all(q.is_real() for q in point):
        raise UsageError("the point must be rational")
    k = k_module(mod, tuple(q.a for q in point), args.order)
    _echo(out, args, "ring", "order")
    basis = [format_value(r, _names(ring, nvars)) for r in k.basis_rows()]
    out.data["basis"] = basis
    out.line("basis:")
    for b in basis:
        out.line("  " + b)
    return OK


def cmd_closure(args, out: Out) -> int:
    if args.instance:
        inst = load_instance(args.instance)
        gens, ring, nvars, n, zs, extra = (inst.generators, inst.ring, inst.nvars, inst.n,
                                           inst.zero_set, inst.query)
        bound, max_tuple = inst.degree_bound, inst.max_tuple
    else:
        mod, ring, nvars, rows = _module_from(args.generators, args.ring, args.nvars, args.order)
        gens, n, zs, extra = rows, mod.rank, None, ()
        bound, max_tuple = 2, 4
    args.ring = ring
    args.bound = bound if args.bound is None else args.bound
    args.max_tuple = max_tuple if args.max_tuple is None else args.max_tuple
    res = real_closure_bounded(gens, ring, n, nvars, args.bound, max_tuple=args.max_tuple,
                               zero_set=zs, extra=extra, order=args.order)
    _echo(out, args, "ring", "order", "bound", "max_tuple")
    names = _names(ring, nvars)
    basis = [format_value(r, names) for r in res.module.basis_rows()]
    out.data["basis"] = basis
    out.line("closure basis:")
    for b in basis:
        out.line("  " + b)
    cert = res.certificate.format(names)
    out.data["certificate"] = cert.splitlines()
    out.line("certificate:")
    for s in cert.splitlines() or ["(no steps)"]:
        out.line("  " + s)
    return OK


def cmd_verify_cert(args, out: Out) -> int:
    inst = load_instance(args.instance)
    if inst.certificate is None:
        raise UsageError(f"{args.instance} has no certificate")
    cert = inst.certificate
    if cert.target is None:
        cert = Certificate(cert.steps, tuple(inst.query))
    v = verify_certificate(cert, inst.generators, inst.ring, inst.n, inst.nvars, args.order)
    _echo(out, args, "order")
    out.put("steps", list(v.steps_ok), " ".join("ok" if s else "FAILED" for s in v.steps_ok))
    out.put("target_member", v.target_member)
    out.put("accepted", v.accepted, "accepted" if v.accepted else f"rejected ({v.reason})")
    return OK if v.accepted else REFUTED


def _check_one(path: str, bound, max_tuple) -> tuple[str, dict, str]:
    inst = load_instance(path)
    rep = check_nullstellensatz_instance(inst, strict=False, degree_bound=bound, max_tuple=max_tuple)
    return path, rep.to_dict(), rep.to_text()


def cmd_check_instance(args, out: Out) -> int:
    if args.all:
        paths = [str(p) for p in instance_files(args.all)]
        if not paths:
            raise UsageError(f"no instance files in {args.all}")
    elif args.instance:
        paths = [args.instance]
    else:
        raise UsageError("give an instance file or --all DIR")
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_check_one, paths, [args.bound] * len(paths), [args.max_tuple] * len(paths)))
    else:
        results = [_check_one(p, args.bound, args.max_tuple) for p in paths]
    consistent = all(d["consistent"] for _, d, _ in results)
    if out.fmt == "json":
        out.data = {"reports": [d for _, d, _ in results], "consistent": consistent}
    else:
        out.lines = ["\n".join(t for _, _, t in results)]
        if len(results) > 1:
            good = sum(d["consistent"] for _, d, _ in results)
            out.lines.append(f"summary: {good}/{len(results)} consistent")
    return OK if consistent else REFUTED


def cmd_phi(args, out: Out) -> int:
    v = parse(args.expr, "H", args.nvars)
    args.ring = "H"
    _echo(out, args, "ring")
    if isinstance(v, MatPoly):
        img = phi_n(v)
        text = format_value(img, names_for(img.nvars, "y"))
    elif isinstance(v, tuple):
        img = tuple(phi(x) for x in v)
        text = format_value(img, names_for(img[0].nvars, "y"))
    else:
        img = phi(v)
        text = format_value(img, names_for(img.nvars, "y"))
    out.put("phi", text)
    return OK


def cmd_conj(args, out: Out) -> int:
    v = parse(args.expr, args.ring, args.nvars)
    _echo(out, args, "ring")
    if isinstance(v, tuple):
        img = tuple(x.star() for x in v)
    elif isinstance(v, NCPoly):
        img = nc_conjugate(v)
    else:
        img = v.star()
    out.put("conjugate", format_value(img))
    return OK


# ---------------------------------------------------------------------------


class _Formatter(argparse.ArgumentDefaultsHelpFormatter):
    def _get_help_string(self, action):
        if action.default is None:
            return action.help
        return super()._get_help_string(action)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Formatter
    common = argparse.ArgumentParser(add_help=False, formatter_class=fmt)
    common.add_argument("--ring", choices=["auto", "Q", "Hc", "H"], default="auto",
                        help="coefficient ring; auto picks Q or Hc from the input")
    common.add_argument("--nvars", type=int, default=None, help="number of variables, inferred when omitted")
    common.add_argument("--order", choices=sorted(ORDERS), default="degrevlex", help="monomial order")
    common.add_argument("--bound", type=int, default=None, help="closure degree bound: the instance value, else 2")
    common.add_argument("--max-tuple", type=int, default=None, help="largest tuple tried per closure step: the instance value, else 4")
    common.add_argument("--format", choices=["text", "json"], default="text", help="output format")

    p = argparse.ArgumentParser(prog="quatnss", description="Exact real and quaternionic Nullstellensatz toolkit",
                                formatter_class=fmt)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, formatter_class=fmt)
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "evaluate an expression at a point")
    sp.add_argument("expr")
    sp.add_argument("--at", required=True, help="comma-separated quaternion coordinates")
    sp.add_argument("--vector", default=None, help="apply a matrix value to this vector")

    sp = add("member", cmd_member, "module membership of a row (all rows of a matrix)")
    sp.add_argument("element")
    sp.add_argument("generators", nargs="+")

    sp = add("groebner", cmd_groebner, "reduced Groebner basis of the row module")
    sp.add_argument("generators", nargs="+")

    sp = add("cmodule", cmd_cmodule, "C-module {f : <f(a), v> = 0}")
    sp.add_argument("--at", required=True)
    sp.add_argument("--vector", required=True)

    sp = add("kmodule", cmd_kmodule, "smallest m_a-prime submodule containing the generators")
    sp.add_argument("generators", nargs="+")
    sp.add_argument("--at", required=True)

    sp = add("closure", cmd_closure, "bounded real closure with certificate")
    sp.add_argument("generators", nargs="*")
    sp.add_argument("--instance", default=None)

    sp = add("verify-cert", cmd_verify_cert, "replay the certificate stored in an instance file")
    sp.add_argument("instance")

    sp = add("check-instance", cmd_check_instance, "run the Nullstellensatz harness on instance files")
    sp.add_argument("instance", nargs="?")
    sp.add_argument("--all", metavar="DIR", default=None)
    sp.add_argument("--jobs", type=int, default=1, help="parallel workers for --all")

    sp = add("phi", cmd_phi, "image of an H[x] expression under phi")
    sp.add_argument("expr")

    sp = add("conj", cmd_conj, "involution: conjugate, or conjugate transpose for matrices")
    sp.add_argument("expr")
    return p


def run(argv=None, stream=None) -> int:
    args = build_parser().parse_args(argv)
    out = Out(args.format, stream)
    try:
        code = args.func(args, out)
    except SoundnessViolation as e:
        (stream or sys.stdout).write(f"SOUNDNESS VIOLATION: {e}\n")
        return REFUTED
    except INPUT_ERRORS as e:
        sys.stderr.write(f"error: {e}\n")
        return INPUT_ERROR
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
