"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line, printed in the terminal summary.

Run standalone with `python tests/test_acceptance.py` for the lines alone.
"""

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import gen  # noqa: E402
from conftest import ACCEPTANCE_LINES, INSTANCES, ROOT  # noqa: E402
from oracles import hc_member_dense, small_polys, vanishes_on  # noqa: E402
from quatnss import (MatPoly, Poly, QPoly, QuatSubspace, Submodule, ZeroSet, ideal_of_rows, parse,  # noqa: E402
                     phi, real_closure_bounded, rho, vanishing_module)
from quatnss.grammar import format_value  # noqa: E402
from quatnss.instances import expressions_of, instance_files, load_instance  # noqa: E402
from quatnss.mring import first_row_lifts, hermitian_square_rows, hermitian_square_sum  # noqa: E402
from quatnss.ncpoly import nc_conjugate, nc_evaluate  # noqa: E402
from quatnss.nss import (Certificate, CertificateError, Step, check_nullstellensatz_instance,  # noqa: E402
                         reality_transfer)
from quatnss.quat import I, J, K, annihilator, component_extract  # noqa: E402
from quatnss.submod import (colon_module, hermitian_combinations, realness_witness_check,  # noqa: E402
                            restrict_scalars, unfold_row)


def record(n: int, ok: bool, detail: str):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_quaternion_kernel():
    rng = random.Random(101)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(1000):
        p, q, r = gen.quat(rng, 9, 7), gen.quat(rng, 9, 7), gen.quat(rng, 9, 7)
        ok = (p * q) * r == p * (q * r)
        ok &= (p * q).norm() == p.norm() * q.norm()
        ok &= (p * q).conjugate() == q.conjugate() * p.conjugate()
        ok &= all(component_extract(p, k) == p.components[k - 1] for k in range(1, 5))
        failures += not ok
    dt = time.perf_counter() - t0
    record(1, failures == 0 and dt < 5, f"1000 cases, {failures} failures, {dt:.2f}s (< 5s)")


def test_criterion_02_double_annihilator():
    rng = random.Random(102)
    failures = 0
    for _ in range(200):
        m = rng.randint(1, 4)
        k = rng.randint(1, 3)
        vecs = [[gen.quat(rng, 2, 2) if rng.random() < 0.8 else gen.quat(rng, 0) for _ in range(m)]
                for _ in range(k)]
        if rng.random() < 0.3 and k > 1:
            c = gen.quat(rng)
            vecs[-1] = [c * x for x in vecs[0]]  # force dependence
        s = QuatSubspace.span("left", m, vecs)
        ann = annihilator(s)
        failures += not (annihilator(ann) == s and s.dim + ann.dim == m)
    record(2, failures == 0, f"200 subspaces, {failures} failures")


def test_criterion_03_phi_contract():
    rng = random.Random(103)
    failures = 0
    for _ in range(500):
        d = rng.randint(1, 2)
        f, g = gen.ncpoly(rng, d, 3), gen.ncpoly(rng, d, 3)
        a = tuple(gen.quat(rng) for _ in range(d))
        ok = phi(f + g) == phi(f) + phi(g)
        ok &= phi(f * g) == phi(f) * phi(g)
        ok &= phi(f.star()) == phi(f).star()
        ok &= nc_evaluate(f, a) == phi(f).evaluate(rho(a))
        failures += not ok
    record(3, failures == 0, f"500 (f, a) pairs, degree <= 3, d <= 2, {failures} failures")


def test_criterion_04_conjugation_formula():
    rng = random.Random(104)
    failures = 0
    for _ in range(100):
        d = rng.randint(1, 2)
        f = gen.ncpoly(rng, d, 3)
        a = tuple(gen.quat(rng) for _ in range(d))
        failures += nc_evaluate(nc_conjugate(f), a) != nc_evaluate(f, a).conjugate()
    record(4, failures == 0, f"100 points, {failures} failures")


def test_criterion_05_non_semiprime_module():
    t0 = time.perf_counter()
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    n = Submodule("Q", 2, 2, ((x * x, x * y), (x * y, y * y)))
    not_member = not n.member((x, y))
    colon_zero = colon_module(n).is_zero()
    combos = hermitian_combinations([(x, y)])
    combos_ok = combos == [(x * x, x * y), (x * y, y * y)] and all(n.member(c) for c in combos)
    verdict = realness_witness_check([(x, y)], n).verdict
    dt = time.perf_counter() - t0
    ok = not_member and colon_zero and combos_ok and verdict == "real-violated" and dt < 1
    record(5, ok, f"(x,y) not in N: {not_member}; (N : R^2) = 0: {colon_zero}; "
                  f"combinations in N: {combos_ok}; verdict {verdict}; {dt:.3f}s (< 1s)")


def _random_matrix(rng, ring, nvars, n):
    maker = gen.poly if ring == "Q" else gen.qpoly
    return MatPoly(ring, nvars, tuple(tuple(maker(rng, nvars, 1) for _ in range(n)) for _ in range(n)))


def test_criterion_06_witness_transport():
    rng = random.Random(106)
    mismatches, interesting = 0, 0
    for trial in range(100):
        ring = "Q" if trial % 2 == 0 else "Hc"
        nvars, n = rng.randint(1, 2), rng.randint(1, 2)
        mats = [_random_matrix(rng, ring, nvars, n) for _ in range(rng.randint(1, 2))]
        if rng.random() < 0.5:
            # the ideal generated by the hermitian square rows, so the hypothesis holds
            ideal = ideal_of_rows([MatPoly(ring, nvars, tuple(hermitian_square_rows(mats)))])
        else:
            ideal = ideal_of_rows([_random_matrix(rng, ring, nvars, n)])
        nmod = ideal.module
        # matrices -> rows
        hyp_matrix = ideal.contains(hermitian_square_sum(mats))
        hyp_rows = all(nmod.member(r) for r in hermitian_square_rows(mats))
        mem_matrix = [ideal.contains(a) for a in mats]
        mem_rows = [all(nmod.member(r) for r in a.rows()) for a in mats]
        mismatches += (hyp_matrix != hyp_rows) + (mem_matrix != mem_rows)
        # rows -> first-row lifts
        rows = [r for a in mats for r in a.rows()][: rng.randint(1, 3)]
        lifts = first_row_lifts(rows, ring, nvars)
        hyp_mod = all(nmod.member(h) for h in hermitian_combinations(rows))
        hyp_lift = ideal.contains(hermitian_square_sum(lifts))
        mem_mod = [nmod.member(r) for r in rows]
        mem_lift = [ideal.contains(f) for f in lifts]
        mismatches += (hyp_mod != hyp_lift) + (mem_mod != mem_lift)
        interesting += hyp_matrix
    record(6, mismatches == 0, f"100 instances x 2 directions, {mismatches} mismatches, "
                               f"{interesting} with the hypothesis satisfied")


def _closure_oracle(gens, nvars, points):
    """Every small polynomial is in the bounded closure iff it vanishes on the real zero set."""
    cl = real_closure_bounded(gens, "Q", 1, nvars, degree_bound=2).module
    disagreements = 0
    for f in small_polys(nvars, 2):
        disagreements += cl.member((f,)) != vanishes_on(f, points)
    return disagreements


def test_criterion_07_instance_suite():
    t0 = time.perf_counter()
    files = instance_files(INSTANCES)
    reports = [check_nullstellensatz_instance(load_instance(p)) for p in files]
    theorems = {r.theorem for r in reports}
    soundness = all(r.soundness_ok for r in reports)
    radical = [r for r in reports if r.radical_equality is not None]
    radical_ok = all(r.radical_equality for r in radical)
    consistent = all(r.consistent for r in reports)
    x = Poly.var(0, 1)
    x2, y2 = Poly.var(0, 2), Poly.var(1, 2)
    oracle = _closure_oracle([(x * x,)], 1, [(0,)])
    oracle += _closure_oracle([(x2 * x2 + y2 * y2,)], 2, [(0, 0)])
    dt = time.perf_counter() - t0
    covered = {"A", "B", "C", "D", "E", "F"} <= theorems
    ok = len(files) >= 10 and covered and soundness and radical and radical_ok and consistent \
        and oracle == 0 and dt < 60
    record(7, ok, f"{len(files)} fixtures covering {''.join(sorted(t for t in theorems if len(t) == 1))}; "
                  f"soundness {soundness}; {len(radical)} known radicals equal: {radical_ok}; "
                  f"brute-force oracle disagreements {oracle}; {dt:.1f}s (< 60s)")


def _hc_instance(rng):
    nvars, rank = rng.randint(1, 2), rng.randint(1, 2)
    gens = []
    for _ in range(rng.randint(1, 2)):
        dg = rng.randint(1, 2)
        gens.append(tuple(gen.qpoly(rng, nvars, dg, maker=gen.homogeneous) if rng.random() < 0.8
                          else QPoly.zero(nvars) for _ in range(rank)))
        if all(x.is_zero() for x in gens[-1]):
            gens[-1] = (QPoly.from_poly(Poly.var(0, nvars)),) + gens[-1][1:]
    # make every entry homogeneous of one degree per generator
    for idx, g in enumerate(gens):
        degs = {x.degree() for x in g if not x.is_zero()}
        if len(degs) > 1:
            top = max(degs)
            gens[idx] = tuple(x if x.is_zero() or x.degree() == top else QPoly.zero(nvars) for x in g)
    return nvars, rank, gens


def _probe(rng, nvars, rank, gens, degree):
    if rng.random() < 0.5:
        acc = tuple(QPoly.zero(nvars) for _ in range(rank))
        for g in gens:
            dg = max(x.degree() for x in g)
            if dg <= degree:
                c = gen.qpoly(rng, nvars, degree - dg, maker=gen.homogeneous) if degree > dg else \
                    QPoly.from_quaternion(gen.quat(rng), nvars)
                acc = tuple(a + c * x for a, x in zip(acc, g))
        if rng.random() < 0.3:
            acc = (acc[0] + QPoly.from_poly(gen.homogeneous(rng, nvars, degree, 1)),) + acc[1:]
        return acc
    return tuple(gen.qpoly(rng, nvars, degree, maker=gen.homogeneous) for _ in range(rank))


def test_criterion_08_hc_engine_cross_validation():
    rng = random.Random(108)
    disagreements, members, probes = 0, 0, 0
    for _ in range(50):
        nvars, rank, gens = _hc_instance(rng)
        n = Submodule("Hc", nvars, rank, tuple(gens))
        restricted = restrict_scalars(n)
        for degree in range(1, 5):
            for _ in range(2):
                f = _probe(rng, nvars, rank, gens, degree)
                if all(x.is_zero() for x in f):
                    continue
                engine = restricted.member(unfold_row(f))
                oracle = hc_member_dense(f, gens, degree)
                direct = n.member(f)
                disagreements += (engine != oracle) + (engine != direct)
                members += oracle
                probes += 1
    record(8, disagreements == 0, f"50 instances, {probes} homogeneous probes up to degree 4 "
                                  f"({members} members), {disagreements} disagreements")


def test_criterion_09_vanishing_modules_and_reality_transfer():
    rng = random.Random(109)
    violated, applicable = 0, 0
    for t in range(200):
        ring = "Q" if t % 2 == 0 else "Hc"
        nvars, n = rng.randint(1, 2), rng.randint(1, 2)
        pairs = []
        for _ in range(rng.randint(1, 3)):
            a = tuple(rng.randint(-1, 1) for _ in range(nvars))
            v = tuple(Fraction(rng.randint(-1, 1)) if ring == "Q" else gen.quat(rng, 1, 1) for _ in range(n))
            if all(not x for x in v):
                v = (Fraction(1),) + v[1:]
            pairs.append((a, v))
        vm = vanishing_module(ZeroSet(ring, nvars, n, pairs))
        maker = gen.poly if ring == "Q" else gen.qpoly
        tup = [tuple(maker(rng, nvars, 1) for _ in range(n)) for _ in range(rng.randint(1, 2))]
        if rng.random() < 0.5:
            # give the tuple basis elements of the module so the hypothesis can hold
            basis = vm.basis_rows()
            tup = [rng.choice(basis) for _ in range(rng.randint(1, 2))] + tup[:rng.randint(0, 1)]
        v = realness_witness_check(tup, vm)
        violated += v.verdict == "real-violated"
        applicable += v.verdict != "inapplicable"
    # reality-transfer fixtures
    x, y = Poly.var(0, 2), Poly.var(1, 2)
    qx, qy = QPoly.from_poly(x), QPoly.from_poly(y)
    unit = {u: QPoly.from_quaternion(q, 2) for u, q in (("i", I), ("j", J), ("k", K))}
    cert = Certificate((Step(((x,), (y,))),))
    sos = [x * x + y * y]
    fixtures = [
        reality_transfer(sos, [qx + unit["i"] * qy], cert).verdict == "accept",
        reality_transfer(sos, [qx + unit["j"] * qy, qy + unit["k"] * qx], cert).verdict == "accept",
        reality_transfer([x], [QPoly.zero(2)]).verdict == "accept",
    ]
    forged = [reality_transfer([x], [QPoly.from_quaternion(1, 2)]).verdict == "hypothesis-failed",
              reality_transfer(sos, [qx + unit["i"]]).verdict == "hypothesis-failed"]
    try:
        reality_transfer(sos, [qx + unit["i"] * qy], Certificate((Step(((x + 1,),)),)))
        forged.append(False)
    except CertificateError:
        forged.append(True)
    ok = violated == 0 and all(fixtures) and all(forged)
    record(9, ok, f"200 tuples ({applicable} with hypothesis satisfied), {violated} real-violated; "
                  f"reality-transfer fixtures accepted {sum(fixtures)}/{len(fixtures)}; "
                  f"forged rejected {sum(forged)}/{len(forged)}")


def _cli_run(seed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    r = subprocess.run([sys.executable, "-m", "quatnss.cli", "check-instance", "--all", str(INSTANCES)],
                       capture_output=True, env=env, cwd=ROOT)
    return r.stdout


def test_criterion_10_cli_round_trip_and_stability():
    checked, failures = 0, 0
    for path in instance_files(INSTANCES):
        data = json.loads(path.read_text())
        for text, ring in expressions_of(data):
            value = parse(text, ring, data["nvars"])
            printed = format_value(value)
            again = parse(printed, ring, getattr(value, "nvars", None))
            failures += again != value or format_value(again) != printed
            checked += 1
    first, second = _cli_run("1"), _cli_run("2")
    stable = first == second and len(first) > 0
    ok = failures == 0 and stable
    record(10, ok, f"{checked} corpus expressions, {failures} round-trip failures; "
                   f"two runs byte-identical: {stable} ({len(first)} bytes)")


if __name__ == "__main__":
    import pytest
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
