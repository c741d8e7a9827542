"""Acceptance campaign: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the verdict lines are
printed even when output capture is on.
"""

import itertools
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from conftest import FIXTURES, load
from ksplit.approx import concurrent_quarter, even_k_exact, tu_double_flow, tu_half_approx
from ksplit.core import Cut, generate_instance, parse_instance, serialize_instance
from ksplit.cuts import c_k1k2_graph, c_k_graph, separates
from ksplit.oracle import (
    UNBOUNDED,
    OracleLimitError,
    brute_force_c_k1k2,
    cut_bound,
    enumerate_cuts,
    enumerate_paths,
    exact_biuniform,
    exact_concurrent,
    exact_totally_uniform,
    verify_flow,
)


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


@lru_cache(maxsize=None)
def two_commodity_set():
    # n <= 8, caps <= 10, split counts 0..3 (never both zero)
    out = []
    for seed in range(240):
        n = 4 + seed % 5
        m = n + seed % 7
        k1, k2 = seed % 4, (seed // 4) % 4
        if k1 + k2 == 0:
            k1 = 1
        out.append(generate_instance(n, m, 10, k1, k2, seed=1000 + seed))
    return tuple(out)


def test_criterion_1_single_commodity_duality(report):
    t0 = time.perf_counter()
    count = bad = 0
    for seed in range(220):
        n = 3 + seed % 5
        m = min(12, n + seed % 8)
        k = 1 + seed % 4
        inst = generate_instance(n, m, 10, k, 0, seed=seed)
        value = c_k_graph(inst.graph, inst.s1, inst.t1, k).value
        bad += k * value != exact_totally_uniform(inst).total
        count += 1
    elapsed = time.perf_counter() - t0
    report(1, bad == 0 and count >= 200 and elapsed < 60,
           f"{count} instances, {bad} mismatches, {elapsed:.1f}s (limit 60s)")


def test_criterion_2_cut_value(report):
    t0 = time.perf_counter()
    insts = two_commodity_set()
    bad = sum(c_k1k2_graph(i).value != brute_force_c_k1k2(i)[0] for i in insts)
    elapsed = time.perf_counter() - t0
    report(2, bad == 0 and len(insts) >= 200 and elapsed < 120,
           f"{len(insts)} instances, {bad} mismatches, {elapsed:.1f}s (limit 120s)")


def test_criterion_3_double_flow_pipeline(report):
    checked = failures = 0
    for inst in two_commodity_set():
        c = c_k1k2_graph(inst).value
        if c == 0:
            continue
        checked += 1
        res = tu_double_flow(inst)
        ok = (
            len(res.flow.commodity_paths(1)) == 2 * inst.k1
            and len(res.flow.commodity_paths(2)) == 2 * inst.k2
            and {p.value for p in res.flow.paths} == {c / 2}
            and res.flow.total == (inst.k1 + inst.k2) * c
            and verify_flow(inst, res.flow).ok
            and res.biflow.violations() == []
        )
        failures += not ok
    report(3, failures == 0 and checked > 0, f"{checked} instances with c > 0, {failures} failures")


def test_criterion_4_half_guarantee(report):
    checked = refused = failures = 0
    for inst in two_commodity_set():
        if inst.k1 + inst.k2 > 4:
            continue
        try:
            opt = exact_totally_uniform(inst).total
        except OracleLimitError:
            refused += 1
            continue
        checked += 1
        got = tu_half_approx(inst).total
        failures += not (opt / 2 <= got <= opt)
    tight = load("disjoint46.biflow")
    approx, opt = tu_half_approx(tight).total, exact_totally_uniform(tight).total
    ok = failures == 0 and checked > 0 and (approx, opt) == (4, 8) and approx / opt == Fraction(1, 2)
    report(4, ok, f"{checked} instances ({refused} refused), {failures} violations; tight fixture {approx}/{opt}")


def test_criterion_5_four_cycle(report):
    inst = load("c4.biflow")
    c = c_k1k2_graph(inst).value
    dbl = tu_double_flow(inst)
    half = tu_half_approx(inst)
    opt = exact_totally_uniform(inst).total
    # integral (1,1) totally uniform flow of value 2 means one path each at value 1
    caps = inst.graph.capacities
    integral = False
    for (_, e1), (_, e2) in itertools.product(enumerate_paths(inst.graph, 1, 3), enumerate_paths(inst.graph, 2, 4)):
        load_ = [0] * len(caps)
        for e in e1 + e2:
            load_[e] += 1
        integral |= all(n <= u for n, u in zip(load_, caps))
    ok = (
        c == 1
        and dbl.flow.total == 2
        and [p.value for p in dbl.flow.paths] == [Fraction(1, 2)] * 4
        and half.total == 1 == opt
        and not integral
    )
    report(5, ok, f"c=1:{c == 1} double total={dbl.flow.total} half={half.total} opt={opt} integral value 2 exists={integral}")


def test_criterion_6_even_k(report):
    yes = even_k_exact(load("disjoint46_k22.biflow"))
    no = even_k_exact(load("parallel35.biflow"))
    applicable = agree = 0
    for inst in two_commodity_set():
        if inst.k1 < 2 or inst.k2 < 2 or inst.k1 % 2 or inst.k2 % 2:
            continue
        cert = even_k_exact(inst)
        if cert.applicable:
            applicable += 1
            agree += cert.total == exact_totally_uniform(inst).total
    ok = yes.applicable and yes.total == 8 and not no.applicable and agree == applicable
    report(6, ok, f"fixture (2,2): applicable={yes.applicable} total={yes.total}; (3,5)+100 applicable={no.applicable}; "
                  f"campaign {agree}/{applicable} applicable certificates exact")


def test_criterion_7_doubling(report):
    insts = [i for i in two_commodity_set()] + [
        generate_instance(6, 9, 10, 1 + s % 3, s % 3, seed=s) for s in range(100)
    ]
    bad = sum(
        2 * c_k1k2_graph(i.with_k(2 * i.k1, 2 * i.k2)).value < c_k1k2_graph(i).value for i in insts
    )
    report(7, bad == 0, f"{len(insts)} instances, {bad} violations of 2*c(2k1,2k2) >= c(k1,k2)")


def test_criterion_8_concurrent(report):
    t0 = time.perf_counter()
    ks = [(1, 1), (1, 2), (2, 1), (2, 2)]
    count = violations = 0
    for seed in range(120):
        k1, k2 = ks[seed % 4]
        n = 4 + seed % 4
        inst = generate_instance(n, n + 1 + seed % 5, 8, k1, k2, seed=5000 + seed)
        r = Fraction(1 + seed % 3, 1 + seed % 2)
        d1, d2 = r * k1, r * k2
        free = exact_concurrent(inst, d1, d2, "free").lam
        bi = exact_concurrent(inst, d1, d2, "bi").lam
        total = exact_concurrent(inst, d1, d2, "total").lam
        lam_tu = k1 * exact_totally_uniform(inst).x / d1
        lam_q = concurrent_quarter(inst, d1, d2).lam
        violations += not (lam_q >= free / 4 and bi == total and lam_tu >= free / 2)
        count += 1
    elapsed = time.perf_counter() - t0
    report(8, violations == 0 and count >= 100 and elapsed < 120,
           f"{count} matched-ratio instances, {violations} violations, {elapsed:.1f}s (limit 120s)")


def _min_bi_bound(inst):
    opt = exact_biuniform(inst).value
    best, dominated = None, True
    for members, _ in enumerate_cuts(inst.graph):
        if separates(members, inst.s1, inst.t1) and separates(members, inst.s2, inst.t2):
            b = cut_bound(inst, members, "bi")
            if b is UNBOUNDED:
                continue
            dominated &= b >= opt
            best = b if best is None else min(best, b)
    return opt, best, dominated


def test_criterion_9_bound_gap(report):
    failures = 0
    first_gap = None
    for seed in range(60):
        inst = generate_instance(5, 7, 6, 1, 1, seed=seed)
        opt, best, dominated = _min_bi_bound(inst)
        failures += not dominated
        r = exact_biuniform(inst)
        if first_gap is None and best is not None and best > opt and r.x > 0 and r.y > 0:
            first_gap = (seed, inst)
    pinned = load("bound_gap.biflow")
    opt, best, dominated = _min_bi_bound(pinned)
    ok = failures == 0 and first_gap is not None and first_gap[1] == pinned and best > opt and dominated
    report(9, ok, f"60 instances, {failures} dominance failures; first strict gap at seed "
                  f"{first_gap[0] if first_gap else None} matches pinned fixture (bound {best} > optimum {opt})")


DETERMINISM_SCRIPT = r"""
import io, sys
from pathlib import Path
from ksplit.cli import main
fx = Path(sys.argv[1])
runs = []
for f in sorted(fx.glob("*.biflow")):
    for mode in ("cut", "tu2k", "tuhalf"):
        runs.append(["solve", "--mode", mode, "-i", str(f)])
    for mode in ("tu", "bi", "cutbound"):
        runs.append(["oracle", "--mode", mode, "-i", str(f)])
    runs.append(["oracle", "--mode", "concurrent", "-i", str(f), "-d1", "1/1", "-d2", "1/1"])
runs.append(["solve", "--mode", "concurrent", "-i", str(fx / "c4.biflow"), "-d1", "1/1", "-d2", "1/1"])
runs.append(["solve", "--mode", "evenk", "-i", str(fx / "disjoint46_k22.biflow")])
runs.append(["bench", "--count", "8", "--vertices", "5", "--edges", "7", "--max-cap", "6",
             "--k1", "1", "--k2", "2", "--seed", "3", "--jobs", "2", "--csv", ""])
for argv in runs:
    out = io.StringIO()
    main(argv, stdout=out, stderr=io.StringIO())
    sys.stdout.write(out.getvalue())
"""


def test_criterion_10_determinism_and_io(report):
    outputs = [
        subprocess.run([sys.executable, "-c", DETERMINISM_SCRIPT, str(FIXTURES)], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    files = sorted(FIXTURES.glob("*.biflow"))
    round_trip = all(
        parse_instance(serialize_instance(parse_instance(f.read_bytes()))) == parse_instance(f.read_bytes())
        for f in files
    )
    identical = outputs[0] == outputs[1] and len(outputs[0]) > 0
    docs = len(outputs[0].splitlines())
    report(10, identical and round_trip,
           f"{docs} documents byte-identical={identical}; {len(files)} fixtures round-trip={round_trip}")
