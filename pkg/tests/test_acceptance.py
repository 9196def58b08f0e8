"""Exit criteria for the package; each test records one summary line."""

import json
import random
import time
from pathlib import Path

import pytest

from conftest import Q_2CYCLE, Q_A3, Q_LOOPTAIL, Q_POINT, chain, record_criterion
from radzero import dsl
from radzero.cli import main
from radzero.invariants import (
    certificate_defects,
    dell_simple,
    dell_simple_support_oracle,
    full_report,
    s_invariant,
)
from radzero.quiver import ValuedQuiver, bool_power_orbit, down_length
from radzero.syzygy import INFINITY, Side, pdim_simple, syzygy_power_oracle, syzygy_step
from radzero.verify import (
    FuzzConfig,
    check_inequality_chain,
    check_main_theorem,
    enumerate_digraphs,
    random_quiver,
    reroll_valuations,
)

FUZZ = FuzzConfig(count=10_000, max_vertices=8, max_val=3, seed=42)
DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def fuzz_cases():
    return [random_quiver(FUZZ, k) for k in range(FUZZ.count)]


def small_exhaustive(max_n):
    for n in range(1, max_n + 1):
        yield from enumerate_digraphs(n)


def test_c1_main_theorem_exhaustive():
    started = time.perf_counter()
    failures = total = 0
    for q in small_exhaustive(3):
        total += 1
        failures += not check_main_theorem(q).passed
    elapsed = time.perf_counter() - started
    ok = total == 2 + 16 + 512 and failures == 0 and elapsed < 1.0
    record_criterion("C1 Findim = dell, all digraphs <= 3 vertices", ok,
                     f"{total} quivers, {failures} failures, {elapsed:.2f} s (limit 1 s)")
    assert total == 530 and failures == 0
    assert elapsed < 1.0


def test_c2_main_theorem_and_chain_fuzzed():
    started = time.perf_counter()
    failures = 0
    for k in range(FUZZ.count):
        q = random_quiver(FUZZ, k)
        report = full_report(q)
        failures += not check_main_theorem(q, report).passed
        failures += not check_inequality_chain(q, report).passed
    elapsed = time.perf_counter() - started
    ok = failures == 0 and elapsed < 30.0
    record_criterion("C2 Findim = dell and s <= Findim <= dell <= s+1, 10^4 random", ok,
                     f"{failures} failures, {elapsed:.1f} s (limit 30 s)")
    assert failures == 0
    assert elapsed < 30.0


def _syzygy_disagreements(q, depth):
    bad = 0
    for side in Side:
        for v in q.vertices:
            m = {v: 1}
            for n in range(depth + 1):
                bad += m != syzygy_power_oracle(q, side, v, n)
                m = syzygy_step(q, side, m)
    return bad


def _dell_disagreements(q):
    orbit = bool_power_orbit(q)
    return sum(dell_simple(q, v, orbit).level != dell_simple_support_oracle(q, v) for v in q.vertices)


def test_c3_oracles_exhaustive_four_vertices():
    # valuations rerolled so multiplicities are exercised, not just supports
    rng = random.Random(2024)
    dell_bad = syz_bad = cases = 0
    for q in small_exhaustive(4):
        cases += 1
        dell_bad += _dell_disagreements(q)
        syz_bad += _syzygy_disagreements(reroll_valuations(q, rng, 3), 5)
    ok = dell_bad == 0 and syz_bad == 0
    record_criterion("C3a oracles agree, all digraphs <= 4 vertices", ok,
                     f"{cases} quivers; dell {dell_bad}, syzygy (n <= 5) {syz_bad} disagreements")
    assert ok


def test_c3_oracles_fuzzed(fuzz_cases):
    dell_bad = syz_bad = 0
    for q in fuzz_cases:
        dell_bad += _dell_disagreements(q)
        syz_bad += _syzygy_disagreements(q, 4)
    ok = dell_bad == 0 and syz_bad == 0
    record_criterion("C3b oracles agree, 10^4 random", ok,
                     f"dell {dell_bad}, syzygy (n <= 4) {syz_bad} disagreements")
    assert ok


FIXTURE_TRIPLES = [
    ("Q_A3", Q_A3, (2, 2, 2)),
    ("Q_LOOPTAIL", Q_LOOPTAIL, (1, 2, 2)),
    ("Q_POINT", Q_POINT, (0, 0, 0)),
    ("Q_2CYCLE", Q_2CYCLE, (None, 0, 0)),
] + [(f"A_{n}", chain(n), (n - 1, n - 1, n - 1)) for n in range(2, 7)]


def test_c4_fixtures():
    wrong = []
    for name, q, expected in FIXTURE_TRIPLES:
        r = full_report(q)
        got = (r.s.value, r.findim_left_big, r.dell_algebra)
        if got != expected:
            wrong.append(f"{name}: {got} != {expected}")
    record_criterion("C4 hand-derived fixtures (s, Findim, dell)", not wrong,
                     "; ".join(wrong) or f"{len(FIXTURE_TRIPLES)} fixtures exact")
    assert not wrong


def test_c5_valuation_independence(fuzz_cases):
    rng = random.Random(5)
    changed = 0
    for q in fuzz_cases[:100]:
        before = full_report(q)
        after = full_report(reroll_valuations(q, rng, 3))
        changed += (before.s.value, before.findim_left_big, before.dell_algebra) != (
            after.s.value, after.findim_left_big, after.dell_algebra)
    record_criterion("C5 valuation independence, 100 random", changed == 0, f"{changed} changed")
    assert changed == 0


def _s_from_syzygies(q):
    finite = [p for p in (pdim_simple(q, Side.LEFT, j) for j in q.vertices) if p is not INFINITY]
    return max(finite) if finite else None


def _s_from_graph(q):
    lengths = [length for length in (down_length(q, j) for j in q.vertices) if length is not None]
    return max(lengths) if lengths else None


def test_c6_s_two_routes(fuzz_cases):
    tested = mismatches = 0
    for q in list(small_exhaustive(3)) + fuzz_cases:
        tested += 1
        graph, syz = _s_from_graph(q), _s_from_syzygies(q)
        mismatches += graph != syz or s_invariant(q).value != graph
    record_criterion("C6 s by longest paths = s by syzygy iteration", mismatches == 0,
                     f"{tested} quivers, {mismatches} mismatches")
    assert mismatches == 0


def test_c7_multiplicity_exactness():
    loop = ValuedQuiver.from_pairs(1, [(1, 1)], {(1, 1): (2, 2)})
    m = {1: 1}
    for _ in range(100):
        m = syzygy_step(loop, Side.RIGHT, m)
    ok = m == {1: 2**100} and m[1] == 1267650600228229401496703205376
    record_criterion("C7 loop (2,2): |Omega^100 S| = 2^100", ok, f"got {m[1]}")
    assert ok


def test_c8_certificate_soundness(fuzz_cases):
    certs = bad = 0
    for q in fuzz_cases:
        orbit = bool_power_orbit(q)
        for v in q.vertices:
            certs += 1
            bad += bool(certificate_defects(q, dell_simple(q, v, orbit)))
    record_criterion("C8 certificates re-validate, 10^4 random", bad == 0,
                     f"{certs} certificates, {bad} unsound")
    assert bad == 0


def _cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, _ = capsys.readouterr()
    return code, out


def test_c9_round_trip_and_cli_golden(capsys, fuzz_cases):
    round_trip_bad = sum(dsl.parse(dsl.serialize(q)).quiver != q for q in fuzz_cases)
    golden = [
        (("compute", DATA / "q_a3.quiver", "--json"), 0),
        (("compute", DATA / "q_point.quiver"), 0),
        (("compute", DATA / "broken.quiver"), 2),
        (("compute", DATA / "defective.quiver"), 3),
        (("verify", DATA / "q_looptail.quiver"), 0),
        (("verify", DATA / "q_2cycle.quiver"), 0),
        (("verify", DATA / "broken.quiver"), 2),
        (("explain", DATA / "q_looptail.quiver", "dell", 3), 0),
        (("explain", DATA / "q_a3.quiver", "dell", 1), 0),
        (("explain", DATA / "q_a3.quiver", "dell", 9), 4),
        (("export-dot", DATA / "q_kron.quiver"), 0),
        (("enumerate", "--vertices", 3), 0),
        (("enumerate", "--vertices", 9), 2),
        (("fuzz", "--count", 0), 0),
    ]
    exit_bad = []
    for argv, expected in golden:
        code, _ = _cli(capsys, *argv)
        if code != expected:
            exit_bad.append(f"{argv[0]} {Path(str(argv[1])).name}: {code} != {expected}")

    _, a3 = _cli(capsys, "compute", DATA / "q_a3.quiver", "--json")
    a3 = json.loads(a3)
    values_ok = (a3["s"], a3["findim_left_big"], a3["dell_algebra"]) == (2, 2, 2)
    _, explained = _cli(capsys, "explain", DATA / "q_looptail.quiver", "dell", 3)
    explain_ok = explained.strip() == (
        "dell(S_3) = 2; n=1 fails at j=2; n=2: j=1 escapes via 1→1→1 (1 not a sink)")

    fuzz_argv = ("fuzz", "--count", 10_000, "--max-vertices", 8, "--seed", 42, "--json",
                 "--checks", "main_theorem,inequality_chain,dell_oracle,certificates")
    code1, first = _cli(capsys, *fuzz_argv)
    code2, second = _cli(capsys, *fuzz_argv)
    identical = first == second and code1 == code2 == 0

    ok = round_trip_bad == 0 and not exit_bad and values_ok and explain_ok and identical
    record_criterion("C9 round-trip, CLI exit codes, byte-identical fuzz JSON", ok,
                     f"round-trip failures {round_trip_bad}; exit mismatches {exit_bad or 0}; "
                     f"identical reports {identical}")
    assert ok
