"""Cross-checks of the invariants over exhaustive and random quiver families.

Each ``check_*`` function returns a :class:`CheckResult`; a family run merges
them into a report whose failures carry the quiver in ``.quiver`` text so it
can be fed straight back to the command line tool.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from . import dsl
from .invariants import (
    InconsistentResult,
    InvariantReport,
    big_findim_left,
    big_findim_left_dual_criterion,
    certificate_defects,
    dell_predicate,
    dell_simple,
    dell_simple_support_oracle,
    embeds_in_radical,
    extended_to_json,
    full_report,
    s_invariant,
    simple_dual_nonzero,
)
from .quiver import Arrow, ValuedQuiver, Valuation, bool_power_orbit, opposite
from .syzygy import INFINITY, PathBudgetExceeded, Side, syzygy_power, syzygy_power_oracle

MAX_ENUMERATION_VERTICES = 4


@dataclass(frozen=True)
class CheckOutcome:
    passed: bool
    detail: str
    values: dict = field(default_factory=dict)


@dataclass
class CheckResult:
    quiver: str
    checks: dict[str, CheckOutcome] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> dict[str, CheckOutcome]:
        return {name: c for name, c in self.checks.items() if not c.passed}


@dataclass(frozen=True)
class FuzzConfig:
    count: int = 1000
    min_vertices: int = 1
    max_vertices: int = 8
    arrow_prob: float = 0.25
    # None: loops use arrow_prob
    loop_prob: Optional[float] = None
    max_val: int = 3
    seed: int = 0
    oracle_depth: int = 4

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if not 1 <= self.min_vertices <= self.max_vertices:
            raise ValueError("need 1 <= min_vertices <= max_vertices")
        for p in (self.arrow_prob, self.loop_prob):
            if p is not None and not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.max_val < 1:
            raise ValueError("max_val must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _result(q: ValuedQuiver, name: str, outcome: CheckOutcome, started: float) -> CheckResult:
    return CheckResult(
        dsl.serialize(q), {name: outcome}, (time.perf_counter() - started) * 1000
    )


def _report_values(report: InvariantReport) -> dict:
    values = report.summary()
    values["dell_per_simple"] = {
        str(v): extended_to_json(c.level) for v, c in report.dell_per_simple.items()
    }
    return values


def check_main_theorem(q: ValuedQuiver, report: Optional[InvariantReport] = None) -> CheckResult:
    started = time.perf_counter()
    report = report or full_report(q)
    findim, dell = report.findim_left_big, report.dell_algebra
    values = {"findim_left_big": findim, "dell_algebra": extended_to_json(dell)}
    if findim == dell:
        return _result(q, "main_theorem", CheckOutcome(True, f"{findim} = {dell}", values), started)
    values["report"] = _report_values(report)
    return _result(q, "main_theorem", CheckOutcome(False, f"{findim} != {dell}", values), started)


def check_inequality_chain(
    q: ValuedQuiver, report: Optional[InvariantReport] = None
) -> CheckResult:
    started = time.perf_counter()
    report = report or full_report(q)
    s, findim, dell = report.s.value, report.findim_left_big, report.dell_algebra
    values = {"s": s, "findim_left_big": findim, "dell_algebra": extended_to_json(dell)}
    if s is None:
        ok = findim == 0 and dell == 0
        detail = f"s undefined: findim {findim}, dell {dell}"
    else:
        ok = s <= findim <= dell <= s + 1
        detail = f"{s} <= {findim} <= {dell} <= {s + 1}"
        if not ok:
            detail = f"chain broken: s={s}, findim={findim}, dell={dell}"
    return _result(q, "inequality_chain", CheckOutcome(ok, detail, values), started)


def check_duality(q: ValuedQuiver) -> CheckResult:
    started = time.perf_counter()
    inner = check_main_theorem(opposite(q)).checks["main_theorem"]
    return _result(q, "duality", inner, started)


def check_dell_monotone(q: ValuedQuiver, report: Optional[InvariantReport] = None) -> CheckResult:
    started = time.perf_counter()
    report = report or full_report(q)
    orbit = bool_power_orbit(q)
    for v, cert in report.dell_per_simple.items():
        if cert.level is INFINITY:
            continue
        for n in range(cert.level, orbit.horizon + 1):
            if not dell_predicate(q, v, n, orbit):
                outcome = CheckOutcome(
                    False, f"S_{v}: holds at {cert.level} but fails at {n}", {"vertex": v, "n": n}
                )
                return _result(q, "dell_monotone", outcome, started)
    return _result(q, "dell_monotone", CheckOutcome(True, f"up to n={orbit.horizon}"), started)


def check_dell_oracle(q: ValuedQuiver, report: Optional[InvariantReport] = None) -> CheckResult:
    started = time.perf_counter()
    report = report or full_report(q)
    for v, cert in report.dell_per_simple.items():
        other = dell_simple_support_oracle(q, v)
        if other != cert.level:
            values = {"vertex": v, "powers": extended_to_json(cert.level),
                      "supports": extended_to_json(other)}
            outcome = CheckOutcome(False, f"S_{v}: {cert.level} vs {other}", values)
            return _result(q, "dell_oracle", outcome, started)
    return _result(q, "dell_oracle", CheckOutcome(True, "agree"), started)


def check_syzygy_oracle(q: ValuedQuiver, depth: int = 4) -> CheckResult:
    """Compare iterated syzygies against path enumeration for orders up to ``depth``."""
    started = time.perf_counter()
    skipped = 0
    for side, v, n in product(Side, q.vertices, range(depth + 1)):
        fast = syzygy_power(q, side, v, n)
        try:
            slow = syzygy_power_oracle(q, side, v, n)
        except PathBudgetExceeded:
            skipped += 1
            continue
        if fast != slow:
            values = {"side": side.value, "vertex": v, "n": n,
                      "iterated": _str_keys(fast), "enumerated": _str_keys(slow)}
            outcome = CheckOutcome(False, f"{side.value} Omega^{n} S_{v} differs", values)
            return _result(q, "syzygy_oracle", outcome, started)
    detail = f"agree up to n={depth}" + (f" ({skipped} over budget)" if skipped else "")
    return _result(q, "syzygy_oracle", CheckOutcome(True, detail), started)


def check_certificates(q: ValuedQuiver) -> CheckResult:
    started = time.perf_counter()
    orbit = bool_power_orbit(q)
    for v in q.vertices:
        defects = certificate_defects(q, dell_simple(q, v, orbit))
        if defects:
            outcome = CheckOutcome(False, f"S_{v}: {defects[0]}", {"vertex": v, "defects": defects})
            return _result(q, "certificates", outcome, started)
    return _result(q, "certificates", CheckOutcome(True, "all re-validate"), started)


def check_findim_criteria(q: ValuedQuiver) -> CheckResult:
    """Compare the radical-embedding rule with the dual-nonvanishing rule.

    They may only differ when every dimension-``s`` left simple with a nonzero
    dual is projective (a sink in the quiver) and lies outside the radical.
    """
    started = time.perf_counter()
    s = s_invariant(q)
    radical, dual = big_findim_left(q, s), big_findim_left_dual_criterion(q, s)
    values = {"radical_rule": radical, "dual_rule": dual}
    if radical == dual:
        return _result(q, "findim_criteria", CheckOutcome(True, "rules agree", values), started)
    offenders = [
        j for j, _ in s.witnesses
        if simple_dual_nonzero(q, Side.LEFT, j) and not embeds_in_radical(q, Side.LEFT, j)
    ]
    values["offenders"] = offenders
    # a left simple is projective exactly at a sink
    corner = all(j in q.sinks for j in offenders)
    detail = "rules differ only at split projective simples" if corner else "rules differ"
    return _result(q, "findim_criteria", CheckOutcome(corner, detail, values), started)


def reroll_valuations(q: ValuedQuiver, rng: random.Random, max_val: int) -> ValuedQuiver:
    arrows = tuple(
        Arrow(a.tail, a.head, Valuation(rng.randint(1, max_val), rng.randint(1, max_val)))
        for a in q.arrows
    )
    return ValuedQuiver(q.vertex_count, arrows)


def invariant_triple(q: ValuedQuiver) -> tuple:
    report = full_report(q)
    return report.s.value, report.findim_left_big, report.dell_algebra


def check_valuation_independence(
    q: ValuedQuiver, rng: random.Random, max_val: int = 3, report: Optional[InvariantReport] = None
) -> CheckResult:
    started = time.perf_counter()
    report = report or full_report(q)
    before = (report.s.value, report.findim_left_big, report.dell_algebra)
    other = reroll_valuations(q, rng, max_val)
    after = invariant_triple(other)
    values = {"rerolled": dsl.serialize(other)}
    if before == after:
        return _result(q, "valuation_independence", CheckOutcome(True, "unchanged", values), started)
    detail = f"(s, findim, dell) {before} became {after}"
    return _result(q, "valuation_independence", CheckOutcome(False, detail, values), started)


def _str_keys(m: dict) -> dict:
    return {str(k): v for k, v in m.items()}


# --- families ---------------------------------------------------------------

ALL_CHECKS = (
    "main_theorem",
    "inequality_chain",
    "duality",
    "dell_monotone",
    "dell_oracle",
    "syzygy_oracle",
    "certificates",
    "findim_criteria",
    "valuation_independence",
)


def run_checks(
    q: ValuedQuiver,
    names: Iterable[str] = ALL_CHECKS,
    rng: Optional[random.Random] = None,
    max_val: int = 3,
    oracle_depth: int = 4,
) -> CheckResult:
    """Run the named checks on one quiver, sharing a single invariant report."""
    started = time.perf_counter()
    merged = CheckResult(dsl.serialize(q))
    try:
        report = full_report(q)
    except InconsistentResult as exc:
        merged.checks["internal_consistency"] = CheckOutcome(False, str(exc))
        return merged
    rng = rng or random.Random(0)
    runners: dict[str, Callable[[], CheckResult]] = {
        "main_theorem": lambda: check_main_theorem(q, report),
        "inequality_chain": lambda: check_inequality_chain(q, report),
        "duality": lambda: check_duality(q),
        "dell_monotone": lambda: check_dell_monotone(q, report),
        "dell_oracle": lambda: check_dell_oracle(q, report),
        "syzygy_oracle": lambda: check_syzygy_oracle(q, oracle_depth),
        "certificates": lambda: check_certificates(q),
        "findim_criteria": lambda: check_findim_criteria(q),
        "valuation_independence": lambda: check_valuation_independence(q, rng, max_val, report),
    }
    for name in names:
        if name not in runners:
            raise ValueError(f"unknown check {name!r}")
        merged.checks.update(runners[name]().checks)
    merged.elapsed_ms = (time.perf_counter() - started) * 1000
    return merged


def random_quiver(cfg: FuzzConfig, index: int) -> ValuedQuiver:
    """Deterministic in ``(cfg.seed, index)``."""
    rng = random.Random(cfg.seed * 2**64 + index)
    n = rng.randint(cfg.min_vertices, cfg.max_vertices)
    loop_prob = cfg.arrow_prob if cfg.loop_prob is None else cfg.loop_prob
    arrows = []
    for tail in range(1, n + 1):
        for head in range(1, n + 1):
            p = loop_prob if tail == head else cfg.arrow_prob
            if rng.random() < p:
                val = Valuation(rng.randint(1, cfg.max_val), rng.randint(1, cfg.max_val))
                arrows.append(Arrow(tail, head, val))
    return ValuedQuiver(n, tuple(arrows))


def enumerate_digraphs(n: int) -> Iterator[ValuedQuiver]:
    """All ``2**(n*n)`` digraphs on ``n`` labelled vertices, loops included."""
    if not 0 <= n <= MAX_ENUMERATION_VERTICES:
        raise ValueError(f"enumeration is limited to 0..{MAX_ENUMERATION_VERTICES} vertices")
    pairs = [(t, h) for t in range(1, n + 1) for h in range(1, n + 1)]
    for mask in range(1 << len(pairs)):
        chosen = [p for k, p in enumerate(pairs) if mask >> k & 1]
        yield ValuedQuiver.from_pairs(n, chosen)


def _failure_entries(index: int, result: CheckResult) -> list[dict]:
    return [
        {
            "index": index,
            "check": name,
            "detail": outcome.detail,
            "values": outcome.values,
            "quiver": result.quiver,
        }
        for name, outcome in result.failures().items()
    ]


def run_family(
    quivers: Iterable[ValuedQuiver],
    names: Iterable[str] = ALL_CHECKS,
    rng_for: Callable[[int], random.Random] = random.Random,
    max_val: int = 3,
    oracle_depth: int = 4,
) -> dict:
    names = tuple(names)
    passes = dict.fromkeys(names, 0)
    failures: list[dict] = []
    cases = 0
    for index, q in enumerate(quivers):
        result = run_checks(q, names, rng_for(index), max_val, oracle_depth)
        cases += 1
        for name, outcome in result.checks.items():
            passes[name] = passes.get(name, 0) + outcome.passed
        failures.extend(_failure_entries(index, result))
    return {"cases_run": cases, "passes": passes, "failures": failures}


def fuzz(cfg: FuzzConfig, names: Iterable[str] = ALL_CHECKS, timing: bool = False) -> dict:
    """Run the checks on ``cfg.count`` random quivers.

    The report is a pure function of ``cfg`` unless ``timing`` is set.
    """
    started = time.perf_counter()
    quivers = (random_quiver(cfg, k) for k in range(cfg.count))
    body = run_family(
        quivers,
        names,
        # separate stream from the one generating the quiver itself
        lambda k: random.Random(cfg.seed * 2**64 + k + 2**63),
        cfg.max_val,
        cfg.oracle_depth,
    )
    return {
        "schema_version": 1,
        "config": asdict(cfg),
        **body,
        "timing_ms": round((time.perf_counter() - started) * 1000) if timing else None,
    }


def enumerate_report(n: int, names: Iterable[str] = ALL_CHECKS, timing: bool = False) -> dict:
    started = time.perf_counter()
    body = run_family(enumerate_digraphs(n), names)
    return {
        "schema_version": 1,
        "vertices": n,
        **body,
        "timing_ms": round((time.perf_counter() - started) * 1000) if timing else None,
    }
