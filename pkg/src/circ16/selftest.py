"""Named self-checks run by ``circ16 selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .circulant import det_bareiss, det_via_norms
from .classifier import classify, verify_verdict
from .errors import Circ16Error, NotClassPM3
from .numtheory import primes_below
from . import properties, search, witness

QUICK_VECTORS = 2_000
FULL_VECTORS = 10_000

MEMBER_TABLE = [0, 128, -128, 256, 320, 576, 1088, 2880, 64 * 73, 64 * 89, 64 * 97]
NON_MEMBER_TABLE = [2, 4, 96, 64, -64, 192, 448, 64 * 49, 7232, 64 * 3 * 7, 64 * 7 * 23]
NEGATIVE_EVIDENCE = (64, 192, 448, 7232)

PUBLISHED_MODULUS = {2: 4, 4: 16, 8: 32}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def in_published_set(n: int, value: int) -> bool:
    """Membership in Z_odd u mZ with m = 4, 16, 32 for orders 2, 4, 8."""
    return value % 2 == 1 or value % PUBLISHED_MODULUS[n] == 0


def _guard(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except Circ16Error as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, ok, detail)


def _property_checks(count: int, seed: int) -> list[CheckResult]:
    vectors = properties.random_vectors(count, seed)
    tallies = properties.run_suite(vectors, properties.PROPERTIES + (properties.CROSS_ORACLE,))
    out = []
    for t in tallies.values():
        detail = f"checked={t.checked} applicable={t.applicable} violations={len(t.violations)}"
        if t.has_hypothesis:
            detail += f" hit_rate={t.hit_rate:.4f} (floor {properties.MIN_HIT_RATE})"
        if t.violations:
            detail += f" first_violation={list(t.violations[0])}"
        out.append(CheckResult(t.name, t.passed(), detail))
    failures = properties.small_integer_identities()
    out.append(CheckResult("small-integer-identities", not failures, f"failures={failures[:3]}"))
    return out


def _base128() -> tuple[bool, str]:
    vec = witness.base128_witness()
    return det_bareiss(vec) == 128 and det_via_norms(vec) == 128, f"vector={list(vec)}"


def _classifier_table() -> tuple[bool, str]:
    bad = []
    for v in list(range(-99, 100, 2)) + MEMBER_TABLE:
        verdict = classify(v)
        if not (verdict.member and verify_verdict(verdict)):
            bad.append(v)
    for v in NON_MEMBER_TABLE:
        verdict = classify(v)
        if verdict.member or not verify_verdict(verdict):
            bad.append(v)
    return not bad, f"misclassified={bad}"


def _round_trips(limit: int) -> tuple[bool, str]:
    bad = []
    for v in list(range(-limit, limit + 1)) + MEMBER_TABLE:
        verdict = classify(v)
        if verdict.member and det_bareiss(witness.build_witness(verdict)) != v:
            bad.append(v)
    return not bad, f"failed={bad[:10]}"


def _prime_sweep(limit: int) -> tuple[bool, str]:
    bad = []
    for p in primes_below(limit):
        try:
            if p % 8 == 5:
                witness.witness_64p_5mod8(p)
            elif p % 8 == 3:
                witness.witness_64p2_3mod8(p)
            elif p % 8 == 1:
                try:
                    witness.witness_64p_1mod8(p)
                except NotClassPM3:
                    pass
        except Circ16Error:
            bad.append(p)
    return not bad, f"failed={bad}"


def _spectra() -> tuple[bool, str]:
    boxes = [search.SearchBox(2, -3, 3), search.SearchBox(4, -2, 2), search.SearchBox(8, -1, 1)]
    bad = []
    for box in boxes:
        report = search.spectrum(box)
        bad += [(box.n, v) for v in report.values if not in_published_set(box.n, v)]
    return not bad, f"outside={bad[:10]}"


def _oracle_soundness(box: search.SearchBox, jobs: int, absent: tuple[int, ...] = ()) -> tuple[bool, str]:
    report = search.spectrum(box, jobs=jobs)
    non_members = sorted(v for v in report.values if not classify(v).member)
    present = [v for v in absent if v in report.values]
    detail = (
        f"visited={report.visited} distinct={len(report.values)} "
        f"non_members={non_members[:10]} unexpectedly_attained={present}"
    )
    return not non_members and not present, detail


def run_selftest(level: str = "quick", seed: int = 0, jobs: int = 1) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    results = [_guard("base128-constant", _base128)]
    results += _property_checks(FULL_VECTORS if full else QUICK_VECTORS, seed)
    results.append(_guard("classifier-table", _classifier_table))
    results.append(_guard("witness-round-trip", lambda: _round_trips(5000 if full else 600)))
    results.append(_guard("prime-sweep", lambda: _prime_sweep(1000 if full else 200)))
    results.append(_guard("published-spectra", _spectra))
    results.append(_guard("oracle-soundness-01", lambda: _oracle_soundness(search.SearchBox(16, 0, 1), 1)))
    if full:
        box = search.SearchBox(16, -1, 1)
        results.append(_guard("oracle-soundness-negative-evidence",
                              lambda: _oracle_soundness(box, jobs, NEGATIVE_EVIDENCE)))
    return results
