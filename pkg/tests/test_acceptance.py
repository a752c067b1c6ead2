"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

All arithmetic is exact, so every comparison below is an equality.
Run alone with `pytest tests/test_acceptance.py -v` or `python tests/test_acceptance.py`.
"""

import random
import time
from math import isqrt

import pytest

from lucas_squares.descent_verify import (
    EXPECTED_QUARTIC_SETS,
    QUARTICS,
    exponent_case_checks,
    mod4_elimination_u8,
    mod121_u11,
    quartic_solutions,
    quartic_to_pq,
    verify_cited_points,
)
from lucas_squares.families import u7_multiples
from lucas_squares.lucas_core import LucasParams, SolutionRecord, is_perfect_square, lucas_u
from lucas_squares.numfield import verify_constant_registry
from lucas_squares.polynomials import FACTORIZATIONS, verify_factorization
from lucas_squares.search import SearchSpec, run_search, run_search_with_stats


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        assert ok, detail

    return emit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_search_box_300(report):
    hits, dt = timed(lambda: run_search(SearchSpec(8, 12, 300, 300, workers=1)))
    got = [(r.n, r.P, r.Q, r.value, r.root) for r in hits]
    expected = [(8, 1, -4, 441, 21), (8, 4, -17, 384400, 620), (12, 1, -1, 144, 12)]
    report(1, got == expected and dt < 120, f"search 8..12 box 300 -> {got} in {dt:.2f}s (limit 120s)")


def test_criterion_2_u7_family(report):
    walk = u7_multiples(7)
    pairs = [(abs(m.P), m.Q) for m in walk]
    expected = [(1, 1), (1, 5), (2, -1), (5, 21), (1, -104), (21, 545), (52, 415)]
    flags = [m.degenerate for m in walk]
    squares = all(is_perfect_square(lucas_u(7, LucasParams(P, Q))) is not None for P, Q in pairs)
    for m in walk[1:]:
        SolutionRecord.verified(7, m.P, m.Q)
    ok = pairs == expected and flags == [True] + [False] * 6 and squares
    report(2, ok, f"pairs {pairs}; degenerate flags {flags}")


def test_criterion_3_factorizations(report):
    results, dt = timed(lambda: {n: verify_factorization(n) for n in sorted(FACTORIZATIONS)})
    ok = sorted(results) == [4, 5, 6, 7, 8, 10, 11] and all(results.values()) and dt < 1
    report(3, ok, f"{results} in {dt:.3f}s (limit 1s)")


def test_criterion_4_registry(report):
    checks, dt = timed(lambda: [c for k in ("K1", "K2", "K3") for c in verify_constant_registry(k)])
    names = {c.name for c in checks}
    required = {
        "norm eps1", "norm eps2", "norm eps3", "norm eps4", "norm 1+phi", "factorization of 2",
        "conjugate of eps", "sigma order 5", "eps cocycle", "norm theta_j - theta_k",
        "U11 splitting", "theta ordering",
    }
    failed = [c.name for c in checks if not c.passed]
    ok = required <= names and not failed and dt < 5
    report(4, ok, f"{len(checks) - len(failed)}/{len(checks)} registry checks in {dt:.2f}s (limit 5s); failed {failed}")


def test_criterion_5_descent_finite_checks(report):
    checks = mod4_elimination_u8() + mod121_u11() + exponent_case_checks()
    failed = [c.name for c in checks if not c.passed]
    details = {c.name: c.detail for c in checks}
    ok = (
        not failed
        and details["U8 mod 4 elimination (odd P)"] == "feasible [(1, 1, 1), (1, -1, -1)]"
        and details["U8 mod 4 elimination (even P)"] == "feasible [(1, 1, 1), (-1, -1, 1)]"
        and details["U11(x,1) mod 121"] == "0 roots among 121 residues"
        and details["U11 exponent survivors"] == "[(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 1)]"
    )
    report(5, ok, "; ".join(f"{c.name}: {c.detail}" for c in checks if c.name != "U11 sign formulas"))


def test_criterion_6_quartics(report):
    def scan():
        return {e: quartic_solutions(e, 1000) for e in sorted(QUARTICS)}

    sols, dt = timed(scan)
    sets = {e: {(s.a, s.b) for s in v} for e, v in sols.items()}
    mapped = [quartic_to_pq(s) for v in sols.values() for s in v]
    valid = {(m.P, m.Q) for m in mapped if m.params is not None}
    rejected = {(m.P, m.Q): m.reason for m in mapped if m.params is None}
    expected_rejected = {
        (1, 0): "P = 0 or Q = 0",
        (1, 1): "degenerate (PeriodicPM11)",
        (0, -1): "P = 0 or Q = 0",
        (4, 4): "gcd(P, Q) = 4",
        (0, 1): "P = 0 or Q = 0",
    }
    ok = (
        sets == EXPECTED_QUARTIC_SETS
        and sets == {1: {(1, 1), (1, 3)}, 2: {(1, 1)}, 3: {(0, 1), (1, 2), (1, 5)}, 4: {(0, 1)}}
        and valid == {(1, -4), (4, -17)}
        and rejected == expected_rejected
        and dt < 30
    )
    report(6, ok, f"sets {sets}; valid {sorted(valid)}; rejected {rejected}; {dt:.2f}s (limit 30s)")


def test_criterion_7_cited_points(report):
    checks = verify_cited_points()
    by_name = {c.name: c for c in checks}
    e2 = [c for c in checks if c.name.startswith("e2 point")]
    e4 = by_name["e4 point (-2 eps, eps)"]
    ok = (
        all(c.passed for c in checks)
        and len(e2) == 2
        and [c.paper_anchor for c in e2] == [
            "point on e2 corresponding to Q = 0",
            "point on e2 corresponding to Q = 1",
        ]
        and "(P, Q) = (5, 10)" in e4.detail
        and by_name["U11 eta=1 point (0, eps3 eps4)"].passed
        and by_name["genus-2 generator"].passed
    )
    report(7, ok, f"{sum(c.passed for c in checks)}/{len(checks)} cited-point checks; e4 {e4.detail}")


def _square_oracle():
    for N in range(-10**6, 10**6 + 1):
        r = isqrt(N) if N >= 0 else None
        expected = r if r is not None and r * r == N else None
        if is_perfect_square(N) != expected:
            return False, f"disagree at {N}"
    rng = random.Random(8128)
    for _ in range(10**4):
        N = rng.getrandbits(256)
        if rng.random() < 0.5:
            N = rng.getrandbits(128) ** 2
        r = isqrt(N)
        if is_perfect_square(N) != (r if r * r == N else None):
            return False, f"disagree at {N}"
    return True, "2000001 consecutive, 10^4 random 256-bit"


def _lucas_laws():
    rng = random.Random(496)
    for _ in range(2000):
        n = rng.randint(1, 80)
        P, Q = rng.choice([-1, 1]) * rng.randint(1, 10**4), rng.choice([-1, 1]) * rng.randint(1, 10**4)
        k = rng.randint(1, 50)
        base = lucas_u(n, LucasParams(P, Q))
        if lucas_u(n, LucasParams(-P, Q)) != (-1) ** (n + 1) * base:
            return False, f"parity fails at {(n, P, Q)}"
        if lucas_u(n, LucasParams(k * P, k * k * Q)) != k ** (n - 1) * base:
            return False, f"scaling fails at {(n, P, Q, k)}"
    return True, "parity and scaling on 2000 random (n, P, Q, k)"


def _determinism():
    base = run_search_with_stats(SearchSpec(8, 12, 120, 120, workers=1))
    for w in (2, 4):
        other = run_search_with_stats(SearchSpec(8, 12, 120, 120, workers=w))
        if other.records != base.records or other.stats != base.stats:
            return False, f"workers={w} differs"
    return True, "workers 1, 2, 4 identical"


@pytest.mark.slow
def test_criterion_8_property_suites(report):
    results = [_square_oracle(), _lucas_laws(), _determinism()]
    report(8, all(ok for ok, _ in results), "; ".join(d for _, d in results))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
