"""Exhaustive search for squares U_n(P, Q) over a box of coprime pairs.

For each admissible (P, Q) the sequence is walked once up to n_max, so every
index in [n_min, n_max] costs one step of the recurrence plus a residue test.
Work is split into contiguous P-chunks that can run in separate processes;
the merged output is sorted and does not depend on the worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd, isqrt

from lucas_squares.lucas_core import SIEVE_MODULI, SolutionRecord, _residue_table

log = logging.getLogger(__name__)

MAX_INDEX = 16


@dataclass(frozen=True)
class SearchSpec:
    n_min: int = 8
    n_max: int = 12
    p_max: int = 100
    q_max: int = 100
    workers: int = 1
    # also scan -p_max..-1; for odd n this mirrors the positive hits
    include_negative_p: bool = False

    def __post_init__(self):
        if not 2 <= self.n_min <= self.n_max <= MAX_INDEX:
            raise ValueError(f"need 2 <= n_min <= n_max <= {MAX_INDEX}")
        if self.p_max < 1 or self.q_max < 1:
            raise ValueError("p_max and q_max must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SearchStats:
    pairs_scanned: int = 0
    degenerate_skipped: int = 0
    non_coprime_skipped: int = 0
    values_tested: int = 0
    negative_values: int = 0
    sieve_rejections: int = 0
    exact_tests: int = 0
    hits: int = 0

    def merge(self, other: SearchStats) -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class SearchResult:
    spec: SearchSpec
    records: list[SolutionRecord] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)


def partition(spec: SearchSpec) -> list[range]:
    """Split P = 1..p_max into at most `workers` contiguous, disjoint chunks."""
    k = min(spec.workers, spec.p_max)
    base, extra = divmod(spec.p_max, k)
    chunks, start = [], 1
    for i in range(k):
        size = base + (i < extra)
        chunks.append(range(start, start + size))
        start += size
    return chunks


def _scan_chunk(spec: SearchSpec, p_range: range) -> tuple[list[SolutionRecord], SearchStats]:
    stats = SearchStats()
    hits: list[SolutionRecord] = []
    tables = [(m, _residue_table(m)) for m in SIEVE_MODULI]
    (m1, t1), (m2, t2), (m3, t3), (m4, t4) = tables
    n_min, n_max, q_max = spec.n_min, spec.n_max, spec.q_max
    mirror = spec.include_negative_p

    def test(v: int) -> int | None:
        stats.values_tested += 1
        if v < 0:
            stats.negative_values += 1
            return None
        if not (t1[v % m1] and t2[v % m2] and t3[v % m3] and t4[v % m4]):
            stats.sieve_rejections += 1
            return None
        stats.exact_tests += 1
        r = isqrt(v)
        return r if r * r == v else None

    for P in p_range:
        for Q in range(-q_max, q_max + 1):
            if Q == 0:
                continue
            if gcd(P, Q) != 1:
                stats.non_coprime_skipped += 1
                continue
            stats.pairs_scanned += 1
            # (1,1), (2,1) are degenerate; so are their mirrors (-1,1), (-2,1)
            if Q == 1 and P <= 2:
                stats.degenerate_skipped += 1
                continue
            u0, u1 = 0, 1
            for n in range(2, n_max + 1):
                u0, u1 = u1, P * u1 - Q * u0
                if n < n_min:
                    continue
                r = test(u1)
                if r is not None:
                    hits.append(SolutionRecord(n, P, Q, u1, r))
                if mirror:
                    v = u1 if n % 2 else -u1
                    r = test(v)
                    if r is not None:
                        hits.append(SolutionRecord(n, -P, Q, v, r))
    stats.hits = len(hits)
    return hits, stats


def run_search_with_stats(spec: SearchSpec) -> SearchResult:
    chunks = partition(spec)
    result = SearchResult(spec)
    if spec.workers == 1 or len(chunks) == 1:
        parts = [_scan_chunk(spec, c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_scan_chunk, [spec] * len(chunks), chunks))
    for hits, stats in parts:
        result.records.extend(hits)
        result.stats.merge(stats)
    result.records.sort(key=lambda r: (r.n, r.P, r.Q))
    log.info("search %s: %s", spec, result.stats)
    return result


def run_search(spec: SearchSpec) -> list[SolutionRecord]:
    """All square values U_n(P, Q), n_min <= n <= n_max, over the admissible box, sorted by (n, P, Q)."""
    return run_search_with_stats(spec).records
