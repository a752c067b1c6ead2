"""Infinite families of (P, Q) with U_n(P, Q) a square, for n = 2..7.

Every generator recomputes U_n from the recurrence before emitting a record;
the algebra only proposes candidates. Degenerate pairs and Q = 0 are never
emitted. For odd n, U_n(-P, Q) = U_n(P, Q), so those families are emitted
with P >= 1; for even n the sign of P changes the sign of U_n and negative-P
members are kept as they are.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt
from typing import Iterator

from lucas_squares.ecq import U7_CURVE, U7_GENERATOR
from lucas_squares.lucas_core import SolutionRecord, is_admissible, is_perfect_square

log = logging.getLogger(__name__)


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyRequest:
    n: int
    count: int = 10
    coeff_bound: int = 50

    def __post_init__(self):
        if not 2 <= self.n <= 7:
            raise FamilyError(f"families exist for n = 2..7, got n={self.n}")
        if self.count < 1 or self.coeff_bound < 1:
            raise FamilyError("count and coeff_bound must be >= 1")


def _record(n: int, P: int, Q: int) -> SolutionRecord:
    if Q == 0:
        raise FamilyError(f"Q = 0 for P={P}")
    if gcd(P, Q) != 1:
        raise FamilyError(f"gcd({P}, {Q}) != 1")
    if not is_admissible(P, Q):
        raise FamilyError(f"({P}, {Q}) is a degenerate pair")
    try:
        return SolutionRecord.verified(n, P, Q)
    except ValueError as exc:
        raise FamilyError(str(exc)) from exc


def family_u2(a: int, Q: int) -> SolutionRecord:
    """U_2 = P, so P = a^2."""
    if a < 1:
        raise FamilyError("a must be >= 1")
    return _record(2, a * a, Q)


def family_u3(a: int, P: int) -> SolutionRecord:
    """U_3 = P^2 - Q, so Q = P^2 - a^2."""
    if a < 1 or P == 0:
        raise FamilyError("need a >= 1 and P != 0")
    P = abs(P)
    return _record(3, P, P * P - a * a)


def family_u4(delta: int, a: int, b: int, branch: str) -> SolutionRecord:
    """U_4 = P(P^2 - 2Q).

    odd branch:  P = delta a^2,  Q = (a^4 - delta b^2)/2, ab odd
    even branch: P = 2 delta a^2, Q = 2a^4 - delta b^2,   b odd
    """
    if delta not in (1, -1):
        raise FamilyError("delta must be +1 or -1")
    if a < 1 or b < 1:
        raise FamilyError("a and b must be >= 1")
    if branch == "odd":
        if not (a % 2 and b % 2):
            raise FamilyError("odd branch needs ab odd")
        twice_q = a**4 - delta * b * b
        if twice_q % 2:
            raise FamilyError("Q is not integral")
        P, Q = delta * a * a, twice_q // 2
    elif branch == "even":
        if not b % 2:
            raise FamilyError("even branch needs b odd")
        P, Q = 2 * delta * a * a, 2 * a**4 - delta * b * b
    else:
        raise FamilyError(f"branch must be 'odd' or 'even', got {branch!r}")
    return _record(4, P, Q)


def family_u5(a: int, b: int) -> list[SolutionRecord]:
    """U_5 = P^4 - 3P^2 Q + Q^2 from Q/P^2 = (5l^2 + 6lm + m^2)/(4lm), (l, m) = (a^2, +-b^2).

    Both signs of m give U_5 = (5a^4 - b^4)^2 (divided by 16 when a, b are odd).
    """
    if a == 0 or b == 0:
        raise FamilyError("a and b must be nonzero")
    a, b = abs(a), abs(b)
    if gcd(a, b) != 1:
        raise FamilyError(f"gcd({a}, {b}) != 1")
    plus = 5 * a**4 + 6 * a * a * b * b + b**4
    minus = -5 * a**4 + 6 * a * a * b * b - b**4
    if (a + b) % 2:
        candidates = [(2 * a * b, plus), (2 * a * b, minus)]
    else:
        candidates = [(a * b, plus // 4), (a * b, minus // 4)]
    out = []
    for P, Q in candidates:
        try:
            out.append(_record(5, P, Q))
        except FamilyError as exc:
            log.debug("u5 candidate (%d, %d) dropped: %s", P, Q, exc)
    return out


# (P as multiple of a^2, P^2 - Q as multiple of b^2, condition coefficients (x, y) meaning
# x a^4 + y b^2 must be a square)
U6_CASES: dict[int, tuple[int, int, tuple[int, int]]] = {
    1: (1, 1, (-2, 3)),
    2: (1, -2, (1, 3)),
    3: (-1, 2, (1, -3)),
    4: (3, 1, (-6, 1)),
    5: (3, -1, (6, 1)),
    6: (3, 2, (-3, 1)),
    7: (3, -2, (3, 1)),
}


def family_u6(case_id: int, bound: int) -> list[SolutionRecord]:
    """Enumerate 1 <= a, b <= bound satisfying one of the seven U_6 case conditions."""
    if case_id not in U6_CASES:
        raise FamilyError(f"case_id must be 1..7, got {case_id}")
    if bound < 1:
        raise FamilyError("bound must be >= 1")
    p_mult, d_mult, (ca, cb) = U6_CASES[case_id]
    out = []
    for a in range(1, bound + 1):
        a2, a4 = a * a, a**4
        for b in range(1, bound + 1):
            if is_perfect_square(ca * a4 + cb * b * b) is None:
                continue
            P = p_mult * a2
            Q = P * P - d_mult * b * b
            if not is_admissible(P, Q):
                continue
            out.append(_record(6, P, Q))
    return out


@dataclass(frozen=True)
class U7Member:
    """One multiple k*P0 on the U_7 curve and the pair it yields."""

    k: int
    x: Fraction
    P: int
    Q: int

    @property
    def admissible(self) -> bool:
        return is_admissible(self.P, self.Q)

    @property
    def degenerate(self) -> bool:
        return not self.admissible


def iter_u7_members() -> Iterator[U7Member]:
    """Walk k*P0 for k = 1, 2, ..., skipping the multiple with x = 0 (Q = 0).

    x(k P0) = -Q/P^2, so a reduced x = u/v must have v = s^2; then P = s, Q = -u.
    """
    acc = U7_GENERATOR
    k = 1
    while True:
        if acc.is_infinity:
            raise ArithmeticError("generator has finite order")
        u, v = acc.x.numerator, acc.x.denominator
        s = isqrt(v)
        if s * s != v:
            raise ArithmeticError(f"x({k} P0) = {acc.x} has non-square denominator")
        if u != 0:
            yield U7Member(k, acc.x, s, -u)
        acc = U7_CURVE.add(acc, U7_GENERATOR)
        k += 1


def u7_multiples(count: int) -> list[U7Member]:
    """The first `count` members of the U_7 walk, degenerate ones included."""
    if count < 1:
        raise FamilyError("count must be >= 1")
    return list(islice(iter_u7_members(), count))


def family_u7(count: int) -> list[SolutionRecord]:
    """First `count` verified records from the multiples of P0 = (-1, 1)."""
    if count < 1:
        raise FamilyError("count must be >= 1")
    members = (m for m in iter_u7_members() if m.admissible)
    return [_record(7, m.P, m.Q) for m in islice(members, count)]


def _diagonal(bound: int) -> Iterator[tuple[int, int]]:
    """(a, b) with 1 <= a, b <= bound, ordered by a + b then a."""
    for s in range(2, 2 * bound + 1):
        for a in range(max(1, s - bound), min(bound, s - 1) + 1):
            yield a, s - a


def generate(request: FamilyRequest) -> list[SolutionRecord]:
    """Up to request.count distinct records for U_n, searching parameters up to coeff_bound."""
    n, bound = request.n, request.coeff_bound
    if n == 7:
        return family_u7(request.count)
    if n == 6:
        found = {(r.P, r.Q): r for case_id in U6_CASES for r in family_u6(case_id, bound)}
        ordered = sorted(found.values(), key=lambda r: (abs(r.P) + abs(r.Q), r.P, r.Q))
        return ordered[: request.count]

    def candidates() -> Iterator[list[SolutionRecord]]:
        for a, b in _diagonal(bound):
            if n == 2:
                attempts = [lambda: family_u2(a, b), lambda: family_u2(a, -b)]
            elif n == 3:
                attempts = [lambda: family_u3(a, b)]
            elif n == 4:
                attempts = [
                    lambda d=d, br=br: family_u4(d, a, b, br)
                    for br in ("odd", "even")
                    for d in (1, -1)
                ]
            else:
                attempts = [lambda: family_u5(a, b)]
            for attempt in attempts:
                try:
                    got = attempt()
                except FamilyError:
                    continue
                yield got if isinstance(got, list) else [got]

    seen: set[tuple[int, int]] = set()
    out: list[SolutionRecord] = []
    for batch in candidates():
        for rec in batch:
            if (rec.P, rec.Q) not in seen:
                seen.add((rec.P, rec.Q))
                out.append(rec)
                if len(out) == request.count:
                    return out
    return out
