"""Exact Lucas sequences, square detection and degeneracy classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt

# Moduli for the quadratic-residue prefilter of is_perfect_square.
SIEVE_MODULI = (64, 63, 65, 11)


def _residue_table(m: int) -> bytes:
    table = bytearray(m)
    for r in range(m):
        table[r * r % m] = 1
    return bytes(table)


_SQUARE_TABLES = tuple((m, _residue_table(m)) for m in SIEVE_MODULI)


class Degeneracy(enum.Enum):
    NON_DEGENERATE = "NonDegenerate"
    # (P, Q) = (+-1, 1): U_n periodic with period 3 (up to sign)
    PERIODIC_PM11 = "PeriodicPM11"
    # (2, 1): U_n = n
    LINEAR_N = "LinearN"
    # (-2, 1): U_n = (-1)^(n+1) n
    ALTERNATING_N = "AlternatingN"


_DEGENERATE = {
    (1, 1): Degeneracy.PERIODIC_PM11,
    (-1, 1): Degeneracy.PERIODIC_PM11,
    (2, 1): Degeneracy.LINEAR_N,
    (-2, 1): Degeneracy.ALTERNATING_N,
}


@dataclass(frozen=True)
class LucasParams:
    """A parameter pair (P, Q) with both entries nonzero."""

    P: int
    Q: int

    def __post_init__(self):
        if self.P == 0 or self.Q == 0:
            raise ValueError(f"P and Q must be nonzero, got ({self.P}, {self.Q})")

    @property
    def coprime(self) -> bool:
        return gcd(self.P, self.Q) == 1

    @property
    def degenerate(self) -> bool:
        return (self.P, self.Q) in _DEGENERATE

    @property
    def discriminant(self) -> int:
        return self.P * self.P - 4 * self.Q


@dataclass(frozen=True, order=True)
class SolutionRecord:
    """A verified hit U_n(P, Q) = root**2."""

    n: int
    P: int
    Q: int
    value: int
    root: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.value < 0 or self.root < 0 or self.root * self.root != self.value:
            raise ValueError(f"root {self.root} does not square to {self.value}")

    @classmethod
    def verified(cls, n: int, P: int, Q: int) -> SolutionRecord:
        """Recompute U_n(P, Q) and build the record; raises if it is not a square."""
        value = lucas_u_iter(n, P, Q)
        root = is_perfect_square(value)
        if root is None:
            raise ValueError(f"U_{n}({P}, {Q}) = {value} is not a square")
        return cls(n, P, Q, value, root)


def lucas_u_iter(n: int, P: int, Q: int) -> int:
    """U_n(P, Q) by walking the recurrence; O(n) multiplications."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 0, 1  # U_{k-1}, U_k with k = 1
    if n == 0:
        return 0
    for _ in range(n - 1):
        prev, cur = cur, P * cur - Q * prev
    return cur


def lucas_u_fast(n: int, P: int, Q: int) -> int:
    """U_n(P, Q) by fast doubling on the pair (U_k, U_{k+1}).

    Uses U_{2k} = U_k (2 U_{k+1} - P U_k) and U_{2k+1} = U_{k+1}^2 - Q U_k^2,
    which need no division and so hold for every integer Q, including 0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    u, u1 = 0, 1
    for bit in bin(n)[2:]:
        u, u1 = u * (2 * u1 - P * u), u1 * u1 - Q * u * u
        if bit == "1":
            u, u1 = u1, P * u1 - Q * u
    return u


def lucas_u(n: int, params: LucasParams) -> int:
    """Exact U_n for a LucasParams pair (degenerate pairs are allowed)."""
    if n < 64:
        return lucas_u_iter(n, params.P, params.Q)
    return lucas_u_fast(n, params.P, params.Q)


def sieve_rejects(N: int) -> bool:
    """True when N is certainly not a square (negative or a non-residue)."""
    if N < 0:
        return True
    for m, table in _SQUARE_TABLES:
        if not table[N % m]:
            return True
    return False


def is_perfect_square(N: int) -> int | None:
    """Return r >= 0 with r*r == N, or None if N is not a perfect square."""
    if sieve_rejects(N):
        return None
    r = isqrt(N)
    return r if r * r == N else None


def classify_degenerate(params: LucasParams) -> Degeneracy:
    return _DEGENERATE.get((params.P, params.Q), Degeneracy.NON_DEGENERATE)


def is_admissible(P: int, Q: int) -> bool:
    """Nonzero, coprime and non-degenerate: the pairs the classification is about."""
    return P != 0 and Q != 0 and gcd(P, Q) == 1 and (P, Q) not in _DEGENERATE
