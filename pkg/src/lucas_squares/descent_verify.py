"""Finite, mechanical checks behind the U_8, U_10 and U_11 descents.

Nothing here extracts square roots in a number field. Every claim is reduced
to an exact polynomial identity, a sign under a real embedding, an on-curve
test for an explicitly given point, or an integer square test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, NamedTuple, Optional

from lucas_squares.ecq import CurveQ, RationalPoint, cubic_from_roots
from lucas_squares.lucas_core import (
    LucasParams,
    classify_degenerate,
    is_admissible,
    is_perfect_square,
    lucas_u_iter,
)
from lucas_squares.numfield import (
    K1,
    K2,
    K3,
    K3_SMALLEST_ROOT,
    THETAS,
    NFElement,
    conj,
    sigma,
)
from lucas_squares.polynomials import BivarPoly, grid_equal, lucas_u_poly
from lucas_squares.polynomials import P as _P
from lucas_squares.polynomials import Q as _Q
from lucas_squares.report import Check, check

DEFAULT_QUARTIC_BOUND = 1000

# --------------------------------------------------------------------------
# The four quartics coming from U_8 = square


def _eq1(a: int, b: int) -> int:
    return -(a**8) + 2 * a**4 * b * b + b**4  # = 2 c^2


def _eq2(a: int, b: int) -> int:
    return -(a**8) - 2 * a**4 * b * b + b**4  # = -2 c^2


def _eq3(a: int, b: int) -> int:
    return -64 * a**8 + 16 * a**4 * b * b + b**4  # = c^2


def _eq4(a: int, b: int) -> int:
    return -64 * a**8 - 16 * a**4 * b * b + b**4  # = c^2


# eq_id -> (left-hand side, k) with lhs = k * c^2
QUARTICS: dict[int, tuple[Callable[[int, int], int], int]] = {
    1: (_eq1, 2),
    2: (_eq2, -2),
    3: (_eq3, 1),
    4: (_eq4, 1),
}

# solution sets (a, b) with a, b >= 0 and gcd(a, b) = 1 claimed for each quartic
EXPECTED_QUARTIC_SETS: dict[int, set[tuple[int, int]]] = {
    1: {(1, 1), (1, 3)},
    2: {(1, 1)},
    3: {(0, 1), (1, 2), (1, 5)},
    4: {(0, 1)},
}


@dataclass(frozen=True, order=True)
class QuarticSolution:
    eq_id: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.eq_id not in QUARTICS:
            raise ValueError(f"eq_id must be 1..4, got {self.eq_id}")
        lhs, k = QUARTICS[self.eq_id]
        if self.c < 0 or lhs(self.a, self.b) != k * self.c * self.c:
            raise ValueError(f"{self} does not satisfy equation {self.eq_id}")


def quartic_solutions(eq_id: int, bound: int = DEFAULT_QUARTIC_BOUND) -> list[QuarticSolution]:
    """All solutions with 0 <= a, b <= bound and gcd(a, b) = 1."""
    if eq_id not in QUARTICS:
        raise ValueError(f"eq_id must be 1..4, got {eq_id}")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    lhs, k = QUARTICS[eq_id]
    out = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            if gcd(a, b) != 1:
                continue
            v = lhs(a, b)
            if v % k:
                continue
            c = is_perfect_square(v // k)
            if c is not None:
                out.append(QuarticSolution(eq_id, a, b, c))
    return out


class QuarticMapping(NamedTuple):
    P: int
    Q: int
    params: Optional[LucasParams]
    reason: str


def quartic_to_pq(sol: QuarticSolution) -> QuarticMapping:
    """Undo the substitutions that produced the quartic.

    P odd:  eq1 from (P, P^2-2Q) = (a^2, b^2), eq2 from (a^2, -b^2).
    P = 4p: eq3 from (p, 8p^2-Q) = (a^2, b^2), eq4 from (-a^2, -b^2).
    """
    a2, b2 = sol.a**2, sol.b**2
    if sol.eq_id == 1:
        P, twice_q = a2, a2 * a2 - b2
    elif sol.eq_id == 2:
        P, twice_q = a2, a2 * a2 + b2
    elif sol.eq_id == 3:
        P, twice_q = 4 * a2, 2 * (8 * a2 * a2 - b2)
    else:
        P, twice_q = -4 * a2, 2 * (8 * a2 * a2 + b2)
    if twice_q % 2:
        return QuarticMapping(P, 0, None, "Q not integral")
    Q = twice_q // 2
    if P == 0 or Q == 0:
        return QuarticMapping(P, Q, None, "P = 0 or Q = 0")
    if gcd(P, Q) != 1:
        return QuarticMapping(P, Q, None, f"gcd(P, Q) = {gcd(P, Q)}")
    params = LucasParams(P, Q)
    if params.degenerate:
        return QuarticMapping(P, Q, None, f"degenerate ({classify_degenerate(params).value})")
    return QuarticMapping(P, Q, params, "ok")


def quartic_checks(bound: int = DEFAULT_QUARTIC_BOUND) -> list[Check]:
    out = []
    valid: set[tuple[int, int]] = set()
    rejected: dict[tuple[int, int], str] = {}
    for eq_id in sorted(QUARTICS):
        sols = quartic_solutions(eq_id, bound)
        found = {(s.a, s.b) for s in sols}
        out.append(
            check(
                f"quartic eq{eq_id} scan",
                f"solution set of quartic {eq_id} is {sorted(EXPECTED_QUARTIC_SETS[eq_id])}",
                found == EXPECTED_QUARTIC_SETS[eq_id],
                f"bound {bound}: " + ", ".join(f"(a,b,c)=({s.a},{s.b},{s.c})" for s in sols),
            )
        )
        for s in sols:
            m = quartic_to_pq(s)
            if m.params is None:
                rejected[(m.P, m.Q)] = m.reason
            else:
                valid.add((m.P, m.Q))
    out.append(
        check(
            "quartic to (P, Q)",
            "only (P, Q) = (1, -4) and (4, -17) survive",
            valid == {(1, -4), (4, -17)},
            f"valid {sorted(valid)}; rejected {sorted(rejected.items())}",
        )
    )
    squares = all(is_perfect_square(lucas_u_iter(8, P, Q)) is not None for P, Q in valid)
    out.append(check("quartic pairs give U8 squares", "U8(1,-4) = 21^2, U8(4,-17) = 620^2", squares))
    return out


# --------------------------------------------------------------------------
# Congruence eliminations

# sign patterns (s1, s2, s3): odd P, P = s1 a^2, P^2 - 2Q = s2 b^2, P^4 - 4P^2 Q + 2Q^2 = s3 c^2
# even P = 4p, p = s1 a^2, 8p^2 - Q = s2 b^2, 128p^4 - 32p^2 Q + Q^2 = s3 c^2
SIGN_PATTERNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
RETAINED_ODD = {(1, 1, 1), (1, -1, -1)}
RETAINED_EVEN = {(1, 1, 1), (-1, -1, 1)}


def mod4_feasible(system: str, pattern: tuple[int, int, int]) -> bool:
    """Can the sign pattern hold modulo 4 for some residues of a, b, c, Q?"""
    s1, s2, s3 = pattern
    m = 4
    odd = (1, 3)
    if system == "odd":
        # ab odd
        ranges = (odd, odd, range(m), range(m))
    elif system == "even":
        # bc odd
        ranges = (range(m), odd, odd, range(m))
    else:
        raise ValueError("system must be 'odd' or 'even'")
    for a, b, c, q in product(*ranges):
        if system == "odd":
            P = s1 * a * a
            second = P * P - 2 * q
            third = P**4 - 4 * P * P * q + 2 * q * q
        else:
            p = s1 * a * a
            second = 8 * p * p - q
            third = 128 * p**4 - 32 * p * p * q + q * q
        if (second - s2 * b * b) % m == 0 and (third - s3 * c * c) % m == 0:
            return True
    return False


def mod4_elimination_u8() -> list[Check]:
    out = []
    for system, retained in (("odd", RETAINED_ODD), ("even", RETAINED_EVEN)):
        feasible = {pat for pat in SIGN_PATTERNS if mod4_feasible(system, pat)}
        out.append(
            check(
                f"U8 mod 4 elimination ({system} P)",
                "two of the four sign patterns are impossible modulo 4",
                feasible == retained,
                f"feasible {sorted(feasible, reverse=True)}",
            )
        )
    return out


def mod121_u11() -> list[Check]:
    u11 = lucas_u_poly(11)
    roots121 = [x for x in range(121) if u11.evaluate(x, 1) % 121 == 0]
    roots11 = [x for x in range(11) if u11.evaluate(x, 1) % 11 == 0]
    return [
        check(
            "U11(x,1) mod 121",
            "U11(x,1) = 0 mod 11^2 has no solution",
            not roots121,
            f"{len(roots121)} roots among 121 residues",
        ),
        check(
            "U11(x,1) mod 11",
            "informational: roots mod 11 exist",
            bool(roots11),
            f"roots mod 11: {roots11}",
        ),
    ]


# --------------------------------------------------------------------------
# Sign table for U_11

# order of the L_j at the smallest embedding, largest first
L_ORDER = (1, 4, 5, 3, 2)
EXPECTED_SURVIVORS = {(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 1)}


@dataclass(frozen=True, order=True)
class UnitSignCase:
    i1: int
    i2: int
    i3: int
    i4: int

    def __post_init__(self):
        if (self.i2 + self.i3) % 2:
            raise ValueError("i2 + i3 must be even")

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return (self.i1, self.i2, self.i3, self.i4)

    def sign_vector(self) -> dict[int, int]:
        """Signs of L_1*, ..., L_5* implied by L_1 = eps1^i1 eps2^i2 eps3^i3 eps4^i4 * square."""
        i1, i2, i3, i4 = self.bits
        return {
            1: 1,
            2: (-1) ** (i1 + i2),
            3: (-1) ** i1,
            4: (-1) ** i4,
            5: (-1) ** (i3 + i4),
        }

    def consistent(self) -> bool:
        signs = self.sign_vector()
        seq = [signs[j] for j in L_ORDER]
        # negatives must form a suffix of the ordering, and be even in number
        first_neg = next((i for i, s in enumerate(seq) if s < 0), len(seq))
        suffix = all(s < 0 for s in seq[first_neg:])
        return suffix and seq.count(-1) % 2 == 0


def enumerate_unit_cases() -> list[UnitSignCase]:
    return [UnitSignCase(*bits) for bits in product((0, 1), repeat=4) if (bits[1] + bits[2]) % 2 == 0]


def exponent_case_table_u11() -> list[UnitSignCase]:
    return [case for case in enumerate_unit_cases() if case.consistent()]


def _unit_product(bits: tuple[int, ...]) -> NFElement:
    units = [K3.constants[f"eps{i}"] for i in range(1, 5)]
    out = K3.one
    for u, e in zip(units, bits):
        if e:
            out = out * u
    return out


def sign_formulas_hold() -> bool:
    """Recompute sgn(sigma^m(unit)) at the smallest root for all 16 exponent vectors."""
    for bits in product((0, 1), repeat=4):
        eta = _unit_product(bits)
        i1, i2, i3, i4 = bits
        predicted = {
            1: (-1) ** (i2 + i3),
            2: (-1) ** (i1 + i2),
            3: (-1) ** i1,
            4: (-1) ** i4,
            5: (-1) ** (i3 + i4),
        }
        for m in range(5):
            if sigma(eta, m).sign(K3_SMALLEST_ROOT) != predicted[m + 1]:
                return False
    return True


def exponent_case_checks() -> list[Check]:
    cases = enumerate_unit_cases()
    survivors = {c.bits for c in exponent_case_table_u11()}
    return [
        check("U11 exponent cases", "8 possibilities for (i1,i2,i3,i4)", len(cases) == 8, f"{len(cases)} cases"),
        check(
            "U11 sign formulas",
            "sgn(L2*) = (-1)^(i1+i2), sgn(L3*) = (-1)^i1, sgn(L4*) = (-1)^i4, sgn(L5*) = (-1)^(i3+i4)",
            sign_formulas_hold(),
            "recomputed from sigma and real embeddings",
        ),
        check(
            "U11 exponent survivors",
            "survivors (0,0,0,0), (1,0,0,0), (1,0,0,1)",
            survivors == EXPECTED_SURVIVORS,
            f"{sorted(survivors)}",
        ),
    ]


# --------------------------------------------------------------------------
# Cited points


@dataclass(frozen=True)
class NFPoint:
    """A point on y^2 = (x - r1)(x - r2)(x - r3), or the additive variant with x + r_i."""

    x: NFElement
    y: NFElement
    roots: tuple[NFElement, NFElement, NFElement]
    additive: bool = False

    @property
    def field(self):
        return self.x.field

    @property
    def curve(self) -> CurveQ:
        rs = tuple(-r for r in self.roots) if self.additive else self.roots
        return cubic_from_roots(*rs)

    def rhs(self) -> NFElement:
        s = 1 if self.additive else -1
        r1, r2, r3 = self.roots
        return (self.x + s * r1) * (self.x + s * r2) * (self.x + s * r3)

    def on_curve(self) -> bool:
        return self.y * self.y == self.rhs() and self.curve.on_curve(RationalPoint(self.x, self.y))


_eps = K2.constants["eps"]
_sqrt5 = K2.constants["sqrt5"]
_eps_inv = K2.constants["eps_inv"]

# U_10, (P,5) = 1, v = +-1: roots v*eps^-1*sqrt5, v*eps^3*sqrt5, v
E1_ROOTS = (3 - _eps, 3 + 4 * _eps, K2.one)
# U_10, (P,5) = 5, w = +-1: roots 5 w eps^-1, 5 w eps^3, w sqrt5
E3_ROOTS = (5 * _eps_inv, 5 * _eps**3, _sqrt5)


def _u10_point_to_pq(q: Fraction, scale: int, p: int = 1) -> tuple[int, int]:
    """q = Q / (scale * p^4) and P = scale * p^2."""
    Q = q * scale * p**4
    if Q.denominator != 1:
        raise ValueError(f"Q = {Q} is not integral")
    return scale * p * p, int(Q)


def verify_cited_points() -> list[Check]:
    out = []
    out.append(
        check(
            "e1/e2 roots",
            "eps^-1 sqrt5 = 3 - eps and eps^3 sqrt5 = 3 + 4 eps",
            _eps_inv * _sqrt5 == E1_ROOTS[0] and _eps**3 * _sqrt5 == E1_ROOTS[1],
        )
    )

    # e2 corresponds to v = -1; q = x / (v eps sqrt5) and (eps^-1/sqrt5) x must be rational
    v = -1
    for x, y, expect_q in ((K2.zero, _eps * _sqrt5, 0), (-2 - _eps, 1 + 3 * _eps, 1)):
        pt = NFPoint(x, y, E1_ROOTS, additive=True)
        cond = _eps_inv / _sqrt5 * x
        q = x / (v * _eps * _sqrt5)
        ok = pt.on_curve() and cond.is_rational() and q.is_rational() and q.rational() == expect_q
        P, Q = _u10_point_to_pq(q.rational(), 1) if q.is_rational() else (None, None)
        out.append(
            check(
                f"e2 point ({x}, {y})",
                f"point on e2 corresponding to Q = {expect_q}",
                ok,
                f"(eps^-1/sqrt5) x = {cond}; (P, Q) = ({P}, {Q})"
                + ("" if Q == 0 or P is None else f" admissible={is_admissible(P, Q)}"),
            )
        )

    # e4 corresponds to w = -1; r = x / (w eps), eps^-1 x must be rational
    w = -1
    x, y = -2 * _eps, _eps
    pt = NFPoint(x, y, E3_ROOTS, additive=True)
    r = x / (w * _eps)
    cond = _eps_inv * x
    P, Q = _u10_point_to_pq(r.rational(), 5) if r.is_rational() else (None, None)
    out.append(
        check(
            "e4 point (-2 eps, eps)",
            "point on e4 leads to (P, Q) = (5, 10), disallowed",
            pt.on_curve() and cond.is_rational() and (P, Q) == (5, 10) and not is_admissible(5, 10),
            f"eps^-1 x = {cond}; (P, Q) = ({P}, {Q}); gcd = {gcd(P, Q) if P else None}",
        )
    )

    # U_11, eta = 1: y^2 = (x + theta1)(x + theta2)(x + theta3)
    e3, e4 = K3.constants["eps3"], K3.constants["eps4"]
    t123 = (THETAS[1], THETAS[2], THETAS[3])
    pt = NFPoint(K3.zero, e3 * e4, t123, additive=True)
    out.append(
        check(
            "U11 eta=1 point (0, eps3 eps4)",
            "(x, y) = (0, eps3 eps4) corresponds to (P^2, Q) = (1, 0)",
            pt.on_curve() and THETAS[1] * THETAS[2] * THETAS[3] == (e3 * e4) ** 2,
            "x = -Q/P^2 = 0",
        )
    )

    e1 = K3.constants["eps1"]
    e2 = K3.constants["eps2"]
    deltas_ok = True
    for eta, delta in ((e1, e1 * e2 * e3), (e1 * e4, e1)):
        deltas_ok &= eta * sigma(eta) * sigma(eta, 2) == delta
    out.append(
        check(
            "U11 eta curves",
            "eta = eps1, eps1 eps4 give delta = eps1 eps2 eps3, eps1",
            deltas_ok,
            "eta * eta^sigma * eta^sigma^2 computed exactly",
        )
    )
    out.extend(verify_genus2_point())
    return out


def genus2_rhs(x):
    return -(x**5) + 15 * x**4 - 35 * x**3 + 28 * x**2 - 9 * x + 1


def verify_genus2_point() -> list[Check]:
    gx = (3 + _sqrt5) / 2
    gy = (11 + 5 * _sqrt5) / 2
    u11 = lucas_u_poly(11)
    # the quintic is U_11(1, x): substitute P = 1, Q = x
    quintic_matches = all(u11.evaluate(1, t) == genus2_rhs(t) for t in range(6))
    return [
        check(
            "genus-2 model",
            "y^2 = -x^5 + 15x^4 - 35x^3 + 28x^2 - 9x + 1 is U11(1, x)",
            quintic_matches,
        ),
        check(
            "genus-2 generator",
            "((3+sqrt5)/2, (11+5sqrt5)/2) on C",
            gy * gy == genus2_rhs(gx),
            f"x = {gx} = eps^2: {gx == _eps**2}; y = {gy} = eps^5: {gy == _eps**5}",
        ),
        check(
            "genus-2 rational points",
            "(0, +-1) on C",
            all(yy * yy == genus2_rhs(0) for yy in (1, -1)),
        ),
        check(
            "genus-2 negative control",
            "(1, 1) is not on C",
            genus2_rhs(1) != 1,
            f"RHS(1) = {genus2_rhs(1)}",
        ),
    ]


# --------------------------------------------------------------------------
# Factorizations over K1 and K2

_phi = K1.constants["phi"]

# quartic identities in (a, b): factor triple (r, s) meaning (b + r a^2)(b - r a^2)(b^2 + s a^4)
K1_QUARTIC_FACTORS: dict[int, tuple[NFElement, NFElement]] = {
    1: (_phi, 2 + _phi**2),
    2: (_phi.inverse(), -2 + _phi ** (-2)),
    3: (2 * (_phi**3 + _phi), 8 * (2 + _phi**2)),
    4: (2 * (_phi**3 + 3 * _phi), 8 * _phi**2),
}

# the same quartics as integer polynomials, with P standing for a and Q for b
K1_QUARTIC_TARGETS: dict[int, BivarPoly] = {
    1: _Q**4 + 2 * _P**4 * _Q**2 - _P**8,
    2: _Q**4 - 2 * _P**4 * _Q**2 - _P**8,
    3: _Q**4 + 16 * _P**4 * _Q**2 - 64 * _P**8,
    4: _Q**4 - 16 * _P**4 * _Q**2 - 64 * _P**8,
}


def k1_factor_product(eq_id: int, perturb: int = 0) -> Callable[[int, int], NFElement]:
    r, s = K1_QUARTIC_FACTORS[eq_id]

    def f(a: int, b: int) -> NFElement:
        lin = b + r * a * a
        return lin * conj(lin) * (b * b + s * a**4) + perturb * a**8

    return f


def u10_k2_product(P: int, Q: int) -> NFElement:
    e, s5 = _eps, _sqrt5
    return (
        P
        * (P * P - e**2 * Q)
        * (P * P - e ** (-2) * Q)
        * (P * P - s5 * e * Q)
        * (P * P - s5 * e ** (-1) * Q)
    )


def verify_k_factorizations() -> list[Check]:
    out = []
    for eq_id in sorted(K1_QUARTIC_FACTORS):
        out.append(
            check(
                f"K1 factorization eq{eq_id}",
                f"factorization of quartic {eq_id} over Q(phi)",
                grid_equal(k1_factor_product(eq_id), K1_QUARTIC_TARGETS[eq_id], 8, 4),
                "9 x 5 grid in (a, b)",
            )
        )
    out.append(
        check(
            "K2 factorization U10",
            "P (P^2 - eps^2 Q)(P^2 - eps^-2 Q)(P^2 - sqrt5 eps Q)(P^2 - sqrt5 eps^-1 Q) = U10",
            grid_equal(u10_k2_product, lucas_u_poly(10), 9, 4),
            "10 x 5 grid",
        )
    )
    out.append(
        check(
            "negative control",
            "a perturbed identity is rejected",
            not grid_equal(k1_factor_product(1, perturb=1), K1_QUARTIC_TARGETS[1], 8, 4),
        )
    )
    return out


# --------------------------------------------------------------------------


def descent_checks(quartic_bound: int = DEFAULT_QUARTIC_BOUND) -> list[Check]:
    return (
        mod4_elimination_u8()
        + mod121_u11()
        + exponent_case_checks()
        + quartic_checks(quartic_bound)
    )
