from fractions import Fraction as F
from math import cos, pi

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lucas_squares.descent_verify import (
    E1_ROOTS,
    EXPECTED_QUARTIC_SETS,
    EXPECTED_SURVIVORS,
    K1_QUARTIC_FACTORS,
    QUARTICS,
    RETAINED_EVEN,
    RETAINED_ODD,
    SIGN_PATTERNS,
    NFPoint,
    QuarticSolution,
    UnitSignCase,
    descent_checks,
    enumerate_unit_cases,
    exponent_case_table_u11,
    genus2_rhs,
    mod4_feasible,
    mod121_u11,
    quartic_checks,
    quartic_solutions,
    quartic_to_pq,
    sign_formulas_hold,
    verify_cited_points,
    verify_k_factorizations,
)
from lucas_squares.lucas_core import lucas_u_iter
from lucas_squares.numfield import K2, K3, K3_SMALLEST_ROOT, sigma

a, b, p, q, x = sympy.symbols("a b p q x")


def sympy_u(n, P, Q):
    u0, u1 = sympy.Integer(0), sympy.Integer(1)
    for _ in range(n - 1):
        u0, u1 = u1, sympy.expand(P * u1 - Q * u0)
    return u1 if n else u0


def test_quartics_rederived_from_u8():
    # odd P: U8 = P (P^2 - 2Q)(P^4 - 4P^2 Q + 2Q^2)
    third_odd = lambda P, Q: P**4 - 4 * P**2 * Q + 2 * Q**2
    assert sympy.expand(sympy_u(8, p, q) - p * (p**2 - 2 * q) * third_odd(p, q)) == 0
    for eq_id, sign in ((1, 1), (2, -1)):
        lhs, k = QUARTICS[eq_id]
        Q = (a**4 - sign * b**2) / 2
        third = sympy.expand(third_odd(a**2, Q))
        # lhs = k c^2 with third = (k / 2) c^2
        assert sympy.expand(2 * third - lhs(a, b)) == 0
        assert k == 2 * sign

    # P = 4p: U8 = 16 p (8p^2 - Q)(128 p^4 - 32 p^2 Q + Q^2)
    third_even = lambda P, Q: 128 * P**4 - 32 * P**2 * Q + Q**2
    assert sympy.expand(sympy_u(8, 4 * p, q) - 16 * p * (8 * p**2 - q) * third_even(p, q)) == 0
    for eq_id, s in ((3, 1), (4, -1)):
        lhs, k = QUARTICS[eq_id]
        third = sympy.expand(third_even(s * a**2, 8 * a**4 - s * b**2))
        assert sympy.expand(third - lhs(a, b)) == 0 and k == 1


@pytest.mark.parametrize("eq_id", sorted(QUARTICS))
def test_quartic_scan_bound_200(eq_id):
    assert {(s.a, s.b) for s in quartic_solutions(eq_id, 200)} == EXPECTED_QUARTIC_SETS[eq_id]


def test_quartic_c_values():
    c1 = {(s.a, s.b): s.c for s in quartic_solutions(1, 50)}
    c3 = {(s.a, s.b): s.c for s in quartic_solutions(3, 50)}
    assert c1 == {(1, 1): 1, (1, 3): 7}
    assert c3 == {(0, 1): 1, (1, 2): 4, (1, 5): 31}


def test_quartic_solution_validates():
    with pytest.raises(ValueError):
        QuarticSolution(1, 1, 3, 11)
    with pytest.raises(ValueError):
        QuarticSolution(5, 1, 1, 1)


def test_quartic_mappings():
    mapped = {
        (s.eq_id, s.a, s.b): quartic_to_pq(s)
        for e in QUARTICS
        for s in quartic_solutions(e, 20)
    }
    valid = {(m.P, m.Q) for m in mapped.values() if m.params is not None}
    assert valid == {(1, -4), (4, -17)}
    assert mapped[(1, 1, 1)].reason.startswith("P = 0 or Q = 0")
    assert "degenerate" in mapped[(2, 1, 1)].reason
    assert (mapped[(4, 0, 1)].P, mapped[(4, 0, 1)].Q) == (0, 1)
    for m in mapped.values():
        if m.params is not None:
            assert lucas_u_iter(8, m.P, m.Q) in (441, 384400)


def test_mod4_elimination():
    assert {s for s in SIGN_PATTERNS if mod4_feasible("odd", s)} == RETAINED_ODD
    assert {s for s in SIGN_PATTERNS if mod4_feasible("even", s)} == RETAINED_EVEN
    with pytest.raises(ValueError):
        mod4_feasible("other", (1, 1, 1))


def test_known_u8_solutions_use_retained_patterns():
    # (1, -4): 1 = 1^2, 1 + 8 = 3^2, 1 + 16 + 32 = 7^2
    assert (1, 1, 1) in RETAINED_ODD
    assert 1 + 8 == 9 and 1 + 16 + 32 == 49
    # (4, -17): p = 1, 8 + 17 = 5^2, 128 + 544 + 289 = 31^2
    assert (1, 1, 1) in RETAINED_EVEN
    assert 8 + 17 == 25 and 128 + 544 + 289 == 961


def test_mod121_against_recurrence():
    assert all(lucas_u_iter(11, x, 1) % 121 for x in range(121))
    roots11 = [x for x in range(11) if lucas_u_iter(11, x, 1) % 11 == 0]
    assert roots11
    assert all(c.passed for c in mod121_u11())


@given(st.integers(-10**6, 10**6))
def test_u11_never_divisible_by_121_when_q_is_one(P):
    assert lucas_u_iter(11, P, 1) % 121 != 0


def test_unit_case_enumeration():
    cases = enumerate_unit_cases()
    assert len(cases) == 8
    assert {c.bits for c in exponent_case_table_u11()} == EXPECTED_SURVIVORS
    with pytest.raises(ValueError):
        UnitSignCase(0, 1, 0, 0)


def test_sign_formulas_numeric_oracle():
    units = [K3.constants[f"eps{i}"] for i in range(1, 5)]
    for bits in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 1, 0), (1, 1, 0, 1), (1, 1, 1, 1)]:
        eta = K3.one
        for u, e in zip(units, bits):
            if e:
                eta = eta * u
        i1, i2, i3, i4 = bits
        predicted = [(-1) ** (i2 + i3), (-1) ** (i1 + i2), (-1) ** i1, (-1) ** i4, (-1) ** (i3 + i4)]
        got = [1 if sigma(eta, m).embed(K3_SMALLEST_ROOT) > 0 else -1 for m in range(5)]
        assert got == predicted
    assert sign_formulas_hold()


def test_smallest_root_is_a_cosine():
    # theta = -(zeta + zeta^-1) for some primitive 11th root zeta
    root = K3.root_approx(K3_SMALLEST_ROOT)
    assert min(2 * cos(2 * pi * k / 11) for k in range(1, 6)) == pytest.approx(root, abs=1e-12)


def test_cited_points_pass():
    checks = verify_cited_points()
    assert len(checks) == 10
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_e4_point_gives_disallowed_pair():
    (e4,) = [c for c in verify_cited_points() if c.name.startswith("e4")]
    assert "(P, Q) = (5, 10)" in e4.detail
    assert "eps^-1 x = -2" in e4.detail


def test_point_off_curve_detected():
    eps = K2.constants["eps"]
    assert not NFPoint(K2.zero, eps, E1_ROOTS, additive=True).on_curve()


def test_genus2_point_numeric():
    gx = (3 + 5**0.5) / 2
    gy = (11 + 5 * 5**0.5) / 2
    assert gy**2 == pytest.approx(genus2_rhs(gx), rel=1e-12)
    assert genus2_rhs(F(0)) == 1


def _reduce(expr, gen, minpoly):
    return sympy.rem(sympy.expand(expr), minpoly, gen)


def test_k1_factorizations_with_sympy():
    phi = sympy.Symbol("phi")
    minpoly = phi**4 + 2 * phi**2 - 1
    targets = {
        1: b**4 + 2 * a**4 * b**2 - a**8,
        2: b**4 - 2 * a**4 * b**2 - a**8,
        3: b**4 + 16 * a**4 * b**2 - 64 * a**8,
        4: b**4 - 16 * a**4 * b**2 - 64 * a**8,
    }
    for eq_id, (r, s) in K1_QUARTIC_FACTORS.items():
        r_expr = sum(sympy.Rational(str(c)) * phi**i for i, c in enumerate(r.coeffs))
        s_expr = sum(sympy.Rational(str(c)) * phi**i for i, c in enumerate(s.coeffs))
        product = (b + r_expr * a**2) * (b - r_expr * a**2) * (b**2 + s_expr * a**4)
        assert sympy.expand(_reduce(product, phi, minpoly) - targets[eq_id]) == 0


def test_u10_factorization_with_sympy():
    eps = sympy.Symbol("eps")
    minpoly = eps**2 - eps - 1
    s5 = 2 * eps - 1
    inv = eps - 1
    product = p * (p**2 - eps**2 * q) * (p**2 - inv**2 * q) * (p**2 - s5 * eps * q) * (p**2 - s5 * inv * q)
    assert sympy.expand(_reduce(product, eps, minpoly) - sympy_u(10, p, q)) == 0


def test_k_factorization_checks():
    checks = verify_k_factorizations()
    assert all(c.passed for c in checks)


def test_descent_checks_small_bound():
    checks = descent_checks(quartic_bound=100)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_quartic_checks_detect_wrong_expectation(monkeypatch):
    monkeypatch.setitem(EXPECTED_QUARTIC_SETS, 2, {(1, 1), (2, 3)})
    assert not all(c.passed for c in quartic_checks(30))
