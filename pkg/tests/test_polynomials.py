import pytest
from hypothesis import given
from hypothesis import strategies as st

from lucas_squares.lucas_core import lucas_u_iter
from lucas_squares.polynomials import (
    FACTORIZATIONS,
    BivarPoly,
    P,
    Q,
    factorization_product,
    grid_equal,
    lucas_u_poly,
    verify_factorization,
)


def test_small_polynomials():
    assert lucas_u_poly(0) == BivarPoly()
    assert lucas_u_poly(1) == 1
    assert lucas_u_poly(2) == P
    assert lucas_u_poly(5) == P**4 - 3 * P**2 * Q + Q**2


def test_u11_coefficients():
    expected = {(10, 0): 1, (8, 1): -9, (6, 2): 28, (4, 3): -35, (2, 4): 15, (0, 5): -1}
    assert lucas_u_poly(11).terms == expected


def test_index_range():
    lucas_u_poly(16)
    with pytest.raises(ValueError):
        lucas_u_poly(17)
    with pytest.raises(ValueError):
        lucas_u_poly(-1)


@pytest.mark.parametrize("n", sorted(FACTORIZATIONS))
def test_factorizations(n):
    assert verify_factorization(n)


def test_factorization_table_is_the_expected_one():
    assert sorted(FACTORIZATIONS) == [4, 5, 6, 7, 8, 10, 11]
    with pytest.raises(ValueError):
        verify_factorization(9)


def test_wrong_factorization_detected():
    assert (P * (P**2 - 2 * Q) * (P**4 - 4 * P**2 * Q + 3 * Q**2)) != lucas_u_poly(8)


@given(st.integers(0, 16), st.integers(-50, 50), st.integers(-50, 50))
def test_polynomial_matches_recurrence(n, p, q):
    assert lucas_u_poly(n).evaluate(p, q) == lucas_u_iter(n, p, q)


def test_no_zero_coefficients_stored():
    poly = (P + Q) * (P - Q) - P * P
    assert poly.terms == {(0, 2): -1}
    assert (P - P).terms == {}


@pytest.mark.parametrize(
    "p1, p2, dP, dQ, expected",
    [
        (P**2, P * P, 3, 1, True),
        (P + Q, P - Q, 2, 2, False),
        (factorization_product(8), lucas_u_poly(8), 9, 5, True),
    ],
)
def test_grid_equal(p1, p2, dP, dQ, expected):
    assert grid_equal(p1, p2, dP, dQ) is expected


def test_grid_equal_accepts_callables():
    assert grid_equal(lambda p, q: p**3 - q, P**3 - Q, 3, 1)


def test_degrees_and_repr():
    u8 = lucas_u_poly(8)
    assert (u8.degree_p(), u8.degree_q()) == (7, 3)
    assert repr(P**2 - 3 * Q) == "P^2 - 3*Q"
