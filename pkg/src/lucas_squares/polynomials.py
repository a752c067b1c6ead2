"""Integer polynomials in (P, Q) and the factorizations of U_n used in the descent."""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping, Union

MAX_INDEX = 16


class BivarPoly:
    """Sparse polynomial in P and Q with integer coefficients.

    Stored as a dict mapping (deg_P, deg_Q) to a nonzero coefficient.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {k: int(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, c: int) -> BivarPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> BivarPoly:
        return cls({(i, j): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def degree_p(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def degree_q(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def _coerce(self, other) -> BivarPoly:
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, int):
            return BivarPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = BivarPoly.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __call__(self, p, q):
        return self.evaluate(p, q)

    def evaluate(self, p, q):
        """Evaluate at (p, q); works for any ring elements supporting + and *."""
        total = 0
        for (i, j), c in self._terms.items():
            total = total + c * p**i * q**j
        return total

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                s for s in (f"P^{i}" if i > 1 else "P" * i, f"Q^{j}" if j > 1 else "Q" * j) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


P = BivarPoly.monomial(1, 0)
Q = BivarPoly.monomial(0, 1)


def lucas_u_poly(n: int) -> BivarPoly:
    """U_n as a polynomial in P and Q, for 0 <= n <= 16."""
    if not 0 <= n <= MAX_INDEX:
        raise ValueError(f"n must be in 0..{MAX_INDEX}, got {n}")
    prev, cur = BivarPoly(), BivarPoly.constant(1)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, P * cur - Q * prev
    return cur


# Factored forms of U_n; every entry must expand to lucas_u_poly(n).
FACTORIZATIONS: dict[int, list[BivarPoly]] = {
    4: [P, P**2 - 2 * Q],
    5: [P**4 - 3 * P**2 * Q + Q**2],
    6: [P, P**2 - Q, P**2 - 3 * Q],
    7: [P**6 - 5 * P**4 * Q + 6 * P**2 * Q**2 - Q**3],
    8: [P, P**2 - 2 * Q, P**4 - 4 * P**2 * Q + 2 * Q**2],
    10: [P, P**4 - 3 * P**2 * Q + Q**2, P**4 - 5 * P**2 * Q + 5 * Q**2],
    11: [
        P**10 - 9 * P**8 * Q + 28 * P**6 * Q**2 - 35 * P**4 * Q**3 + 15 * P**2 * Q**4 - Q**5
    ],
}


def factorization_product(n: int) -> BivarPoly:
    if n not in FACTORIZATIONS:
        raise ValueError(f"no stored factorization for n={n}; have {sorted(FACTORIZATIONS)}")
    out = BivarPoly.constant(1)
    for factor in FACTORIZATIONS[n]:
        out = out * factor
    return out


def verify_factorization(n: int) -> bool:
    """Coefficient-exact comparison of the stored factorization against U_n."""
    return factorization_product(n) == lucas_u_poly(n)


Evaluable = Union[BivarPoly, Callable[[int, int], object]]


def grid_equal(p1: Evaluable, p2: Evaluable, degP: int, degQ: int) -> bool:
    """Compare two polynomials on the integer grid {0..degP} x {0..degQ}.

    Either side may be a BivarPoly or any callable (p, q) -> value, which lets
    products with number-field coefficients be tested against integer
    polynomials. When degP and degQ bound the true degrees, agreement on the
    grid is equivalent to equality as polynomials.
    """
    for p, q in product(range(degP + 1), range(degQ + 1)):
        if p1(p, q) != p2(p, q):
            return False
    return True
