"""When is the Lucas sequence term U_n(P, Q) a perfect square?

Exact evaluation, generators for the infinite families with n <= 7,
an exhaustive search harness for n = 8..12 and a suite of finite checks
over the number fields Q(phi), Q(sqrt 5) and Q(zeta_11 + zeta_11^-1).
"""

from lucas_squares.lucas_core import (
    Degeneracy,
    LucasParams,
    SolutionRecord,
    classify_degenerate,
    is_perfect_square,
    lucas_u,
)

__all__ = [
    "Degeneracy",
    "LucasParams",
    "SolutionRecord",
    "classify_degenerate",
    "is_perfect_square",
    "lucas_u",
]

__version__ = "0.1.0"
