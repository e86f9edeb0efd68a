"""Closed-form excess numbers for ideals generated by powers of variables.

For ``I = (x1^p1, ..., xk^pk)`` and degrees ``d1, ..., dn`` the excess number is

    d1*...*dn - p1*...*pk * sum_{delta=0}^{n-k} (-1)^delta e_{n-k-delta}(d) h_delta(p)

where ``e_m`` is the elementary and ``h_m`` the complete homogeneous
symmetric polynomial.  All arithmetic is on Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class ExcessResult:
    excess: int
    equivalence: int
    bezout: int
    method: str

    def __post_init__(self):
        if self.excess + self.equivalence != self.bezout:
            raise ArithmeticError("excess + equivalence must equal the Bezout number")


def elementary_symmetric(m: int, values: Sequence[int]) -> int:
    """``e_m(values)``: coefficient of ``t^m`` in ``prod(1 + v t)``."""
    values = list(values)
    if not 0 <= m <= len(values):
        raise ValueError(f"m={m} outside 0..{len(values)}")
    coeffs = [1]
    for v in values:
        coeffs = [a + v * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs[m]


def complete_homogeneous(delta: int, values: Sequence[int]) -> int:
    """``h_delta(values)``, the sum of all degree-``delta`` monomials."""
    if delta < 0:
        raise ValueError(f"negative degree {delta}")
    # h for the first j variables, built one variable at a time:
    # h_m(v_1..v_j) = h_m(v_1..v_{j-1}) + v_j * h_{m-1}(v_1..v_j)
    h = [1] + [0] * delta
    for v in values:
        for m in range(1, delta + 1):
            h[m] += v * h[m - 1]
    return h[delta]


def _check(p: Sequence[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
    p = [int(v) for v in p]
    d = [int(v) for v in d]
    if not p:
        raise ValueError("need at least one power")
    if len(p) > len(d):
        raise ValueError(f"k={len(p)} powers exceed n={len(d)} degrees")
    if min(p) < 1 or min(d) < 1:
        raise ValueError("powers and degrees must be positive")
    if min(d) < max(p):
        raise ValueError(f"min degree {min(d)} is below max power {max(p)}")
    return p, d


def correction_term(p: Sequence[int], d: Sequence[int]) -> int:
    """The equivalence number for the powers ideal; subtract it from the Bezout number."""
    p, d = _check(p, d)
    n, k = len(d), len(p)
    total = 0
    for delta in range(n - k + 1):
        total += (-1) ** delta * elementary_symmetric(n - k - delta, d) * complete_homogeneous(delta, p)
    return math.prod(p) * total


def excess_powers(p: Sequence[int], d: Sequence[int]) -> ExcessResult:
    equivalence = correction_term(p, d)
    bezout = math.prod(int(v) for v in d)
    excess = bezout - equivalence
    if excess < 0:
        raise ArithmeticError(f"negative excess number {excess} for p={list(p)}, d={list(d)}")
    return ExcessResult(excess, equivalence, bezout, "formula")


def excess_principal(p: int, d: Sequence[int]) -> int:
    """Excess number of a principal ideal of degree ``p``: ``prod(d_i - p)``."""
    d = [int(v) for v in d]
    if p > min(d):
        raise ValueError(f"generator degree {p} exceeds min degree {min(d)}")
    return math.prod(di - p for di in d)


def simplex_integral_check(k: int, delta: int, p: Sequence[int], Lam) -> Fraction:
    """Integral of ``(u1+...+uk)^delta`` over the simplex ``conv(0, Lam*p_i*e_i)``.

    Closed form ``Lam^(k+delta) * p1*...*pk * delta!/(delta+k)! * h_delta(p)``.
    """
    p = [int(v) for v in p]
    if k < 1 or len(p) != k:
        raise ValueError("need k >= 1 powers")
    if delta < 0:
        raise ValueError("negative exponent")
    Lam = Fraction(Lam)
    return (Lam ** (k + delta) * math.prod(p)
            * Fraction(math.factorial(delta), math.factorial(delta + k))
            * complete_homogeneous(delta, p))
