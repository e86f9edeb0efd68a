from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from excesskit.formula import (
    ExcessResult,
    complete_homogeneous,
    correction_term,
    elementary_symmetric,
    excess_powers,
    excess_principal,
    simplex_integral_check,
)


def test_elementary_symmetric():
    assert elementary_symmetric(0, [4, 7]) == 1
    assert elementary_symmetric(2, [3, 3, 3]) == 27
    assert elementary_symmetric(3, [3, 3, 4]) == 36
    with pytest.raises(ValueError):
        elementary_symmetric(4, [1, 2, 3])
    with pytest.raises(ValueError):
        elementary_symmetric(-1, [1, 2, 3])


def test_complete_homogeneous():
    assert complete_homogeneous(0, [5, 6]) == 1
    assert complete_homogeneous(1, [5, 6]) == 11
    assert complete_homogeneous(2, [2, 2]) == 12
    with pytest.raises(ValueError):
        complete_homogeneous(-1, [2])


@given(st.integers(0, 5), st.lists(st.integers(-6, 6), max_size=4))
@settings(max_examples=200, deadline=None)
def test_complete_homogeneous_by_enumeration(delta, values):
    brute = sum(math.prod(c) for c in itertools.combinations_with_replacement(values, delta))
    assert complete_homogeneous(delta, values) == brute


@given(st.integers(1, 6), st.lists(st.integers(-9, 9), min_size=1, max_size=6))
@settings(max_examples=200, deadline=None)
def test_newton_type_identity(m, values):
    n = len(values)
    total = sum((-1) ** i * elementary_symmetric(i, values) * complete_homogeneous(m - i, values)
                for i in range(0, min(m, n) + 1))
    assert total == 0


@pytest.mark.parametrize("p, d, excess", [
    ((2, 2), (3, 3, 3), 7),
    ((3, 3), (5, 5, 5), 44),
    ((2,), (3, 3, 3), 1),
    ((2, 2), (2, 2, 2), 0),
])
def test_excess_powers_values(p, d, excess):
    res = excess_powers(p, d)
    assert res.excess == excess
    assert res.excess + res.equivalence == res.bezout == math.prod(d)
    assert res.method == "formula"


def test_correction_term():
    for p1, p2 in itertools.product(range(1, 4), repeat=2):
        for d in itertools.product(range(max(p1, p2), 6), repeat=3):
            assert correction_term((p1, p2), d) == p1 * p2 * (sum(d) - p1 - p2)
    assert correction_term((2, 3, 4), (4, 4, 5)) == 24
    assert correction_term((2, 2), (3, 3, 3)) == 20


def test_preconditions():
    with pytest.raises(ValueError):
        excess_powers((1, 1, 1), (2, 2))
    with pytest.raises(ValueError):
        excess_powers((3,), (2, 5))
    with pytest.raises(ValueError):
        excess_powers((), (2, 5))
    with pytest.raises(ValueError):
        excess_principal(4, (3, 5))
    with pytest.raises(ArithmeticError):
        ExcessResult(1, 1, 3, "formula")


def test_large_degrees_are_exact():
    d = (300, 301, 302, 303)
    res = excess_powers((7, 11), d)
    assert res.bezout == math.prod(d)
    assert res.equivalence == correction_term((7, 11), d)


def powers_and_degrees(max_n=4, top=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        k = draw(st.integers(1, n))
        p = draw(st.lists(st.integers(1, top), min_size=k, max_size=k))
        d = draw(st.lists(st.integers(max(p), top), min_size=n, max_size=n))
        return p, d
    return build()


@given(powers_and_degrees(), st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_specializations_and_symmetry(pd, rnd):
    p, d = pd
    res = excess_powers(p, d)
    assert res.excess >= 0 and res.equivalence >= 0
    if len(p) == len(d):
        assert res.excess == math.prod(d) - math.prod(p)
    if len(p) == 1:
        assert res.excess == math.prod(di - p[0] for di in d)
    q, e = list(p), list(d)
    rnd.shuffle(q)
    rnd.shuffle(e)
    assert excess_powers(q, e) == res


def test_principal_agrees_with_powers():
    for n in range(1, 5):
        for d in itertools.product(range(1, 6), repeat=n):
            for p in range(1, min(d) + 1):
                assert excess_principal(p, d) == excess_powers((p,), d).excess
    assert excess_principal(2, (3, 3, 3)) == 1
    assert excess_principal(4, (4, 4)) == 0


# -------------------------------------------------------------- simplex integral

def test_simplex_integral_examples():
    assert simplex_integral_check(1, 2, (3,), 1) == 9
    assert simplex_integral_check(2, 1, (1, 1), 1) == Fraction(1, 3)
    for k in (1, 2, 3):
        p = tuple(range(2, 2 + k))
        assert simplex_integral_check(k, 0, p, 2) == Fraction(2**k * math.prod(p), math.factorial(k))
    for delta in range(5):
        for p in range(1, 4):
            lam = Fraction(3, 2)
            assert simplex_integral_check(1, delta, (p,), lam) == (lam * p) ** (delta + 1) / (delta + 1)
    with pytest.raises(ValueError):
        simplex_integral_check(2, 1, (1,), 1)
    with pytest.raises(ValueError):
        simplex_integral_check(1, -1, (1,), 1)


def _sympy_integral(k, delta, p, lam):
    u = sympy.symbols(f"u1:{k + 1}")
    expr = sum(u) ** delta
    # iterated integral over conv(0, lam*p_i*e_i): sum u_i/(lam p_i) <= 1
    for i in reversed(range(k)):
        rest = sum(u[j] / (lam * p[j]) for j in range(i))
        upper = lam * p[i] * (1 - rest)
        expr = sympy.integrate(expr, (u[i], 0, upper))
    return Fraction(str(sympy.nsimplify(expr)))


@pytest.mark.parametrize("k, delta, p, lam", [
    (1, 3, (2,), 1),
    (2, 0, (2, 3), 1),
    (2, 2, (2, 3), 2),
    (3, 1, (1, 2, 3), 1),
    (3, 2, (2, 2, 1), sympy.Rational(3, 2)),
])
def test_simplex_integral_matches_sympy(k, delta, p, lam):
    expected = _sympy_integral(k, delta, p, sympy.Rational(lam))
    assert simplex_integral_check(k, delta, p, Fraction(str(lam))) == expected
