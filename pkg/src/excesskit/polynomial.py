"""Sparse multivariate polynomials over the complex numbers.

Polynomials live in a fixed ring ``C[x0, ..., xn]`` described by a
:class:`VariableSet`; variable 0 is the homogenizing variable.  Terms are
stored as a mapping from exponent tuples to complex coefficients.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]


class PolynomialSyntaxError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    pass


@dataclass(frozen=True)
class VariableSet:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable set needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid variable name {name!r}")

    @classmethod
    def standard(cls, n: int) -> "VariableSet":
        """Variables ``x0, ..., xn``."""
        return cls(tuple(f"x{i}" for i in range(n + 1)))

    @property
    def n_plus_one(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


class SparsePolynomial:
    """Immutable sparse polynomial.

    Equality compares term maps.  Term insertion order is kept because
    :func:`monomialize` reports the terms of a generator in the order they
    were written.
    """

    __slots__ = ("_terms", "nvars")

    def __init__(self, terms: Mapping[Exponent, complex], nvars: int):
        clean: dict[Exponent, complex] = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = complex(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self._terms = clean
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars: int) -> "SparsePolynomial":
        return cls({}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: complex = 1.0) -> "SparsePolynomial":
        return cls({tuple(exps): coeff}, len(exps))

    @property
    def terms(self) -> dict[Exponent, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"SparsePolynomial({self.to_string()!r})"

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return SparsePolynomial({(0,) * self.nvars: complex(other)}, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return SparsePolynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            c = complex(other)
            return SparsePolynomial({e: c * v for e, v in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        terms: dict[Exponent, complex] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return SparsePolynomial(terms, self.nvars)

    __rmul__ = __mul__

    def derivative(self, j: int) -> "SparsePolynomial":
        terms = {}
        for e, c in self._terms.items():
            if e[j]:
                de = e[:j] + (e[j] - 1,) + e[j + 1:]
                terms[de] = c * e[j]
        return SparsePolynomial(terms, self.nvars)

    def coefficient_norm(self) -> float:
        """1-norm of the coefficient vector."""
        return float(sum(abs(c) for c in self._terms.values()))

    def __call__(self, point) -> complex:
        return evaluate(self, point)

    def to_string(self, vars: VariableSet | None = None) -> str:
        """Render in graded-lex order, parseable by :func:`parse_polynomial`."""
        if vars is None:
            vars = VariableSet.standard(self.nvars - 1)
        if not self._terms:
            return "0"
        pieces = []
        for exps in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[exps]
            factors = []
            for name, e in zip(vars.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            sign, coeff = _format_coefficient(c)
            if factors and coeff == "1":
                body = "*".join(factors)
            else:
                body = "*".join([coeff] + factors)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_string


def _format_coefficient(c: complex) -> tuple[str, str]:
    if c.imag == 0:
        r = c.real
        sign = "-" if r < 0 else "+"
        r = abs(r)
        if r.is_integer() and r < 2**53:
            return sign, str(int(r))
        return sign, repr(r)
    return "+", f"({c.real!r}{c.imag:+}j)"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<complex>\((?:[^()]*)\))
  | (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: VariableSet):
        self.text = text
        self.vars = vars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> SparsePolynomial:
        nv = len(self.vars)
        terms: dict[Exponent, complex] = {}
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            exps, coeff = self.term()
            terms[exps] = terms.get(exps, 0) + sign * coeff
            kind, val, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            raise PolynomialSyntaxError(f"unexpected token {val!r}", pos)
        return SparsePolynomial(terms, nv)

    def term(self) -> tuple[Exponent, complex]:
        exps = [0] * len(self.vars)
        coeff: complex = 1
        kind, val, pos = self.peek()
        seen_any = False
        if kind in ("number", "complex"):
            coeff = self.coefficient()
            seen_any = True
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                if not seen_any:
                    raise PolynomialSyntaxError("'*' without a left operand", pos)
                self.take()
                kind, val, pos = self.peek()
                if kind != "name":
                    raise PolynomialSyntaxError("expected a variable after '*'", pos)
            if kind != "name":
                break
            self.take()
            if val not in self.vars.names:
                raise UnknownVariableError(f"unknown variable {val!r}", pos)
            power = 1
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "^":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "number" or not v3.isdigit():
                    raise PolynomialSyntaxError("exponent must be a non-negative integer", p3)
                power = int(v3)
            exps[self.vars.index(val)] += power
            seen_any = True
        if not seen_any:
            raise PolynomialSyntaxError(f"expected a term, found {val or 'end of input'!r}", pos)
        return tuple(exps), coeff

    def coefficient(self) -> complex:
        kind, val, pos = self.take()
        if kind == "complex":
            try:
                return complex(val[1:-1].replace(" ", ""))
            except ValueError:
                raise PolynomialSyntaxError(f"bad complex literal {val!r}", pos) from None
        if val.isdigit():
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "number" or not v3.isdigit():
                    raise PolynomialSyntaxError("denominator must be an integer", p3)
                if int(v3) == 0:
                    raise PolynomialSyntaxError("zero denominator", p3)
                return complex(Fraction(int(val), int(v3)))
            return complex(int(val))
        return complex(float(val))


def parse_polynomial(text: str, vars: VariableSet) -> SparsePolynomial:
    """Parse ``text`` such as ``"z^2 - y*w"`` into a polynomial over ``vars``.

    Coefficients may be integers, decimals, ``p/q`` rationals, or a
    parenthesized Python complex literal such as ``(1.5-2j)``.
    """
    return _Parser(text, vars).parse()


# --------------------------------------------------------------------------
# numerics

def evaluate(p: SparsePolynomial, point) -> complex:
    point = np.asarray(point, dtype=complex)
    if point.shape != (p.nvars,):
        raise ValueError(f"point has shape {point.shape}, expected ({p.nvars},)")
    total = 0j
    for exps, c in p.items():
        v = c
        for xi, e in zip(point, exps):
            if e:
                v *= xi**e
        total += v
    return complex(total)


@dataclass(frozen=True)
class PolynomialSystem:
    polys: tuple[SparsePolynomial, ...]
    vars: VariableSet

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        for f in self.polys:
            if f.nvars != len(self.vars):
                raise ValueError("polynomial and variable set disagree on the number of variables")

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.polys)

    @property
    def is_square(self) -> bool:
        return len(self.polys) == len(self.vars) - 1

    def evaluate(self, point) -> np.ndarray:
        return np.array([evaluate(f, point) for f in self.polys])


def jacobian(sys: PolynomialSystem) -> list[list[SparsePolynomial]]:
    """Matrix of partial derivatives; row i, column j is d f_i / d x_j."""
    return [[f.derivative(j) for j in range(len(sys.vars))] for f in sys.polys]


@dataclass(frozen=True)
class IdealSpec:
    generators: tuple[SparsePolynomial, ...]
    vars: VariableSet

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if g.nvars != len(self.vars):
                raise ValueError("generator and variable set disagree on the number of variables")
            if len(g) == 0:
                raise ValueError("zero generator")
            if not g.is_homogeneous:
                raise ValueError(f"generator {g.to_string(self.vars)} is not homogeneous")

    @classmethod
    def from_strings(cls, gens: Iterable[str], vars: VariableSet | Sequence[str]) -> "IdealSpec":
        if not isinstance(vars, VariableSet):
            vars = VariableSet(tuple(vars))
        return cls(tuple(parse_polynomial(g, vars) for g in gens), vars)

    @classmethod
    def powers(cls, p: Sequence[int], n: int) -> "IdealSpec":
        """The ideal ``(x1^p1, ..., xk^pk)`` in ``C[x0, ..., xn]``."""
        if len(p) > n:
            raise ValueError(f"{len(p)} powers do not fit in {n} dehomogenized variables")
        vars = VariableSet.standard(n)
        gens = []
        for i, pi in enumerate(p, start=1):
            exps = [0] * (n + 1)
            exps[i] = int(pi)
            gens.append(SparsePolynomial.monomial(exps))
        return cls(tuple(gens), vars)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @property
    def n(self) -> int:
        return len(self.vars) - 1

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.generators)

    def generator_strings(self) -> list[str]:
        return [g.to_string(self.vars) for g in self.generators]


def monomialize(ideal: IdealSpec) -> IdealSpec:
    """Split every generator into its scaled-monomial terms, in input order."""
    gens = []
    for g in ideal.generators:
        for exps, c in g.items():
            gens.append(SparsePolynomial({exps: c}, g.nvars))
    return IdealSpec(tuple(gens), ideal.vars)


def monomial_exponents(degree: int, nvars: int) -> list[Exponent]:
    """All exponent vectors of the given total degree, graded-lex descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_form(degree: int, vars: VariableSet | int, seed=None, real: bool = False) -> SparsePolynomial:
    """Dense homogeneous form with standard-normal coefficients.

    ``seed`` is an int or a ``numpy.random.Generator``; passing a generator
    lets callers draw many forms from a single stream.
    """
    if degree < 0:
        raise ValueError(f"negative degree {degree}")
    nvars = vars if isinstance(vars, int) else len(vars)
    rng = as_generator(seed)
    exps = monomial_exponents(degree, nvars)
    assert len(exps) == math.comb(degree + nvars - 1, nvars - 1)
    re_part = rng.standard_normal(len(exps))
    if real:
        coeffs = re_part.astype(complex)
    else:
        coeffs = re_part + 1j * rng.standard_normal(len(exps))
    return SparsePolynomial(dict(zip(exps, coeffs)), nvars)
