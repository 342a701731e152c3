"""Sparse homogeneous polynomials, linear forms and the apolarity action.

Monomials of degree ``d`` in ``n+1`` variables are exponent tuples listed in
descending lexicographic order, so ``x0^d`` comes first.  That ordering labels
every matrix row and column in the package.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import ParseError

Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple[Exponent, ...]:
    if nvars < 1 or d < 0:
        raise ValueError("need nvars >= 1 and d >= 0")
    if nvars == 1:
        return ((d,),)
    return tuple((a,) + rest for a in range(d, -1, -1) for rest in monomials(nvars - 1, d - a))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> Mapping[Exponent, int]:
    return MappingProxyType({m: i for i, m in enumerate(monomials(nvars, d))})


def multinomial(d: int, alpha: Sequence[int]) -> int:
    if sum(alpha) != d or any(a < 0 for a in alpha):
        raise ValueError(f"exponent {tuple(alpha)} does not have degree {d}")
    out = math.factorial(d)
    for a in alpha:
        out //= math.factorial(a)
    return out


def _coerce(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, int):
        return Fraction(c)
    return c


def _zero_like(c):
    z = c * 0
    return Fraction(0) if isinstance(z, int) else z


class HomogeneousForm:
    """A form of fixed degree; coefficients may be Fraction, ModP or complex."""

    __slots__ = ("nvars", "degree", "_terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1 or degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        clean: dict[Exponent, object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or sum(exp) != degree or min(exp) < 0:
                raise ValueError(f"exponent {exp} incompatible with {nvars} vars, degree {degree}")
            c = _coerce(c)
            if c != 0:
                clean[exp] = c
        self.nvars = nvars
        self.degree = degree
        self._terms = clean

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vector: Sequence) -> "HomogeneousForm":
        return cls(nvars, degree, dict(zip(monomials(nvars, degree), vector)))

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1) -> "HomogeneousForm":
        return cls(len(exponent), sum(exponent), {tuple(exponent): coefficient})

    @property
    def terms(self) -> Mapping[Exponent, object]:
        return MappingProxyType(self._terms)

    def coefficient(self, exponent: Sequence[int]):
        return self._terms.get(tuple(exponent), 0)

    def vector(self) -> list:
        zero = _zero_like(next(iter(self._terms.values()))) if self._terms else Fraction(0)
        return [self._terms.get(m, zero) for m in monomials(self.nvars, self.degree)]

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def map_coefficients(self, fn) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree, {e: fn(c) for e, c in self._terms.items()})

    def _check(self, other: "HomogeneousForm"):
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        self._check(other)
        if other.degree != self.degree and not (other.is_zero() or self.is_zero()):
            raise ValueError("cannot add forms of different degrees")
        if self.is_zero():
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousForm(self.nvars, self.degree, terms)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            self._check(other)
            terms: dict[Exponent, object] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
            return HomogeneousForm(self.nvars, self.degree + other.degree, terms)
        other = _coerce(other)
        return self.map_coefficients(lambda c: c * other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int) -> "HomogeneousForm":
        out = HomogeneousForm(self.nvars, 0, {(0,) * self.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.nvars == other.nvars
        return (self.nvars, self.degree, self._terms) == (other.nvars, other.degree, other._terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self._terms.items())))

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x ** k
            total = total + term
        return _coerce(total) if isinstance(total, int) else total

    __call__ = evaluate

    def derivative(self, i: int) -> "HomogeneousForm":
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = c * e[i]
        return HomogeneousForm(self.nvars, max(self.degree - 1, 0), terms)

    def substitute(self, matrix: Sequence[Sequence]) -> "HomogeneousForm":
        """Return ``F(A z)``: variable ``x_i`` becomes ``sum_j A[i][j] z_j``."""
        if len(matrix) != self.nvars:
            raise ValueError("substitution matrix needs one row per variable")
        m = len(matrix[0])
        images = [HomogeneousForm(m, 1, {tuple(int(k == j) for k in range(m)): a for j, a in enumerate(row)})
                  for row in matrix]
        out = HomogeneousForm(m, self.degree)
        for e, c in self._terms.items():
            term = HomogeneousForm(m, 0, {(0,) * m: c})
            for img, k in zip(images, e):
                for _ in range(k):
                    term = term * img
            out = out + term
        return out

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    def __repr__(self):
        return f"HomogeneousForm({self.nvars}, {self.degree}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(_coerce(c) for c in self.coefficients))

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def power(self, d: int) -> HomogeneousForm:
        return power_of_linear(self, d)

    def __call__(self, point: Sequence):
        return sum((a * x for a, x in zip(self.coefficients, point)), start=0)

    def as_form(self) -> HomogeneousForm:
        n = self.nvars
        return HomogeneousForm(n, 1, {tuple(int(k == j) for k in range(n)): a
                                      for j, a in enumerate(self.coefficients)})

    def __str__(self):
        return format_form(self.as_form())


def power_of_linear(L: LinearForm | Sequence, d: int) -> HomogeneousForm:
    if d < 0:
        raise ValueError("degree must be non-negative")
    coeffs = L.coefficients if isinstance(L, LinearForm) else tuple(_coerce(c) for c in L)
    terms = {}
    for alpha in monomials(len(coeffs), d):
        c = multinomial(d, alpha)
        for a, k in zip(coeffs, alpha):
            if k:
                c = c * a ** k
        terms[alpha] = c
    return HomogeneousForm(len(coeffs), d, terms)


def falling(b: int, a: int) -> int:
    """``b!/(b-a)!`` (zero when a > b)."""
    if a > b:
        return 0
    out = 1
    for k in range(b - a + 1, b + 1):
        out *= k
    return out


def apolar_apply(G: HomogeneousForm, F: HomogeneousForm) -> HomogeneousForm:
    """Contract ``F`` by the differential operator ``G(d/dx_0, ..., d/dx_n)``."""
    if G.nvars != F.nvars:
        raise ValueError("variable-count mismatch")
    if G.degree > F.degree:
        raise ValueError("operator degree exceeds form degree")
    terms: dict[Exponent, object] = {}
    for a, g in G.terms.items():
        for b, f in F.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                w = 1
                for x, y in zip(a, b):
                    w *= falling(y, x)
                e = tuple(y - x for x, y in zip(a, b))
                terms[e] = terms.get(e, 0) + g * f * w
    return HomogeneousForm(F.nvars, F.degree - G.degree, terms)


def variable(i: int, nvars: int) -> HomogeneousForm:
    return HomogeneousForm.monomial(tuple(int(k == i) for k in range(nvars)))


# -- text format -----------------------------------------------------------

def _format_scalar(c) -> str:
    if isinstance(c, float):
        return f"{c:.12g}"
    if isinstance(c, complex):
        return f"({c.real:.12g}{c.imag:+.12g}j)"
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_form(F: HomogeneousForm, var: str = "x") -> str:
    if F.is_zero():
        return "0"
    parts = []
    for e in monomials(F.nvars, F.degree):
        if e not in F.terms:
            continue
        c = F.terms[e]
        if isinstance(c, complex) and c.imag == 0:
            c = c.real
        mono = "*".join(f"{var}{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        negative = isinstance(c, (Rational, float)) and c < 0
        mag = -c if negative else c
        if mono and mag == 1 and not isinstance(mag, complex):
            body = mono
        else:
            body = _format_scalar(mag) + ("*" + mono if mono else "")
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>[a-zA-Z])(?P<idx>\d+)|(?P<pow>\^|\*\*)|(?P<op>[-+*])|(?P<bad>\S))")


def parse_form(text: str, nvars: int | None = None, var: str | None = None) -> HomogeneousForm:
    """Parse text such as ``"2x0^4 - 4x0^3x1 + 1/2*x1^4"`` into a form."""
    pos = 0
    terms: list[tuple[Fraction, dict[int, int], int]] = []
    sign, coef, mono, start = 1, None, {}, None
    seen_any = False
    letter = var
    expect_term = True
    n = len(text)

    def flush(at: int):
        nonlocal sign, coef, mono, start, expect_term
        if coef is None and not mono:
            raise ParseError("expected a term", at)
        terms.append((sign * (coef if coef is not None else Fraction(1)), mono, start))
        sign, coef, mono, start = 1, None, {}, None
        expect_term = True

    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = "var" if m.group("var") else m.lastgroup
        tok_start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", tok_start)
        if kind == "op" and m.group("op") in "+-":
            if not expect_term:
                flush(tok_start)
            elif coef is not None or mono:
                raise ParseError("dangling sign", tok_start)
            if m.group("op") == "-":
                sign = -sign
            pos = m.end()
            continue
        if kind == "op":          # explicit '*'
            if coef is None and not mono:
                raise ParseError("'*' without a left operand", tok_start)
            pos = m.end()
            continue
        if kind == "pow":
            raise ParseError("exponent without a variable", tok_start)
        if start is None:
            start = tok_start
        expect_term = False
        seen_any = True
        if kind == "num":
            if coef is not None or mono:
                raise ParseError("coefficient must precede variables", tok_start)
            coef = Fraction(m.group("num"))
            pos = m.end()
            continue
        # variable
        name = m.group("var")
        if letter is None:
            letter = name
        elif name != letter:
            raise ParseError(f"unexpected variable name {name!r}", tok_start)
        idx = int(m.group("idx"))
        pos = m.end()
        k = 1
        m2 = _TOKEN.match(text, pos)
        if m2 is not None and m2.lastgroup == "pow":
            m3 = _TOKEN.match(text, m2.end())
            if m3 is None or m3.lastgroup != "num" or not m3.group("num").isdigit():
                raise ParseError("exponent must be a non-negative integer", m2.end())
            k = int(m3.group("num"))
            pos = m3.end()
        mono[idx] = mono.get(idx, 0) + k
    if not seen_any:
        raise ParseError("empty polynomial", 0)
    if expect_term:
        raise ParseError("trailing operator", n)
    flush(n)

    width = max((max(mono, default=-1) for _, mono, _ in terms), default=-1) + 1
    if nvars is None:
        nvars = max(width, 1)
    elif width > nvars:
        raise ParseError(f"variable index exceeds {nvars - 1}", 0)
    degree = None
    acc: dict[Exponent, Fraction] = {}
    for c, mono, at in terms:
        e = tuple(mono.get(i, 0) for i in range(nvars))
        if degree is None:
            degree = sum(e)
        elif sum(e) != degree:
            raise ParseError(f"term of degree {sum(e)} in a form of degree {degree}", at)
        acc[e] = acc.get(e, 0) + c
    return HomogeneousForm(nvars, degree, acc)


def parse_linear_forms(texts: Iterable[str], nvars: int | None = None) -> list[LinearForm]:
    forms = [parse_form(t, nvars) for t in texts]
    width = max(f.nvars for f in forms)
    out = []
    for f in forms:
        if f.degree != 1:
            raise ValueError(f"{f} is not linear")
        out.append(LinearForm(tuple(f.coefficient(tuple(int(k == j) for k in range(f.nvars)))
                                    if j < f.nvars else 0 for j in range(width))))
    return out
