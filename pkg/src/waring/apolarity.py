"""Catalecticant matrices, apolar ideals and Hilbert functions.

Catalecticant entries use the normalised (Hankel) convention

    Cat_{i,d-i}(F)[alpha, beta] = c_{alpha+beta},   F = sum_gamma binom(d, gamma) c_gamma x^gamma,

which is the matrix of ``G -> G o F`` after rescaling column ``beta`` by
``beta!/d!``.  Rank and left kernel are unchanged by that rescaling.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .poly import (HomogeneousForm, LinearForm, apolar_apply, monomial_index, monomials,
                   multinomial, power_of_linear)


@dataclass(frozen=True)
class CatalecticantMatrix:
    i: int
    d: int
    nvars: int
    entries: tuple[tuple, ...]

    @property
    def row_labels(self):
        return monomials(self.nvars, self.i)

    @property
    def col_labels(self):
        return monomials(self.nvars, self.d - self.i)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def rank(self) -> int:
        return linalg.rank(self.rows())

    def transpose(self) -> "CatalecticantMatrix":
        return CatalecticantMatrix(self.d - self.i, self.d, self.nvars,
                                   tuple(zip(*self.entries)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow([""] + ["".join(map(str, b)) for b in self.col_labels])
        for a, row in zip(self.row_labels, self.entries):
            w.writerow(["".join(map(str, a))] + [str(x) for x in row])
        return buf.getvalue()


@dataclass(frozen=True)
class ApolarIdealSlice:
    degree: int
    basis: tuple[HomogeneousForm, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HilbertFunctionTable:
    values: tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(self.values)

    def series(self, var: str = "z") -> str:
        parts = []
        for k, v in enumerate(self.values):
            if v:
                mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
                parts.append(mono if v == 1 and k else f"{v}{mono}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class EssentialVariables:
    """``F(Q z) = reduced(z_0, ..., z_{m-1})`` with ``x = Q z``."""

    m: int
    basis_change: tuple[tuple, ...]
    reduced: HomogeneousForm

    def inverse(self) -> list[list]:
        return linalg.inverse([list(r) for r in self.basis_change])

    def lift(self, L: LinearForm | Sequence) -> LinearForm:
        """Rewrite a linear form in the reduced variables in the original ones."""
        q = L.coefficients if isinstance(L, LinearForm) else tuple(L)
        qinv = self.inverse()
        n = len(qinv)
        return LinearForm(tuple(sum((q[k] * qinv[k][j] for k in range(self.m)), start=0 * q[0])
                                for j in range(n)))

    def restore(self) -> HomogeneousForm:
        """Substitute ``z = Q^{-1} x`` back into the reduced form."""
        qinv = self.inverse()
        return self.reduced.substitute([row for row in qinv[:self.m]])


def _normalized_coefficient(F: HomogeneousForm, gamma):
    c = F.coefficient(gamma)
    return c / multinomial(F.degree, gamma) if c != 0 else c


def catalecticant(F: HomogeneousForm, i: int) -> CatalecticantMatrix:
    d = F.degree
    if not 0 <= i <= d:
        raise ValueError(f"catalecticant order {i} outside 0..{d}")
    zero = _zero(F)
    rows = []
    for a in monomials(F.nvars, i):
        row = []
        for b in monomials(F.nvars, d - i):
            g = tuple(x + y for x, y in zip(a, b))
            c = F.coefficient(g)
            row.append(c / multinomial(d, g) if c != 0 else zero)
        rows.append(tuple(row))
    return CatalecticantMatrix(i, d, F.nvars, tuple(rows))


def _zero(F: HomogeneousForm):
    for c in F.terms.values():
        z = c * 0
        return Fraction(0) if isinstance(z, int) else z
    return Fraction(0)


def catalecticant_rank(F: HomogeneousForm, i: int) -> int:
    return catalecticant(F, i).rank()


def max_catalecticant_rank(F: HomogeneousForm) -> int:
    return max(hilbert_function(F).values)


def _slice_vectors(F: HomogeneousForm, i: int) -> list[list]:
    """Coefficient vectors (degree-i monomial basis) spanning F^perp_i, in RREF."""
    if i > F.degree:
        z = _zero(F)
        size = len(monomials(F.nvars, i))
        return [[z + int(r == c) for c in range(size)] for r in range(size)]
    return linalg.left_kernel(catalecticant(F, i).rows())


def apolar_slice(F: HomogeneousForm, i: int) -> ApolarIdealSlice:
    vecs = _slice_vectors(F, i)
    return ApolarIdealSlice(i, tuple(HomogeneousForm.from_vector(F.nvars, i, v) for v in vecs))


def hilbert_function(F: HomogeneousForm) -> HilbertFunctionTable:
    if F.is_zero():
        raise ValueError("the zero form has no apolar algebra")
    return HilbertFunctionTable(tuple(catalecticant_rank(F, i) for i in range(F.degree + 1)))


def essential_variables(F: HomogeneousForm) -> EssentialVariables:
    if F.is_zero():
        raise ValueError("the zero form has no essential variables")
    n = F.nvars
    zero = _zero(F)
    one = zero + 1
    kernel = _slice_vectors(F, 1) if F.degree >= 1 else []
    pivots = [next(j for j, x in enumerate(v) if x != 0) for v in kernel]
    complement = [[one if j == c else zero for j in range(n)] for c in range(n) if c not in pivots]
    columns = complement + [list(v) for v in kernel]
    q = tuple(tuple(columns[c][r] for c in range(n)) for r in range(n))
    m = len(complement)
    image = F.substitute(q)
    keep = {e[:m]: c for e, c in image.terms.items()}
    assert all(sum(e[m:]) == 0 for e in image.terms)
    return EssentialVariables(m, q, HomogeneousForm(m, F.degree, keep))


def _proportional(p, q) -> bool:
    return linalg.rank([list(p), list(q)]) < 2


def verify_apolar_points(F: HomogeneousForm, points: Sequence[LinearForm | Sequence]):
    """Exact coefficients with ``F = sum lam_i L_i^d``, or ``None``."""
    forms = [p if isinstance(p, LinearForm) else LinearForm(tuple(p)) for p in points]
    for k, L in enumerate(forms):
        if L.nvars != F.nvars:
            raise ValueError("point has the wrong number of coordinates")
        if all(c == 0 for c in L.coefficients):
            raise ValueError("zero linear form")
        for M in forms[:k]:
            if _proportional(L.coefficients, M.coefficients):
                raise ValueError("points must be pairwise non-proportional")
    if not forms:
        return [] if F.is_zero() else None
    columns = [power_of_linear(L, F.degree).vector() for L in forms]
    a = [list(row) for row in zip(*columns)]
    lam = linalg.solve(a, F.vector())
    return lam


def minimal_generator_degrees(F: HomogeneousForm) -> dict[int, int]:
    if F.is_zero():
        raise ValueError("the zero form has no apolar ideal")
    n = F.nvars
    out: dict[int, int] = {}
    previous: list[list] = []
    for i in range(1, F.degree + 2):
        current = _slice_vectors(F, i)
        if previous:
            idx = monomial_index(n, i)
            products = []
            for v in previous:
                for j in range(n):
                    w = [0] * len(idx)
                    for mono, c in zip(monomials(n, i - 1), v):
                        if c != 0:
                            e = list(mono)
                            e[j] += 1
                            w[idx[tuple(e)]] = c
                    products.append(w)
            spanned = linalg.rank(products)
        else:
            spanned = 0
        new = len(current) - spanned
        if new:
            out[i] = new
        previous = current
    return out


def apolar_length(F: HomogeneousForm) -> int:
    return hilbert_function(F).length


def is_apolar(G: HomogeneousForm, F: HomogeneousForm) -> bool:
    return apolar_apply(G, F).is_zero()
