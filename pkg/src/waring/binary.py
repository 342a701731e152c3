"""Rank, border rank and minimal decompositions of binary forms (Sylvester).

Forms in more variables are accepted when they have at most two essential
variables; they are reduced first and the result is mapped back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .apolarity import EssentialVariables, apolar_slice, catalecticant, catalecticant_rank, essential_variables
from .decomposition import WaringDecomposition, solve_coefficients
from .errors import DomainError
from .poly import HomogeneousForm, LinearForm, format_form
from .roots import dehomogenize, poly_derivative, poly_gcd, univariate_complex_roots

RANDOM_RETRIES = 5
COEFF_RANGE = 10


@dataclass(frozen=True)
class RankCertificate:
    border_rank: int
    rank: int
    witness: HomogeneousForm | None = None
    witness_squarefree: bool | None = None
    method: str = "sylvester"

    def to_dict(self) -> dict:
        return {
            "border_rank": self.border_rank,
            "rank": self.rank,
            "witness": None if self.witness is None else format_form(self.witness, "y"),
            "witness_squarefree": self.witness_squarefree,
        }


def _as_binary(F: HomogeneousForm) -> tuple[HomogeneousForm, EssentialVariables | None]:
    """Return a two-variable form with the same rank, plus the reduction used."""
    if F.is_zero():
        raise DomainError("the zero form has no rank")
    if F.nvars == 2:
        return F, None
    if F.nvars == 1:
        return HomogeneousForm(2, F.degree, {(e[0], 0): c for e, c in F.terms.items()}), None
    ev = essential_variables(F)
    if ev.m > 2:
        raise DomainError(f"form has {ev.m} essential variables; binary methods need at most 2")
    red = ev.reduced
    if ev.m == 1:
        red = HomogeneousForm(2, F.degree, {(e[0], 0): c for e, c in red.terms.items()})
    return red, ev


def squarefree(G: HomogeneousForm) -> bool:
    """Exact test that a binary form has distinct projective roots."""
    if G.is_zero():
        raise ValueError("zero form")
    coeffs, at_infinity = dehomogenize(G)
    if at_infinity > 1:
        return False
    if len(coeffs) <= 2:
        return True
    return len(poly_gcd(coeffs, poly_derivative(coeffs))) == 1


def binary_border_rank(F: HomogeneousForm) -> int:
    B, _ = _as_binary(F)
    return catalecticant_rank(B, B.degree // 2)


def _kernel_search(F: HomogeneousForm, r: int, rng: random.Random) -> tuple[HomogeneousForm, bool]:
    """Generic element of ker Cat_{r,d-r}; falls back to an exhaustive scan."""
    basis = apolar_slice(F, r).basis
    if not basis:
        raise AssertionError("empty apolar slice")
    first = None
    for _ in range(RANDOM_RETRIES if len(basis) > 1 else 1):
        G = _combine(basis, [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in basis])
        if G.is_zero():
            continue
        if first is None:
            first = G
        if squarefree(G):
            return G, True
    candidates = list(basis)
    candidates += [a + b for k, a in enumerate(basis) for b in basis[k + 1:]]
    candidates += [a - b for k, a in enumerate(basis) for b in basis[k + 1:]]
    for G in candidates:
        if not G.is_zero() and squarefree(G):
            return G, True
    return first if first is not None else basis[0], False


def _combine(basis, weights) -> HomogeneousForm:
    out = HomogeneousForm(basis[0].nvars, basis[0].degree)
    for w, g in zip(weights, basis):
        if w:
            out = out + g * w
    return out


def binary_rank(F: HomogeneousForm, seed: int = 0) -> RankCertificate:
    B, _ = _as_binary(F)
    d = B.degree
    r = catalecticant_rank(B, d // 2)
    if r == 1 or d <= 1:
        return RankCertificate(r, r, apolar_slice(B, 1).basis[0] if d >= 1 else None, True)
    G, ok = _kernel_search(B, r, random.Random(seed))
    return RankCertificate(r, r if ok else d - r + 2, G, ok)


def _rank_one(F: HomogeneousForm) -> WaringDecomposition:
    cat = catalecticant(F, 1)
    column = next(col for col in zip(*cat.entries) if any(x != 0 for x in col))
    return solve_coefficients(F, [list(column)])


def binary_decompose(F: HomogeneousForm, tol: float = 1e-8, seed: int = 0,
                     root_tol: float = 1e-12) -> WaringDecomposition:
    B, ev = _as_binary(F)
    cert = binary_rank(B, seed)
    if cert.rank == 1:
        dec = _rank_one(B)
    else:
        G, ok = _kernel_search(B, cert.rank, random.Random(seed))
        if not ok:
            raise AssertionError("no square-free kernel element at the certified rank")
        roots = univariate_complex_roots(G, root_tol)
        dec = solve_coefficients(B, [list(p) for p in roots], tol)
    return _lift(F, dec, ev)


def _lift(F: HomogeneousForm, dec: WaringDecomposition, ev: EssentialVariables | None) -> WaringDecomposition:
    if F.nvars == 2:
        return dec
    if ev is None:        # one-variable input padded to two
        forms = tuple(LinearForm(L.coefficients[:1]) for L in dec.linear_forms)
        return WaringDecomposition(dec.coefficients, forms, dec.degree, dec.verified_residual,
                                   dec.relative_residual, dec.exact)
    lifted = []
    for L in dec.linear_forms:
        q = L.coefficients[:ev.m]
        if dec.exact:
            lifted.append(ev.lift(q))
        else:
            qinv = [[complex(x) for x in row] for row in ev.inverse()]
            lifted.append(LinearForm(tuple(sum(q[k] * qinv[k][j] for k in range(ev.m))
                                           for j in range(F.nvars))))
    if dec.exact:
        return solve_coefficients(F, [L.coefficients for L in lifted])
    return solve_coefficients(F, [L.coefficients for L in lifted], tol=max(dec.relative_residual * 10, 1e-8),
                              try_exact=False)


def sigma2_rank(F: HomogeneousForm, seed: int = 0) -> RankCertificate | None:
    """Rank of a form on the second secant variety; ``None`` if it is not there."""
    if F.degree < 2:
        raise DomainError("degree must be at least 2")
    ev = essential_variables(F)
    if ev.m == 1:
        return RankCertificate(1, 1, method="sigma2")
    if ev.m > 2:
        return None
    cert = binary_rank(ev.reduced, seed)
    return RankCertificate(cert.border_rank, cert.rank, cert.witness, cert.witness_squarefree, "sigma2")
