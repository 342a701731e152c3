"""Waring decompositions ``F = sum lam_i L_i^d`` and their verification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .apolarity import verify_apolar_points
from .errors import ConvergenceError
from .poly import HomogeneousForm, LinearForm, monomials, multinomial, power_of_linear

RATIONAL_DENOMINATOR = 10**6


@dataclass(frozen=True)
class WaringDecomposition:
    coefficients: tuple
    linear_forms: tuple[LinearForm, ...]
    degree: int
    verified_residual: float
    relative_residual: float
    exact: bool

    def __len__(self) -> int:
        return len(self.linear_forms)

    @property
    def rank(self) -> int:
        return len(self.linear_forms)

    def points(self) -> list[tuple]:
        return [L.coefficients for L in self.linear_forms]

    def to_form(self) -> HomogeneousForm:
        n = self.linear_forms[0].nvars
        out = HomogeneousForm(n, self.degree)
        for lam, L in zip(self.coefficients, self.linear_forms):
            out = out + power_of_linear(L, self.degree) * lam
        return out

    def to_dict(self) -> dict:
        return {
            "summands": [{"coefficient": scalar_json(c), "linear_form": [scalar_json(a) for a in L.coefficients]}
                         for c, L in zip(self.coefficients, self.linear_forms)],
            "exact": self.exact,
            "residual": self.verified_residual,
        }

    def __str__(self):
        parts = []
        for c, L in zip(self.coefficients, self.linear_forms):
            parts.append(f"{scalar_text(c)}*({L})^{self.degree}")
        return " + ".join(parts)


def scalar_text(c) -> str:
    if isinstance(c, complex):
        if abs(c.imag) <= 1e-14 * max(1.0, abs(c)):
            return f"{c.real:.12g}"
        return f"({c.real:.12g}{c.imag:+.12g}j)"
    return str(c)


def scalar_json(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else int(c)
    if isinstance(c, complex):
        return [c.real, c.imag]
    if isinstance(c, float):
        return c
    return str(c)


def _power_matrix(points: Sequence[Sequence[complex]], d: int) -> np.ndarray:
    n = len(points[0])
    mons = monomials(n, d)
    weights = np.array([multinomial(d, a) for a in mons], dtype=float)
    exps = np.array(mons)
    cols = []
    for p in points:
        p = np.asarray(p, dtype=complex)
        cols.append(weights * np.prod(p[None, :] ** exps, axis=1))
    return np.array(cols).T


def form_to_complex(F: HomogeneousForm) -> np.ndarray:
    return np.array([complex(c) if not hasattr(c, "p") else complex(int(c)) for c in F.vector()])


def numeric_residual(F: HomogeneousForm, coefficients, points) -> tuple[float, float]:
    f = form_to_complex(F)
    a = _power_matrix(points, F.degree)
    res = float(np.max(np.abs(a @ np.asarray(coefficients, dtype=complex) - f)))
    scale = max(1.0, float(np.max(np.abs(f)))) if f.size else 1.0
    return res, res / scale


def normalize_point(p: Sequence[complex], rel: float = 1e-8) -> tuple[complex, ...]:
    """Scale a projective point so its first non-negligible coordinate is 1."""
    p = [complex(x) for x in p]
    big = max(abs(x) for x in p)
    if big == 0:
        raise ValueError("zero point")
    for x in p:
        if abs(x) > rel * big:
            return tuple(y / x for y in p)
    raise AssertionError("unreachable")


def rationalize(z: complex, tol: float = 1e-9) -> Fraction | None:
    z = complex(z)
    if abs(z.imag) > tol * max(1.0, abs(z)):
        return None
    q = Fraction(z.real).limit_denominator(RATIONAL_DENOMINATOR)
    if abs(float(q) - z.real) > tol * max(1.0, abs(z.real)):
        return None
    return q


def exact_decomposition(F: HomogeneousForm, points: Sequence[Sequence]) -> WaringDecomposition | None:
    """Try to certify a decomposition with rational points; ``None`` on failure."""
    exact_points = []
    for p in points:
        q = [rationalize(x) for x in normalize_point(p)]
        if any(x is None for x in q):
            return None
        exact_points.append(LinearForm(tuple(q)))
    try:
        lam = verify_apolar_points(F, exact_points)
    except ValueError:
        return None
    if lam is None or any(c == 0 for c in lam):
        return None
    return WaringDecomposition(tuple(lam), tuple(exact_points), F.degree, 0.0, 0.0, True)


def solve_coefficients(F: HomogeneousForm, points: Sequence[Sequence], tol: float = 1e-8,
                       try_exact: bool = True) -> WaringDecomposition:
    """Coefficients for given points, exactly when possible, else least squares."""
    if try_exact and all(hasattr(c, "denominator") for c in F.terms.values()):
        exact = exact_decomposition(F, points)
        if exact is not None:
            return exact
    pts = [normalize_point(p) for p in points]
    a = _power_matrix(pts, F.degree)
    f = form_to_complex(F)
    # columns of L^d can differ by many orders of magnitude; equilibrate first
    norms = np.linalg.norm(a, axis=0)
    norms[norms == 0] = 1.0
    scaled = a / norms
    lam, *_ = np.linalg.lstsq(scaled, f, rcond=None)
    fix, *_ = np.linalg.lstsq(scaled, f - scaled @ lam, rcond=None)
    lam = (lam + fix) / norms
    res, rel = numeric_residual(F, lam, pts)
    if rel > tol:
        raise ConvergenceError("decomposition residual above tolerance", residual=rel)
    forms = tuple(LinearForm(tuple(_clean(x) for x in p)) for p in pts)
    return WaringDecomposition(tuple(_clean(c) for c in lam), forms, F.degree, res, rel, False)


def _clean(z: complex) -> complex:
    z = complex(z)
    re = 0.0 if abs(z.real) < 1e-15 else z.real
    im = 0.0 if abs(z.imag) < 1e-15 * max(1.0, abs(z)) else z.imag
    return complex(re, im)
