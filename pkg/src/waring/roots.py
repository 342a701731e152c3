"""Univariate polynomial helpers: exact gcd over the rationals and Aberth roots.

Coefficient lists are in descending powers, as in ``numpy.polyval``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError
from .poly import HomogeneousForm

EPS = np.finfo(float).eps


def _trim(p: list) -> list:
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def poly_rem(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    while len(a) >= len(b) and a:
        f = Fraction(a[0]) / b[0]
        for k in range(len(b)):
            a[k] -= f * b[k]
        a = _trim(a[1:] if a[0] == 0 else a)
    return a


def poly_gcd(a: list, b: list) -> list:
    """Monic gcd of two polynomials with rational coefficients."""
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while b:
        a, b = b, poly_rem(a, b)
    if not a:
        return []
    return [x / a[0] for x in a]


def poly_derivative(p: list) -> list:
    n = len(p) - 1
    return [c * (n - k) for k, c in enumerate(p[:-1])]


def dehomogenize(G: HomogeneousForm) -> tuple[list, int]:
    """``G(1, t)`` in descending powers of ``t`` and the number of roots at infinity."""
    if G.nvars != 2:
        raise ValueError("expected a binary form")
    r = G.degree
    asc = [G.coefficient((r - k, k)) for k in range(r + 1)]
    top = max((k for k, c in enumerate(asc) if c != 0), default=-1)
    if top < 0:
        raise ValueError("zero form has no roots")
    return list(reversed(asc[:top + 1])), r - top


def aberth(coeffs, tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """All complex roots (with multiplicity) of a polynomial with nonzero leading term."""
    c = np.asarray(coeffs, dtype=complex)
    if c.size == 0 or c[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    n = c.size - 1
    if n == 0:
        return np.zeros(0, dtype=complex)
    zeros = 0
    while c[-1] == 0:
        c = c[:-1]
        zeros += 1
    m = c.size - 1
    if m == 0:
        return np.zeros(zeros, dtype=complex)
    c = c / c[0]
    if m == 1:
        return np.concatenate([[-c[1]], np.zeros(zeros)])
    centre = -c[1] / m
    radius = max(abs(c[-1]) ** (1.0 / m), 1e-3)
    radius = max(radius, max(abs(x) ** (1.0 / (k + 1)) for k, x in enumerate(c[1:])))
    angles = 2 * np.pi * np.arange(m) / m + 0.4
    z = centre + radius * np.exp(1j * angles)
    dc = np.polyder(c)
    absc = np.abs(c)
    converged = False
    for it in range(1, max_iter + 1):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        bound = np.polyval(absc, np.abs(z))
        done = np.abs(pz) <= 4 * EPS * bound
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            corr = w / (1 - w * s)
        corr = np.where(done | ~np.isfinite(corr), 0, corr)
        z = z - corr
        if np.all(np.abs(corr) <= tol * np.maximum(1.0, np.abs(z))):
            converged = True
            break
    residual = float(np.max(np.abs(np.polyval(c, z)) / np.maximum(np.polyval(absc, np.abs(z)), 1e-300)))
    if not converged and residual > tol:
        raise ConvergenceError("Aberth iteration did not converge", iterations=it, residual=residual)
    return np.concatenate([z, np.zeros(zeros, dtype=complex)])


def polish_multiple_roots(coeffs, z: np.ndarray, group_tol: float = 1e-3, accept: float = 1e-9) -> np.ndarray:
    """Snap clusters of approximate roots onto a common multiple root.

    A cluster of size m is accepted when Newton on the (m-1)-th derivative
    converges to a point where all lower derivatives nearly vanish too.
    """
    c = np.asarray(coeffs, dtype=complex)
    z = np.array(z, dtype=complex)
    unassigned = list(range(len(z)))
    while unassigned:
        group = [unassigned.pop(0)]
        grew = True
        while grew:
            grew = False
            for k in list(unassigned):
                if any(abs(z[k] - z[g]) <= group_tol * max(1.0, abs(z[g])) for g in group):
                    group.append(k)
                    unassigned.remove(k)
                    grew = True
        m = len(group)
        if m < 2:
            continue
        ders = [c]
        for _ in range(m - 1):
            ders.append(np.polyder(ders[-1]))
        w = z[group].mean()
        for _ in range(50):
            step = np.polyval(ders[-1], w) / np.polyval(np.polyder(ders[-1]), w)
            if not np.isfinite(step):
                break
            w -= step
            if abs(step) <= EPS * max(1.0, abs(w)):
                break
        ok = all(abs(np.polyval(q, w)) <= accept * np.polyval(np.abs(q), abs(w)) for q in ders[:-1])
        if ok:
            z[group] = w
    return z


def univariate_complex_roots(G: HomogeneousForm, tol: float = 1e-12, max_iter: int = 200) -> list[tuple[complex, complex]]:
    """Projective roots ``(alpha, beta)`` of a binary form, with multiplicity.

    A root ``(alpha, beta)`` means ``G(alpha, beta) = 0``; finite roots are
    returned as ``(1, t)`` and roots at infinity as ``(0, 1)``.
    """
    coeffs, at_infinity = dehomogenize(G)
    finite = []
    if len(coeffs) > 1:
        cc = [complex(x) for x in coeffs]
        finite = polish_multiple_roots(cc, aberth(cc, tol, max_iter))
    return [(1 + 0j, complex(t)) for t in finite] + [(0j, 1 + 0j)] * at_infinity


def cluster_multiplicities(roots: list[tuple[complex, complex]], tol: float = 1e-6) -> list[int]:
    """Sizes of clusters of projectively close roots."""
    pts = []
    for a, b in roots:
        norm = cmath.sqrt(abs(a) ** 2 + abs(b) ** 2).real
        pts.append((a / norm, b / norm))
    counts: list[int] = []
    reps: list[tuple[complex, complex]] = []
    for p in pts:
        for k, q in enumerate(reps):
            if abs(p[0] * q[1] - p[1] * q[0]) <= tol:
                counts[k] += 1
                break
        else:
            reps.append(p)
            counts.append(1)
    return counts
