"""Decompositions of forms in three or more essential variables.

Two routes share one eigenvector pipeline:

* the catalecticant method, which takes ``r`` from the most square
  catalecticant and recovers the points cut out by its kernel;
* a Hankel/multiplication-operator method restricted to Hankel matrices whose
  entries are all determined by ``F`` (no unknown moments are searched for).

Both dehomogenise at ``x0``.  The affine Hankel entry for ``alpha`` in
``x1..xn`` is ``h_alpha = c_(d-|alpha|, alpha)``, the normalised coefficient.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .apolarity import apolar_slice, catalecticant, catalecticant_rank, essential_variables, max_catalecticant_rank
from .decomposition import WaringDecomposition, normalize_point, solve_coefficients
from .errors import ConvergenceError, DegeneracyError, MethodInapplicable, NonCommutingError
from .poly import HomogeneousForm, LinearForm, multinomial

MAX_BACKTRACK = 200
MAX_COORDINATE_CHANGES = 5
MAX_SHIFT_RETRIES = 5

Affine = tuple[int, ...]


def affine_monomials(n: int, k: int) -> list[Affine]:
    """Monomials in ``x1..xn`` of degree <= k: by degree, then descending lex."""
    from .poly import monomials
    out: list[Affine] = []
    for deg in range(k + 1):
        out.extend(monomials(n, deg) if n else [()])
    return out


def connected_to_one(B: Sequence[Affine]) -> bool:
    members = set(B)
    if not B:
        return False
    if tuple(0 for _ in B[0]) not in members:
        return False
    for m in members:
        if sum(m) == 0:
            continue
        if not any(m[i] and tuple(x - (j == i) for j, x in enumerate(m)) in members for i in range(len(m))):
            return False
    return True


def affine_moments(F: HomogeneousForm) -> dict[Affine, object]:
    """``h_alpha`` for every ``alpha`` in ``x1..xn`` with ``|alpha| <= d``."""
    d = F.degree
    h = {}
    for e, c in F.terms.items():
        h[e[1:]] = c / multinomial(d, e)
    return h


@dataclass(frozen=True)
class HankelSystem:
    """A quasi-Hankel matrix ``(h_{alpha+beta+shift})`` with unknown entries as ``None``."""

    degree: int
    rows: tuple[Affine, ...]
    cols: tuple[Affine, ...]
    shift: Affine | None
    matrix: tuple[tuple, ...]

    @property
    def known(self) -> bool:
        return all(x is not None for row in self.matrix for x in row)

    def mask(self) -> list[list[bool]]:
        return [[x is not None for x in row] for row in self.matrix]


def hankel_matrix(F: HomogeneousForm, rows: Sequence[Affine], cols: Sequence[Affine] | None = None,
                  shift: Affine | None = None) -> HankelSystem:
    cols = rows if cols is None else cols
    h = affine_moments(F)
    zero = Fraction(0)
    out = []
    for a in rows:
        row = []
        for b in cols:
            g = tuple(x + y for x, y in zip(a, b))
            if shift is not None:
                g = tuple(x + y for x, y in zip(g, shift))
            row.append(h.get(g, zero) if sum(g) <= F.degree else None)
        out.append(tuple(row))
    return HankelSystem(F.degree, tuple(rows), tuple(cols), shift, tuple(out))


def _unit(n: int, i: int) -> Affine:
    return tuple(int(j == i) for j in range(n))


@dataclass(frozen=True)
class MultiplicationOperators:
    basis: tuple[Affine, ...]
    matrices: tuple[tuple[tuple, ...], ...]

    def numeric(self) -> list[np.ndarray]:
        return [np.array([[complex(x) for x in row] for row in m]) for m in self.matrices]


def multiplication_operators(H_f: Sequence[Sequence], H_shifts: Sequence[Sequence[Sequence]],
                             basis: Sequence[Affine] = ()) -> MultiplicationOperators:
    """``M_i = H_f^{-1} H_{x_i f}``, with an exact commutation check."""
    inv = linalg.inverse([list(r) for r in H_f])
    mats = [linalg.matmul(inv, [list(r) for r in Hi]) for Hi in H_shifts]
    for i, j in itertools.combinations(range(len(mats)), 2):
        if linalg.matmul(mats[i], mats[j]) != linalg.matmul(mats[j], mats[i]):
            raise NonCommutingError(f"M_{i + 1} and M_{j + 1} do not commute")
    return MultiplicationOperators(tuple(basis), tuple(tuple(tuple(r) for r in m) for m in mats))


def joint_eigen(ops: MultiplicationOperators, tol: float = 1e-8, rng: random.Random | None = None):
    """Affine points ``(1, x1, ..., xn)`` from common eigenvectors of ``M_i^T``.

    Eigenvectors of ``M_i^T`` are evaluation vectors ``(b(p))_{b in B}``; they
    are normalised at the position of the monomial ``1``.
    """
    rng = rng or random.Random(0)
    B = ops.basis
    n = len(B[0])
    mats = ops.numeric()
    one = B.index(tuple(0 for _ in range(n)))
    pos = [B.index(_unit(n, i)) for i in range(n)]
    weights = [1] + [0] * (n - 1)
    for attempt in range(MAX_SHIFT_RETRIES + 1):
        m = sum(w * mi for w, mi in zip(weights, mats))
        vals, vecs = np.linalg.eig(m.T)
        scale = max(1.0, float(np.max(np.abs(vals))))
        gaps = [abs(a - b) for a, b in itertools.combinations(vals, 2)]
        if not gaps or min(gaps) > 1e-6 * scale:
            break
        weights = [rng.randint(-10, 10) or 1 for _ in range(n)]
    else:
        raise DegeneracyError("repeated eigenvalues for every tried shift direction")
    points, evals = [], []
    for k in range(vecs.shape[1]):
        v = vecs[:, k]
        if abs(v[one]) < 1e-12 * np.max(np.abs(v)):
            raise DegeneracyError("eigenvector vanishes at the monomial 1")
        v = v / v[one]
        coords = np.array([v[p] for p in pos])
        for b, val in zip(B, v):
            expected = np.prod(coords ** np.array(b))
            if abs(val - expected) > max(tol, 1e-6) * max(1.0, abs(expected)):
                raise DegeneracyError("eigenvector is not an evaluation vector")
        points.append(tuple([1 + 0j] + list(coords)))
        evals.append(v)
    return points, evals


def _select_basis(F: HomogeneousForm, r: int) -> tuple[Affine, ...] | None:
    """Admissible ``B``: connected to one, all shifted entries known, ``H_f^B`` invertible."""
    n, d = F.nvars - 1, F.degree
    k = (d - 1) // 2
    if k < 0:
        return None
    candidates = affine_monomials(n, k)
    if r > len(candidates):
        return None
    required = candidates[:n + 1] if r >= n + 1 else candidates[:1]
    if r < n + 1 and r > 1:
        return None

    def invertible(B) -> bool:
        return linalg.rank([list(row) for row in hankel_matrix(F, B).matrix]) == len(B)

    if not invertible(required):
        return None
    B = list(required)
    for c in candidates[len(required):]:
        if len(B) == r:
            break
        trial = B + [c]
        if connected_to_one(trial) and invertible(trial):
            B = trial
    if len(B) == r:
        return tuple(B)
    rest = candidates[len(required):]
    for tries, extra in enumerate(itertools.combinations(rest, r - len(required))):
        if tries >= MAX_BACKTRACK:
            break
        trial = list(required) + list(extra)
        if connected_to_one(trial) and invertible(trial):
            return tuple(trial)
    return None


def _unipotent_change(n1: int, rng: random.Random) -> tuple[list[list[int]], list[list[int]]]:
    """``x_i = z_i + t_i z_0`` for i >= 1, and its inverse."""
    t = [0] + [rng.choice([k for k in range(-5, 6) if k]) for _ in range(n1 - 1)]
    a = [[int(i == j) + (t[i] if j == 0 and i else 0) for j in range(n1)] for i in range(n1)]
    ainv = [[int(i == j) - (t[i] if j == 0 and i else 0) for j in range(n1)] for i in range(n1)]
    return a, ainv


def _points_via_hankel(F: HomogeneousForm, r: int, tol: float, rng: random.Random):
    """Try the eigenvector pipeline at size r; returns points in the coordinates of F."""
    n1 = F.nvars
    saw_basis = False
    for attempt in range(MAX_COORDINATE_CHANGES + 1):
        if attempt == 0:
            G, ainv = F, None
        else:
            a, ainv = _unipotent_change(n1, rng)
            G = F.substitute(a)
        B = _select_basis(G, r)
        if B is None:
            continue
        saw_basis = True
        H = hankel_matrix(G, B)
        shifts = [hankel_matrix(G, B, shift=_unit(n1 - 1, i)) for i in range(n1 - 1)]
        try:
            ops = multiplication_operators(H.matrix, [s.matrix for s in shifts], B)
            pts, _ = joint_eigen(ops, tol, rng)
        except (NonCommutingError, DegeneracyError):
            continue
        if ainv is not None:
            pts = [tuple(sum(q[k] * ainv[k][j] for k in range(n1)) for j in range(n1)) for q in pts]
        return pts, saw_basis
    return None, saw_basis


def kernel_points(kernel: Sequence[HomogeneousForm], r: int, rng: random.Random,
                  extra_degrees: int = 2) -> list[tuple[complex, ...]] | None:
    """Common zeros of forms cutting out ``r`` reduced points, via shifted null spaces.

    The right null space of the degree-D Macaulay matrix is spanned by the
    evaluation vectors of the points; shifts by ``x_k`` and by a random linear
    form then give commuting matrices whose eigenvalues are coordinate ratios.
    """
    from .poly import monomial_index, monomials
    if not kernel:
        return None
    n1, m = kernel[0].nvars, kernel[0].degree
    for D in range(m + 1, m + 2 + extra_degrees):
        idx = monomial_index(n1, D)
        rows = []
        for G in kernel:
            for u in monomials(n1, D - m):
                row = [0] * len(idx)
                for e, c in G.terms.items():
                    row[idx[tuple(a + b for a, b in zip(e, u))]] = c
                rows.append(row)
        null = linalg.nullspace(rows, len(idx))
        if len(null) != r:
            continue
        K = np.array([[complex(x) for x in v] for v in null]).T
        lower = monomials(n1, D - 1)
        shifted = []
        for k in range(n1):
            sel = [idx[tuple(a + (j == k) for j, a in enumerate(u))] for u in lower]
            shifted.append(K[sel, :])
        weights = [rng.choice([t for t in range(-9, 10) if t]) for _ in range(n1)]
        A = sum(w * S for w, S in zip(weights, shifted))
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[-1] <= 1e-10 * sv[0]:
            continue
        mats = [np.linalg.lstsq(A, S, rcond=None)[0] for S in shifted]
        for _ in range(MAX_SHIFT_RETRIES + 1):
            mix = [rng.randint(-10, 10) for _ in range(n1)]
            C = sum(c * M for c, M in zip(mix, mats))
            vals, vecs = np.linalg.eig(C)
            scale = max(1.0, float(np.max(np.abs(vals))))
            if r == 1 or min(abs(a - b) for a, b in itertools.combinations(vals, 2)) > 1e-6 * scale:
                break
        else:
            raise DegeneracyError("repeated eigenvalues for every tried combination")
        points = []
        for j in range(r):
            t = vecs[:, j]
            at = int(np.argmax(np.abs(t)))
            points.append(tuple(complex((M @ t)[at] / t[at]) for M in mats))
        return points
    return None


def _reduce_and_lift(F: HomogeneousForm, solver) -> WaringDecomposition:
    ev = essential_variables(F)
    if ev.m == F.nvars:
        return solver(F)
    dec = solver(ev.reduced)
    qinv = ev.inverse()
    lifted = []
    for L in dec.linear_forms:
        q = L.coefficients
        lifted.append([sum((q[k] * qinv[k][j] for k in range(ev.m)), start=0 * q[0]) for j in range(F.nvars)])
    return solve_coefficients(F, lifted, tol=max(10 * dec.relative_residual, 1e-8))


def _rank_one(F: HomogeneousForm) -> WaringDecomposition:
    cat = catalecticant(F, 1)
    column = next(col for col in zip(*cat.entries) if any(x != 0 for x in col))
    return solve_coefficients(F, [list(column)])


def catalecticant_decompose(F: HomogeneousForm, tol: float = 1e-8, seed: int = 0) -> WaringDecomposition:
    if F.is_zero():
        raise ValueError("zero form")
    ev = essential_variables(F)
    if ev.m <= 2:
        raise MethodInapplicable(f"{ev.m} essential variable(s); use the binary methods")
    if ev.m < F.nvars:
        return _reduce_and_lift(F, lambda G: catalecticant_decompose(G, tol, seed))
    d = F.degree
    m = (d + 1) // 2
    r = catalecticant_rank(F, m)
    kernel = apolar_slice(F, m).basis
    rng = random.Random(seed)
    pts, _ = _points_via_hankel(F, r, tol, rng)
    if pts is None:
        pts = kernel_points(kernel, r, rng)
    if pts is None:
        raise MethodInapplicable(f"cannot recover {r} points from the kernel of Cat_{{{m},{d - m}}}")
    pts = [normalize_point(p) for p in pts]
    for G in kernel:
        for p in pts:
            scale = sum(abs(complex(c)) for c in G.terms.values()) * max(abs(x) for x in p) ** m
            if abs(complex(G.map_coefficients(complex).evaluate(p))) > 1e-6 * scale:
                raise MethodInapplicable("recovered points are not cut out by the catalecticant kernel")
    try:
        return solve_coefficients(F, pts, tol)
    except ConvergenceError as exc:
        raise MethodInapplicable(f"kernel points do not decompose the form: {exc}") from exc


def bcmt_decompose(F: HomogeneousForm, r_max: int | None = None, tol: float = 1e-8,
                   seed: int = 0) -> WaringDecomposition:
    if F.is_zero():
        raise ValueError("zero form")
    ev = essential_variables(F)
    if ev.m == 1:
        return _rank_one(F)
    if ev.m < F.nvars:
        return _reduce_and_lift(F, lambda G: bcmt_decompose(G, r_max, tol, seed))
    n, d = F.nvars - 1, F.degree
    ceiling = len(affine_monomials(n, max((d - 1) // 2, 0)))
    r_max = ceiling if r_max is None else min(r_max, ceiling)
    rng = random.Random(seed)
    saw_basis = False
    for r in range(max(max_catalecticant_rank(F), 1), r_max + 1):
        pts, saw = _points_via_hankel(F, r, tol, rng)
        saw_basis |= saw
        if pts is None:
            continue
        try:
            return solve_coefficients(F, pts, tol)
        except ConvergenceError:
            continue
    if not saw_basis:
        raise MethodInapplicable("requires Hankel extension: no admissible basis with known entries")
    raise MethodInapplicable(f"no decomposition found with at most {r_max} summands in the known-entry regime")


def quadric_decompose(F: HomogeneousForm) -> WaringDecomposition:
    """Exact diagonalisation of a quadric by congruence over the rationals."""
    if F.degree != 2:
        raise ValueError("expected a quadric")
    s = [list(row) for row in catalecticant(F, 1).entries]
    n = len(s)
    forms, coeffs = [], []
    while any(x != 0 for row in s for x in row):
        v = _anisotropic(s)
        sv = [sum(s[i][j] * v[j] for j in range(n)) for i in range(n)]
        q = sum(v[i] * sv[i] for i in range(n))
        forms.append(sv)
        coeffs.append(1 / q)
        s = [[s[i][j] - sv[i] * sv[j] / q for j in range(n)] for i in range(n)]
    dec = solve_coefficients(F, forms) if forms else None
    if dec is None or not dec.exact:
        raise AssertionError("quadric diagonalisation failed")
    return dec


def _anisotropic(s) -> list:
    n = len(s)
    for i in range(n):
        if s[i][i] != 0:
            return [int(k == i) for k in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if s[i][j] != 0:
            return [int(k in (i, j)) for k in range(n)]
    raise AssertionError("zero matrix")
