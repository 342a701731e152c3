"""Closed-form ranks and certified rank bounds.

Covers monomials (rank formula and explicit decompositions from roots of
unity), reducible cubics in canonical form, real monomial ranks, general upper
bounds and the Ranestad-Schreyer and colon-ideal lower bounds.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .apolarity import (_slice_vectors, apolar_length, essential_variables, max_catalecticant_rank,
                        minimal_generator_degrees)
from .decomposition import WaringDecomposition, solve_coefficients
from .poly import HomogeneousForm, LinearForm, apolar_apply, monomial_index, monomials, parse_form, variable
from .secant import ah_oracle

MAX_RANK_TABLE = {(2, 3): 5, (2, 4): 7, (2, 5): 10, (3, 3): 7}


def _nonzero(alpha: Sequence[int]) -> list[int]:
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be non-negative")
    exps = [a for a in alpha if a > 0]
    if not exps:
        raise ValueError("constant monomial has no rank")
    return exps


def monomial_rank(alpha: Sequence[int]) -> int:
    """Complex rank of ``x^alpha``; zero exponents are dropped first."""
    exps = sorted(_nonzero(alpha))
    return math.prod(a + 1 for a in exps) // (exps[0] + 1)


def monomial_decomposition(alpha: Sequence[int], tol: float = 1e-8) -> WaringDecomposition:
    """Decomposition on the points ``y_i^(a_i+1) = y_0^(a_i+1)`` (roots of unity)."""
    _nonzero(alpha)
    support = [i for i, a in enumerate(alpha) if a > 0]
    low = min(support, key=lambda i: alpha[i])
    others = [i for i in support if i != low]
    choices = []
    for i in others:
        k = alpha[i] + 1
        roots = []
        for j in range(k):
            z = cmath.exp(2j * math.pi * j / k)
            roots.append(complex(round(z.real, 15), round(z.imag, 15)))
        choices.append(roots)
    points = []
    for combo in itertools.product(*choices):
        p = [0j] * len(alpha)
        p[low] = 1 + 0j
        for i, z in zip(others, combo):
            p[i] = z
        points.append(p)
    F = HomogeneousForm.monomial(tuple(alpha))
    return solve_coefficients(F, points, tol)


def ranestad_schreyer_lower(F: HomogeneousForm) -> int:
    if F.is_zero():
        raise ValueError("zero form")
    t = max(minimal_generator_degrees(F))
    return math.ceil(apolar_length(F) / t)


def colon_lower(F: HomogeneousForm, G: HomogeneousForm) -> int:
    """``ceil(1/e * sum_i HF(R/((F^perp : G) + (G)), i))`` for a dual form G of degree e."""
    e = G.degree
    if e < 1 or G.is_zero():
        raise ValueError("need a nonzero dual form of positive degree")
    H = apolar_apply(G, F)          # (F^perp : G) = H^perp
    n = F.nvars
    total = 0
    for i in range(0, F.degree - e + 1):
        size = len(monomials(n, i))
        if H.is_zero():
            rows = [[int(r == c) for c in range(size)] for r in range(size)]
        else:
            rows = list(_slice_vectors(H, i))
        if i >= e:
            idx = monomial_index(n, i)
            for m in monomials(n, i - e):
                w = [0] * len(idx)
                for g, c in G.terms.items():
                    w[idx[tuple(a + b for a, b in zip(g, m))]] = c
                rows.append(w)
        total += size - (linalg.rank(rows) if rows else 0)
    return math.ceil(total / e)


def colon_e1_lower(F: HomogeneousForm, ell: HomogeneousForm | Sequence | None = None) -> int:
    """Colon bound with a linear ``ell``; for monomials the default is the minimal-exponent variable."""
    if ell is None:
        if F.is_monomial():
            (alpha,) = F.terms
            low = min((i for i, a in enumerate(alpha) if a > 0), key=lambda i: alpha[i])
            ell = variable(low, F.nvars)
        else:
            ell = variable(0, F.nvars)
    elif not isinstance(ell, HomogeneousForm):
        ell = LinearForm(tuple(ell)).as_form()
    if ell.degree != 1:
        raise ValueError("ell must be linear")
    return colon_lower(F, ell)


def ah_generic_rank(n: int, d: int) -> int:
    N = math.comb(n + d, d) - 1
    s = 1
    while ah_oracle(n, d, s).dimension < N:
        s += 1
    return s


def _comb(a: int, b: int) -> int:
    return math.comb(a, b) if a >= 0 and 0 <= b <= a else 0


def upper_bounds(n: int, d: int) -> dict[str, int]:
    """Upper bounds on the rank of every form of degree d in n+1 variables."""
    if d < 2 or n < 1:
        raise ValueError("need n >= 1 and d >= 2")
    out = {"landsberg_teitler": math.comb(n + d, d) - n}
    if d >= 3:
        out["jelisiejew"] = _comb(n + d - 1, d - 1) - _comb(n + d - 5, d - 3)
    out["blekherman_teitler"] = 2 * ah_generic_rank(n, d)
    return out


def max_rank_known(n: int, d: int) -> int | None:
    if n == 1:
        return d
    return MAX_RANK_TABLE.get((n, d))


# -- reducible cubics ---------------------------------------------------------

def reducible_cubic_form(kind: int, n: int) -> HomogeneousForm:
    """Canonical reducible cubic of the given kind in ``n+1`` variables."""
    v = [variable(i, n + 1) for i in range(n + 1)]
    if kind == 1:
        q = sum((x * x for x in v), start=HomogeneousForm(n + 1, 2))
    elif kind == 2:
        q = sum((x * x for x in v[1:]), start=HomogeneousForm(n + 1, 2))
    elif kind == 3:
        if n < 3:
            raise ValueError("kind 3 needs n >= 3")
        q = v[0] * v[1] + v[2] * v[3] + sum((x * x for x in v[4:]), start=HomogeneousForm(n + 1, 2))
    else:
        raise ValueError("kind must be 1, 2 or 3")
    return v[0] * q


def reducible_cubic_rank(kind: int, n: int) -> int:
    if n < 2:
        raise ValueError("need n >= 2")
    if kind in (1, 2):
        return 2 * n
    if kind == 3:
        if n < 3:
            raise ValueError("kind 3 needs n >= 3")
        return 2 * n + 1
    raise ValueError("kind must be 1, 2 or 3")


def real_reducible_cubic_rank(kind: int, n: int, signs: Sequence[int] = (), alpha: float | None = None) -> tuple[int, int]:
    """Interval for the real rank of a real reducible cubic in canonical form.

    kind 1: ``x0 * sum_{i>=1} e_i x_i^2`` (``signs`` = e_1..e_n);
    kind 2: ``x0 * sum_{i>=0} e_i x_i^2`` (``signs`` = e_0..e_n);
    kind 3: ``(alpha x0 + x_p) * sum e_i x_i^2``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if any(e not in (-1, 1) for e in signs):
        raise ValueError("signs must be +1 or -1")
    if kind == 1:
        if signs and len(signs) != n:
            raise ValueError("kind 1 takes n signs")
        return (2 * n, 2 * n) if signs and sum(signs) == 0 else (2 * n, 2 * n + 1)
    if kind == 2:
        if signs and len(signs) != n + 1:
            raise ValueError("kind 2 takes n+1 signs")
        if signs and len(set(signs)) == 1:
            return 2 * n, 2 * n
        if signs and signs[0] != signs[1] and len(set(signs[1:])) == 1:
            return 2 * n + 1, 2 * n + 1
        return 2 * n, 2 * n + 1
    if kind == 3:
        if alpha is not None and alpha == 0:
            raise ValueError("alpha must be nonzero")
        return (2 * n + 1, 2 * n + 3) if alpha in (1, -1) else (2 * n, 2 * n + 3)
    raise ValueError("kind must be 1, 2 or 3")


# -- real monomials -------------------------------------------------------------

def real_binary_monomial_rank(a0: int, a1: int) -> int:
    if a0 < 1 or a1 < 1:
        raise ValueError("exponents must be positive")
    return a0 + a1


def real_equals_complex(alpha: Sequence[int]) -> bool:
    return min(_nonzero(alpha)) == 1


def real_monomial_rank(alpha: Sequence[int]) -> tuple[int, int] | None:
    """Known interval for the real rank of a monomial, or ``None`` if unknown."""
    exps = sorted(_nonzero(alpha))
    if len(exps) == 1:
        return 1, 1
    if len(exps) == 2:
        r = real_binary_monomial_rank(*exps)
        return r, r
    if exps[0] == 1:
        r = monomial_rank(exps)
        return r, r
    if exps == [2, 2, 2]:
        return 11, 13
    return None


@dataclass(frozen=True)
class ForbiddenLocus:
    """Union of the coordinate hyperplanes ``y_i = 0`` for ``i`` in ``indices``."""

    nvars: int
    indices: frozenset[int]

    def contains(self, point: Sequence) -> bool:
        return any(point[i] == 0 for i in self.indices)


def monomial_waring_locus(alpha: Sequence[int]) -> ForbiddenLocus:
    low = min(_nonzero(alpha))
    return ForbiddenLocus(len(alpha), frozenset(i for i, a in enumerate(alpha) if a == low))


# -- aggregate report -------------------------------------------------------------

@dataclass
class BoundReport:
    lower: dict[str, int] = field(default_factory=dict)
    upper: dict[str, int] = field(default_factory=dict)

    @property
    def best_lower(self) -> int:
        return max(self.lower.values(), default=1)

    @property
    def best_upper(self) -> int | None:
        return min(self.upper.values(), default=None)

    @property
    def exact(self) -> int | None:
        up = self.best_upper
        return up if up is not None and up == self.best_lower else None

    def consistent(self) -> bool:
        up = self.best_upper
        return up is None or self.best_lower <= up

    def to_dict(self) -> dict:
        return {"lower": dict(self.lower), "upper": dict(self.upper), "exact": self.exact}


def rank_bounds(F: HomogeneousForm) -> BoundReport:
    rep = BoundReport()
    rep.lower["catalecticant"] = max_catalecticant_rank(F)
    rep.lower["ranestad_schreyer"] = ranestad_schreyer_lower(F)
    if F.is_monomial():
        (alpha,) = F.terms
        rep.lower["colon_e1"] = colon_e1_lower(F)
        rep.upper["monomial_formula"] = monomial_rank(alpha)
    m = essential_variables(F).m
    if m == 1:
        rep.upper["power"] = 1
    elif F.degree >= 2:
        rep.upper.update(upper_bounds(m - 1, F.degree))
        known = max_rank_known(m - 1, F.degree)
        if known is not None:
            rep.upper["max_rank_table"] = known
    return rep
