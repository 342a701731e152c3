"""Dimensions of secant varieties by Terracini's lemma over prime fields.

The affine tangent spaces at ``s`` random points of a variety are stacked and
their span is ranked mod ``p``.  A rank over F_p never exceeds the generic
rank in characteristic zero, so the maximum over trials is reported and a
defect is only claimed after two primes agree.
"""

from __future__ import annotations

import math
import re
import zlib
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import ParseError
from .fields import SECANT_PRIMES
from .linalg import rank as exact_rank, rank_mod_p
from .poly import falling, monomial_index, monomials, multinomial

DEFAULT_TRIALS = 3


# -- dense polynomial helpers mod p -----------------------------------------

@lru_cache(maxsize=None)
def _exponent_array(nvars: int, d: int) -> np.ndarray:
    return np.array(monomials(nvars, d), dtype=np.int64).reshape(-1, nvars)


@lru_cache(maxsize=None)
def _multinomials(nvars: int, d: int) -> tuple[int, ...]:
    return tuple(multinomial(d, a) for a in monomials(nvars, d))


@lru_cache(maxsize=None)
def _product_index(nvars: int, a: int, b: int) -> np.ndarray:
    idx = monomial_index(nvars, a + b)
    return np.array([[idx[tuple(x + y for x, y in zip(u, v))] for v in monomials(nvars, b)]
                     for u in monomials(nvars, a)], dtype=np.int64).reshape(
        len(monomials(nvars, a)), len(monomials(nvars, b)))


def power_vector(coeffs: Sequence[int], k: int, p: int) -> np.ndarray:
    """Coefficients of ``L^k`` mod p in the monomial order of degree k."""
    n = len(coeffs)
    pows = [[pow(int(c), e, p) for e in range(k + 1)] for c in coeffs]
    out = []
    for alpha, m in zip(monomials(n, k), _multinomials(n, k)):
        v = m % p
        for i, e in enumerate(alpha):
            if e:
                v = v * pows[i][e] % p
        out.append(v)
    return np.array(out, dtype=np.int64)


def multiply(u: np.ndarray, a: int, v: np.ndarray, b: int, nvars: int, p: int) -> np.ndarray:
    """Product of dense forms of degrees a and b, mod p."""
    table = _product_index(nvars, a, b)
    out = np.zeros(len(monomials(nvars, a + b)), dtype=np.int64)
    for i in np.flatnonzero(u):
        np.add.at(out, table[i], (int(u[i]) * v) % p)
        out %= p
    return out


def times_variables(u: np.ndarray, a: int, nvars: int) -> list[np.ndarray]:
    """``u * x_j`` for every variable j (no arithmetic needed)."""
    table = _product_index(nvars, a, 1)
    size = len(monomials(nvars, a + 1))
    out = []
    for j in range(nvars):
        w = np.zeros(size, dtype=np.int64)
        w[table[:, j]] = u
        out.append(w)
    return out


def _random_vector(rng: np.random.Generator, size: int, p: int) -> list[int]:
    while True:
        v = [int(x) for x in rng.integers(0, p, size=size)]
        if any(v):
            return v


def det_mod_p(m: list[list[int]], p: int) -> int:
    a = [row[:] for row in m]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


# -- varieties ---------------------------------------------------------------

class VarietySpec:
    """Common interface: ``ambient_dim``, ``dim``, ``label`` and tangent bases."""

    ambient_dim: int
    dim: int

    @property
    def label(self) -> str:
        raise NotImplementedError

    def tangent_vectors(self, rng: np.random.Generator, p: int) -> list[np.ndarray]:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Veronese(VarietySpec):
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("Veronese needs n >= 1, d >= 1")

    @property
    def label(self):
        return f"veronese:{self.n},{self.d}"

    @property
    def ambient_dim(self):
        return math.comb(self.n + self.d, self.n) - 1

    @property
    def dim(self):
        return self.n

    def tangent_vectors(self, rng, p, point=None):
        L = point if point is not None else _random_vector(rng, self.n + 1, p)
        return times_variables(power_vector(L, self.d - 1, p), self.d - 1, self.n + 1)


@dataclass(frozen=True)
class TangentialVeronese(VarietySpec):
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 2:
            raise ValueError("tangential variety needs n >= 1, d >= 2")

    @property
    def label(self):
        return f"tangential:{self.n},{self.d}"

    @property
    def ambient_dim(self):
        return math.comb(self.n + self.d, self.n) - 1

    @property
    def dim(self):
        return min(2 * self.n, self.ambient_dim)

    def tangent_vectors(self, rng, p):
        nv = self.n + 1
        L = _random_vector(rng, nv, p)
        M = _random_vector(rng, nv, p)
        a = power_vector(L, self.d - 1, p)
        b = multiply(power_vector(L, self.d - 2, p), self.d - 2, np.array(M, dtype=np.int64), 1, nv, p)
        return times_variables(a, self.d - 1, nv) + times_variables(b, self.d - 1, nv)


@dataclass(frozen=True)
class Chow(VarietySpec):
    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))
        if self.n < 1 or not self.parts or min(self.parts) < 1:
            raise ValueError("Chow variety needs n >= 1 and a partition of positive parts")

    @property
    def d(self):
        return sum(self.parts)

    @property
    def label(self):
        return f"chow:{self.n};{','.join(map(str, self.parts))}"

    @property
    def ambient_dim(self):
        return math.comb(self.n + self.d, self.n) - 1

    @property
    def dim(self):
        return len(self.parts) * self.n

    def tangent_vectors(self, rng, p):
        nv = self.n + 1
        Ls = [_random_vector(rng, nv, p) for _ in self.parts]
        out = []
        for j in range(len(self.parts)):
            acc, deg = np.array([1], dtype=np.int64), 0
            for i, (L, e) in enumerate(zip(Ls, self.parts)):
                k = e - 1 if i == j else e
                if k:
                    acc = multiply(acc, deg, power_vector(L, k, p), k, nv, p)
                    deg += k
            out.extend(times_variables(acc, deg, nv))
        return out


@dataclass(frozen=True)
class Powers(VarietySpec):
    n: int
    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.d % self.k:
            raise ValueError("powers:n,k,d needs k dividing d")

    @property
    def label(self):
        return f"powers:{self.n},{self.k},{self.d}"

    @property
    def ambient_dim(self):
        return math.comb(self.n + self.d, self.n) - 1

    @property
    def dim(self):
        return math.comb(self.n + self.d // self.k, self.n) - 1

    def tangent_vectors(self, rng, p):
        nv, e = self.n + 1, self.d // self.k
        G = np.array(_random_vector(rng, len(monomials(nv, e)), p), dtype=np.int64)
        acc, deg = np.array([1], dtype=np.int64), 0
        for _ in range(self.k - 1):
            acc = multiply(acc, deg, G, e, nv, p)
            deg += e
        table = _product_index(nv, deg, e)
        size = len(monomials(nv, deg + e))
        out = []
        for j in range(len(monomials(nv, e))):
            w = np.zeros(size, dtype=np.int64)
            w[table[:, j]] = acc
            out.append(w)
        return out


def _kron_all(vectors: Sequence[np.ndarray], p: int) -> np.ndarray:
    out = np.array([1], dtype=np.int64)
    for v in vectors:
        out = np.kron(out, v) % p
    return out


@dataclass(frozen=True)
class SegreVeronese(VarietySpec):
    dims: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) != len(self.degrees) or not self.dims:
            raise ValueError("need matching factor dimensions and degrees")
        if min(self.dims) < 1 or min(self.degrees) < 1:
            raise ValueError("factor dimensions and degrees must be positive")

    @property
    def label(self):
        return f"segre-veronese:{','.join(map(str, self.dims))};{','.join(map(str, self.degrees))}"

    @property
    def ambient_dim(self):
        return math.prod(math.comb(n + d, n) for n, d in zip(self.dims, self.degrees)) - 1

    @property
    def dim(self):
        return sum(self.dims)

    def tangent_vectors(self, rng, p):
        Ls = [_random_vector(rng, n + 1, p) for n in self.dims]
        full = [power_vector(L, d, p) for L, d in zip(Ls, self.degrees)]
        out = []
        for i, (L, n, d) in enumerate(zip(Ls, self.dims, self.degrees)):
            for t in times_variables(power_vector(L, d - 1, p), d - 1, n + 1):
                out.append(_kron_all(full[:i] + [t] + full[i + 1:], p))
        return out


@dataclass(frozen=True)
class Segre(SegreVeronese):
    def __init__(self, dims: Sequence[int]):
        super().__init__(tuple(dims), tuple(1 for _ in dims))

    @property
    def label(self):
        return "segre:" + "x".join(map(str, self.dims))

    def __repr__(self):
        return f"Segre({self.dims})"


@dataclass(frozen=True)
class Grassmannian(VarietySpec):
    k: int
    n: int

    def __post_init__(self):
        if not 0 <= self.k < self.n:
            raise ValueError("grass:k,n needs 0 <= k < n")

    @property
    def label(self):
        return f"grass:{self.k},{self.n}"

    @property
    def ambient_dim(self):
        return math.comb(self.n + 1, self.k + 1) - 1

    @property
    def dim(self):
        return (self.k + 1) * (self.n - self.k)

    def tangent_vectors(self, rng, p):
        rows = [_random_vector(rng, self.n + 1, p) for _ in range(self.k + 1)]
        subsets = list(combinations(range(self.n + 1), self.k + 1))
        out = []
        for m in range(self.k + 1):
            others = rows[:m] + rows[m + 1:]
            for j in range(self.n + 1):
                vec = []
                for S in subsets:
                    if j not in S:
                        vec.append(0)
                        continue
                    pos = S.index(j)
                    minor = [[r[c] for c in S if c != j] for r in others]
                    sign = -1 if (m + pos) % 2 else 1
                    vec.append(sign * det_mod_p(minor, p) % p if minor else 1)
                out.append(np.array(vec, dtype=np.int64))
        return out


# -- spec grammar ------------------------------------------------------------

_SPEC = re.compile(r"^\s*(?P<family>[a-z-]+)\s*:(?P<args>.*)$")


def _ints(text: str, sep: str, offset: int) -> list[int]:
    out = []
    pos = offset
    for piece in text.split(sep):
        s = piece.strip()
        if not s.isdigit():
            raise ParseError(f"expected a non-negative integer, got {piece!r}", pos)
        out.append(int(s))
        pos += len(piece) + 1
    return out


def parse_spec(text: str) -> VarietySpec:
    m = _SPEC.match(text)
    if not m:
        raise ParseError("expected family:arguments", 0)
    family, args, off = m.group("family"), m.group("args"), m.start("args")
    try:
        if family == "veronese":
            n, d = _ints(args, ",", off)
            return Veronese(n, d)
        if family == "segre":
            return Segre(_ints(args, "x", off))
        if family == "segre-veronese":
            if ";" not in args:
                raise ParseError("expected dims;degrees", off + len(args))
            a, b = args.split(";", 1)
            return SegreVeronese(tuple(_ints(a, ",", off)), tuple(_ints(b, ",", off + len(a) + 1)))
        if family == "grass":
            k, n = _ints(args, ",", off)
            return Grassmannian(k, n)
        if family == "chow":
            if ";" not in args:
                raise ParseError("expected n;d1,d2,...", off + len(args))
            a, b = args.split(";", 1)
            (n,) = _ints(a, ",", off)
            return Chow(n, tuple(_ints(b, ",", off + len(a) + 1)))
        if family == "powers":
            n, k, d = _ints(args, ",", off)
            return Powers(n, k, d)
        if family == "tangential":
            n, d = _ints(args, ",", off)
            return TangentialVeronese(n, d)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), off) from exc
    raise ParseError(f"unknown variety family {family!r}", m.start("family"))


# -- fat points --------------------------------------------------------------

@dataclass(frozen=True)
class FatPointScheme:
    n: int
    points: tuple[tuple, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise ValueError("one multiplicity per point")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if any(len(P) != self.n + 1 for P in self.points):
            raise ValueError("points need n+1 coordinates")

    @classmethod
    def generic(cls, n: int, multiplicities: Sequence[int], rng: np.random.Generator, p: int) -> "FatPointScheme":
        pts = tuple(tuple(_random_vector(rng, n + 1, p)) for _ in multiplicities)
        return cls(n, pts, tuple(multiplicities))

    def conditions(self) -> int:
        return sum(math.comb(m - 1 + self.n, self.n) for m in self.multiplicities)


def _proportional_mod(u, v, p: int | None) -> bool:
    if p is None:
        return exact_rank([list(u), list(v)]) < 2
    return rank_mod_p([list(u), list(v)], p) < 2


def fat_point_hf(n: int, d: int, scheme: FatPointScheme, prime: int | None = None) -> int:
    """``HF(R/I, d)`` for the fat point scheme: the rank of the derivative conditions.

    With ``prime`` the coordinates are integers reduced mod p; otherwise they
    are treated as exact rationals.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if scheme.n != n:
        raise ValueError("scheme lives in a different projective space")
    for i, j in combinations(range(len(scheme.points)), 2):
        if _proportional_mod(scheme.points[i], scheme.points[j], prime):
            raise ValueError("coincident points")
    nv = n + 1
    mons = monomials(nv, d)
    rows = []
    for P, m in zip(scheme.points, scheme.multiplicities):
        for order in range(min(m, d + 1)):
            for g in monomials(nv, order):
                row = []
                for b in mons:
                    if any(x < y for x, y in zip(b, g)):
                        row.append(0)
                        continue
                    w = 1
                    for x, y in zip(b, g):
                        w *= falling(x, y)
                    if prime is None:
                        v = w
                        for c, e in zip(P, (x - y for x, y in zip(b, g))):
                            v *= c ** e
                    else:
                        v = w % prime
                        for c, e in zip(P, (x - y for x, y in zip(b, g))):
                            if e:
                                v = v * pow(int(c), e, prime) % prime
                    row.append(v)
                rows.append(row)
    if not rows:
        return 0
    return rank_mod_p(rows, prime) if prime is not None else exact_rank(rows)


# -- engine ------------------------------------------------------------------

def expected_secant_dim(spec: VarietySpec, s: int) -> int:
    if s < 1:
        raise ValueError("s must be positive")
    return min(spec.ambient_dim, s * spec.dim + s - 1)


@dataclass(frozen=True)
class SecantDimReport:
    spec: str
    s: int
    expected: int
    actual: int
    defect: int
    trials: int
    primes: tuple[int, ...]
    per_prime: tuple[int, ...]
    fat_point_actual: int | None = None
    known: "KnownDefect | None" = None

    @property
    def primes_agree(self) -> bool:
        return len(set(self.per_prime)) == 1

    @property
    def confirmed(self) -> bool:
        """A defect counts as confirmed only when at least two primes agree."""
        return self.defect == 0 or (len(self.per_prime) >= 2 and self.primes_agree)

    def to_dict(self) -> dict:
        out = {
            "spec": self.spec, "s": self.s, "expected": self.expected, "actual": self.actual,
            "defect": self.defect, "trials": self.trials, "primes": list(self.primes),
            "per_prime": list(self.per_prime), "confirmed": self.confirmed,
        }
        if self.fat_point_actual is not None:
            out["fat_point_actual"] = self.fat_point_actual
        if self.known is not None:
            out["known"] = self.known.to_dict()
        return out


def _rng(seed: int, label: str, s: int, trial: int, prime: int, salt: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(label.encode()), s, trial, prime, salt])


def tangent_span_rank(spec: VarietySpec, s: int, rng: np.random.Generator, p: int) -> int:
    rows = []
    for _ in range(s):
        rows.extend(spec.tangent_vectors(rng, p))
    return rank_mod_p(np.array(rows, dtype=np.int64), p)


def secant_dim(spec: VarietySpec, s: int, trials: int = DEFAULT_TRIALS,
               primes: Sequence[int] | int = SECANT_PRIMES, seed: int = 0,
               fat_points: bool = True) -> SecantDimReport:
    if s < 1 or trials < 1:
        raise ValueError("need s >= 1 and trials >= 1")
    primes = (primes,) if isinstance(primes, int) else tuple(primes)
    expected = expected_secant_dim(spec, s)
    per_prime, used = [], []
    for p in primes:
        best = -1
        for t in range(trials):
            best = max(best, tangent_span_rank(spec, s, _rng(seed, spec.label, s, t, p), p) - 1)
            if best == expected:
                break
        per_prime.append(best)
        used.append(p)
        if best == expected:
            break
    actual = max(per_prime)
    fat = None
    if fat_points and isinstance(spec, Veronese) and not isinstance(spec, TangentialVeronese):
        fat = _fat_point_secant(spec, s, trials, used, seed)
    return SecantDimReport(spec.label, s, expected, actual, expected - actual, trials,
                           tuple(used), tuple(per_prime), fat, known_defect_table(spec, s))


def _fat_point_secant(spec: Veronese, s: int, trials: int, primes: Sequence[int], seed: int) -> int:
    best = -1
    target = expected_secant_dim(spec, s)
    for p in primes:
        for t in range(trials):
            scheme = FatPointScheme.generic(spec.n, [2] * s, _rng(seed, spec.label, s, t, p, 1), p)
            try:
                best = max(best, fat_point_hf(spec.n, spec.d, scheme, p) - 1)
            except ValueError:
                continue
            if best == target:
                return best
    return best


# -- closed forms and tables -------------------------------------------------

AH_EXCEPTIONS = frozenset({(4, 3, 7), (2, 4, 5), (3, 4, 9), (4, 4, 14)})


@dataclass(frozen=True)
class AHResult:
    dimension: int
    defect: int
    expected: int


def ah_oracle(n: int, d: int, s: int) -> AHResult:
    """Closed-form dimension of the s-th secant variety of the Veronese ``X_{n,d}``."""
    if d < 2:
        raise ValueError("the Veronese closed form needs d >= 2")
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    N = math.comb(n + d, d) - 1
    expected = min(N, s * (n + 1) - 1)
    if d == 2 and s <= n:
        dim = min(math.comb(n + 2, 2), s * (n + 1) - math.comb(s, 2)) - 1
    elif (n, d, s) in AH_EXCEPTIONS:
        dim = expected - 1
    else:
        dim = expected
    return AHResult(dim, expected - dim, expected)


@dataclass(frozen=True)
class KnownDefect:
    defect: int | None
    source: str
    status: str          # "theorem" or "conjecture"

    @property
    def defective(self) -> bool:
        return self.defect is None or self.defect > 0

    def to_dict(self) -> dict:
        return {"defect": self.defect, "defective": self.defective, "source": self.source, "status": self.status}


def _capped(spec: VarietySpec, s: int, dimension: int) -> int:
    return expected_secant_dim(spec, s) - min(dimension, spec.ambient_dim)


def generic_tangential_rank(n: int, d: int) -> int:
    base = math.ceil(math.comb(n + d, n) / (2 * n + 1))
    if d == 2:
        return n // 2 + 1
    if d == 3 and n in (2, 3, 4):
        return base + 1
    return base


def known_defect_table(spec: VarietySpec, s: int) -> KnownDefect | None:
    """Recorded defect for tabulated families, ``None`` when nothing is recorded."""
    if isinstance(spec, Veronese):
        if spec.d < 2:
            return None
        return KnownDefect(ah_oracle(spec.n, spec.d, s).defect, "Alexander-Hirschowitz", "theorem")
    if isinstance(spec, TangentialVeronese):
        n, d = spec.n, spec.d
        if d == 2 and 2 <= 2 * s < n:
            actual = 2 * s * (n + 1) - math.comb(2 * s, 2) - 1
            return KnownDefect(_capped(spec, s, actual), "tangential: d=2, 2 <= 2s < n", "theorem")
        if d == 3 and n in (2, 3, 4):
            if s == math.ceil(math.comb(n + 3, 3) / (2 * n + 1)):
                return KnownDefect(None, "tangential: d=3, n in {2,3,4}", "theorem")
            return KnownDefect(0, "tangential: d=3, n in {2,3,4}", "theorem")
        return KnownDefect(0, "tangential: non-defective", "theorem")
    if isinstance(spec, Chow):
        if len(spec.parts) == 2 and spec.parts[1] == 1:
            return known_defect_table(TangentialVeronese(spec.n, spec.d), s)
        if spec.n == 1 or s == 2 or s <= 2 * (spec.n // 3):
            return KnownDefect(0, "Chow-Veronese: non-defective range", "theorem")
        if all(x == 1 for x in spec.parts) and spec.d > 2 and 3 * (s - 1) < spec.n:
            return KnownDefect(0, "Chow: completely decomposable, 3(s-1) < n", "theorem")
        return None
    if isinstance(spec, Powers):
        m = math.comb(spec.n + spec.d // spec.k, spec.n)
        if spec.k == 2:
            dimension = s * m - math.comb(s, 2) - 1 if s <= m else spec.ambient_dim
            return KnownDefect(_capped(spec, s, dimension), "powers: dimensions of quadric ranks", "conjecture")
        return KnownDefect(0, "powers: parameter count", "conjecture")
    if isinstance(spec, Grassmannian):
        return _grassmannian_table(spec, s)
    if isinstance(spec, Segre):
        return _segre_table(spec, s)
    if isinstance(spec, SegreVeronese):
        return _segre_veronese_table(spec, s)
    return None


BDDG_TABLE = {(2, 6, 3): (1, 0), (3, 7, 3): (20, 19), (3, 7, 4): (6, 2), (2, 8, 4): (10, 8)}


def _grassmannian_table(spec: Grassmannian, s: int) -> KnownDefect:
    k, n = spec.k, spec.n
    if k == 0 or k == n - 1:
        return KnownDefect(0, "projective space", "theorem")
    if k == 1:
        if s < (n + 1) // 2:
            actual = math.comb(n + 1, 2) - math.comb(n + 1 - 2 * s, 2) - 1
            return KnownDefect(_capped(spec, s, actual), "lines: skew matrices of rank <= 2s", "theorem")
        return KnownDefect(0, "lines: skew matrices of rank <= 2s", "theorem")
    key = (min(k, n - 1 - k), n, s)
    status = "theorem" if n <= 15 else "conjecture"
    if key in BDDG_TABLE:
        actual_codim, _ = BDDG_TABLE[key]
        return KnownDefect(_capped(spec, s, spec.ambient_dim - actual_codim), "Baur-Draisma-de Graaf table", status)
    return KnownDefect(0, "Baur-Draisma-de Graaf", status)


def _segre_table(spec: Segre, s: int) -> KnownDefect:
    dims = tuple(sorted(spec.dims))
    t = len(dims)
    if t == 1:
        return KnownDefect(0, "projective space", "theorem")
    if t == 2:
        a, b = dims[0] + 1, dims[1] + 1
        actual = s * (a + b - s) - 1 if s <= a else spec.ambient_dim
        return KnownDefect(_capped(spec, s, actual), "matrices of rank <= s", "theorem")
    if all(x == 1 for x in dims):
        return KnownDefect(1 if (t, s) == (4, 3) else 0, "copies of P1", "theorem")
    if dims == (2, 2, 2) and s == 4:
        return KnownDefect(1, "P2 x P2 x P2", "theorem")
    *rest, big = dims
    small_n = math.prod(x + 1 for x in rest) - 1
    bound = small_n - sum(rest) + 1
    if big > bound and bound < s <= min(big, small_n):
        delta = s * s - s * bound
        uncapped = s * spec.dim + s - 1
        return KnownDefect(_capped(spec, s, uncapped - delta), "unbalanced Segre", "theorem")
    if s <= dims[0] + 1 or max(dims[-1] + 1, s) <= (sum(dims) + 1) // 2:
        return KnownDefect(0, "non-defective range", "theorem")
    sporadic = (
        dims == (2, 3, 3) and s == 5
        or t == 3 and dims[0] == 2 and dims[1] == dims[2] and dims[1] % 2 == 0 and s == 3 * dims[1] // 2 + 1
        or t == 4 and dims[:2] == (1, 1) and dims[2] == dims[3] and s == 2 * dims[2] + 1
    )
    return KnownDefect(1 if sporadic else 0, "Segre exception list", "conjecture")


def _segre_veronese_table(spec: SegreVeronese, s: int) -> KnownDefect | None:
    if all(d == 1 for d in spec.degrees):
        return _segre_table(Segre(spec.dims), s)
    if not all(n == 1 for n in spec.dims):
        return None
    degs = tuple(sorted(spec.degrees))
    r = len(degs)
    defect = 0
    if r == 2 and degs[0] == 2 and degs[1] % 2 == 0 and s == degs[1] + 1:
        defect = 1
    if r == 3 and degs[:2] == (1, 1) and degs[2] % 2 == 0 and s == degs[2] + 1:
        defect = 1
    if r == 3 and degs == (2, 2, 2) and s == 7:
        defect = 1
    if r == 4 and degs == (1, 1, 1, 1) and s == 3:
        defect = 1
    return KnownDefect(defect, "copies of P1 with degrees", "theorem")


@dataclass(frozen=True)
class GenericRankReport:
    spec: str
    rank: int
    oracle: int | None
    oracle_status: str | None

    @property
    def agrees(self) -> bool | None:
        return None if self.oracle is None else self.oracle == self.rank

    def to_dict(self) -> dict:
        return {"spec": self.spec, "generic_rank": self.rank, "oracle": self.oracle,
                "oracle_status": self.oracle_status, "agrees": self.agrees}


def generic_rank_oracle(spec: VarietySpec) -> tuple[int | None, str | None]:
    N = spec.ambient_dim
    if isinstance(spec, Veronese) and spec.d >= 2:
        s = 1
        while ah_oracle(spec.n, spec.d, s).dimension < N:
            s += 1
        return s, "theorem"
    if isinstance(spec, Powers):
        total = math.comb(spec.n + spec.d, spec.n)
        m = math.comb(spec.n + spec.d // spec.k, spec.n)
        s = 1
        if spec.k == 2:
            while s * m - math.comb(s, 2) < total:
                s += 1
        else:
            while s * m < total:
                s += 1
        return s, "conjecture"
    if isinstance(spec, TangentialVeronese):
        return generic_tangential_rank(spec.n, spec.d), "theorem"
    return None, None


def generic_rank(spec: VarietySpec, trials: int = DEFAULT_TRIALS,
                 primes: Sequence[int] | int = SECANT_PRIMES, seed: int = 0) -> GenericRankReport:
    N = spec.ambient_dim
    s = max(1, math.ceil((N + 1) / (spec.dim + 1)))
    while True:
        rep = secant_dim(spec, s, trials, primes, seed, fat_points=False)
        if rep.actual == N:
            break
        s += 1
    oracle, status = generic_rank_oracle(spec)
    return GenericRankReport(spec.label, s, oracle, status)


def defect_scan(spec: VarietySpec, s_values: Sequence[int], trials: int = DEFAULT_TRIALS,
                primes: Sequence[int] | int = SECANT_PRIMES, seed: int = 0) -> list[SecantDimReport]:
    return [secant_dim(spec, s, trials, primes, seed) for s in s_values]
