import random
from fractions import Fraction

import numpy as np
import pytest

from waring import linalg
from waring.fields import DEFAULT_PRIME, ModP, SECANT_PRIMES, to_prime_field
from waring.apolarity import catalecticant
from conftest import random_form


def test_modp_arithmetic():
    p = 101
    a, b = ModP(7, p), ModP(-3, p)
    assert a + b == ModP(4, p)
    assert a * b == ModP(-21, p)
    assert (a / b) * b == a
    assert a ** 100 == ModP(1, p)
    assert ModP(Fraction(1, 2), p) * 2 == ModP(1, p)
    with pytest.raises(ZeroDivisionError):
        ModP(0, p).inverse()


def test_primes():
    assert DEFAULT_PRIME == 2**31 - 1
    assert all(p > 2**31 for p in SECANT_PRIMES)


def test_rref_and_kernels():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    rows, piv = linalg.rref(m)
    assert piv == [0, 1]
    assert linalg.rank(m) == 2
    (k,) = linalg.nullspace(m)
    assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in m)
    (lk,) = linalg.left_kernel(m)
    assert all(sum(lk[i] * m[i][j] for i in range(3)) == 0 for j in range(3))


def test_solve_and_inverse():
    a = [[2, 1], [1, 3]]
    x = linalg.solve(a, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert linalg.matmul(a, linalg.inverse(a)) == [[1, 0], [0, 1]]
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


def test_rank_mod_p_large_prime():
    rng = np.random.default_rng(0)
    p = SECANT_PRIMES[0]
    m = rng.integers(0, p, size=(30, 40))
    assert linalg.rank_mod_p(m, p) == 30
    m[5] = (m[3] * 7 + m[4]) % p
    assert linalg.rank_mod_p(m, p) == 29


def test_prime_field_rank_agrees_with_rational_rank():
    rng = random.Random(1)
    p = 1_048_583     # > 2^20
    field = to_prime_field(p)
    for _ in range(100):
        n = rng.randint(2, 4)
        d = rng.randint(2, 6)
        F = random_form(rng, n, d)
        if rng.random() < 0.5:      # low-rank instances as well as generic ones
            F = random_form(rng, 2, d).substitute([[rng.randint(-3, 3) for _ in range(n)] for _ in range(2)])
            if F.is_zero():
                continue
        i = rng.randint(1, d - 1)
        cat = catalecticant(F, i)
        exact = linalg.rank(cat.rows())
        modular = linalg.rank_mod_p([[int(field(x)) for x in row] for row in cat.rows()], p)
        assert modular == exact
