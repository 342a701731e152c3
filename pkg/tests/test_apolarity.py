import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_form, random_linear, sum_of_powers
from waring import linalg
from waring.apolarity import (apolar_length, apolar_slice, catalecticant, catalecticant_rank, essential_variables,
                              hilbert_function, is_apolar, max_catalecticant_rank, minimal_generator_degrees,
                              verify_apolar_points)
from waring.poly import HomogeneousForm, LinearForm, apolar_apply, monomials, parse_form

SYL = parse_form("2x0^4 - 4x0^3x1 + 30x0^2x1^2 - 28x0x1^3 + 17x1^4")


def ternary_quartic():
    return sum_of_powers(3, 4, [1, 1, 1], [LinearForm((1, 1, 0)), LinearForm((1, 0, -1)), LinearForm((1, -1, 1))])


def test_catalecticant_binary_quartic():
    cat = catalecticant(SYL, 2)
    assert cat.shape == (3, 3)
    assert [list(r) for r in cat.rows()] == [[2, -1, 5], [-1, 5, -7], [5, -7, 17]]
    assert cat.rank() == 2


def test_catalecticant_shapes_and_labels():
    F = parse_form("5x0^5x1")
    cat = catalecticant(F, 2)
    assert cat.shape == (3, 5)
    assert cat.rank() == 2
    assert [list(r) for r in catalecticant(parse_form("x0^3*x1"), 2).rows()] == [[0, Fraction(1, 4), 0],
                                                                                 [Fraction(1, 4), 0, 0],
                                                                                 [0, 0, 0]]
    assert cat.row_labels == monomials(2, 2)
    assert cat.col_labels == monomials(2, 4)
    G = parse_form("x0^4", nvars=3)
    for i in range(5):
        c = catalecticant(G, i)
        assert c.shape == (math.comb(2 + i, 2), math.comb(6 - i, 2))
        assert sum(1 for r in c.rows() for x in r if x) == 1
    with pytest.raises(ValueError):
        catalecticant(G, 5)


def test_catalecticant_entries_are_apolar_coefficients():
    # up to the normalisation of rows and columns, entry (a, b) is the x^b coefficient of y^a o F
    F = parse_form("x0^3*x1 + 2x0*x1^2*x2 - x2^4")
    cat = catalecticant(F, 2)
    for a, row in zip(cat.row_labels, cat.rows()):
        D = apolar_apply(HomogeneousForm.monomial(a), F)
        for b, x in zip(cat.col_labels, row):
            assert (x == 0) == (D.coefficient(b) == 0)


def test_transpose_relation():
    F = parse_form("x0^3*x1 + 2x0*x1^2*x2 - x2^4")
    for i in range(5):
        assert [list(r) for r in catalecticant(F, 4 - i).rows()] == \
            [list(r) for r in catalecticant(F, i).transpose().rows()]


def test_apolar_slices():
    F = parse_form("x0*x1*x2")
    ker = apolar_slice(F, 2)
    for m in [(2, 0, 0), (0, 2, 0), (0, 0, 2)]:
        assert linalg.rank([G.vector() for G in ker.basis] + [HomogeneousForm.monomial(m).vector()]) == ker.dimension
    G = parse_form("x0^3x2 + 3x0^2x1x2 + 3x0x1^2x2 + x1^3x2")
    assert catalecticant_rank(G, 1) == 2
    (k,) = apolar_slice(G, 1).basis
    assert k.vector() == [1, -1, 0]
    for Gi in apolar_slice(SYL, 2).basis:
        assert apolar_apply(Gi, SYL).is_zero()


def test_hilbert_functions():
    assert hilbert_function(parse_form("x0^2x2 + 6x1^2x3 - 3x0^2x4 - 6x0x1x4 - 3x1^2x4")).series() == "1 + 5z + 5z^2 + z^3"
    assert hilbert_function(parse_form("x0^5", nvars=3)).values == (1,) * 6
    assert hilbert_function(parse_form("x0*x1^2*x2^3")).values == (1, 3, 5, 6, 5, 3, 1)
    with pytest.raises(ValueError):
        hilbert_function(HomogeneousForm(2, 3))


def _brute_force_hf(alpha):
    # quotient by (y_i^(a_i+1)): the monomials y^b with b <= alpha
    d = sum(alpha)
    out = [0] * (d + 1)
    for b in itertools.product(*(range(a + 1) for a in alpha)):
        out[sum(b)] += 1
    return tuple(out)


@pytest.mark.parametrize("alpha", [a for n in range(1, 5) for d in range(1, 7)
                                   for a in itertools.product(range(d + 1), repeat=n) if sum(a) == d])
def test_monomial_hf_matches_quotient_count(alpha):
    assert hilbert_function(HomogeneousForm.monomial(alpha)).values == _brute_force_hf(alpha)


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_gorenstein_symmetry(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = rng.randint(1, 6)
    if rng.random() < 0.5:
        F = random_form(rng, n, d)
    else:    # structured: few powers, so the function is not just generic
        F = sum_of_powers(n, d, [rng.randint(1, 5) for _ in range(3)], [random_linear(rng, n) for _ in range(3)])
        if F.is_zero():
            return
    hf = hilbert_function(F).values
    assert hf == hf[::-1]
    assert hf[0] == hf[-1] == 1
    for i in range(d + 1):
        assert catalecticant_rank(F, i) == catalecticant_rank(F, d - i)


def test_essential_variables_examples():
    ev = essential_variables(parse_form("x0^3x2 + 3x0^2x1x2 + 3x0x1^2x2 + x1^3x2"))
    assert ev.m == 2
    assert ev.reduced == parse_form("x0^3*x1", nvars=2) or ev.reduced.is_monomial()
    assert ev.restore() == parse_form("x0^3x2 + 3x0^2x1x2 + 3x0x1^2x2 + x1^3x2")
    assert essential_variables(parse_form("x0^2 + x1^2 + x2^2")).m == 3
    assert essential_variables(parse_form("x0^5 + 5x0^4x1 + 10x0^3x1^2 + 10x0^2x1^3 + 5x0x1^4 + x1^5")).m == 1


def test_essential_variables_invariant_under_coordinate_change():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 4)
        k = rng.randint(1, n)
        F = random_form(rng, k, rng.randint(2, 5)).substitute(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)])
        if F.is_zero():
            continue
        while True:
            A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            if linalg.rank(A) == n:
                break
        ev, ev2 = essential_variables(F), essential_variables(F.substitute(A))
        assert ev.m == ev2.m <= k
        assert ev.restore() == F
        assert len(ev.reduced.variables_used()) <= ev.m


def test_verify_apolar_points():
    assert verify_apolar_points(SYL, [LinearForm((1, 1)), LinearForm((1, -2))]) == [1, 1]
    F = ternary_quartic()
    assert verify_apolar_points(F, [(1, 1, 0), (1, 0, -1), (1, -1, 1)]) == [1, 1, 1]
    assert verify_apolar_points(parse_form("x0^3", nvars=2), [LinearForm((1, 1))]) is None
    with pytest.raises(ValueError):
        verify_apolar_points(SYL, [(1, 1), (2, 2)])


@given(st.integers(0, 10**6))
def test_verify_apolar_points_reconstructs(seed):
    rng = random.Random(seed)
    n, d = rng.randint(2, 3), rng.randint(2, 5)
    pts = [random_linear(rng, n) for _ in range(rng.randint(1, 4))]
    if any(linalg.rank([p.coefficients, q.coefficients]) < 2 for p, q in itertools.combinations(pts, 2)):
        return
    lams = [rng.randint(-4, 4) for _ in pts]
    F = sum_of_powers(n, d, lams, pts)
    if F.is_zero():
        return
    got = verify_apolar_points(F, pts)
    assert got is not None
    assert sum_of_powers(n, d, got, pts) == F
    extra = random_form(rng, n, d)
    G = F + extra
    got = verify_apolar_points(G, pts)
    assert got is None or sum_of_powers(n, d, got, pts) == G


def test_minimal_generators():
    assert minimal_generator_degrees(parse_form("x0*x1*x2")) == {2: 3}
    assert apolar_length(parse_form("x0*x1*x2")) == 8
    assert minimal_generator_degrees(parse_form("x0^2*x1^2")) == {3: 2}
    assert minimal_generator_degrees(parse_form("x0^4", nvars=3)) == {1: 2, 5: 1}
    assert is_apolar(parse_form("y0^2", nvars=3, var="y"), parse_form("x0*x1*x2"))


def test_max_catalecticant_rank():
    assert max_catalecticant_rank(SYL) == 2
    assert max_catalecticant_rank(ternary_quartic()) == 3
