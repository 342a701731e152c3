import math

import numpy as np
import pytest

from waring.errors import ParseError
from waring.fields import SECANT_PRIMES
from waring.secant import (AH_EXCEPTIONS, Chow, FatPointScheme, Grassmannian, Powers, Segre, SegreVeronese,
                           TangentialVeronese, Veronese, ah_oracle, defect_scan, expected_secant_dim, fat_point_hf,
                           generic_rank, generic_rank_oracle, known_defect_table, parse_spec, secant_dim)


@pytest.mark.parametrize("text, spec", [
    ("veronese:2,4", Veronese(2, 4)),
    ("segre:1x1x1x1", Segre((1, 1, 1, 1))),
    ("segre-veronese:1,1;2,2", SegreVeronese((1, 1), (2, 2))),
    ("grass:1,7", Grassmannian(1, 7)),
    ("chow:2;2,1", Chow(2, (2, 1))),
    ("powers:2,2,4", Powers(2, 2, 4)),
    ("tangential:2,3", TangentialVeronese(2, 3)),
])
def test_parse_spec(text, spec):
    got = parse_spec(text)
    assert got == spec
    assert parse_spec(got.label) == got


@pytest.mark.parametrize("text, pos", [("veronese:2,x", 11), ("nothing", 0), ("veronese:2,", 11)])
def test_parse_spec_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_spec(text)
    assert exc.value.position == pos


def test_ambient_and_dimensions():
    assert (Veronese(2, 4).ambient_dim, Veronese(2, 4).dim) == (14, 2)
    assert (Segre((1, 1, 1, 1)).ambient_dim, Segre((1, 1, 1, 1)).dim) == (15, 4)
    assert (Grassmannian(1, 7).ambient_dim, Grassmannian(1, 7).dim) == (27, 12)
    assert TangentialVeronese(2, 3).dim == 4
    assert expected_secant_dim(Veronese(2, 4), 5) == 14


@pytest.mark.parametrize("n, d, s", sorted(AH_EXCEPTIONS))
def test_exceptional_veronese_cases(n, d, s):
    rep = secant_dim(Veronese(n, d), s)
    assert rep.defect == 1
    assert rep.confirmed and len(rep.per_prime) == 2
    assert rep.fat_point_actual == rep.actual
    for t in (s - 1, s + 1):
        assert secant_dim(Veronese(n, d), t).defect == 0


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("s", [2, 3, 4])
def test_quadrics(n, s):
    if s > n:
        return
    rep = secant_dim(Veronese(n, 2), s)
    assert rep.actual == ah_oracle(n, 2, s).dimension == min(math.comb(n + 2, 2), s * (n + 1) - math.comb(s, 2)) - 1
    assert rep.defect == min(math.comb(n + 2, 2) - 1, s * (n + 1) - 1) - rep.actual > 0


def test_oracle_agreement_grid():
    for n in range(1, 6):
        for d in range(2, 7):
            for s in range(1, 21):
                assert secant_dim(Veronese(n, d), s, fat_points=False).actual == ah_oracle(n, d, s).dimension, (n, d, s)


def test_tangent_spans_agree_with_fat_points():
    for n in range(1, 5):
        for d in range(2, 7):
            for s in range(1, 16):
                rep = secant_dim(Veronese(n, d), s)
                assert rep.fat_point_actual == rep.actual, (n, d, s)


def test_fat_point_hilbert_function():
    rng = np.random.default_rng(0)
    p = SECANT_PRIMES[0]
    scheme = FatPointScheme.generic(2, [2] * 5, rng, p)
    assert scheme.conditions() == 15
    assert fat_point_hf(2, 4, scheme, p) == 14          # a conic squared through 5 points
    exact = FatPointScheme(1, ((1, 0), (0, 1), (1, 1)), (2, 2, 1))
    assert fat_point_hf(1, 4, exact) == 5
    with pytest.raises(ValueError):
        fat_point_hf(1, 4, FatPointScheme(1, ((1, 0), (2, 0)), (1, 1)))


@pytest.mark.parametrize("spec", [Veronese(2, 4), Segre((1, 1, 1, 1)), Grassmannian(1, 7), SegreVeronese((1, 1), (2, 2)),
                                  TangentialVeronese(2, 3), Powers(1, 2, 4), Chow(2, (1, 1, 1))])
def test_monotone_until_filling(spec):
    reps = defect_scan(spec, range(1, 10))
    dims = [r.actual for r in reps]
    N = spec.ambient_dim
    for a, b in zip(dims, dims[1:]):
        assert b >= a
        assert b > a or a == N


def test_further_veronese_cases():
    assert secant_dim(Veronese(3, 3), 5).actual == 19
    assert secant_dim(Veronese(5, 3), 10).actual == 55
    assert secant_dim(Veronese(3, 4), 8).actual == 31
    assert secant_dim(Veronese(3, 4), 9).defect == 1


def test_segre_cases():
    assert secant_dim(Segre((1, 1, 1, 1)), 3).actual == 13
    rep = secant_dim(Segre((2, 2, 2)), 4)
    assert rep.defect == 1 and rep.known.defect == 1
    assert secant_dim(Segre((2, 3)), 2).defect == known_defect_table(Segre((2, 3)), 2).defect


@pytest.mark.parametrize("k, n, s, codim, expected_codim", [(2, 6, 3, 1, 0), (3, 7, 3, 20, 19),
                                                             (3, 7, 4, 6, 2), (2, 8, 4, 10, 8)])
def test_grassmannian_table(k, n, s, codim, expected_codim):
    spec = Grassmannian(k, n)
    rep = secant_dim(spec, s)
    assert spec.ambient_dim - rep.actual == codim
    assert spec.ambient_dim - rep.expected == expected_codim
    assert rep.known.defect == rep.defect


def test_grassmannian_lines():
    rep = secant_dim(Grassmannian(1, 7), 2)
    assert rep.actual == 21 and rep.defect == 4 == 2 * 2 * (2 - 1)
    assert rep.actual == math.comb(8, 2) - math.comb(8 - 4, 2) - 1


def test_segre_veronese_and_tangential():
    rep = secant_dim(SegreVeronese((1, 1), (2, 2)), 3)
    assert rep.defect == 1 and rep.known.defect == 1
    rep = secant_dim(TangentialVeronese(2, 3), 2)
    assert (rep.expected, rep.actual) == (9, 8)
    assert rep.known.defective


def test_powers():
    rep = secant_dim(Powers(1, 2, 4), 2)
    assert rep.actual == Powers(1, 2, 4).ambient_dim
    assert known_defect_table(Powers(1, 2, 4), 2).status == "conjecture"


def test_defects_need_two_agreeing_primes():
    rep = secant_dim(Veronese(2, 4), 5)
    assert rep.primes == SECANT_PRIMES and rep.confirmed
    filled = secant_dim(Veronese(2, 4), 4)
    assert len(filled.primes) == 1        # no defect, no second prime needed
    single = secant_dim(Veronese(2, 4), 5, primes=SECANT_PRIMES[:1])
    assert single.defect == 1 and not single.confirmed


def test_reproducible():
    a = secant_dim(Segre((1, 2, 3)), 4, seed=9).to_dict()
    b = secant_dim(Segre((1, 2, 3)), 4, seed=9).to_dict()
    assert a == b


@pytest.mark.parametrize("spec", [Veronese(2, 3), Veronese(2, 4), Veronese(3, 4), TangentialVeronese(2, 4)])
def test_generic_rank_matches_oracle(spec):
    rep = generic_rank(spec)
    oracle, status = generic_rank_oracle(spec)
    assert rep.rank == oracle and status == "theorem"


def test_oracle_validation():
    with pytest.raises(ValueError):
        ah_oracle(2, 1, 3)
    with pytest.raises(ValueError):
        secant_dim(Veronese(2, 3), 0)
