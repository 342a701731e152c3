"""One PASS/FAIL line per acceptance criterion.

Run under pytest (lines are printed even with output capture on) or directly
with ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_form, random_linear, sum_of_powers  # noqa: E402
from waring import linalg  # noqa: E402
from waring.apolarity import essential_variables, hilbert_function, max_catalecticant_rank  # noqa: E402
from waring.binary import binary_decompose, binary_rank  # noqa: E402
from waring.bounds import (colon_e1_lower, colon_lower, monomial_rank, ranestad_schreyer_lower,  # noqa: E402
                           real_binary_monomial_rank, reducible_cubic_rank)
from waring.cli import decompose  # noqa: E402
from waring.multivar import affine_monomials, bcmt_decompose, catalecticant_decompose, hankel_matrix  # noqa: E402
from waring.poly import HomogeneousForm, LinearForm, parse_form  # noqa: E402
from waring.secant import (AH_EXCEPTIONS, Grassmannian, Segre, SegreVeronese, TangentialVeronese,  # noqa: E402
                           Veronese, ah_oracle, secant_dim)

QUINTIC = ("-1549440x0x1x2^3 + 2417040x0x1^2x2^2 + 166320x0^2x1x2^2 - 829440x0x1^3x2 - 5760x0^3x1x2"
           " - 222480x0^2x1^2x2 + 38x0^5 - 497664x1^5 - 1107804x2^5 - 120x0^4x1 + 180x0^4x2 + 12720x0^3x1^2"
           " + 8220x0^3x2^2 - 34560x0^2x1^3 - 59160x0^2x2^3 + 831840x0x1^4 + 442590x0x2^4 - 5591520x1^4x2"
           " + 7983360x1^3x2^2 - 9653040x1^2x2^3 + 5116680x1x2^4")
E2_FIXTURE = ("x0^11 - 22x0^9x1^2 + 33x0^7x1^4 - 22x0^9x2^2 + 396x0^7x1^2x2^2 - 462x0^5x1^4x2^2 + 33x0^7x2^4"
              " - 462x0^5x1^2x2^4 + 385x0^3x1^4x2^4")


def report(number: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


def _scaled(dec):
    """(affine point, lambda) pairs with the first coordinate scaled to 1."""
    out = []
    for lam, L in zip(dec.coefficients, dec.linear_forms):
        p = np.array([complex(x) for x in L.coefficients])
        out.append((p / p[0], complex(lam) * p[0] ** dec.degree))
    return out


def check_1():
    t = time.perf_counter()
    F = parse_form("2x0^4 - 4x0^3x1 + 30x0^2x1^2 - 28x0x1^3 + 17x1^4")
    c1 = binary_rank(F)
    d1 = binary_decompose(F)
    ok1 = (c1.border_rank, c1.rank) == (2, 2) and d1.exact and d1.to_form() == F \
        and sorted(L.coefficients for L in d1.linear_forms) == [(1, -2), (1, 1)] and list(d1.coefficients) == [1, 1]
    c2 = binary_rank(parse_form("5x0^5x1"))
    ok2 = (c2.border_rank, c2.rank) == (2, 6)
    G = parse_form("x0^3x2 + 3x0^2x1x2 + 3x0x1^2x2 + x1^3x2")
    c3 = binary_rank(G)
    ok3 = essential_variables(G).m == 2 and (c3.border_rank, c3.rank) == (2, 4)
    dt = time.perf_counter() - t
    return ok1 and ok2 and ok3 and dt < 1, f"sylvester examples (exact={ok1}, tangent={ok2}, reduced={ok3}) {dt:.3f}s"


def check_2():
    t = time.perf_counter()
    pts = [(1, 1, 0), (1, 0, -1), (1, -1, 1)]
    F = sum_of_powers(3, 4, [1, 1, 1], [LinearForm(p) for p in pts])
    dec = catalecticant_decompose(F)
    got = _scaled(dec)
    ok_a = dec.rank == 3 and dec.relative_residual <= 1e-10 and all(
        any(np.allclose(p, q, atol=1e-10) and abs(lam - 1) <= 1e-10 for p, lam in got) for q in pts)
    Q = parse_form(QUINTIC)
    B = affine_monomials(2, 2)[:4]
    d0 = [[38, -24, 36, 1272], [-24, 1272, -288, -3456], [36, -288, 822, -7416], [1272, -3456, -7416, 166368]]
    d1 = [[-24, 1272, -288, -3456], [1272, -3456, -7416, 166368], [-288, -7416, 5544, -41472],
          [-3456, 166368, -41472, -497664]]
    ok_delta = [list(r) for r in hankel_matrix(Q, B).matrix] == d0 and \
        [list(r) for r in hankel_matrix(Q, B, shift=(1, 0)).matrix] == d1
    bc = bcmt_decompose(Q)
    truth = {(1, -12, -3): 5, (1, 12, -13): 3, (1, -2, 3): 15, (1, 2, 3): 15}
    found = _scaled(bc)
    ok_pts = bc.rank == 4
    for q, lam in truth.items():
        hit = [(p, l) for p, l in found if np.allclose(p, q, rtol=1e-6, atol=1e-6)]
        ok_pts &= len(hit) == 1 and abs(hit[0][1] - lam) <= 1e-6 * lam
    lams = sorted(round(abs(l)) for _, l in found)
    ok_pts &= lams == [3, 5, 15, 15]
    dt = time.perf_counter() - t
    return ok_a and ok_delta and ok_pts and dt < 5, \
        f"catalecticant quartic={ok_a}, delta matrices={ok_delta}, bcmt points/lambdas={ok_pts} {dt:.3f}s"


def check_3():
    hf = hilbert_function(parse_form("x0^2x2 + 6x1^2x3 - 3x0^2x4 - 6x0x1x4 - 3x1^2x4"))
    return hf.series() == "1 + 5z + 5z^2 + z^3", f"Hilbert series {hf.series()}"


def check_4():
    t = time.perf_counter()
    fails = []

    def need(label, cond):
        if not cond:
            fails.append(label)

    for n, d, s in sorted(AH_EXCEPTIONS):
        rep = secant_dim(Veronese(n, d), s)
        need(f"AH {n},{d},{s}", rep.defect == ah_oracle(n, d, s).defect == 1 and rep.confirmed)
        for t2 in (s - 1, s + 1):
            need(f"AH neighbour {n},{d},{t2}", secant_dim(Veronese(n, d), t2).defect == 0)
    for n in range(2, 5):
        for s in range(2, n + 1):
            need(f"quadrics {n},{s}", secant_dim(Veronese(n, 2), s).actual == ah_oracle(n, 2, s).dimension)
    need("X33 s5", secant_dim(Veronese(3, 3), 5).actual == 19)
    need("X34 s8", secant_dim(Veronese(3, 4), 8).actual == 31)
    need("X34 s9", secant_dim(Veronese(3, 4), 9).defect == 1)
    need("X53 s10", secant_dim(Veronese(5, 3), 10).actual == 55)
    need("(P1)^4 s3", secant_dim(Segre((1, 1, 1, 1)), 3).actual == 13)
    need("(P2)^3 s4", secant_dim(Segre((2, 2, 2)), 4).defect == 1)
    for (k, n, s), (codim, exp_codim) in {(2, 6, 3): (1, 0), (3, 7, 3): (20, 19), (3, 7, 4): (6, 2),
                                          (2, 8, 4): (10, 8)}.items():
        g = Grassmannian(k, n)
        rep = secant_dim(g, s)
        need(f"grass {k},{n},{s}", (g.ambient_dim - rep.actual, g.ambient_dim - rep.expected) == (codim, exp_codim))
    need("SV (1,1),(2,2) s3", secant_dim(SegreVeronese((1, 1), (2, 2)), 3).defect == 1)
    need("tangential 2,3 s2", secant_dim(TangentialVeronese(2, 3), 2).defect > 0)
    dt = time.perf_counter() - t
    return not fails and dt < 120, f"secant engine ({len(fails)} mismatches {fails}) {dt:.1f}s"


def check_5():
    ok = [monomial_rank(a) for a in [(1, 1, 1), (1, 2, 3), (2, 2, 2)]] == [4, 12, 9]
    ok &= [ranestad_schreyer_lower(parse_form(t)) for t in ("x0*x1*x2", "x0*x1^2*x2^3")] == [4, 6]
    ok &= colon_e1_lower(parse_form("x0*x1^2*x2^3")) == 12
    ok &= colon_lower(parse_form(E2_FIXTURE), parse_form("y0^2 + y1^2 + y2^2", var="y")) == 25
    ok &= real_binary_monomial_rank(2, 2) == 4 and monomial_rank((2, 2)) == 3
    ok &= all((reducible_cubic_rank(1, n), reducible_cubic_rank(2, n), reducible_cubic_rank(3, n))
              == (2 * n, 2 * n, 2 * n + 1) for n in range(3, 8))
    return ok, "monomial ranks, RS and colon bounds, e=2 fixture, real binary monomial, reducible cubics"


def check_6():
    rng = random.Random(2026)
    notes = []
    ok_bin = True
    for _ in range(50):
        d = rng.randint(2, 10)
        r = rng.randint(1, (d + 1) // 2)
        forms = [random_linear(rng, 2, -20, 20) for _ in range(r)]
        if any(linalg.rank([a.coefficients, b.coefficients]) < 2 for i, a in enumerate(forms) for b in forms[i + 1:]):
            continue
        F = sum_of_powers(2, d, [rng.randint(1, 6) for _ in range(r)], forms)
        dec = binary_decompose(F)
        ok_bin &= binary_rank(F).rank == r == dec.rank and dec.relative_residual <= 1e-8
    notes.append(f"binary={ok_bin}")
    ok_ter, done = True, 0
    cap = {3: 3, 4: 4, 5: 6, 6: 7}
    while done < 50:
        d = rng.randint(3, 6)
        r = rng.randint(1, cap[d])
        F = sum_of_powers(3, d, [rng.randint(1, 6) for _ in range(r)], [random_linear(rng, 3, -6, 6) for _ in range(r)])
        if F.is_zero() or max_catalecticant_rank(F) != r:
            continue
        done += 1
        _, dec = decompose(F)
        ok_ter &= dec.rank == r and dec.relative_residual <= 1e-8
    notes.append(f"ternary={ok_ter}")
    ok_hf = True
    for _ in range(200):
        F = random_form(rng, rng.randint(1, 4), rng.randint(1, 6))
        v = hilbert_function(F).values
        ok_hf &= v == v[::-1]
    notes.append(f"symmetry={ok_hf}")
    ok_fat = all(secant_dim(Veronese(n, d), s).fat_point_actual == secant_dim(Veronese(n, d), s).actual
                 for n in range(1, 5) for d in range(2, 7) for s in range(1, 16))
    notes.append(f"two-path={ok_fat}")
    ok_lb = True
    for _ in range(60):
        F = random_form(rng, 2, rng.randint(2, 9))
        ok_lb &= max_catalecticant_rank(F) <= binary_rank(F).rank
    for a in [(1, 1, 1), (1, 2, 3), (2, 2, 2), (1, 1, 4), (2, 3, 3)]:
        ok_lb &= max_catalecticant_rank(HomogeneousForm.monomial(a)) <= monomial_rank(a)
    notes.append(f"catalecticant-bound={ok_lb}")
    return ok_bin and ok_ter and ok_hf and ok_fat and ok_lb, ", ".join(notes)


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6]


def test_criterion_1(capsys):
    ok, detail = check_1()
    report(1, ok, detail, capsys)
    assert ok, detail


def test_criterion_2(capsys):
    ok, detail = check_2()
    report(2, ok, detail, capsys)
    assert ok, detail


def test_criterion_3(capsys):
    ok, detail = check_3()
    report(3, ok, detail, capsys)
    assert ok, detail


def test_criterion_4(capsys):
    ok, detail = check_4()
    report(4, ok, detail, capsys)
    assert ok, detail


def test_criterion_5(capsys):
    ok, detail = check_5()
    report(5, ok, detail, capsys)
    assert ok, detail


def test_criterion_6(capsys):
    ok, detail = check_6()
    report(6, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, check in enumerate(CHECKS, 1):
        ok, detail = check()
        report(i, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
