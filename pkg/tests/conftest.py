import random
from fractions import Fraction

from hypothesis import HealthCheck, settings

from waring.poly import HomogeneousForm, LinearForm, monomials, power_of_linear

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_form(rng: random.Random, nvars: int, d: int, lo: int = -9, hi: int = 9) -> HomogeneousForm:
    while True:
        F = HomogeneousForm.from_vector(nvars, d, [rng.randint(lo, hi) for _ in monomials(nvars, d)])
        if not F.is_zero():
            return F


def random_linear(rng: random.Random, nvars: int, lo: int = -5, hi: int = 5) -> LinearForm:
    while True:
        c = tuple(rng.randint(lo, hi) for _ in range(nvars))
        if any(c):
            return LinearForm(c)


def sum_of_powers(nvars: int, d: int, lams, forms) -> HomogeneousForm:
    F = HomogeneousForm(nvars, d)
    for lam, L in zip(lams, forms):
        F = F + power_of_linear(L, d) * Fraction(lam)
    return F
