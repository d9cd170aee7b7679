from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from miczlab.exact import (
    GammaRatio,
    GaussianRational,
    PoleError,
    Q,
    beta_quotient,
    gamma_ratio,
    rational_sqrt,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
)


def gauss(re, im):
    return GaussianRational(Q(re), Q(im))


@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_field_axioms(a, b, c, d, e, f):
    x, y, z = gauss(a, b), gauss(c, d), gauss(e, f)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


@given(rationals, rationals)
def test_conjugation_involution_and_norm(a, b):
    z = gauss(a, b)
    assert z.conjugate().conjugate() == z
    n = z.abs2()
    assert n >= 0
    assert (n == 0) == (not z)
    assert z * z.conjugate() == GaussianRational(n)


def test_imaginary_unit():
    i = GaussianRational.i()
    assert i * i == GaussianRational(-1)
    assert i**4 == GaussianRational(1)


def test_gamma_ratio_trivial_and_half():
    assert gamma_ratio(Q(7, 3), 0) == 1
    assert gamma_ratio(Q(1, 2), 2) == Q(3, 4)


def test_gamma_ratio_factorial_oracle():
    # Gamma(5)/Gamma(2) = 4!/1! = 24
    assert gamma_ratio(2, 3) == 24
    for x in range(1, 7):
        for k in range(0, 5):
            fact = 1
            for j in range(k):
                fact *= x + j
            assert gamma_ratio(x, k) == fact


def test_gamma_ratio_pole():
    with pytest.raises(PoleError):
        gamma_ratio(-1, 3)


def test_gamma_ratio_cocycle():
    for x in (Q(1, 2), Q(5, 3), 2):
        for k1 in range(4):
            for k2 in range(4):
                assert gamma_ratio(x, k1 + k2) == gamma_ratio(x, k1) * gamma_ratio(
                    x + k1, k2
                )


def test_beta_quotient_examples():
    assert beta_quotient(Q(7, 2), Q(5, 3), 0) == 1
    assert beta_quotient(2, 3, 1) == Q(3, 5)
    # p = I_mu+1+mu, q = I_mu+1-mu with n=1, mu=1/2, I=0: (2, 1, 1) -> 1/3
    assert beta_quotient(2, 1, 1) == Q(1, 3)


def test_beta_quotient_closed_form_and_factorial_oracle():
    from math import factorial

    def beta_int(p, q):
        return Fraction(factorial(p - 1) * factorial(q - 1), factorial(p + q - 1))

    for p in range(1, 6):
        for q in range(1, 6):
            for dq in range(-2, 4):
                if q + dq < 1:
                    continue
                want = beta_int(p, q + dq) / beta_int(p, q)
                assert beta_quotient(p, q, dq) == want
                if dq == 1:
                    assert beta_quotient(p, q, 1) == Q(q, p + q)


def test_gamma_ratio_object():
    g = GammaRatio(Q(1, 2), 2)
    assert g.value() == Q(3, 4)


def test_rational_sqrt():
    assert rational_sqrt(Q(9, 4)) == Q(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(0) == 0
