"""Canonical exact-value arithmetic."""

import math
from fractions import Fraction

import pytest

from bergman_indices.exact import (ExactMix, QComplex, as_fraction,
                                   format_fraction, make_exact, parse_fraction)


def test_gamma_reduction_integer_args():
    # Gamma(4) = 6 folds into the rational coefficient
    v = make_exact(1, 0, gamma_num=(Fraction(4),))
    assert v.coeff == 6 and v.pi_half == 0 and not v.gamma_num


def test_gamma_half_integer_becomes_sqrt_pi():
    # Gamma(5/2) = (3/2)(1/2) sqrt(pi)
    v = make_exact(1, 0, gamma_num=(Fraction(5, 2),))
    assert v.coeff == Fraction(3, 4) and v.pi_half == 1
    assert abs(float(v) - math.gamma(2.5)) < 1e-15


def test_gamma_quarter_stays_symbolic():
    v = make_exact(1, 0, gamma_num=(Fraction(9, 4),))
    assert v.gamma_num == (Fraction(1, 4),)
    assert v.coeff == Fraction(5, 16)
    assert abs(float(v) - math.gamma(2.25)) < 1e-14


def test_mul_div_cancellation():
    a = make_exact(Fraction(3, 2), 2, gamma_num=(Fraction(1, 3),))
    b = make_exact(Fraction(1, 2), 2, gamma_num=(Fraction(1, 3),))
    q = a / b
    assert q.coeff == 3 and q.pi_half == 0
    assert not q.gamma_num and not q.gamma_den
    assert (a * b).pi_half == 4


def test_positive_only():
    with pytest.raises(ValueError):
        make_exact(-1)
    with pytest.raises(ValueError):
        make_exact(1, 0, gamma_num=(Fraction(-1, 2),))


def test_qcomplex_roundtrip_and_arithmetic():
    z = QComplex.from_complex(0.25 - 0.5j)
    assert z.re == Fraction(1, 4) and z.im == Fraction(-1, 2)
    w = QComplex(Fraction(1, 3), Fraction(2))
    prod = z * w
    expect = complex(z) * complex(w)
    assert abs(complex(prod) - expect) < 1e-15
    assert (z * z.conjugate()).im == 0
    assert z.abs2() == Fraction(1, 16) + Fraction(1, 4)


def test_exact_mix_equality_and_zero():
    m1 = ExactMix()
    m1.add_scaled(QComplex(Fraction(1, 2)), make_exact(2, 2))
    m2 = ExactMix()
    m2.add_scaled(QComplex(Fraction(1)), make_exact(1, 2))
    assert m1 == m2
    m2.add_scaled(QComplex(Fraction(-1)), make_exact(1, 2))
    assert m2.is_zero()
    assert abs(complex(m1) - math.pi) < 1e-14  # pi_half = 2 means pi^1


def test_fraction_parsing_and_formatting():
    assert parse_fraction("7/4") == Fraction(7, 4)
    assert parse_fraction(" -3 ") == Fraction(-3)
    assert format_fraction(Fraction(8, 4)) == "2"
    assert format_fraction(Fraction(2, 3)) == "2/3"
    with pytest.raises(ValueError):
        parse_fraction("1/0")
    with pytest.raises(ValueError):
        parse_fraction("a/b")
    # floats convert exactly (binary expansion)
    assert as_fraction(0.5) == Fraction(1, 2)
