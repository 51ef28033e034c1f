from fractions import Fraction

import pytest

from poissonlab.poly import Polynomial, RationalFunction, rf_equal


def xyz():
    return (
        Polynomial.variable(0, 3),
        Polynomial.variable(1, 3),
        Polynomial.variable(2, 3),
    )


def test_zero_polynomial_has_empty_term_map():
    assert Polynomial.zero(3).terms == {}
    x, y, z = xyz()
    assert (x - x).terms == {}
    assert (x - x).is_zero()


def test_no_zero_coefficients_stored():
    x, y, z = xyz()
    p = x * y - x * y + z
    assert list(p.terms.values()) == [Fraction(1)]


def test_arithmetic_is_exact():
    x, y, z = xyz()
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p + 1) - 1 == p
    third = Polynomial.constant(Fraction(1, 3), 3)
    assert third * 3 == Polynomial.constant(1, 3)


def test_pow_and_degree():
    x, y, z = xyz()
    f = x * x + y * y - z * z
    assert (f**3) == f * f * f
    assert f.total_degree() == 2
    assert (f**0) == Polynomial.constant(1, 3)


def test_diff():
    x, y, z = xyz()
    f = x * x + y * y - z * z
    assert f.diff(0) == 2 * x
    assert f.diff(2) == -2 * z
    assert Polynomial.constant(5, 3).diff(1).is_zero()


def test_substitute_composition():
    x, y, z = xyz()
    f = x * x + y * y - z * z
    t = Polynomial.variable(0, 1)
    gamma1 = [
        Polynomial.zero(1),
        (-t - 1) / Fraction(2),
        (1 - t) / Fraction(2),
    ]
    assert f.substitute(gamma1) == t


def test_evaluate():
    x, y, z = xyz()
    f = x * x + y * y - z * z
    assert f.evaluate((Fraction(1), Fraction(2), Fraction(2))) == 1
    assert f.evaluate((1.0, 0.0, 1.0)) == 0.0


def test_rational_function_equality_by_cross_multiplication():
    x, y, z = xyz()
    one = Polynomial.constant(1, 3)
    assert rf_equal(RationalFunction(x, y), RationalFunction(x * z, y * z))
    assert not rf_equal(
        RationalFunction(one, x * x + y * y), RationalFunction(one, x * x + z * z)
    )
    assert rf_equal(RationalFunction(x * x - y * y, x - y), RationalFunction(x + y, one))


def test_rational_function_arithmetic():
    x, y, z = xyz()
    a = RationalFunction(x, y)
    b = RationalFunction(y, x)
    assert a * b == 1
    assert a + b == RationalFunction(x * x + y * y, x * y)
    assert (a - a).is_zero()
    assert a / a == 1


def test_rational_function_quotient_rule():
    x, y, z = xyz()
    # d/dx [ x / (x^2+y^2) ] = (y^2 - x^2) / (x^2+y^2)^2
    r = RationalFunction(x, x * x + y * y)
    expect = RationalFunction(y * y - x * x, (x * x + y * y) ** 2)
    assert r.diff(0) == expect


def test_zero_denominator_rejected():
    x, y, z = xyz()
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, Polynomial.zero(3))


def test_mixed_polynomial_rational_arithmetic():
    x, y, z = xyz()
    r = RationalFunction(Polynomial.constant(1, 3), x)
    assert x * r == 1
    assert (x + r) == RationalFunction(x * x + 1, x)
    assert x - x * r * x == Polynomial.zero(3)
