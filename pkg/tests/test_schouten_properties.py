"""Seeded property suite for the Schouten bracket axioms, all checks exact."""

from conftest import rand_multivector, seeded_rng

from poissonlab.exterior import MultiVector, schouten_bracket, wedge
from poissonlab.poly import Polynomial


def sl2_pi():
    x = Polynomial.variable(0, 3)
    y = Polynomial.variable(1, 3)
    z = Polynomial.variable(2, 3)
    return MultiVector(3, 2, {(1, 2): x, (2, 0): y, (0, 1): -z})


def so3_pi():
    x = Polynomial.variable(0, 3)
    y = Polynomial.variable(1, 3)
    z = Polynomial.variable(2, 3)
    return MultiVector(3, 2, {(1, 2): x, (2, 0): y, (0, 1): z})


def test_graded_antisymmetry():
    rng = seeded_rng()
    for _ in range(40):
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        P, Q = rand_multivector(rng, p), rand_multivector(rng, q)
        sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
        assert schouten_bracket(P, Q) == schouten_bracket(Q, P) * (-sign)


def test_leibniz_rule():
    rng = seeded_rng(7)
    for _ in range(40):
        p, q, r = rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2)
        P, Q, R = (
            rand_multivector(rng, p),
            rand_multivector(rng, q),
            rand_multivector(rng, r),
        )
        sign = -1 if ((p - 1) * q) % 2 else 1
        lhs = schouten_bracket(P, wedge(Q, R))
        rhs = wedge(schouten_bracket(P, Q), R) + wedge(Q, schouten_bracket(P, R)) * sign
        assert lhs == rhs


def test_graded_jacobi():
    rng = seeded_rng(13)
    for _ in range(30):
        p, q, r = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
        P, Q, R = (
            rand_multivector(rng, p),
            rand_multivector(rng, q),
            rand_multivector(rng, r),
        )
        sign = -1 if ((p - 1) * (q - 1)) % 2 else 1
        lhs = schouten_bracket(P, schouten_bracket(Q, R))
        rhs = schouten_bracket(schouten_bracket(P, Q), R) + schouten_bracket(
            Q, schouten_bracket(P, R)
        ) * sign
        assert lhs == rhs


def test_differential_squares_to_zero_when_pi_is_poisson():
    rng = seeded_rng(19)
    for pi in (sl2_pi(), so3_pi()):
        assert schouten_bracket(pi, pi).is_zero()
        for _ in range(25):
            P = rand_multivector(rng, rng.randint(0, 2))
            assert schouten_bracket(pi, schouten_bracket(pi, P)).is_zero()


def test_bracket_with_scalars_is_directional_derivative():
    rng = seeded_rng(29)
    for _ in range(20):
        X = rand_multivector(rng, 1)
        h = rand_multivector(rng, 0).scalar()
        got = schouten_bracket(X, h).scalar()
        want = Polynomial.zero(3)
        for (i,), c in X.components.items():
            want = want + c * h.diff(i)
        assert got == want
