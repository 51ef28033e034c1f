from fractions import Fraction

import pytest

from poissonlab.exterior import (
    DifferentialForm,
    LinearMap3,
    MultiVector,
    contract_covector,
    contract_multivector_into_form,
    exterior_derivative,
    koszul_differential,
    lie_derivative,
    mu_flat,
    pairing,
    pushforward,
    schouten_bracket,
    sharp,
    wedge,
)
from poissonlab.poly import Polynomial, RationalFunction


def xyz():
    return (
        Polynomial.variable(0, 3),
        Polynomial.variable(1, 3),
        Polynomial.variable(2, 3),
    )


def sl2_pi():
    x, y, z = xyz()
    return MultiVector(3, 2, {(1, 2): x, (2, 0): y, (0, 1): -z})


def casimir():
    x, y, z = xyz()
    return x * x + y * y - z * z


def d_scalar(h):
    return exterior_derivative(DifferentialForm.from_scalar(h, 3))


# -- wedge ----------------------------------------------------------------


def test_wedge_basis():
    a = MultiVector.basis((0,), 3)
    b = MultiVector.basis((1,), 3)
    assert wedge(a, b) == MultiVector.basis((0, 1), 3)


def test_wedge_alternating():
    a = MultiVector.basis((0,), 3)
    assert wedge(a, a).is_zero()


def test_wedge_reorders_with_parity():
    x, y, z = xyz()
    a = MultiVector(3, 1, {(1,): x})  # x d/dy
    b = MultiVector(3, 1, {(0,): y})  # y d/dx
    assert wedge(a, b) == MultiVector(3, 2, {(0, 1): -x * y})


def test_wedge_graded_commutative():
    import itertools
    import random

    rng = random.Random(11)

    def rand_mv(degree):
        comps = {}
        for s in itertools.combinations(range(3), degree):
            e = [rng.randint(0, 2) for _ in range(3)]
            comps[s] = Polynomial.monomial(e, rng.randint(-3, 3))
        return MultiVector(3, degree, comps)

    for p in range(3):
        for q in range(3):
            a, b = rand_mv(p), rand_mv(q)
            sign = -1 if (p * q) % 2 else 1
            assert wedge(a, b) == wedge(b, a) * sign


def test_wedge_rejects_mixed_kinds():
    with pytest.raises(TypeError):
        wedge(MultiVector.basis((0,), 3), DifferentialForm.basis((1,), 3))


def test_wedge_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        wedge(MultiVector.basis((0,), 3), MultiVector.basis((0,), 2))


# -- contraction of a covector into a multivector ---------------------------


def test_contract_covector_basis():
    dx = DifferentialForm.basis((0,), 3)
    assert contract_covector(dx, MultiVector.basis((0, 1), 3)) == MultiVector.basis((1,), 3)


def test_sharp_of_dx():
    x, y, z = xyz()
    got = sharp(sl2_pi(), DifferentialForm.basis((0,), 3))
    assert got == MultiVector(3, 1, {(2,): -y, (1,): -z})


def test_sharp_annihilates_casimir_differential():
    assert sharp(sl2_pi(), d_scalar(casimir())).is_zero()


def test_contract_covector_degree_zero_rejected():
    dx = DifferentialForm.basis((0,), 3)
    with pytest.raises(ValueError):
        contract_covector(dx, MultiVector.from_scalar(1, 3))


def test_contract_covector_is_odd_derivation():
    import itertools
    import random

    rng = random.Random(5)

    def rand_mv(degree):
        comps = {}
        for s in itertools.combinations(range(3), degree):
            comps[s] = Polynomial.monomial(
                [rng.randint(0, 2) for _ in range(3)], rng.randint(-2, 2)
            )
        return MultiVector(3, degree, comps)

    x, y, z = xyz()
    alpha = DifferentialForm(3, 1, {(0,): y, (1,): z * z, (2,): x})
    for p in range(1, 3):
        for q in range(1, 3):
            P, Q = rand_mv(p), rand_mv(q)
            lhs = contract_covector(alpha, wedge(P, Q))
            sign = -1 if p % 2 else 1
            rhs = wedge(contract_covector(alpha, P), Q) + wedge(
                P, contract_covector(alpha, Q)
            ) * sign
            assert lhs == rhs


# -- contraction of a multivector into a form -------------------------------


def test_contract_pi_into_dxdy():
    x, y, z = xyz()
    got = contract_multivector_into_form(sl2_pi(), DifferentialForm.basis((0, 1), 3))
    assert got == DifferentialForm.from_scalar(-z, 3)


def test_contract_basis_vector_into_dx():
    got = contract_multivector_into_form(
        MultiVector.basis((0,), 3), DifferentialForm.basis((0,), 3)
    )
    assert got == DifferentialForm.from_scalar(1, 3)


def test_contract_degree_deficit_is_zero():
    got = contract_multivector_into_form(sl2_pi(), DifferentialForm.basis((0,), 3))
    assert got.is_zero()


# -- exterior derivative -----------------------------------------------------


def test_d_of_x_dy():
    x, y, z = xyz()
    got = exterior_derivative(DifferentialForm(3, 1, {(1,): x}))
    assert got == DifferentialForm.basis((0, 1), 3)


def test_d_squared_on_scalar():
    assert exterior_derivative(d_scalar(casimir())).is_zero()


def test_d_of_dtheta_is_zero():
    x, y, z = xyz()
    r2 = x * x + y * y
    dtheta = DifferentialForm(
        3, 1, {(0,): RationalFunction(-y, r2), (1,): RationalFunction(x, r2)}
    )
    assert exterior_derivative(dtheta).is_zero()


def test_d_squared_on_random_rational_forms():
    import itertools
    import random

    rng = random.Random(3)
    x, y, z = xyz()
    dens = [x * x + y * y, x * x + y * y + z * z + 1]
    for degree in (0, 1):
        for _ in range(10):
            comps = {}
            for s in itertools.combinations(range(3), degree):
                num = Polynomial.monomial(
                    [rng.randint(0, 2) for _ in range(3)], rng.randint(-2, 2)
                )
                comps[s] = RationalFunction(num, rng.choice(dens))
            omega = DifferentialForm(3, degree, comps)
            assert exterior_derivative(exterior_derivative(omega)).is_zero()


# -- Schouten bracket --------------------------------------------------------


def test_schouten_vector_fields_lie_bracket():
    x, y, z = xyz()
    got = schouten_bracket(MultiVector.basis((0,), 3), MultiVector(3, 1, {(1,): x}))
    assert got == MultiVector.basis((1,), 3)


def test_schouten_pi_pi_zero():
    assert schouten_bracket(sl2_pi(), sl2_pi()).is_zero()


def test_schouten_pi_casimir_zero():
    assert schouten_bracket(sl2_pi(), casimir()).is_zero()


def test_schouten_scalar_rule():
    x, y, z = xyz()
    X = MultiVector(3, 1, {(0,): y, (2,): x * x})
    h = x * z
    assert schouten_bracket(X, h).scalar() == y * z + x * x * x


# -- Lie derivative -----------------------------------------------------------


def test_lie_derivative_scalar():
    x, y, z = xyz()
    got = lie_derivative(MultiVector.basis((0,), 3), x)
    assert got.scalar() == Polynomial.constant(1, 3)


def test_lie_derivative_form_cartan():
    x, y, z = xyz()
    X = MultiVector(3, 1, {(0,): x, (1,): y})
    omega = DifferentialForm(3, 1, {(0,): y})
    # L_X(y dx) = X(y) dx + y d(X^x) = y dx + y dx
    assert lie_derivative(X, omega) == DifferentialForm(3, 1, {(0,): 2 * y})


def test_lie_derivative_W_of_R2():
    x, y, z = xyz()
    W = MultiVector(
        3, 1, {(0,): -z * z * x, (1,): -z * z * y, (2,): -(x * x + y * y) * z}
    )
    got = lie_derivative(W, x * x + y * y + z * z)
    assert got.scalar() == -4 * (x * x + y * y) * z * z


# -- Koszul differential -------------------------------------------------------


def test_koszul_on_scalars_is_zero():
    x, y, z = xyz()
    assert koszul_differential(sl2_pi(), DifferentialForm.from_scalar(x * y, 3)).is_zero()


def test_koszul_dxdy():
    got = koszul_differential(sl2_pi(), DifferentialForm.basis((0, 1), 3))
    assert got == DifferentialForm.basis((2,), 3)


def test_koszul_squared():
    x, y, z = xyz()
    omega = DifferentialForm(3, 2, {(0, 1): x, (1, 2): y * z + 1})
    pi = sl2_pi()
    assert koszul_differential(pi, koszul_differential(pi, omega)).is_zero()


def test_koszul_anticommutes_with_d():
    x, y, z = xyz()
    pi = sl2_pi()
    omega = DifferentialForm(3, 1, {(1,): x * x})
    got = exterior_derivative(koszul_differential(pi, omega)) + koszul_differential(
        pi, exterior_derivative(omega)
    )
    assert got.is_zero()


# -- mu_flat -------------------------------------------------------------------


def test_mu_flat_basis_vector():
    assert mu_flat(MultiVector.basis((0,), 3)) == DifferentialForm.basis((1, 2), 3)


def test_mu_flat_pi_is_half_df():
    got = mu_flat(sl2_pi())
    assert got == d_scalar(casimir()) * Fraction(1, 2)


def test_mu_flat_top():
    got = mu_flat(MultiVector.basis((0, 1, 2), 3))
    assert got == DifferentialForm.from_scalar(1, 3)


def test_mu_flat_linear_bijection_on_components():
    import itertools

    for k in range(4):
        for s in itertools.combinations(range(3), k):
            image = mu_flat(MultiVector.basis(s, 3))
            assert len(image.components) == 1
            key, coeff = next(iter(image.components.items()))
            assert tuple(sorted(set(range(3)) - set(s))) == key
            assert coeff.constant_value() in (1, -1)


def test_mu_flat_wrong_dimension():
    with pytest.raises(ValueError):
        mu_flat(MultiVector.basis((0,), 2))


# -- chain map signs: mu_flat conjugates d_pi into the Koszul differential ------

EPSILON_SIGNS = {0: -1, 1: 1, 2: -1}


def test_mu_flat_chain_map_with_frozen_signs():
    import itertools
    import random

    rng = random.Random(23)
    pi = sl2_pi()
    for k, eps in EPSILON_SIGNS.items():
        nontrivial = 0
        for _ in range(25):
            comps = {}
            for s in itertools.combinations(range(3), k):
                comps[s] = Polynomial.monomial(
                    [rng.randint(0, 2) for _ in range(3)], rng.randint(-3, 3)
                )
            P = MultiVector(3, k, comps)
            lhs = mu_flat(schouten_bracket(pi, P))
            rhs = koszul_differential(pi, mu_flat(P)) * eps
            assert lhs == rhs
            if not lhs.is_zero():
                nontrivial += 1
        assert nontrivial > 0


# -- pushforward ----------------------------------------------------------------


def test_pushforward_identity():
    pi = sl2_pi()
    assert pushforward(LinearMap3.identity(3), pi) == pi


def test_pushforward_tau_fixes_pi():
    tau = LinearMap3.diagonal([1, -1, -1])
    assert pushforward(tau, sl2_pi()) == sl2_pi()


def test_pushforward_scaling_substitutes_coefficients():
    x, y, z = xyz()
    L = LinearMap3.diagonal([2, 1, 1])
    got = pushforward(L, MultiVector(3, 1, {(0,): x}))
    # 2 d/dx with coefficient x -> x/2
    assert got == MultiVector(3, 1, {(0,): x})
    got2 = pushforward(L, MultiVector.basis((0,), 3))
    assert got2 == MultiVector(3, 1, {(0,): Polynomial.constant(2, 3)})


def test_pushforward_functorial():
    x, y, z = xyz()
    A = LinearMap3([[1, 2, 0], [0, 1, 0], [1, 0, 3]])
    B = LinearMap3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    P = MultiVector(3, 2, {(0, 1): x * y, (1, 2): z})
    assert pushforward(A.compose(B), P) == pushforward(A, pushforward(B, P))


def test_pushforward_singular_rejected():
    with pytest.raises(ValueError):
        pushforward(LinearMap3.diagonal([1, 0, 1]), sl2_pi())


# -- pairing ---------------------------------------------------------------------


def test_pairing():
    x, y, z = xyz()
    alpha = DifferentialForm(3, 1, {(0,): y})
    X = MultiVector(3, 1, {(0,): x, (1,): z})
    assert pairing(alpha, X) == x * y
