import random
from fractions import Fraction

import pytest

from poissonlab.cohomology import (
    GradedSlice,
    JacobiError,
    casimir_generator_check,
    ce_matrix,
    cohomology_table,
    lichnerowicz_matrix,
    monomials_of_degree,
    multivector_terms_json,
    representatives,
)
from poissonlab.exact_linalg import fraction_rows_echelon, rank_kernel, rank_only
from poissonlab.exterior import MultiVector
from poissonlab.liealg import (
    abelian,
    broken_sl2,
    build_linear_poisson,
    conjugate,
    heisenberg,
    sl2,
    so3,
)
from poissonlab.poly import Polynomial


def binom(n, k):
    from math import comb

    return comb(n, k)


def test_monomial_order_graded_lex():
    assert monomials_of_degree(3, 2) == [
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    ]


def test_slice_sizes():
    for q in range(4):
        for d in range(5):
            s = GradedSlice(3, q, d)
            assert s.size == binom(3, q) * binom(d + 2, 2)


def test_slice_vector_round_trip():
    s = GradedSlice(3, 1, 2)
    vec = [Fraction(i - 3) for i in range(s.size)]
    assert s.vector_of(s.multivector(vec)) == vec


def test_degree_preservation_structural():
    pi = build_linear_poisson(sl2())
    # building the matrix raises if any image term leaves the slice
    for q in range(3):
        for d in range(4):
            lichnerowicz_matrix(pi, q, d)


def test_lichnerowicz_constants_are_casimir():
    pi = build_linear_poisson(sl2())
    m = lichnerowicz_matrix(pi, 0, 0)
    assert (m.rows, m.cols) == (3, 1)
    assert rank_only(m) == 0


def test_lichnerowicz_no_linear_casimir_for_sl2():
    pi = build_linear_poisson(sl2())
    m = lichnerowicz_matrix(pi, 0, 1)
    rank, kernel = rank_kernel(m)
    assert rank == 3 and kernel == []
    mce = ce_matrix(sl2(), 0, 1)
    assert rank_only(mce) == 3


def test_quadratic_casimir_kernel_spans_f():
    m = lichnerowicz_matrix(build_linear_poisson(sl2()), 0, 2)
    rank, kernel = rank_kernel(m)
    assert len(kernel) == 1
    s = GradedSlice(3, 0, 2)
    x, y, z = (Polynomial.variable(i, 3) for i in range(3))
    f = x * x + y * y - z * z
    got = s.multivector(kernel[0]).scalar()
    assert got == f or got == -f


def test_complex_property_squares_to_zero():
    pi = build_linear_poisson(sl2())
    for d in range(4):
        for q in range(3):
            a = lichnerowicz_matrix(pi, q, d)
            b = lichnerowicz_matrix(pi, q + 1, d)
            # b*a = 0 columnwise
            for col in range(a.cols):
                vec = [a.get(r, col) for r in range(a.rows)]
                assert all(v == 0 for v in b.apply(vec))


def test_ce_abelian_all_zero():
    for q in range(3):
        for d in range(3):
            m = ce_matrix(abelian(3), q, d)
            assert not m.entries


def test_abelian_dims_are_chain_dims():
    table = cohomology_table(abelian(3), 3, 2, "ce")
    for e in table.entries:
        assert e.dim_h == e.dim_chain


def test_oracle_equivalence_ranks_sl2():
    pi = build_linear_poisson(sl2())
    for q in range(4):
        for d in range(5):
            assert rank_only(lichnerowicz_matrix(pi, q, d)) == rank_only(
                ce_matrix(sl2(), q, d)
            )


def test_oracle_equivalence_random_conjugate():
    rng = random.Random(1729)
    while True:
        matrix = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        det = (
            matrix[0][0] * (matrix[1][1] * matrix[2][2] - matrix[1][2] * matrix[2][1])
            - matrix[0][1] * (matrix[1][0] * matrix[2][2] - matrix[1][2] * matrix[2][0])
            + matrix[0][2] * (matrix[1][0] * matrix[2][1] - matrix[1][1] * matrix[2][0])
        )
        if det != 0:
            break
    g = conjugate(sl2(), matrix)
    ta = cohomology_table(g, 3, 4, "lichnerowicz")
    tb = cohomology_table(g, 3, 4, "ce")
    assert ta.dims() == tb.dims()
    # conjugation does not change cohomology dimensions
    assert ta.dims() == cohomology_table(sl2(), 3, 4, "lichnerowicz").dims()


def test_sl2_formal_cohomology_pattern():
    table = cohomology_table(sl2(), 3, 8, "lichnerowicz")
    for d in range(9):
        expect = [1, 0, 0, 1] if d % 2 == 0 else [0, 0, 0, 0]
        assert [table.dim_h(q, d) for q in range(4)] == expect


def test_euler_characteristic_zero():
    for g in (sl2(), so3(), heisenberg(), abelian(3)):
        table = cohomology_table(g, 3, 5, "ce")
        for d in range(6):
            total = sum((-1) ** q * table.dim_h(q, d) for q in range(4))
            assert total == 0


def test_heisenberg_regression_dims():
    # frozen after the first dual-method computation (methods agree exactly)
    table = cohomology_table(heisenberg(), 3, 4, "lichnerowicz")
    expected = {
        0: [1, 2, 2, 1],
        1: [1, 4, 5, 2],
        2: [1, 5, 7, 3],
        3: [1, 6, 9, 4],
        4: [1, 7, 11, 5],
    }
    for d, dims in expected.items():
        assert [table.dim_h(q, d) for q in range(4)] == dims
    other = cohomology_table(heisenberg(), 3, 4, "ce")
    assert other.dims() == table.dims()


def test_jacobi_failure_aborts_with_witness():
    with pytest.raises(JacobiError) as err:
        cohomology_table(broken_sl2(), 3, 2, "lichnerowicz")
    assert "component" in str(err.value)


def test_parallel_schedule_is_canonical():
    seq = cohomology_table(sl2(), 3, 4, "lichnerowicz", jobs=1)
    par = cohomology_table(sl2(), 3, 4, "lichnerowicz", jobs=3)
    assert [e for e in seq.entries] == [e for e in par.entries]


def span_with_image(g, q, d, vectors):
    """Echelon pivot count of span(vectors + image of the incoming slice)."""
    source = GradedSlice(3, q, d)
    from poissonlab.cohomology import _differential

    rows = [tuple(source.vector_of(v)) for v in vectors]
    m_in = _differential(g, "lichnerowicz", q - 1, d)
    for col in range(m_in.cols):
        vec = [Fraction(0)] * m_in.rows
        for (r, c), val in m_in.entries.items():
            if c == col:
                vec[r] = val
        rows.append(tuple(vec))
    _, pivots = fraction_rows_echelon(rows)
    return len(pivots)


def test_representatives_sl2():
    x, y, z = (Polynomial.variable(i, 3) for i in range(3))
    f = x * x + y * y - z * z

    reps = representatives(sl2(), 0, 2)
    assert len(reps) == 1
    assert reps[0].scalar() in (f, -f)

    assert representatives(sl2(), 1, 4) == []
    assert representatives(sl2(), 2, 2) == []

    reps = representatives(sl2(), 3, 2)
    assert len(reps) == 1
    # the representative class must agree with [f d/dx^d/dy^d/dz]
    target = MultiVector(3, 3, {(0, 1, 2): f})
    with_rep = span_with_image(sl2(), 3, 2, reps)
    with_target = span_with_image(sl2(), 3, 2, [target])
    with_both = span_with_image(sl2(), 3, 2, reps + [target])
    assert with_rep == with_target == with_both


def test_casimir_generator_check():
    assert casimir_generator_check(sl2(), 8)
    assert casimir_generator_check(so3(), 8)
    with pytest.raises(ValueError):
        casimir_generator_check(abelian(3), 4)


def test_multivector_terms_json():
    x = Polynomial.variable(0, 3)
    P = MultiVector(3, 2, {(0, 1): 2 * x})
    assert multivector_terms_json(P) == [
        {"subset": [1, 2], "monomial": [1, 0, 0], "coeff": "2"}
    ]
