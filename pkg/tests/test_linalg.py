import random

import pytest
from conftest import charpoly_inertia, cofactor_det, smith_invariants
from hypothesis import given, settings
from hypothesis import strategies as st

from torsurg.catalog import BASE_BLOCK, Q_P
from torsurg.linalg import (
    HYPERBOLIC,
    DegenerateFormError,
    IntMatrix,
    NotSquareError,
    NotSymmetricError,
    Parity,
    determinant,
    direct_sum,
    inertia,
    is_unimodular,
    parity,
    rank,
    signature,
    smith_normal_form,
)


def matrices(max_size=5, lo=-9, hi=9, square=False):
    @st.composite
    def build(draw):
        m = draw(st.integers(0, max_size))
        n = m if square else draw(st.integers(0, max_size))
        rows = [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(m)]
        return IntMatrix.from_rows(rows, n)

    return build()


def symmetric(max_size=5, lo=-4, hi=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_size))
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = draw(st.integers(lo, hi))
        return IntMatrix.from_rows(rows)

    return build()


def is_snf(d: IntMatrix) -> bool:
    k = min(d.rows, d.cols)
    diag = [d[i, i] for i in range(k)]
    off = all(d[i, j] == 0 for i in range(d.rows) for j in range(d.cols) if i != j)
    chain = all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0 for i in range(k - 1))
    return off and chain and all(x >= 0 for x in diag)


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))


# smith_normal_form


def test_snf_zero():
    a = IntMatrix.zeros(3, 2)
    u, d, v = smith_normal_form(a)
    assert d == a and u == IntMatrix.identity(3) and v == IntMatrix.identity(2)


def test_snf_identity():
    _, d, _ = smith_normal_form(IntMatrix.identity(4))
    assert d == IntMatrix.identity(4)


def test_snf_small_example():
    # gcd of entries is 2, |det| is 8
    _, d, _ = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert d == IntMatrix.diag([2, 4])


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_round_trip(a):
    u, d, v = smith_normal_form(a)
    assert u @ a @ v == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    assert is_snf(d)


@settings(max_examples=300, deadline=None)
@given(matrices(max_size=3, lo=-3, hi=3))
def test_snf_matches_minors(a):
    _, d, _ = smith_normal_form(a)
    assert [d[i, i] for i in range(min(a.rows, a.cols))] == smith_invariants(a.to_rows())


# determinant


def test_det_identity():
    assert determinant(IntMatrix.identity(4)) == 1


def test_det_hyperbolic():
    assert determinant(HYPERBOLIC) == -1


def test_det_base_block():
    assert determinant(BASE_BLOCK) == -1
    assert cofactor_det(BASE_BLOCK.to_rows()) == -1


def test_det_rejects_rectangular():
    with pytest.raises(NotSquareError):
        determinant(IntMatrix.zeros(2, 3))


@settings(max_examples=300, deadline=None)
@given(matrices(max_size=4, square=True))
def test_det_matches_cofactor(a):
    assert determinant(a) == cofactor_det(a.to_rows())


# signature


def test_signature_diag():
    assert signature(IntMatrix.diag([1, -1, -1])) == -1


def test_signature_hyperbolic():
    assert signature(HYPERBOLIC) == 0


def test_signature_base_block():
    assert signature(BASE_BLOCK) == -2
    pos, neg = charpoly_inertia(BASE_BLOCK.to_rows())
    assert pos - neg == -2


def test_signature_errors_are_distinct():
    with pytest.raises(NotSymmetricError):
        signature(IntMatrix.from_rows([[0, 1], [0, 0]]))
    with pytest.raises(DegenerateFormError):
        signature(IntMatrix.from_rows([[1, 1], [1, 1]]))
    assert not issubclass(DegenerateFormError, NotSymmetricError)


def test_signature_degenerate_allowed():
    a = IntMatrix.from_rows([[1, 1, 0], [1, 1, 0], [0, 0, -1]])
    assert signature(a, allow_degenerate=True) == 0
    assert inertia(a) == (1, 1, 1)


def test_zero_diagonal_needs_pre_addition():
    a = IntMatrix.from_rows([[0, 2, 1], [2, 0, 3], [1, 3, 0]])
    assert inertia(a)[:2] == charpoly_inertia(a.to_rows())


@settings(max_examples=200, deadline=None)
@given(symmetric())
def test_inertia_matches_charpoly(a):
    pos, neg, zero = inertia(a)
    assert (pos, neg) == charpoly_inertia(a.to_rows())
    assert pos + neg == rank(a)


@settings(max_examples=200, deadline=None)
@given(symmetric(), symmetric())
def test_signature_laws(a, b):
    sig = lambda m: signature(m, allow_degenerate=True)  # noqa: E731
    assert sig(a) % 2 == rank(a) % 2
    assert sig(-a) == -sig(a)
    assert sig(direct_sum([a, b])) == sig(a) + sig(b)


# parity / unimodularity


def test_parity_examples():
    assert parity(HYPERBOLIC) is Parity.EVEN
    assert parity(BASE_BLOCK) is Parity.ODD
    assert parity(IntMatrix.zeros(1)) is Parity.EVEN
    with pytest.raises(NotSymmetricError):
        parity(IntMatrix.from_rows([[0, 1], [2, 0]]))


def test_unimodular_examples():
    assert is_unimodular(IntMatrix.identity(3))
    assert is_unimodular(Q_P)
    assert cofactor_det(Q_P.to_rows()) == 1
    assert not is_unimodular(IntMatrix.diag([2]))


def test_random_batch_snf():
    """Bulk run: 10^4 seeded matrices through SNF and the minors oracle."""
    rng = random.Random(20261016)
    for _ in range(10_000):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        a = IntMatrix.from_rows(rows)
        u, d, v = smith_normal_form(a)
        assert u @ a @ v == d
        assert [d[i, i] for i in range(min(m, n))] == smith_invariants(rows)
