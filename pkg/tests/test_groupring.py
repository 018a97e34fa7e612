import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torsurg.catalog import BASE_BLOCK, Q_P, builtin_M
from torsurg.groupring import (
    HermitianForm,
    LaurentPoly,
    NotHermitianError,
    RankMismatchError,
    assemble_equivariant,
    extend_from_integers,
    identity_matrix,
    involute,
    is_extended,
    pi2_structure,
    verify_isometry,
)
from torsurg.linalg import HYPERBOLIC, IntMatrix

T, S = sympy.symbols("t s")


def poly(n):
    term = st.tuples(st.tuples(*[st.integers(-4, 4)] * n), st.integers(-5, 5))
    return st.lists(term, max_size=5).map(lambda ts: LaurentPoly(n, tuple(ts)))


def to_sympy(f):
    return sum((c * T ** e[0] * (S ** e[1] if len(e) > 1 else 1) for e, c in f.terms), sympy.Integer(0))


def t1(k=1, c=1):
    return LaurentPoly.monomial(1, k, c)


# polynomials


def test_involute_constant():
    assert involute(LaurentPoly.constant(1, 3)) == 3


def test_involute_example():
    f = t1() + t1(2, 2)
    assert involute(f) == t1(-1) + t1(-2, 2)
    assert str(involute(f)) == "2*t^-2 + t^-1"


def test_negative_power_needs_unit():
    assert t1() ** -2 == t1(-2)
    with pytest.raises(ValueError):
        (t1() + 1) ** -1


def test_rings_do_not_mix():
    with pytest.raises(RankMismatchError):
        t1() + LaurentPoly.var(2, 1)


@settings(max_examples=200, deadline=None)
@given(poly(1), poly(1), poly(1))
def test_ring_laws_rank_one(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert involute(involute(f)) == f
    assert involute(f * g) == involute(f) * involute(g)
    assert (f * g).augment() == f.augment() * g.augment()


@settings(max_examples=200, deadline=None)
@given(poly(2), poly(2))
def test_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


def test_random_batch_ring_laws():
    """Bulk run: 10^3 seeded polynomial triples in Z[Z^2]."""
    rng = random.Random(7)

    def rand():
        return LaurentPoly(2, tuple(((rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-4, 4)) for _ in range(rng.randint(0, 4))))

    for _ in range(1000):
        f, g, h = rand(), rand(), rand()
        assert f * (g + h) == f * g + f * h
        assert involute(involute(f)) == f
        assert involute(f * g) == involute(g) * involute(f)
        assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


# forms


def test_extend_hyperbolic():
    f = extend_from_integers(HYPERBOLIC, 1)
    assert is_extended(f) == HYPERBOLIC and f.augment() == HYPERBOLIC


def test_extend_q_p_over_z2():
    f = extend_from_integers(Q_P, 2)
    assert f.n == 2 and is_extended(f) == Q_P


def test_extend_zero():
    f = extend_from_integers(IntMatrix.zeros(1), 1)
    assert f[0, 0] == 0 and is_extended(f) == IntMatrix.zeros(1)


def test_assemble_identity_translate_only():
    assert assemble_equivariant({0: BASE_BLOCK}) == extend_from_integers(BASE_BLOCK, 1)


def test_assemble_symmetric_translates():
    f = assemble_equivariant({1: IntMatrix.from_rows([[1]]), -1: IntMatrix.from_rows([[1]])})
    assert f[0, 0] == t1() + t1(-1)
    assert is_extended(f) is None


def test_assemble_one_sided_is_not_hermitian():
    with pytest.raises(NotHermitianError):
        assemble_equivariant({1: IntMatrix.from_rows([[1]])})


def test_assemble_agrees_with_extend_on_catalog_blocks():
    for b in builtin_M().block_form:
        for n in (1, 2):
            assert assemble_equivariant({(0,) * n: b.matrix}) == extend_from_integers(b.matrix, n)
    for n in (1, 2):
        assert assemble_equivariant({(0,) * n: Q_P}) == extend_from_integers(Q_P, n)


def test_isometry_identity():
    f = extend_from_integers(Q_P, 2)
    assert verify_isometry(identity_matrix(6, 2), f, f)


def test_isometry_by_translation():
    f = HermitianForm(1, ((LaurentPoly.constant(1, 5),),))
    assert verify_isometry(((t1(),),), f, f)


def test_isometry_rejects_non_unit_determinant():
    f = HermitianForm(1, ((LaurentPoly.constant(1, 1),),))
    assert not verify_isometry(((LaurentPoly.constant(1, 2),),), f, f)


# pi_2


def test_pi2_cyclic():
    d = pi2_structure(1, 6, 6)
    assert str(d) == "Z[Z]^6" and d.reduced_rank == 6


def test_pi2_rank_two():
    d = pi2_structure(2, 8, 6)
    assert str(d) == "Z + Z[Z^2]^6" and d.reduced_rank == 6


def test_pi2_zero():
    assert str(pi2_structure(1, 0, 0)) == "0"


def test_pi2_checks_euler_characteristic():
    with pytest.raises(ValueError):
        pi2_structure(1, 6, 4)
