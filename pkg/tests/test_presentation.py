import pytest
from conftest import smith_invariants
from hypothesis import given, settings
from hypothesis import strategies as st

from torsurg.catalog import builtin_M
from torsurg.fpgroup import (
    Presentation,
    Word,
    abelianization,
    certify_free_abelian,
    simplify,
    simplify_with_images,
)
from torsurg.fpgroup.presentation import exponent_sum_matrix, free_abelian_presentation
from torsurg.surgery import SurgerySpec, closed_pi1


def pres(gens, rels):
    return Presentation.parse(gens.split(), rels)


def surgered(*names, p=-1):
    return closed_pi1(builtin_M(), SurgerySpec.uniform(names, p))


def test_rejects_undeclared_generator():
    with pytest.raises(ValueError):
        pres("x", ["y"])


def test_rejects_duplicate_generator():
    with pytest.raises(ValueError):
        Presentation(("x", "x"))


# simplify


def test_direct_elimination():
    q = simplify(pres("x y", ["x*y^-1"]))
    assert len(q.generators) == 1 and q.relators == ()


def test_eliminates_in_declaration_order():
    assert simplify(pres("x y", ["x*y^-1"])).generators == ("y",)


def test_fixpoint_on_free_cyclic():
    p = pres("x", [])
    assert simplify(p) == p


def test_four_surgery_group():
    q = simplify(surgered("T3", "T4", "T1'", "T2'"))
    assert set(q.generators) == {"x", "a1"}
    assert q.same_relators(pres("x a1", ["[x,a1]"]))


def test_images_express_originals():
    p = surgered("T1", "T2", "T3", "T4", "T1'")
    res = simplify_with_images(p)
    assert set(res.images) == set(p.generators)
    for w in res.images.values():
        assert w.generators() <= set(res.presentation.generators)
    assert not res.budget_exhausted


def test_pass_budget_is_reported():
    p = surgered("T3", "T4", "T1'", "T2'")
    res = simplify_with_images(p, max_passes=1)
    assert res.passes <= 1 and res.budget_exhausted


def test_relators_kept_when_stuck():
    # one-relator group with no free letter to eliminate
    p = pres("a b", ["a*b*a^-1*b^-2"])
    assert simplify(p).generators == ("a", "b")


# abelianization


def test_abelianization_of_M():
    assert abelianization(closed_pi1(builtin_M(), SurgerySpec.of({}))) == (6, [])


def test_abelianization_nonabelian_case():
    p = surgered("T1", "T2", "T3", "T1'")
    assert abelianization(p) == (2, [])
    rows = exponent_sum_matrix(p).to_rows()
    # commutator relators contribute zero rows
    nonzero = [r for r in rows if any(r)]
    assert len([v for v in smith_invariants(nonzero) if v]) == 4


def test_abelianization_torsion():
    assert abelianization(pres("x", ["x^2"])) == (0, [2])


words = st.lists(st.tuples(st.sampled_from("xyz"), st.integers(-3, 3)), max_size=6)


@settings(max_examples=200, deadline=None)
@given(st.lists(words, max_size=4))
def test_simplify_preserves_abelianization(rels):
    p = Presentation(
        ("x", "y", "z"),
        tuple(Word([(g, 1 if e > 0 else -1) for g, e in r for _ in range(abs(e))]) for r in rels),
    )
    assert abelianization(simplify(p)) == abelianization(p)


# certify_free_abelian


def test_certify_rank_two():
    assert certify_free_abelian(pres("x a1", ["[x,a1]"])) == 2


def test_certify_cyclic():
    assert certify_free_abelian(pres("x", [])) == 1


def test_certify_refuses_free_group():
    assert certify_free_abelian(pres("x y", [])) is None


def test_certify_refuses_torsion():
    assert certify_free_abelian(pres("x", ["x^2"])) is None


def test_certify_M():
    assert certify_free_abelian(closed_pi1(builtin_M(), SurgerySpec.of({}))) == 6


def test_free_abelian_presentation_is_complete():
    p = free_abelian_presentation(["a", "b", "c"])
    assert len(p.relators) == 3 and certify_free_abelian(p) == 3
