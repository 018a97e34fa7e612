import pytest

from torsurg.fpgroup import (
    EnumerationBudgetExceeded,
    Presentation,
    dihedral_group_8,
    enumerate_homs,
    find_nonabelian_witness,
    full_catalog,
    quaternion_group,
    symmetric_group,
    trivial_group,
)

Q8 = quaternion_group()


def pres(gens, rels):
    return Presentation.parse(gens.split(), rels)


def test_q8_table():
    i, j, k = (Q8.index(n) for n in "ijk")
    assert Q8.mul(i, j) == k
    assert Q8.mul(i, i) == Q8.index("-1")
    assert Q8.order == 8 and Q8.non_abelian


def test_catalog_orders():
    assert full_catalog()[0].name == "Q8"
    assert all(g.non_abelian for g in full_catalog())
    assert symmetric_group(3).order == 6 and dihedral_group_8().order == 8


def test_two_generator_q8_quotient():
    p = pres("y b2", ["[y,b2]*[b2,y^-1]^-1", "[y,b2]*[b2^-1,y]^-1"])
    maps = [h.as_names() for h in enumerate_homs(p, Q8)]
    assert {"y": "i", "b2": "j"} in maps
    assert all(h.kills_relators() for h in enumerate_homs(p, Q8))


def test_trivial_target_has_one_hom():
    p = pres("x y", ["x*y*x"])
    assert len(enumerate_homs(p, trivial_group())) == 1


def test_order_two_relator_into_q8():
    # x^2 = 1 leaves only the elements of order at most two
    got = {h.as_names()["x"] for h in enumerate_homs(pres("x", ["x^2"]), Q8)}
    assert got == {"1", "-1"}


def test_enumeration_is_lexicographic():
    images = [h.images for h in enumerate_homs(pres("x y", []), Q8)]
    assert images == sorted(images) and len(images) == 64


def test_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_homs(pres("a b c d e f g h", []), Q8)
    assert len(enumerate_homs(pres("x", []), Q8, budget=8)) == 8


def test_witness_for_free_group():
    h = find_nonabelian_witness(pres("x y", []), [Q8])
    assert h.as_names() == {"x": "i", "y": "j"}


def test_no_witness_for_abelian_group():
    assert find_nonabelian_witness(pres("x y", ["[x,y]"]), full_catalog()) is None


def test_witness_pulled_back_to_original_generators():
    p = pres("x y z", ["z*x^-1*y^-1"])
    h = find_nonabelian_witness(p, [Q8])
    assert h.source == p and h.kills_relators() and h.image_is_nonabelian()
