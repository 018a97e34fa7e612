import math

import pytest
from conftest import charpoly_inertia, cofactor_det

from torsurg.catalog import (
    BASE_BLOCK,
    EXPECTED_FREE_ABELIAN,
    HYPERBOLIC,
    Q_P,
    TORUS_NAMES,
    KSign,
    PrototypeError,
    PrototypeLabel,
    Tail,
    builtin_M,
    builtin_table2,
    compare_with_expected,
    expected_verdict,
    format_kodaira,
    kodaira,
    pipeline_prototype,
    prototype,
    reduced_form,
    reproduce_theorem41,
    star_surface_genus,
    sw_family_value,
    sweep_table,
)
from torsurg.fpgroup import FreeAbelian, Presentation
from torsurg.linalg import direct_sum, inertia, is_unimodular


def test_builtin_model():
    m = builtin_M()
    assert (m.euler_char, m.signature) == (6, -2)
    assert [t.name for t in m.tori] == list(TORUS_NAMES)


def test_expected_lists_sizes():
    assert [len(EXPECTED_FREE_ABELIAN[k]) for k in (3, 4, 5)] == [8, 9, 6]
    assert expected_verdict(()) == 6
    assert expected_verdict(("T3", "T4", "T1'", "T2'")) == 2
    assert expected_verdict(("T1", "T2", "T3", "T1'")) is None


@pytest.mark.parametrize("k,chi,sigma", [(2, 5, -1), (3, 6, -2), (4, 7, -3), (5, 8, -4)])
def test_raw_material_rows(k, chi, sigma):
    row = builtin_table2(k)
    assert (row.chi, row.sigma) == (chi, sigma)


def test_raw_material_range():
    with pytest.raises(ValueError):
        builtin_table2(6)


# labels


def test_label_text():
    assert str(PrototypeLabel(2, 4, Tail.S1xS3)) == "#2 CP^2 #4 CP~2 # (S^1 x S^3)"
    assert str(PrototypeLabel(2, 4, Tail.T2xS2)) == "#2 CP^2 #4 CP~2 # (T^2 x S^2)"


def test_stable_range_gap():
    assert PrototypeLabel(2, 4, Tail.S1xS3).stable_range_gap == 4


def test_reduced_form_rank_one_is_full_form():
    m = pipeline_prototype(["T1", "T3", "T4", "T1'", "T2'"], -1).model
    assert reduced_form(m, 1) == m.form() == direct_sum([BASE_BLOCK, HYPERBOLIC])


def test_reduced_form_rank_two_truncates_to_chi():
    m = pipeline_prototype(["T3", "T4", "T1'", "T2'"], -1).model
    q = reduced_form(m, 2)
    assert q.rows == 6 and q == Q_P


def test_prototype_refuses_wrong_group():
    m = builtin_M()
    with pytest.raises(PrototypeError):
        prototype(m, FreeAbelian(6, Presentation(("x",))))


# pipelines


def test_five_surgery_pipeline():
    r = pipeline_prototype(["T1", "T3", "T4", "T1'", "T2'"], 3, p_torus="T4")
    assert (r.label.n_pos, r.label.n_neg, r.label.tail) == (2, 4, Tail.S1xS3)
    assert str(r.pi2) == "Z[Z]^6"
    assert r.extended and r.unimodular
    assert (r.b2_plus, r.b2_minus) == charpoly_inertia(r.form.to_rows())


def test_four_surgery_pipeline():
    r = pipeline_prototype(["T3", "T4", "T1'", "T2'"], -1)
    assert (r.label.n_pos, r.label.n_neg, r.label.tail) == (2, 4, Tail.T2xS2)
    assert str(r.pi2) == "Z + Z[Z^2]^6"
    assert r.label.stable_range_gap == 4


def test_q_p_unimodular():
    assert is_unimodular(Q_P) and cofactor_det(Q_P.to_rows()) == 1
    assert inertia(Q_P)[:2] == charpoly_inertia(Q_P.to_rows()) == (2, 4)


def test_pipeline_rejects_non_abelian_collection():
    with pytest.raises(PrototypeError, match="non_abelian"):
        pipeline_prototype(["T1", "T2", "T3", "T1'"], -1)


def test_pipeline_rejects_bad_size():
    with pytest.raises(PrototypeError):
        pipeline_prototype(["T1", "T2"], -1)


# family invariants


def test_sw_values():
    assert sw_family_value(1) == 1 and sw_family_value(7) == 7
    values = [sw_family_value(p) for p in range(1, 101)]
    assert len(set(values)) == 100
    with pytest.raises(ValueError):
        sw_family_value(0)


@pytest.mark.parametrize(
    "chi,sigma,sign,want",
    [(6, -2, KSign.POSITIVE, 2), (0, 0, KSign.ZERO, 0), (0, 0, KSign.POSITIVE, 1), (2, -4, KSign.POSITIVE, -math.inf)],
)
def test_kodaira(chi, sigma, sign, want):
    assert kodaira(chi, sigma, sign) == want


def test_kodaira_inconsistent_sign():
    with pytest.raises(ValueError):
        kodaira(6, -2, KSign.ZERO)
    assert format_kodaira(-math.inf) == "-inf"


@pytest.mark.parametrize("p,g,want", [(1, 1, 2), (0, 5, 0), (3, 2, 12)])
def test_star_genus(p, g, want):
    assert star_surface_genus(p, g) == want


# sweeps


def test_small_sweep_table():
    recs = reproduce_theorem41(p_values=[-1], sizes=[0, 5])
    assert len(recs) == 7
    text = sweep_table(recs)
    assert text.count("Z^1") == 6 and "Z^6" in text
    assert compare_with_expected(recs).ok


def test_sweep_rejects_empty_p():
    with pytest.raises(ValueError):
        reproduce_theorem41(p_values=[])
