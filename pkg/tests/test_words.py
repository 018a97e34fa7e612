import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsurg.fpgroup import (
    IDENTITY,
    Word,
    WordParseError,
    commutator,
    free_reduce,
    parse_word,
)

letters = st.lists(st.tuples(st.sampled_from(["x", "y", "z"]), st.sampled_from([1, -1])), max_size=20)


def w(text):
    return parse_word(text)


def test_free_reduce_cancels():
    assert free_reduce([("x", 1), ("x", -1)]) == IDENTITY


def test_free_reduce_inner_pair():
    assert free_reduce([("x", 1), ("y", 1), ("y", -1), ("x", 1)]) == w("x^2")


def test_commutator_already_reduced():
    c = w("[x,y]")
    assert len(c) == 4 and free_reduce(c.letters) == c


def test_commutator_with_identity():
    assert commutator(Word.gen("x"), IDENTITY) == IDENTITY


def test_commutator_definition():
    assert commutator(Word.gen("x"), Word.gen("y")) == w("x*y*x^-1*y^-1")


def test_commutator_t1_meridian():
    # meridian of T1
    got = commutator(Word.gen("b1", -1), Word.gen("y", -1))
    assert got == w("b1^-1*y^-1*b1*y")


def test_free_reduce_rejects_unknown_generator():
    with pytest.raises(ValueError):
        free_reduce([("q", 1)], alphabet=["x"])


@given(letters)
def test_free_reduce_idempotent(ls):
    once = free_reduce(ls)
    assert free_reduce(once.letters) == once
    assert all(a[0] != b[0] or a[1] == b[1] for a, b in zip(once.letters, once.letters[1:]))


@given(letters)
def test_inverse_cancels(ls):
    u = free_reduce(ls)
    assert u * u.inverse() == IDENTITY


@given(letters)
def test_format_parse_round_trip(ls):
    u = free_reduce(ls)
    assert parse_word(str(u)) == u


# parser


def test_parse_meridian_text():
    assert w("[b1^-1, y^-1]") == commutator(Word.gen("b1", -1), Word.gen("y", -1))


def test_parse_cancelling_product():
    assert w("x*x^-1") == IDENTITY


def test_parse_empty_is_identity():
    assert parse_word("") == IDENTITY


def test_parse_one_and_powers():
    assert w("1") == IDENTITY
    assert w("(x*y)^2") == w("x*y*x*y")
    assert w("x^0") == IDENTITY
    assert w("(x*y)^-1") == w("y^-1*x^-1")


def test_parse_primed_names():
    assert w("[a2^-1,a1^-1]").generators() == {"a1", "a2"}


@pytest.mark.parametrize(
    "text,column",
    [("[x,", 4), ("x*", 3), ("x^", 3), ("x)", 2), ("x^-", 3), ("x+y", 2)],
)
def test_parse_error_column(text, column):
    with pytest.raises(WordParseError) as err:
        parse_word(text)
    assert err.value.column == column
