import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from mccodes.core import (
    BinaryString,
    Composition,
    RdsProfile,
    complement,
    composition_of,
    is_dyck,
    rds_profile,
    weight,
)
from mccodes.errors import ValidationError

B = BinaryString.parse
bitstrings = st.lists(st.integers(0, 1), min_size=1, max_size=64).map(BinaryString.of)


@pytest.mark.parametrize("text,expected", [("0000", 0), ("01101", 3), ("1", 1), ("1" * 37, 37)])
def test_weight(text, expected):
    assert weight(B(text)) == expected


def test_rds_profile_examples():
    assert rds_profile(B("1100")).values == (1, 2, 1, 0)
    assert rds_profile(B("0")).values == (-1,)
    # oracle: 2 * (ones in prefix) - i, prefix by prefix
    s = "01101"
    expected = tuple(2 * s[:i].count("1") - i for i in range(1, 6))
    assert expected == (-1, 0, 1, 0, 1)
    assert rds_profile(B(s)).values == expected


def test_rds_profile_empty():
    with pytest.raises(ValidationError, match="empty input"):
        rds_profile(B(""))


def test_rds_profile_rejects_bad_steps():
    with pytest.raises(ValidationError):
        RdsProfile((1, 3))


@given(bitstrings)
def test_rds_last_value_and_parity(s):
    prof = rds_profile(s)
    assert prof.final == 2 * weight(s) - len(s)
    assert all(v % 2 == i % 2 for i, v in enumerate(prof.values, start=1))


def test_is_dyck_examples():
    assert is_dyck(B("1100"))
    assert not is_dyck(B("1010"))
    assert is_dyck(B("110100"))
    assert min(rds_profile(B("110100")).values[:-1]) > 0
    assert not is_dyck(B("110"))
    assert not is_dyck(B(""))


def _dyck_by_rds(s):
    prof = rds_profile(s)
    return len(s) % 2 == 0 and prof.final == 0 and all(v > 0 for v in prof.values[:-1])


def test_dyck_weight_form_matches_rds_form_exhaustively():
    for n in range(1, 17):
        for bits in product((0, 1), repeat=n):
            s = BinaryString(bits)
            assert is_dyck(s) == _dyck_by_rds(s), str(s)


def test_composition_of():
    assert composition_of(B("001")) == Composition(2, 1)
    assert str(composition_of(B("001"))) == "0^21^1"
    assert composition_of(B("1")) == Composition(0, 1)
    assert composition_of(B("01101")) == Composition(2, 3)
    with pytest.raises(ValidationError):
        composition_of(B(""))


def test_composition_order_invariant():
    rng = random.Random(7)
    for _ in range(200):
        bits = [rng.randint(0, 1) for _ in range(rng.randint(1, 40))]
        shuffled = bits[:]
        rng.shuffle(shuffled)
        assert composition_of(BinaryString.of(bits)) == composition_of(BinaryString.of(shuffled))


@pytest.mark.parametrize(
    "comp,text",
    [((2, 1), "0^21^1"), ((0, 1), "1^1"), ((3, 0), "0^3"), ((21, 1), "0^211^1"), ((1, 11), "0^11^11")],
)
def test_composition_text_round_trip(comp, text):
    c = Composition(*comp)
    assert str(c) == text
    assert Composition.parse(text) == c


def test_composition_rejects_empty():
    with pytest.raises(ValidationError):
        Composition(0, 0)
    with pytest.raises(ValidationError):
        Composition.parse("")


def test_complement():
    assert complement(B("0000")) == B("1111")
    assert complement(B("01101")) == B("10010")


@given(bitstrings)
def test_complement_involution(s):
    assert complement(complement(s)) == s
    assert len(complement(s)) == len(s)


def test_binary_string_value_semantics():
    assert B("0110") == BinaryString.of([0, 1, 1, 0])
    assert B("0110") != B("01100")
    assert str(B("01101")) == "01101"
    assert BinaryString.from_int(5, 4) == B("0101")
    assert B("0101").to_int() == 5
    with pytest.raises(ValidationError):
        B("012")
