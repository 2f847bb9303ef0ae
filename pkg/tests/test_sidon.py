import math
from itertools import combinations

import pytest

from mccodes.core import BinaryString
from mccodes.errors import GuardError, ValidationError
from mccodes.gf2m import PRIMITIVE_POLYS, GF2m, berlekamp_massey, chien_search, field
from mccodes.prng import SplitMix64, shuffle
from mccodes.sidon import (
    SidonSet,
    build_bh_codebook,
    pad_to_square,
    padded_length,
    verify_bh,
    verify_bh_xor,
)

B = BinaryString.parse


def slow_mul(a, b, poly, m):
    """Carry-less multiply then reduce; independent of the log tables."""
    acc = 0
    for i in range(m):
        if (b >> i) & 1:
            acc ^= a << i
    for bit in range(2 * m - 2, m - 1, -1):
        if (acc >> bit) & 1:
            acc ^= poly << (bit - m)
    return acc


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLYS))
def test_table_polys_are_primitive(m):
    gf = field(m)
    assert len(set(gf.exp[: gf.order])) == gf.order
    assert 0 not in gf.exp[: gf.order]


@pytest.mark.parametrize("m", range(2, 7))
def test_field_axioms_exhaustive(m):
    gf = GF2m(m)
    elems = range(1 << m)
    for a in elems:
        for b in elems:
            assert gf.mul(a, b) == slow_mul(a, b, gf.poly, m)
            assert gf.mul(a, b) == gf.mul(b, a)
        if a:
            assert gf.mul(a, gf.inv(a)) == 1
    for a in range(1, 1 << m, 3):
        for b in range(0, 1 << m, 5):
            for c in range(0, 1 << m, 7):
                assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
                assert gf.mul(a, b ^ c) == gf.mul(a, b) ^ gf.mul(a, c)


@pytest.mark.parametrize("m", [7, 8])
def test_field_mul_matches_slow_mul(m):
    # agreement with reduction modulo the primitive polynomial on every pair
    # carries associativity and distributivity over from the polynomial ring
    gf = GF2m(m)
    for a in range(1 << m):
        for b in range(1 << m):
            assert gf.mul(a, b) == slow_mul(a, b, gf.poly, m)
        if a:
            assert gf.mul(a, gf.inv(a)) == 1


def test_unsupported_degree():
    with pytest.raises(ValidationError, match="unsupported field degree"):
        build_bh_codebook(17, 2)
    with pytest.raises(ValidationError):
        build_bh_codebook(1, 2)


def test_bm_and_chien_locate_errors():
    gf = field(6)
    for locs in [(0,), (3, 17), (1, 2, 40)]:
        synd = [0] * 6
        for j in range(1, 7):
            for i in locs:
                synd[j - 1] ^= gf.alpha_pow(j * i)
        loc = berlekamp_massey(gf, synd)
        assert len(loc) - 1 == len(locs)
        assert chien_search(gf, loc) == sorted(locs)


def test_build_m3_h2():
    book = build_bh_codebook(3, 2)
    assert len(book) == 7 and book.n == 6
    assert verify_bh(book.strings, 2) is None
    gf = field(3)
    assert book.strings[0] == B("001001")
    assert book.strings[1] == BinaryString.from_int((gf.alpha_pow(1) << 3) | gf.alpha_pow(3), 6)


def test_build_sizes_and_rate():
    book = build_bh_codebook(4, 2)
    assert (len(book), book.n) == (15, 8)
    assert book.rate() == math.log2(15) / 8 == pytest.approx(0.48836, abs=1e-5)
    book = build_bh_codebook(5, 3)
    assert (len(book), book.n) == (31, 15)
    rates = [build_bh_codebook(m, 2).rate() for m in range(4, 11)]
    assert all(a < b for a, b in zip(rates, rates[1:]))
    assert all(r < 0.5 for r in rates)


def test_verify_bh_zero_string_collision_set():
    strings = [B("011"), B("000"), B("001"), B("010")]
    witness = verify_bh(strings, 2)
    assert witness is not None
    assert set(witness.subset_a) != set(witness.subset_b)
    total = lambda subset: tuple(map(sum, zip(*subset)))
    assert total(witness.subset_a) == total(witness.subset_b)
    # the displayed pair is itself a collision
    assert total([B("011"), B("000")]) == total([B("001"), B("010")])


def test_verify_bh_size_mismatch_witness():
    witness = verify_bh([B("001"), B("010"), B("011")], 2)
    assert {frozenset(witness.subset_a), frozenset(witness.subset_b)} == {
        frozenset({B("011")}),
        frozenset({B("001"), B("010")}),
    }


def test_verify_bh_agrees_with_vector_brute_force():
    rng = SplitMix64(5)
    for trial in range(40):
        n = 5
        pool = list({BinaryString.from_int(rng.next() % 32, n) for _ in range(7)})
        expected_ok = True
        sums = {}
        for k in (1, 2):
            for sub in combinations(sorted(pool, key=str), k):
                key = tuple(map(sum, zip(*sub)))
                if key in sums:
                    expected_ok = False
                sums[key] = sub
        assert (verify_bh(pool, 2) is None) == expected_ok


@pytest.mark.parametrize("m,h", [(m, h) for m in range(2, 6) for h in (2, 3)])
def test_built_codebooks_are_bh_over_integers_and_f2(m, h):
    book = build_bh_codebook(m, h)
    assert verify_bh(book.strings, h) is None
    assert verify_bh_xor(book.strings, h) is None


def test_verify_guard():
    book = build_bh_codebook(8, 2)
    with pytest.raises(GuardError, match="instance too large"):
        verify_bh(book.strings, 2, limit=1000)


@pytest.mark.parametrize("n,target", [(6, 16), (16, 16), (20, 36), (1, 4), (4, 4), (15, 16), (37, 64)])
def test_padded_length(n, target):
    assert padded_length(n) == target


def test_pad_to_square_preserves_bh():
    for m, h in [(3, 2), (4, 2), (5, 3)]:
        book = build_bh_codebook(m, h)
        padded = pad_to_square(book)
        assert padded.n == padded_length(book.n)
        assert all(str(p).startswith(str(s)) and set(str(p)[book.n:]) <= {"0"}
                   for s, p in zip(book.strings, padded.strings))
        assert (verify_bh(padded.strings, h) is None) == (verify_bh(book.strings, h) is None)
    bad = SidonSet(2, 3, (B("011"), B("000"), B("001"), B("010")))
    assert verify_bh(pad_to_square(bad).strings, 2) is not None


def test_sidon_set_rejects_duplicates():
    with pytest.raises(ValidationError):
        SidonSet(2, 2, (B("01"), B("01")))


def test_shuffle_is_a_deterministic_permutation():
    items = list(range(50))
    a, b = items[:], items[:]
    shuffle(a, 9)
    shuffle(b, 9)
    assert a == b and sorted(a) == items and a != items


def test_splitmix64_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]
