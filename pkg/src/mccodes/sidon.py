"""Binary B_h sets from BCH parity-check columns, and brute-force verification.

Column i (0 <= i <= 2^m - 2) is the concatenation of the m-bit, MSB-first
representations of alpha^i, alpha^(3i), ..., alpha^((2h-1)i). Any 2h such
columns are linearly independent, so all XOR sums (and therefore all
integer sums) of at most h distinct columns are distinct.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .core import BinaryString
from .errors import GuardError, ValidationError
from .gf2m import PRIMITIVE_POLYS, field

BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class SidonSet:
    h: int
    n: int
    strings: tuple[BinaryString, ...]
    m: Optional[int] = None
    primitive_poly: Optional[int] = None
    base_n: Optional[int] = dc_field(default=None)

    def __post_init__(self):
        if self.h < 1:
            raise ValidationError("h must be >= 1")
        if any(len(s) != self.n for s in self.strings):
            raise ValidationError(f"all strings must have length {self.n}")
        if len(set(self.strings)) != len(self.strings):
            raise ValidationError("B_h strings must be distinct")
        if self.base_n is None:
            object.__setattr__(self, "base_n", self.n)

    def __len__(self) -> int:
        return len(self.strings)

    def rate(self) -> float:
        return math.log2(len(self.strings)) / self.n

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "m": self.m,
            "primitive_poly": format(self.primitive_poly, "b") if self.primitive_poly else None,
            "n": self.base_n,
            "strings": [str(s[: self.base_n]) for s in self.strings],
        }


def build_bh_codebook(m: int, h: int) -> SidonSet:
    if h < 2:
        raise ValidationError("h must be >= 2")
    if m not in PRIMITIVE_POLYS:
        raise ValidationError(f"unsupported field degree m={m}")
    gf = field(m)
    strings = []
    for i in range(gf.order):
        value = 0
        for k in range(1, 2 * h, 2):
            value = (value << m) | gf.alpha_pow(k * i)
        strings.append(BinaryString.from_int(value, h * m))
    return SidonSet(h=h, n=h * m, strings=tuple(strings), m=m, primitive_poly=gf.poly)


def padded_length(n: int) -> int:
    """Smallest perfect square >= n whose square root is even."""
    root = math.isqrt(max(n, 1))
    if root * root < n:
        root += 1
    if root % 2:
        root += 1
    return root * root


def pad_to_square(codebook: SidonSet) -> SidonSet:
    target = padded_length(codebook.n)
    if target == codebook.n:
        return codebook
    pad = BinaryString((0,) * (target - codebook.n))
    return SidonSet(
        h=codebook.h,
        n=target,
        strings=tuple(s.concat(pad) for s in codebook.strings),
        m=codebook.m,
        primitive_poly=codebook.primitive_poly,
        base_n=codebook.base_n,
    )


@dataclass(frozen=True)
class BhWitness:
    """Two distinct subsets with equal sums."""

    subset_a: tuple[BinaryString, ...]
    subset_b: tuple[BinaryString, ...]


def subset_count(size: int, h: int) -> int:
    return sum(math.comb(size, k) for k in range(1, h + 1))


def _check_guard(size: int, h: int, limit: int) -> None:
    total = subset_count(size, h)
    if total > limit:
        raise GuardError("instance too large for brute force", limit, total)


def _find_collision(keys: Sequence[int], h: int, combine, strings, limit: int) -> Optional[BhWitness]:
    _check_guard(len(keys), h, limit)
    seen: dict[int, tuple[int, ...]] = {}
    for k in range(1, h + 1):
        for idx in combinations(range(len(keys)), k):
            acc = 0
            for i in idx:
                acc = combine(acc, keys[i])
            other = seen.get(acc)
            if other is not None:
                return BhWitness(tuple(strings[i] for i in other), tuple(strings[i] for i in idx))
            seen[acc] = idx
    return None


def verify_bh(strings: Iterable[BinaryString], h: int, limit: int = BRUTE_FORCE_LIMIT) -> Optional[BhWitness]:
    """None if all integer subset sums (sizes 1..h) are distinct, else a colliding pair.

    Each string is read as a base-(h+1) numeral whose digits are its bits, so
    adding at most h of them never carries and the integer sum identifies the
    coordinate-wise sum vector exactly.
    """
    ordered = sorted(set(strings), key=str)
    if len({len(s) for s in ordered}) > 1:
        raise ValidationError("strings must share one length")
    base = h + 1
    keys = [int(str(s), base) if len(s) else 0 for s in ordered]
    return _find_collision(keys, h, lambda a, b: a + b, ordered, limit)


def verify_bh_xor(strings: Iterable[BinaryString], h: int, limit: int = BRUTE_FORCE_LIMIT) -> Optional[BhWitness]:
    """As ``verify_bh`` but with sums taken over F_2."""
    ordered = sorted(set(strings), key=str)
    keys = [s.to_int() for s in ordered]
    return _find_collision(keys, h, lambda a, b: a ^ b, ordered, limit)


def sidon_from_dict(data: dict) -> SidonSet:
    strings = tuple(BinaryString.parse(s) for s in data["strings"])
    poly = data.get("primitive_poly")
    return SidonSet(
        h=int(data["h"]),
        n=int(data["n"]),
        strings=strings,
        m=data.get("m"),
        primitive_poly=int(poly, 2) if poly else None,
    )
