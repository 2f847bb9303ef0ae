"""Bit strings, compositions and running digital sums.

Bit order: index 0 of ``BinaryString.bits`` is the leftmost (first
synthesized) symbol. Every prefix operation reads from the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Sequence

from .errors import ValidationError

__all__ = [
    "BinaryString",
    "Composition",
    "RdsProfile",
    "weight",
    "rds_profile",
    "is_dyck",
    "composition_of",
    "complement",
]


@dataclass(frozen=True)
class BinaryString:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.bits, tuple):
            object.__setattr__(self, "bits", tuple(self.bits))
        for b in self.bits:
            if b not in (0, 1):
                raise ValidationError(f"not a bit: {b!r}")

    @classmethod
    def parse(cls, text: str) -> "BinaryString":
        text = text.strip()
        if text and not set(text) <= {"0", "1"}:
            raise ValidationError(f"not a bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def of(cls, bits: Iterable[int]) -> "BinaryString":
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def from_int(cls, value: int, length: int) -> "BinaryString":
        """MSB-first rendering of ``value`` on ``length`` bits."""
        return cls(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    def to_int(self) -> int:
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    @property
    def length(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return BinaryString(self.bits[key])
        return self.bits[key]

    def concat(self, *others: "BinaryString") -> "BinaryString":
        bits = self.bits
        for o in others:
            bits = bits + o.bits
        return BinaryString(bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"BinaryString('{self}')"

    def __lt__(self, other: "BinaryString") -> bool:
        return (len(self), self.bits) < (len(other), other.bits)


_COMP_RE = re.compile(r"^(?:0\^(\d+))?(?:1\^(\d+))?$")


@dataclass(frozen=True)
class Composition:
    """Unordered content of a non-empty substring."""

    zeros: int
    ones: int

    def __post_init__(self):
        if self.zeros < 0 or self.ones < 0:
            raise ValidationError("negative composition count")
        if self.zeros + self.ones < 1:
            raise ValidationError("composition of an empty substring")

    @property
    def length(self) -> int:
        return self.zeros + self.ones

    def sort_key(self) -> tuple[int, int]:
        return (self.zeros + self.ones, self.ones)

    def __lt__(self, other: "Composition") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        parts = []
        if self.zeros:
            parts.append(f"0^{self.zeros}")
        if self.ones:
            parts.append(f"1^{self.ones}")
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        m = _COMP_RE.match(text.strip())
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValidationError(f"not a composition: {text!r}")
        return cls(int(m.group(1) or 0), int(m.group(2) or 0))


@dataclass(frozen=True)
class RdsProfile:
    values: tuple[int, ...]

    def __post_init__(self):
        prev = 0
        for i, v in enumerate(self.values, start=1):
            if abs(v - prev) != 1:
                raise ValidationError(f"RDS step at {i} is not +-1")
            prev = v

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def final(self) -> int:
        return self.values[-1]


def weight(s: BinaryString | Sequence[int]) -> int:
    return sum(s.bits if isinstance(s, BinaryString) else s)


def rds_profile(s: BinaryString) -> RdsProfile:
    """R(s)_i = 2*wt(s_1..s_i) - i for i = 1..|s|."""
    if len(s) == 0:
        raise ValidationError("empty input")
    return RdsProfile(tuple(accumulate(2 * b - 1 for b in s.bits)))


def rds(s: BinaryString | Sequence[int]) -> int:
    """RDS of the whole string, 2*wt(s) - |s|."""
    bits = s.bits if isinstance(s, BinaryString) else s
    return 2 * sum(bits) - len(bits)


def is_dyck(s: BinaryString) -> bool:
    """Even length, balanced, and every proper prefix has wt >= floor(i/2) + 1."""
    n = len(s)
    if n == 0 or n % 2:
        return False
    if weight(s) != n // 2:
        return False
    w = 0
    for i, b in enumerate(s.bits[:-1], start=1):
        w += b
        if w < i // 2 + 1:
            return False
    return True


def composition_of(s: BinaryString) -> Composition:
    if len(s) == 0:
        raise ValidationError("empty input")
    ones = weight(s)
    return Composition(len(s) - ones, ones)


def complement(s: BinaryString) -> BinaryString:
    return BinaryString(tuple(1 - b for b in s.bits))
