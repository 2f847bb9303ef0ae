"""Prefix/suffix composition multisets and mixtures of readouts."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from . import prng
from .core import BinaryString, Composition
from .errors import ValidationError

SCHEMA_VERSION = 1


class CompositionMultiset:
    """Multiset of compositions; iteration is always in canonical order
    (ascending length, then ascending number of ones)."""

    __slots__ = ("_counts",)

    def __init__(self, items: Iterable[Composition] | Mapping[Composition, int] = ()):
        if isinstance(items, Mapping):
            counts = Counter()
            for comp, k in items.items():
                if k < 0:
                    raise ValidationError("negative multiplicity")
                if k:
                    counts[comp] += k
        else:
            counts = Counter(items)
        self._counts = counts

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, int]]) -> "CompositionMultiset":
        """Build from (length, ones, count) triples."""
        counts: Counter = Counter()
        for length, ones, count in triples:
            if not 0 <= ones <= length:
                raise ValidationError(f"bad composition: length {length}, ones {ones}")
            if count < 1:
                raise ValidationError("multiplicities must be >= 1")
            counts[Composition(length - ones, ones)] += count
        return cls(counts)

    def count(self, comp: Composition) -> int:
        return self._counts.get(comp, 0)

    def items(self) -> list[tuple[Composition, int]]:
        return sorted(self._counts.items(), key=lambda kv: kv[0].sort_key())

    def elements(self) -> Iterator[Composition]:
        for comp, k in self.items():
            for _ in range(k):
                yield comp

    def __iter__(self) -> Iterator[Composition]:
        return self.elements()

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompositionMultiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return hash(self.canonical())

    def __add__(self, other: "CompositionMultiset") -> "CompositionMultiset":
        return CompositionMultiset(self._counts + other._counts)

    def canonical(self) -> tuple[tuple[int, int, int], ...]:
        """Sorted (length, ones, count) triples: the comparison/serialization form."""
        return tuple((c.length, c.ones, k) for c, k in self.items())

    def by_length(self) -> dict[int, list[tuple[Composition, int]]]:
        out: dict[int, list[tuple[Composition, int]]] = {}
        for comp, k in self.items():
            out.setdefault(comp.length, []).append((comp, k))
        return out

    def lengths(self) -> Counter:
        """Total multiplicity per composition length."""
        out: Counter = Counter()
        for comp, k in self._counts.items():
            out[comp.length] += k
        return out

    def __repr__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.elements()) + "}"


def _require_nonempty(s: BinaryString) -> None:
    if len(s) == 0:
        raise ValidationError("empty input")


def _prefix_counts(bits: tuple[int, ...]) -> Counter:
    out: Counter = Counter()
    ones = 0
    for i, b in enumerate(bits, start=1):
        ones += b
        out[Composition(i - ones, ones)] += 1
    return out


def prefix_multiset(s: BinaryString) -> CompositionMultiset:
    _require_nonempty(s)
    return CompositionMultiset(_prefix_counts(s.bits))


def suffix_multiset(s: BinaryString) -> CompositionMultiset:
    """Suffixes of every length 1..n; the whole string counts once as a suffix."""
    _require_nonempty(s)
    return CompositionMultiset(_prefix_counts(s.bits[::-1]))


def full_multiset(s: BinaryString) -> CompositionMultiset:
    _require_nonempty(s)
    return CompositionMultiset(_prefix_counts(s.bits) + _prefix_counts(s.bits[::-1]))


@dataclass(frozen=True)
class MixtureDocument:
    n_total: int
    entries: CompositionMultiset
    declared_hmax: int

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "N": self.n_total,
            "hmax": self.declared_hmax,
            "entries": [
                {"len": length, "ones": ones, "count": count}
                for length, ones, count in self.entries.canonical()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def shuffled_readout(self, seed: int) -> list[str]:
        flat = [str(c) for c in self.entries.elements()]
        prng.shuffle(flat, seed)
        return flat

    def to_shuffled_dict(self, seed: int) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "N": self.n_total,
            "hmax": self.declared_hmax,
            "seed": seed,
            "prng": prng.ALGORITHM,
            "readout": self.shuffled_readout(seed),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MixtureDocument":
        """Accepts both the canonical ("entries") and shuffled ("readout") forms."""
        try:
            n_total = int(data["N"])
            hmax = int(data["hmax"])
            if "entries" in data:
                entries = CompositionMultiset.from_triples(
                    (int(e["len"]), int(e["ones"]), int(e["count"])) for e in data["entries"]
                )
            elif "readout" in data:
                entries = CompositionMultiset(Composition.parse(t) for t in data["readout"])
            else:
                raise ValidationError("mixture has neither 'entries' nor 'readout'")
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed mixture document: {exc}") from exc
        for comp, _ in entries.items():
            if comp.length > n_total:
                raise ValidationError(f"composition {comp} longer than N={n_total}")
        return cls(n_total, entries, hmax)

    @classmethod
    def from_json(cls, text: str) -> "MixtureDocument":
        return cls.from_dict(json.loads(text))

    def mixture_size(self) -> int:
        """h-bar for a well-formed document: half the length-1 multiplicity."""
        per_len = self.entries.lengths()
        counts = {per_len.get(i, 0) for i in range(1, self.n_total + 1)}
        if len(counts) != 1:
            raise ValidationError("malformed mixture: per-length counts differ")
        (c,) = counts
        if c % 2 or c == 0:
            raise ValidationError("malformed mixture: odd or zero per-length count")
        if c // 2 > self.declared_hmax:
            raise ValidationError(f"malformed mixture: {c // 2} strings > hmax {self.declared_hmax}")
        return c // 2


def mix(collection: Iterable[BinaryString], hmax: int) -> MixtureDocument:
    strings = list(collection)
    if not strings:
        raise ValidationError("empty collection")
    if len(set(strings)) != len(strings):
        raise ValidationError("collection must be a set")
    lengths = {len(s) for s in strings}
    if len(lengths) != 1:
        raise ValidationError("mixed string lengths in collection")
    if len(strings) > hmax:
        raise ValidationError(f"collection of {len(strings)} strings exceeds hmax={hmax}")
    (n_total,) = lengths
    if n_total == 0:
        raise ValidationError("empty input")
    counts: Counter = Counter()
    for s in strings:
        counts += _prefix_counts(s.bits)
        counts += _prefix_counts(s.bits[::-1])
    return MixtureDocument(n_total, CompositionMultiset(counts), hmax)


def separate_prefixes(doc: MixtureDocument) -> tuple[CompositionMultiset, CompositionMultiset, int]:
    """Split a mixture of Dyck paths into (prefix part, suffix part, h-bar).

    Below full length a composition is a prefix iff ones > length/2. At full
    length the 2*h-bar identical balanced entries are split evenly. Suffix-side
    and full-length counts are validated here; prefix-side completeness is left
    to ``recover_sum`` so its error names the missing prefix data.
    """
    n_total = doc.n_total
    per_len = doc.entries.lengths()
    c1 = per_len.get(1, 0)
    if c1 == 0 or c1 % 2:
        raise ValidationError("malformed mixture: length-1 multiplicity must be a positive even number")
    h_bar = c1 // 2

    prefix: Counter = Counter()
    suffix: Counter = Counter()
    for comp, k in doc.entries.items():
        i = comp.length
        if i == n_total:
            if 2 * comp.ones != n_total:
                raise ValidationError("input not a Dyck mixture: unbalanced full-length composition")
            continue
        if 2 * comp.ones == i:
            raise ValidationError(f"input not a Dyck mixture: balanced composition {comp} at length {i}")
        (prefix if 2 * comp.ones > i else suffix)[comp] += k

    if n_total % 2 or per_len.get(n_total, 0) != 2 * h_bar:
        raise ValidationError("malformed mixture: full-length entries do not match h-bar")
    full = Composition(n_total // 2, n_total // 2)
    prefix[full] += h_bar
    suffix[full] += h_bar

    suffix_ms = CompositionMultiset(suffix)
    suffix_len = suffix_ms.lengths()
    for i in range(1, n_total):
        if suffix_len.get(i, 0) != h_bar:
            raise ValidationError(f"malformed mixture: {suffix_len.get(i, 0)} suffixes of length {i}, expected {h_bar}")
    return CompositionMultiset(prefix), suffix_ms, h_bar
