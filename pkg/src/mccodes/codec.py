"""Encoder (column index -> Dyck codeword) and mixture decoder."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, log2
from typing import Iterable, Optional

from .balancer import LayoutParams, encode_string, layout, unbalance_sum
from .compositions import SCHEMA_VERSION, CompositionMultiset, MixtureDocument, mix, separate_prefixes
from .core import BinaryString, is_dyck
from .errors import DecodeError, GuardError, InvariantViolation, MCError, ValidationError
from .gf2m import berlekamp_massey, chien_search, field as gf_field
from .sidon import SidonSet, build_bh_codebook, pad_to_square, sidon_from_dict

XOR_TABLE_LIMIT = 5 * 10**6


@dataclass(frozen=True)
class Codebook:
    sidon: SidonSet
    layout: LayoutParams
    codewords: tuple[BinaryString, ...]
    index: dict = field(compare=False, repr=False)
    column_of: dict = field(compare=False, repr=False)

    @property
    def h(self) -> int:
        return self.sidon.h

    @property
    def N(self) -> int:
        return self.layout.N

    def __len__(self) -> int:
        return len(self.codewords)

    def rate(self) -> float:
        return log2(len(self.codewords)) / self.layout.N

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION}
        out.update(self.sidon.to_dict())
        out["layout"] = self.layout.to_dict()
        out["codewords"] = [str(c) for c in self.codewords]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _assemble(sidon: SidonSet) -> Codebook:
    padded = pad_to_square(sidon)
    params = layout(padded.n)
    codewords = tuple(encode_string(s, params) for s in padded.strings)
    index = {c: i for i, c in enumerate(codewords)}
    if len(index) != len(codewords):
        raise InvariantViolation("two columns produced the same codeword")
    column_of = {s: i for i, s in enumerate(padded.strings)}
    return Codebook(padded, params, codewords, index, column_of)


def build_codebook(m: int, h: int) -> Codebook:
    return _assemble(build_bh_codebook(m, h))


def codebook_from_dict(data: dict) -> Codebook:
    try:
        book = _assemble(sidon_from_dict(data))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed codebook document: {exc}") from exc
    if "layout" in data and data["layout"] != book.layout.to_dict():
        raise ValidationError("codebook layout does not match its strings")
    if "codewords" in data and data["codewords"] != [str(c) for c in book.codewords]:
        raise ValidationError("codebook codewords do not match its strings")
    return book


def codebook_from_json(text: str) -> Codebook:
    return codebook_from_dict(json.loads(text))


def encode(codebook: Codebook, column_index: int) -> BinaryString:
    if not 0 <= column_index < len(codebook.codewords):
        raise ValidationError(f"column index {column_index} out of range [0, {len(codebook.codewords)})")
    return codebook.codewords[column_index]


@dataclass(frozen=True)
class IntegerSumVector:
    """Coordinate-wise integer sum of h_bar strings."""

    values: tuple[int, ...]
    h_bar: int

    def __len__(self) -> int:
        return len(self.values)


def recover_sum(prefixes: CompositionMultiset, N: int) -> IntegerSumVector:
    """t_i = c_i - c_{i-1}, where c_i is the total number of ones over all
    length-i compositions and c_0 = 0."""
    per_len = prefixes.lengths()
    h_bar = per_len.get(N, 0)
    if h_bar == 0:
        raise ValidationError(f"incomplete prefix multiset: no compositions of length {N}")
    if any(length > N for length in per_len):
        raise ValidationError(f"inconsistent multiset: compositions longer than N={N}")
    for i in range(1, N + 1):
        if per_len.get(i, 0) != h_bar:
            raise ValidationError(
                f"incomplete prefix multiset: {per_len.get(i, 0)} compositions of length {i}, expected {h_bar}"
            )
    ones_at = [0] * (N + 1)
    for comp, k in prefixes.items():
        ones_at[comp.length] += comp.ones * k
    t = tuple(ones_at[i] - ones_at[i - 1] for i in range(1, N + 1))
    for i, v in enumerate(t, start=1):
        if not 0 <= v <= h_bar:
            raise ValidationError(f"inconsistent multiset: t_{i} = {v} outside [0, {h_bar}]")
    return IntegerSumVector(t, h_bar)


# xor table cache keyed by id(sidon); the sidon reference pins the id
_XOR_TABLES: dict[tuple[int, int], tuple[SidonSet, dict[int, tuple[int, ...]]]] = {}


def _xor_table(sidon: SidonSet, h_bar: int) -> dict[int, tuple[int, ...]]:
    key = (id(sidon), h_bar)
    hit = _XOR_TABLES.get(key)
    if hit is not None and hit[0] is sidon:
        return hit[1]
    size = comb(len(sidon.strings), h_bar)
    if size > XOR_TABLE_LIMIT:
        raise GuardError("instance too large for brute force", XOR_TABLE_LIMIT, size)
    ints = [s.to_int() for s in sidon.strings]
    table: dict[int, tuple[int, ...]] = {}
    for idx in combinations(range(len(ints)), h_bar):
        acc = 0
        for i in idx:
            acc ^= ints[i]
        if acc in table:
            raise InvariantViolation("codebook violates B_h over F_2")
        table[acc] = idx
    _XOR_TABLES[key] = (sidon, table)
    return table


def _syndrome_locate(xor: BinaryString, sidon: SidonSet, h_bar: int) -> tuple[int, ...]:
    """Treat the XOR of h_bar columns as a BCH syndrome and locate the columns."""
    if sidon.m is None:
        raise ValidationError("syndrome decoding needs a parity-check codebook (m unknown)")
    m, h = sidon.m, sidon.h
    gf = gf_field(m)
    if any(xor.bits[h * m:]):
        raise ValidationError("not a valid mixture of codebook columns: nonzero padding")
    odd = [BinaryString(xor.bits[k * m:(k + 1) * m]).to_int() for k in range(h)]
    synd = [0] * (2 * h + 1)  # synd[j] = sum of alpha^(j*i) over the columns, j = 1..2h
    for k, value in enumerate(odd):
        synd[2 * k + 1] = value
    for j in range(2, 2 * h + 1, 2):
        synd[j] = gf.mul(synd[j // 2], synd[j // 2])
    locator = berlekamp_massey(gf, synd[1:])
    degree = len(locator) - 1
    roots = chien_search(gf, locator)
    if degree != h_bar or len(roots) != degree:
        raise ValidationError("not a valid mixture of codebook columns")
    return tuple(sorted(roots))


def recover_subset_from_xor(
    xor: BinaryString, sidon: SidonSet, h_bar: int, strategy: str = "brute"
) -> frozenset[BinaryString]:
    """The unique h_bar-subset of ``sidon.strings`` whose XOR is ``xor``."""
    if len(xor) != sidon.n:
        raise ValidationError(f"xor has length {len(xor)}, expected {sidon.n}")
    if not 1 <= h_bar <= sidon.h:
        raise ValidationError(f"h_bar={h_bar} outside [1, {sidon.h}]")
    if strategy == "brute":
        idx = _xor_table(sidon, h_bar).get(xor.to_int())
        if idx is None:
            raise ValidationError("not a valid mixture of codebook columns")
    elif strategy == "syndrome":
        idx = _syndrome_locate(xor, sidon, h_bar)
        acc = 0
        for i in idx:
            acc ^= sidon.strings[i].to_int()
        if acc != xor.to_int():
            raise ValidationError("not a valid mixture of codebook columns")
    else:
        raise ValidationError(f"unknown subset recovery strategy {strategy!r}")
    return frozenset(sidon.strings[i] for i in idx)


@dataclass
class DecodeResult:
    h_bar: int
    indices: list[int]
    codewords: list[BinaryString]
    stages: dict[str, float] = field(default_factory=dict)

    def report(self) -> dict:
        return {
            "h_bar": self.h_bar,
            "codeword_indices": self.indices,
            "codewords": [str(c) for c in self.codewords],
            "stages": {k: round(v, 3) for k, v in self.stages.items()},
        }


class _Stage:
    def __init__(self, name: str, timings: dict[str, float]):
        self.name = name
        self.timings = timings

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.timings[self.name] = (time.perf_counter() - self.start) * 1000.0
        if exc_type is not None and issubclass(exc_type, ValidationError) and not isinstance(exc, DecodeError):
            raise DecodeError(self.name, str(exc)) from exc
        return False


def _check_tail(tail: tuple[int, ...], h_bar: int) -> None:
    # each codeword's tail is 1^a 0^b with b >= 1, so the summed tail is non-increasing and ends at 0
    if any(tail[i] < tail[i + 1] for i in range(len(tail) - 1)) or (tail and tail[-1] != 0):
        raise ValidationError("malformed mixture: tail is not a sum of 1-runs followed by 0-runs")
    if any(v > h_bar for v in tail):
        raise ValidationError("malformed mixture: tail value exceeds h-bar")


def decode_detailed(codebook: Codebook, doc: MixtureDocument, strategy: str = "brute") -> DecodeResult:
    params = codebook.layout
    timings: dict[str, float] = {}

    with _Stage("separate", timings):
        if doc.n_total != params.N:
            raise ValidationError(f"mixture length N={doc.n_total} does not match codebook N={params.N}")
        prefixes, _suffixes, h_bar = separate_prefixes(doc)
        if h_bar > codebook.h:
            raise ValidationError(f"malformed mixture: {h_bar} strings exceed codebook h={codebook.h}")

    with _Stage("recover_sum", timings):
        t = recover_sum(prefixes, params.N)
        if t.h_bar != h_bar:
            raise ValidationError("malformed mixture: prefix and suffix parts disagree on h-bar")
        if sum(t.values) != h_bar * params.N // 2:
            raise ValidationError("malformed mixture: total weight is not h-bar * N/2")

    with _Stage("segment", timings):
        values = t.values
        if any(v != h_bar for v in values[: params.lead_run]):
            raise ValidationError("malformed mixture: leading run is not all ones")
        rho = values[params.r_slice]
        u_sum = values[params.u_slice]
        _check_tail(values[params.tail_slice], h_bar)

    with _Stage("unbalance", timings):
        xor = unbalance_sum(
            BinaryString(tuple(v & 1 for v in u_sum)),
            BinaryString(tuple(v & 1 for v in rho)),
            params,
        )

    with _Stage("subset", timings):
        columns = recover_subset_from_xor(xor, codebook.sidon, h_bar, strategy)

    with _Stage("verify", timings):
        indices = sorted(codebook.column_of[s] for s in columns)
        words = [codebook.codewords[i] for i in indices]
        if mix(words, max(h_bar, doc.declared_hmax)).entries != doc.entries:
            raise ValidationError("malformed mixture: re-mixing the decoded set does not reproduce the input")

    return DecodeResult(h_bar, indices, words, timings)


def decode(codebook: Codebook, doc: MixtureDocument, strategy: str = "brute") -> frozenset[BinaryString]:
    return frozenset(decode_detailed(codebook, doc, strategy).codewords)


def mix_indices(codebook: Codebook, indices: Iterable[int], hmax: Optional[int] = None) -> MixtureDocument:
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise ValidationError("collection must be a set")
    return mix([encode(codebook, i) for i in indices], codebook.h if hmax is None else hmax)


def check_codebook(codebook: Codebook) -> None:
    """Every codeword a Dyck path of length N and all distinct."""
    for i, c in enumerate(codebook.codewords):
        if len(c) != codebook.N or not is_dyck(c):
            raise InvariantViolation(f"codeword {i} is not a Dyck path")
    if len(set(codebook.codewords)) != len(codebook.codewords):
        raise InvariantViolation("duplicate codewords")


__all__ = [
    "Codebook",
    "DecodeResult",
    "IntegerSumVector",
    "MCError",
    "build_codebook",
    "check_codebook",
    "codebook_from_dict",
    "codebook_from_json",
    "decode",
    "decode_detailed",
    "encode",
    "mix_indices",
    "recover_subset_from_xor",
    "recover_sum",
]
