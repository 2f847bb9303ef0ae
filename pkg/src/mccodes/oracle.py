"""Brute-force ground truth for unique reconstruction of string mixtures."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .compositions import CompositionMultiset, full_multiset, prefix_multiset
from .core import BinaryString
from .errors import GuardError, InvariantViolation, ValidationError
from .sidon import subset_count

FLAVORS = ("full", "prefix_only")
MC_GUARD = 10**6


@dataclass(frozen=True)
class ConfusabilityWitness:
    set_a: frozenset[BinaryString]
    set_b: frozenset[BinaryString]
    flavor: str

    def to_dict(self) -> dict:
        return {
            "flavor": self.flavor,
            "set_a": sorted(str(s) for s in self.set_a),
            "set_b": sorted(str(s) for s in self.set_b),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _same_length(strings: Iterable[BinaryString]) -> int:
    lengths = {len(s) for s in strings}
    if len(lengths) > 1:
        raise ValidationError("strings must share one length")
    return lengths.pop() if lengths else 0


def union(strings: Iterable[BinaryString], flavor: str = "full") -> CompositionMultiset:
    if flavor not in FLAVORS:
        raise ValidationError(f"unknown flavor {flavor!r}")
    one = full_multiset if flavor == "full" else prefix_multiset
    out = CompositionMultiset()
    for s in strings:
        out = out + one(s)
    return out


def confusable(set_a: Iterable[BinaryString], set_b: Iterable[BinaryString], flavor: str = "full") -> bool:
    a, b = frozenset(set_a), frozenset(set_b)
    if not a or not b:
        raise ValidationError("both sets must be non-empty")
    _same_length(a | b)
    return union(a, flavor).canonical() == union(b, flavor).canonical()


class _Encoder:
    """Positional integer encoding of a string's composition counts.

    Cell (i, ones) of a length-n string holds how many of its length-i
    prefixes/suffixes have that many ones (0..2). Summing at most ``h``
    encodings never carries in base 2h+1, so equal sums mean equal multiset
    unions, with no hashing involved.
    """

    def __init__(self, n: int, h: int, flavor: str):
        self.n = n
        self.base = 2 * h + 1
        self.flavor = flavor
        self.offset = {}
        pos = 0
        for i in range(1, n + 1):
            self.offset[i] = pos
            pos += i + 1

    def __call__(self, s: BinaryString) -> int:
        ms = full_multiset(s) if self.flavor == "full" else prefix_multiset(s)
        value = 0
        for comp, k in ms.items():
            value += k * self.base ** (self.offset[comp.length] + comp.ones)
        return value


def is_h_mc_code(
    strings: Iterable[BinaryString], h: int, flavor: str = "full", limit: int = MC_GUARD
) -> Optional[ConfusabilityWitness]:
    """None if every union over distinct subsets of size <= h is distinct,
    else one confusable pair of subsets."""
    ordered = sorted(set(strings), key=str)
    n = _same_length(ordered)
    total = subset_count(len(ordered), h)
    if total > limit:
        raise GuardError("instance too large for brute force", limit, total)
    enc = _Encoder(n, h, flavor)
    keys = [enc(s) for s in ordered]
    seen: dict[int, tuple[int, ...]] = {}
    for k in range(1, h + 1):
        for idx in combinations(range(len(ordered)), k):
            sig = sum(keys[i] for i in idx)
            other = seen.get(sig)
            if other is not None:
                a = frozenset(ordered[i] for i in other)
                b = frozenset(ordered[i] for i in idx)
                assert confusable(a, b, flavor)
                return ConfusabilityWitness(a, b, flavor)
            seen[sig] = idx
    return None


def find_confusable_pairs(
    pool: Sequence[BinaryString], size: int, flavor: str = "full"
) -> list[ConfusabilityWitness]:
    """All unordered pairs of distinct ``size``-subsets of ``pool`` with equal unions."""
    subsets = [frozenset(c) for c in combinations(sorted(set(pool), key=str), size)]
    out = []
    for a, b in combinations(subsets, 2):
        if confusable(a, b, flavor):
            out.append(ConfusabilityWitness(a, b, flavor))
    return out


MAX_SEARCH_N = 10
MAX_SEARCH_H = 3


def forbidden_sets(keys: Sequence[int], h: int, limit: int = MC_GUARD) -> list[frozenset[int]]:
    """Index sets that cannot all lie in an h-MC code.

    Two distinct subsets with equal unions stay confusable after removing
    their common members, so it suffices to collect S | T over disjoint,
    equal-size, equal-sum pairs (S, T) of size <= h.
    """
    total = subset_count(len(keys), h)
    if total > limit:
        raise GuardError("instance too large for brute force", limit, total)
    out: set[frozenset[int]] = set()
    for k in range(1, h + 1):
        groups: dict[int, list[tuple[int, ...]]] = {}
        for idx in combinations(range(len(keys)), k):
            groups.setdefault(sum(keys[i] for i in idx), []).append(idx)
        for group in groups.values():
            for a, b in combinations(group, 2):
                if not set(a) & set(b):
                    out.add(frozenset(a + b))
    return sorted(out, key=lambda f: (len(f), sorted(f)))


def _reversal_classes(n: int) -> list[BinaryString]:
    words = ("".join(p) for p in product("01", repeat=n))
    return [BinaryString.parse(w) for w in sorted({min(w, w[::-1]) for w in words})]


def _backtrack(size: int, forbidden: list[tuple[int, ...]]) -> list[int]:
    """Include/exclude search in index order, "include" first.

    A candidate completing a forbidden set is excluded outright; a branch is
    cut when chosen + open candidates - (live forbidden sets with pairwise
    disjoint open parts) cannot beat the incumbent.
    """
    by_member: list[list[int]] = [[] for _ in range(size)]
    for fi, f in enumerate(forbidden):
        for v in f:
            by_member[v].append(fi)
    chosen = [False] * size
    chosen_in = [0] * len(forbidden)
    best: list[int] = []
    picked: list[int] = []

    def completes(v: int) -> bool:
        return any(chosen_in[fi] == len(forbidden[fi]) - 1 for fi in by_member[v])

    def bound(i: int) -> int:
        open_ = {v for v in range(i, size) if not completes(v)}
        used: set[int] = set()
        packed = 0
        for f in forbidden:
            rest = [v for v in f if not chosen[v]]
            if rest and all(v in open_ and v not in used for v in rest):
                used.update(rest)
                packed += 1
        return len(picked) + len(open_) - packed

    def search(i: int) -> None:
        nonlocal best
        if len(picked) > len(best):
            best = list(picked)
        if i == size or bound(i) <= len(best):
            return
        if not completes(i):
            chosen[i] = True
            picked.append(i)
            for fi in by_member[i]:
                chosen_in[fi] += 1
            search(i + 1)
            for fi in by_member[i]:
                chosen_in[fi] -= 1
            picked.pop()
            chosen[i] = False
        search(i + 1)

    search(0)
    return best


def _milp(size: int, forbidden: list[tuple[int, ...]], time_limit: float) -> list[int]:
    """Maximum independent set of the forbidden-set hypergraph via HiGHS."""
    if not forbidden:
        return list(range(size))
    a = np.zeros((len(forbidden), size))
    for row, f in enumerate(forbidden):
        a[row, list(f)] = 1
    upper = np.array([len(f) - 1 for f in forbidden], dtype=float)
    res = milp(
        -np.ones(size),
        constraints=LinearConstraint(a, -np.inf, upper),
        integrality=np.ones(size),
        bounds=Bounds(0, 1),
        options={"time_limit": time_limit},
    )
    if res.status != 0:
        raise GuardError(f"max-code search not proven optimal ({res.message})", int(time_limit), size)
    return [i for i in range(size) if res.x[i] > 0.5]


BACKTRACK_MAX_CANDIDATES = 40


def max_mc_code_size(
    n: int, h: int, method: str = "auto", time_limit: float = 120.0
) -> tuple[int, tuple[BinaryString, ...]]:
    """Size of a largest h-MC code in {0,1}^n, with one maximizer.

    A string and its reversal have identical prefix/suffix multisets, so a
    code holds at most one of them and either may stand in for the other;
    candidates are the lexicographically smaller member of each reversal
    pair. The problem is then a maximum independent set in the hypergraph of
    ``forbidden_sets``. ``method`` is "backtrack" (exhaustive, lexicographic
    order, fine up to ~40 candidates, n <= 6), "milp" (exact HiGHS
    branch-and-bound), or "auto" to pick by instance size.
    """
    if not 1 <= n <= MAX_SEARCH_N or not 1 <= h <= MAX_SEARCH_H:
        raise ValidationError(f"max_mc_code_size supports n <= {MAX_SEARCH_N}, h <= {MAX_SEARCH_H}")
    strings = _reversal_classes(n)
    enc = _Encoder(n, h, "full")
    keys = [enc(s) for s in strings]
    forbidden = [tuple(sorted(f)) for f in forbidden_sets(keys, h)]
    if method == "auto":
        method = "backtrack" if len(strings) <= BACKTRACK_MAX_CANDIDATES else "milp"
    if method == "backtrack":
        best = _backtrack(len(strings), forbidden)
    elif method == "milp":
        best = _milp(len(strings), forbidden, time_limit)
    else:
        raise ValidationError(f"unknown search method {method!r}")
    result = tuple(strings[i] for i in best)
    if is_h_mc_code(result, h) is not None:
        raise InvariantViolation("max-code search returned a confusable set")
    return len(best), result
