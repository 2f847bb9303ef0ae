"""Verification suites over a built codebook, reported with observed slack."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .balancer import assemble_v, balance
from .codec import Codebook
from .core import is_dyck, rds_profile, weight
from .oracle import MC_GUARD, is_h_mc_code
from .prng import shuffle
from .sidon import BRUTE_FORCE_LIMIT, verify_bh, verify_bh_xor

SCOPES = ("bh", "mc", "dyck", "bounds")


@dataclass
class Check:
    name: str
    ok: bool
    bound: Optional[str] = None
    observed: Optional[float] = None
    slack: Optional[float] = None
    detail: Optional[object] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        for key in ("bound", "observed", "slack", "detail"):
            value = getattr(self, key)
            if value is not None:
                out[key] = float(value) if isinstance(value, Fraction) else value
        return out


def _upper(name: str, observed: int, bound: Fraction, text: str) -> Check:
    return Check(name, observed <= bound, text, observed, bound - observed)


def check_bounds(book: Codebook) -> list[Check]:
    """Balancing inequalities over every column of the codebook."""
    p = book.layout
    k = p.block_len
    worst_block = worst_u = worst_v = 0
    min_v = None
    restored = True
    for s in book.sidon.strings:
        res = balance(s, p)
        restored &= res.restore() == s
        u_prof = rds_profile(res.u).values
        worst_block = max(worst_block, max(abs(u_prof[j * k - 1]) for j in range(1, k + 1)))
        worst_u = max(worst_u, max(abs(x) for x in u_prof))
        v_prof = rds_profile(assemble_v(res, p)).values
        worst_v = max(worst_v, max(v_prof))
        min_v = min(v_prof) if min_v is None else min(min_v, min(v_prof))
    return [
        _upper("block-boundary |RDS(u)|", worst_block, Fraction(k), f"sqrt(n) = {k}"),
        _upper("|RDS(u)_i|", worst_u, Fraction(3 * k, 2), f"3/2 sqrt(n) = {Fraction(3 * k, 2)}"),
        Check("RDS(v)_i > 0", min_v > 0, "> 0", min_v, min_v),
        _upper("RDS(v)_i", worst_v, Fraction(5 * k + 1), f"5 sqrt(n) + 1 = {5 * k + 1}"),
        Check("unbalance restores s", restored),
    ]


def check_dyck(book: Codebook) -> list[Check]:
    N = book.N
    lengths_ok = all(len(c) == N for c in book.codewords)
    balanced = all(weight(c) * 2 == N for c in book.codewords)
    min_interior = min(min(rds_profile(c).values[:-1]) for c in book.codewords)
    return [
        Check("codeword length N", lengths_ok, str(N)),
        Check("weight N/2", balanced, str(N // 2)),
        Check("interior RDS > 0", min_interior > 0, "> 0", min_interior, min_interior),
        Check("is_dyck", all(is_dyck(c) for c in book.codewords)),
        Check("codewords distinct", len(set(book.codewords)) == len(book.codewords)),
    ]


def check_bh(book: Codebook, limit: int = BRUTE_FORCE_LIMIT) -> list[Check]:
    h = book.h
    out = []
    for name, fn in (("B_h over the integers", verify_bh), ("B_h over F_2", verify_bh_xor)):
        witness = fn(book.sidon.strings, h, limit)
        detail = None
        if witness is not None:
            detail = {
                "subset_a": sorted(str(s) for s in witness.subset_a),
                "subset_b": sorted(str(s) for s in witness.subset_b),
            }
        out.append(Check(name, witness is None, detail=detail))
    return out


def check_mc(book: Codebook, sample: Optional[int] = None, seed: int = 0, limit: int = MC_GUARD) -> list[Check]:
    words = list(book.codewords)
    if sample is not None and sample < len(words):
        shuffle(words, seed)
        words = words[:sample]
    witness = is_h_mc_code(words, book.h, limit=limit)
    name = f"{book.h}-MC over {len(words)} codewords"
    return [Check(name, witness is None, detail=None if witness is None else witness.to_dict())]


def run_scope(book: Codebook, scope: str, sample: Optional[int] = None, seed: int = 0,
              limit: Optional[int] = None) -> list[Check]:
    if scope == "bounds":
        return check_bounds(book)
    if scope == "dyck":
        return check_dyck(book)
    if scope == "bh":
        return check_bh(book, BRUTE_FORCE_LIMIT if limit is None else limit)
    if scope == "mc":
        return check_mc(book, sample, seed, MC_GUARD if limit is None else limit)
    raise ValueError(f"unknown scope {scope!r}")
