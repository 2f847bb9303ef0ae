"""Rate table for the construction, compared exactly.

A rate log2(size)/N is irrational in general, so comparisons are done on
integers: log2(a)/Na < log2(b)/Nb  iff  a**Nb < b**Na.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import Iterable

from .balancer import layout
from .sidon import build_bh_codebook, padded_length


@dataclass(frozen=True)
class RateRow:
    m: int
    h: int
    n: int
    N: int
    size: int

    @property
    def rate(self) -> float:
        return log2(self.size) / self.N

    def to_dict(self) -> dict:
        return {"m": self.m, "h": self.h, "n": self.n, "N": self.N, "codebook_size": self.size, "rate": self.rate}


def rate_lt(a: RateRow, b: RateRow) -> bool:
    return a.size**b.N < b.size**a.N


def rate_below(row: RateRow, bound: Fraction) -> bool:
    """log2(size)/N < p/q  iff  size**q < 2**(p*N)."""
    return row.size**bound.denominator < 2 ** (bound.numerator * row.N)


@dataclass
class RateReport:
    h: int
    rows: list[RateRow]
    violations: list[str] = field(default_factory=list)

    @property
    def target(self) -> Fraction:
        return Fraction(1, self.h)

    def check(self, strict: bool = False) -> list[str]:
        """Rates below 1/h, and non-decreasing (or increasing when strict) in m."""
        out = []
        for row in self.rows:
            if not rate_below(row, self.target):
                out.append(f"m={row.m}: rate {row.rate:.6f} is not below 1/{self.h}")
        for prev, cur in zip(self.rows, self.rows[1:]):
            drop = rate_lt(cur, prev) or (strict and not rate_lt(prev, cur))
            if drop:
                word = "increase" if strict else "stay level or increase"
                out.append(f"m={prev.m}->{cur.m}: rate {prev.rate:.6f} -> {cur.rate:.6f} does not {word}")
        self.violations = out
        return out

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "target": str(self.target),
            "rows": [r.to_dict() for r in self.rows],
            "violations": list(self.violations),
        }


def rate_row(m: int, h: int) -> RateRow:
    book = build_bh_codebook(m, h)
    n = padded_length(book.n)
    return RateRow(m, h, n, layout(n).N, len(book))


def rate_report(h: int, ms: Iterable[int], strict: bool = False) -> RateReport:
    report = RateReport(h, [rate_row(m, h) for m in sorted(ms)])
    report.check(strict)
    return report
