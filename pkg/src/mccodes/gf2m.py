"""Arithmetic in GF(2^m) via log/antilog tables, plus the pieces of binary
BCH syndrome decoding (Berlekamp-Massey, Chien search) used by the codec's
fast subset-recovery path.

Elements are ints whose bit k is the coefficient of x^k; alpha is the class
of x modulo the primitive polynomial listed in PRIMITIVE_POLYS.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import ValidationError

# Primitive polynomials, bit k = coefficient of x^k (x^m term included).
PRIMITIVE_POLYS: dict[int, int] = {
    2: 0b111,                  # x^2 + x + 1
    3: 0b1011,                 # x^3 + x + 1
    4: 0b10011,                # x^4 + x + 1
    5: 0b100101,               # x^5 + x^2 + 1
    6: 0b1000011,              # x^6 + x + 1
    7: 0b10001001,             # x^7 + x^3 + 1
    8: 0b100011101,            # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,           # x^9 + x^4 + 1
    10: 0b10000001001,         # x^10 + x^3 + 1
    11: 0b100000000101,        # x^11 + x^2 + 1
    12: 0b1000001010011,       # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,      # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,     # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,    # x^15 + x + 1
    16: 0b10001000000001011,   # x^16 + x^12 + x^3 + x + 1
}


class GF2m:
    def __init__(self, m: int):
        if m not in PRIMITIVE_POLYS:
            raise ValidationError(f"unsupported field degree m={m}")
        self.m = m
        self.poly = PRIMITIVE_POLYS[m]
        self.order = (1 << m) - 1
        exp = [0] * (2 * self.order)
        log = [-1] * (1 << m)
        x = 1
        for i in range(self.order):
            exp[i] = x
            if log[x] != -1:
                raise ValidationError(f"polynomial {self.poly:#b} is not primitive")
            log[x] = i
            x <<= 1
            if x >> m:
                x ^= self.poly
        for i in range(self.order, 2 * self.order):
            exp[i] = exp[i - self.order]
        self.exp = exp
        self.log = log

    def alpha_pow(self, k: int) -> int:
        return self.exp[k % self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^m)")
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp[(self.log[a] * k) % self.order]

    def poly_eval(self, coeffs: list[int], x: int) -> int:
        """coeffs[k] is the coefficient of X^k."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)


def berlekamp_massey(gf: GF2m, syndromes: list[int]) -> list[int]:
    """Shortest LFSR connection polynomial (ascending coefficients, c[0] = 1)."""
    c = [1]
    b = [1]
    length = 0
    shift = 1
    last = 1
    for step, s in enumerate(syndromes):
        d = s
        for i in range(1, length + 1):
            if i < len(c):
                d ^= gf.mul(c[i], syndromes[step - i])
        if d == 0:
            shift += 1
            continue
        coef = gf.div(d, last)
        t = list(c)
        need = len(b) + shift
        if len(c) < need:
            c = c + [0] * (need - len(c))
        for i, bi in enumerate(b):
            c[i + shift] ^= gf.mul(coef, bi)
        if 2 * length <= step:
            length = step + 1 - length
            b = t
            last = d
            shift = 1
        else:
            shift += 1
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def chien_search(gf: GF2m, locator: list[int]) -> list[int]:
    """Exponents i in [0, 2^m - 2] with locator(alpha^-i) = 0."""
    return [i for i in range(gf.order) if gf.poly_eval(locator, gf.alpha_pow(-i)) == 0]
