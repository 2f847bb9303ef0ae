"""Block balancing of B_h strings and assembly into Dyck-path codewords.

Codeword anatomy (lengths from ``LayoutParams``):

    1^lead_run | r (num_blocks flip flags) | u (balanced, n bits) | 1^a 0^b

where u is s with some sqrt(n)-bit blocks complemented, r marks the
complemented blocks, and the tail brings the weight to N/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BinaryString, rds, rds_profile, weight
from .errors import ValidationError


@dataclass(frozen=True)
class LayoutParams:
    n: int
    block_len: int
    num_blocks: int
    lead_run: int
    v_len: int
    N: int
    parity_fix: bool

    @property
    def r_slice(self) -> slice:
        return slice(self.lead_run, self.lead_run + self.num_blocks)

    @property
    def u_slice(self) -> slice:
        start = self.lead_run + self.num_blocks
        return slice(start, start + self.n)

    @property
    def tail_slice(self) -> slice:
        return slice(self.v_len, self.N)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "block_len": self.block_len,
            "lead_run": self.lead_run,
            "v_len": self.v_len,
            "N": self.N,
            "parity_fix": self.parity_fix,
        }


def layout(n: int) -> LayoutParams:
    root = math.isqrt(n)
    if root * root != n or root % 2 or root < 2:
        raise ValidationError(f"n={n} is not a square with even root; call pad_to_square first")
    lead_run = 5 * root // 2 + 1
    v_len = n + 7 * root // 2 + 1
    total = n + 17 * root // 2 + 2
    parity_fix = total % 2 == 1
    if parity_fix:
        lead_run += 1
        v_len += 1
        total += 1
    assert v_len == lead_run + root + n
    return LayoutParams(n, root, root, lead_run, v_len, total, parity_fix)


@dataclass(frozen=True)
class BalanceResult:
    u: BinaryString
    r: BinaryString

    def restore(self) -> BinaryString:
        """Undo the block flips recorded in r."""
        k = len(self.r)
        size = len(self.u) // k
        bits: list[int] = []
        for j in range(k):
            block = self.u.bits[j * size:(j + 1) * size]
            if self.r[j]:
                block = tuple(1 - b for b in block)
            bits.extend(block)
        return BinaryString(tuple(bits))


def balance(s: BinaryString, params: LayoutParams) -> BalanceResult:
    """Complement blocks so the running sum at block boundaries stays within
    +-sqrt(n): a block is kept only when its own RDS has the opposite sign
    (RDS >= 0 counting as non-negative) to the RDS of the balanced prefix."""
    if len(s) != params.n:
        raise ValidationError(f"expected a string of length {params.n}, got {len(s)}")
    b = params.block_len
    u_bits = list(s.bits[:b])
    flags = [0]
    running = rds(u_bits)
    for j in range(1, params.num_blocks):
        block = s.bits[j * b:(j + 1) * b]
        block_rds = rds(block)
        keep = (running < 0) == (block_rds >= 0)
        if keep:
            u_bits.extend(block)
            flags.append(0)
            running += block_rds
        else:
            u_bits.extend(1 - x for x in block)
            flags.append(1)
            running -= block_rds
    return BalanceResult(BinaryString(tuple(u_bits)), BinaryString(tuple(flags)))


def assemble_v(result: BalanceResult, params: LayoutParams) -> BinaryString:
    if len(result.u) != params.n or len(result.r) != params.num_blocks:
        raise ValidationError("balance result does not match layout")
    v = BinaryString((1,) * params.lead_run).concat(result.r, result.u)
    assert len(v) == params.v_len
    return v


def finalize_dyck(v: BinaryString, params: LayoutParams) -> BinaryString:
    """Append 1^(N/2 - w) 0^(N/2 - (|v| - w)), w = wt(v)."""
    w = weight(v)
    half = params.N // 2
    ones_tail = half - w
    zeros_tail = half - (len(v) - w)
    if ones_tail < 0 or zeros_tail < 0:
        raise ValidationError("v outside the balanced envelope: weight bounds violated")
    if min(rds_profile(v)) <= 0:
        raise ValidationError("v outside the balanced envelope: running sum not positive")
    return v.concat(BinaryString((1,) * ones_tail + (0,) * zeros_tail))


def encode_string(s: BinaryString, params: LayoutParams) -> BinaryString:
    return finalize_dyck(assemble_v(balance(s, params), params), params)


def unbalance_sum(u_sum_mod2: BinaryString, r_sum_mod2: BinaryString, params: LayoutParams) -> BinaryString:
    """Complement each block of the u-sum whose flip-flag parity is 1.

    With rho_j strings flipping block j, the mod-2 sum of the original
    strings on block j is the u-sum plus rho_j copies of 1...1, so only the
    parity of rho_j matters.
    """
    if len(u_sum_mod2) != params.n or len(r_sum_mod2) != params.num_blocks:
        raise ValidationError("u/r sums do not match layout")
    return BalanceResult(u_sum_mod2, r_sum_mod2).restore()
