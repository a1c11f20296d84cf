"""Exact closed-form counts of Hopf-Galois structures on an S_n-extension.

Everything is integer arithmetic; nothing depends on word size.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import HGError

KINDS = ("Sn_type", "AnC2_type", "M10_type", "PGL29_type", "total")

# n = 6 exceptional types; these are quoted constants, not recomputed here
M10_COUNT_N6 = 72
PGL29_COUNT_N6 = 0

_SMALL_TOTALS = {1: 1, 2: 1, 3: 5, 4: 116}


@dataclass(frozen=True)
class CountValue:
    value: int
    n: int
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise HGError(f"unknown count kind {self.kind}", stage="formula")
        if not isinstance(self.value, int) or self.value < 0:
            raise HGError(f"count must be a nonnegative int, got {self.value!r}", stage="formula")


def involution_term(n: int, k: int) -> int:
    """n! / ((n-2k)! 2^k k!): elements of S_n with exactly k disjoint 2-cycles."""
    if k < 0 or 2 * k > n:
        return 0
    return factorial(n) // (factorial(n - 2 * k) * 2**k * factorial(k))


def _require_n5(n: int) -> None:
    if n < 5:
        raise HGError(f"closed form holds only for n >= 5, got n={n}", stage="formula")


def count_sn_sn(n: int) -> CountValue:
    _require_n5(n)
    return CountValue(2 * sum(involution_term(n, k) for k in range(0, n // 2 + 1, 2)), n, "Sn_type")


def count_sn_anc2(n: int) -> CountValue:
    _require_n5(n)
    return CountValue(2 * sum(involution_term(n, k) for k in range(1, n // 2 + 1, 2)), n, "AnC2_type")


def total_e_sn(n: int) -> CountValue:
    if n < 1:
        raise HGError(f"n must be positive, got {n}", stage="formula")
    if n in _SMALL_TOTALS:
        return CountValue(_SMALL_TOTALS[n], n, "total")
    if n == 6:
        parts = count_sn_sn(6).value + count_sn_anc2(6).value + M10_COUNT_N6 + PGL29_COUNT_N6
        return CountValue(parts, n, "total")
    return CountValue(2 * sum(involution_term(n, k) for k in range(n // 2 + 1)), n, "total")


def formula_values(n: int) -> list[CountValue]:
    """Every count the closed forms give at n, ending with the total."""
    out = []
    if n >= 5:
        out += [count_sn_sn(n), count_sn_anc2(n)]
    if n == 6:
        out += [CountValue(M10_COUNT_N6, 6, "M10_type"), CountValue(PGL29_COUNT_N6, 6, "PGL29_type")]
    out.append(total_e_sn(n))
    return out
