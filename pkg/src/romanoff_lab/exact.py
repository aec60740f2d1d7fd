"""Exact rational accumulation helpers.

Moment sums are exact rationals whose reduced denominators grow like the lcm
of the per-term denominators, so naive left-to-right Fraction addition is
quadratic in practice.  ``exact_fraction_sum`` sums in two stages: raw
(num, den) tree merges inside fixed-size chunks, one gcd per chunk, then a
balanced Fraction tree over the chunk totals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def pair_tree_sum(pairs: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Sum (numerator, denominator) pairs without any gcd reduction."""
    items = list(pairs)
    if not items:
        return (0, 1)
    while len(items) > 1:
        merged = []
        for i in range(0, len(items) - 1, 2):
            n1, d1 = items[i]
            n2, d2 = items[i + 1]
            merged.append((n1 * d2 + n2 * d1, d1 * d2))
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    return items[0]


def exact_fraction_sum(fractions: Iterable[Fraction], chunk: int = 512) -> Fraction:
    """Exact sum of many Fractions, balanced to keep intermediate gcds cheap."""
    chunk_totals: list[Fraction] = []
    buf: list[tuple[int, int]] = []
    for f in fractions:
        buf.append((f.numerator, f.denominator))
        if len(buf) == chunk:
            n, d = pair_tree_sum(buf)
            chunk_totals.append(Fraction(n, d))
            buf.clear()
    if buf:
        n, d = pair_tree_sum(buf)
        chunk_totals.append(Fraction(n, d))
    if not chunk_totals:
        return Fraction(0)
    while len(chunk_totals) > 1:
        merged = [
            chunk_totals[i] + chunk_totals[i + 1]
            for i in range(0, len(chunk_totals) - 1, 2)
        ]
        if len(chunk_totals) % 2:
            merged.append(chunk_totals[-1])
        chunk_totals = merged
    return chunk_totals[0]
