"""Threshold-raising strategies and the pair-level pruning predicate.

Each raiser only ever raises, and only to the exact utility of a genuine
periodic high-utility itemset, so it can never overshoot the k-th best
result. A raiser is a no-op when its candidate pool has fewer than k
members.
"""

from __future__ import annotations

from dataclasses import dataclass

from .measures import ABSENT, PeriodConstraints, support_bounds
from .structures import PEUCS, ItemStats, avg_period


@dataclass
class RaiseTrace:
    after_piu: int = 0
    after_pcud: int = 0
    after_pru: int = 0


def _item_period_ok(st: ItemStats, c: PeriodConstraints, db_size: int) -> bool:
    return (
        st.max_per <= c.max_per
        and (st.min_per is ABSENT or st.min_per >= c.min_per)
        and c.min_avg <= avg_period(st.support, db_size) <= c.max_avg
    )


def piu_values(stats: dict[int, ItemStats], c: PeriodConstraints, db_size: int) -> list[int]:
    """Utilities of single items that fully satisfy the period constraints
    and have positive utility."""
    return [
        st.utility for st in stats.values()
        if st.utility > 0 and _item_period_ok(st, c, db_size)
    ]


def piu_raise(
    stats: dict[int, ItemStats],
    k: int,
    c: PeriodConstraints,
    db_size: int,
    minutil: int,
) -> int:
    pool = piu_values(stats, c, db_size)
    if len(pool) < k:
        return minutil
    pool.sort(reverse=True)
    return max(minutil, pool[k - 1])


def pcudm_values(
    peucs: PEUCS,
    c: PeriodConstraints,
    db_size: int,
    minutil: int,
) -> list[int]:
    """Pair utilities admitted to the PCUD pool: RTWU at least ``minutil``,
    positive utility, and full period satisfaction (support bounds encode
    the average-period interval exactly)."""
    lower, upper = support_bounds(db_size, c)
    return [
        p.utility for p in peucs.values()
        if p.rtwu >= minutil
        and p.utility > 0
        and p.max_per <= c.max_per
        and (p.min_per is ABSENT or p.min_per >= c.min_per)
        and lower <= p.support <= upper
    ]


def pcud_raise(
    peucs: PEUCS,
    k: int,
    c: PeriodConstraints,
    db_size: int,
    minutil: int,
) -> int:
    pool = pcudm_values(peucs, c, db_size, minutil)
    if len(pool) < k:
        return minutil
    pool.sort(reverse=True)
    return max(minutil, pool[k - 1])


def pru_raise(
    stats: dict[int, ItemStats],
    peucs: PEUCS,
    k: int,
    c: PeriodConstraints,
    db_size: int,
    minutil: int,
) -> int:
    """Pool the qualifying single-item and pair utilities and raise to the
    k-th largest of the union."""
    pool = piu_values(stats, c, db_size) + pcudm_values(peucs, c, db_size, minutil)
    if len(pool) < k:
        return minutil
    pool.sort(reverse=True)
    return max(minutil, pool[k - 1])


def eucp_escp_admits(
    peucs: PEUCS,
    m: int,
    n: int,
    minutil: int,
    c: PeriodConstraints,
    support_lb: int,
) -> bool:
    """Pair-level extension admission: RTWU floor plus the anti-monotone
    period checks (max period, support lower bound) read from PEUCS.
    ``m`` must precede ``n`` in the processing order; a pair that never
    co-occurs is rejected outright."""
    pair = peucs.get((m, n))
    if pair is None:
        return False
    return (
        pair.rtwu >= minutil
        and pair.max_per <= c.max_per
        and pair.support >= support_lb
    )
