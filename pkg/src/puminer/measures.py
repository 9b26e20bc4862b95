"""Exact utility and periodicity mathematics for arbitrary itemsets.

These are the semantic ground truth used by both the miner and the
brute-force oracle. Average periods are kept as exact rationals
(``fractions.Fraction``) so threshold comparisons have no floating-point
boundary bugs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .dataset import Database, Transaction

# Sentinel for "minimum period undefined" (fewer than three periods).
# An ABSENT minimum period satisfies any min-period threshold.
ABSENT = None


@dataclass(frozen=True)
class UtilityTriple:
    pu: int  # sum of positive contributions, >= 0
    nu: int  # sum of negative contributions, <= 0
    u: int   # pu + nu


@dataclass(frozen=True)
class PeriodMetrics:
    support: int
    max_per: int
    min_per: Optional[int]
    avg_per: Fraction


@dataclass(frozen=True)
class PeriodConstraints:
    min_per: int
    max_per: int
    min_avg: Fraction
    max_avg: Fraction

    def __post_init__(self):
        object.__setattr__(self, "min_avg", Fraction(self.min_avg))
        object.__setattr__(self, "max_avg", Fraction(self.max_avg))
        if self.min_per < 1 or self.max_per < 1:
            raise ValueError("period thresholds must be positive")
        if self.min_avg <= 0 or self.max_avg <= 0:
            raise ValueError("average-period thresholds must be positive")
        if self.min_per > self.max_per:
            raise ValueError("min_per must not exceed max_per")
        if self.min_avg > self.max_avg:
            raise ValueError("min_avg must not exceed max_avg")


def rtu(txn: Transaction) -> int:
    """Redefined transaction utility: positive contributions only."""
    return sum(u for _, u in txn.entries if u > 0)


def _check_items(items: Iterable[int], db: Database) -> frozenset[int]:
    itemset = frozenset(items)
    if not itemset:
        raise ValueError("itemset must be non-empty")
    unknown = itemset - db.items()
    if unknown:
        raise ValueError(f"unknown item ids: {sorted(unknown)}")
    return itemset


def itemset_utility(items: Iterable[int], db: Database) -> UtilityTriple:
    itemset = _check_items(items, db)
    pu = nu = 0
    for txn in db.transactions:
        present = {i: u for i, u in txn.entries}
        if itemset <= present.keys():
            for i in itemset:
                if present[i] > 0:
                    pu += present[i]
                else:
                    nu += present[i]
    return UtilityTriple(pu, nu, pu + nu)


def rtwu(items: Iterable[int], db: Database) -> int:
    """Sum of RTU over all transactions containing the itemset."""
    itemset = _check_items(items, db)
    total = 0
    for txn in db.transactions:
        if itemset <= set(txn.items()):
            total += rtu(txn)
    return total


def itemset_tids(items: Iterable[int], db: Database) -> list[int]:
    itemset = _check_items(items, db)
    return [t.tid for t in db.transactions if itemset <= set(t.items())]


def period_metrics(tids: Sequence[int], db_size: int) -> PeriodMetrics:
    """Period statistics of an ascending tid list with virtual boundary tids
    0 and ``db_size``. The minimum period excludes the first and last
    elements of the period list and is ABSENT with fewer than three periods.
    """
    prev = 0
    periods = []
    for tid in tids:
        if tid <= prev or tid > db_size:
            raise ValueError("tids must be strictly ascending within 1..db_size")
        periods.append(tid - prev)
        prev = tid
    periods.append(db_size - prev)
    support = len(tids)
    max_per = max(periods)
    interior = periods[1:-1]
    min_per = min(interior) if interior else ABSENT
    return PeriodMetrics(support, max_per, min_per, Fraction(db_size, support + 1))


def satisfies_periods(m: PeriodMetrics, c: PeriodConstraints) -> bool:
    return (
        m.max_per <= c.max_per
        and (m.min_per is ABSENT or m.min_per >= c.min_per)
        and c.min_avg <= m.avg_per <= c.max_avg
    )


def support_bounds(db_size: int, c: PeriodConstraints) -> tuple[int, int]:
    """Support interval implied by the average-period bounds.

    Lower bound: smallest support with avgPer <= max_avg.
    Upper bound: largest support with avgPer >= min_avg, floored at 0.
    """
    import math

    lower = max(0, math.ceil(Fraction(db_size) / c.max_avg) - 1)
    upper = max(0, math.floor(Fraction(db_size) / c.min_avg) - 1)
    return lower, upper


def is_phui(items: Iterable[int], db: Database, c: PeriodConstraints, minutil: int) -> bool:
    """Full periodic-high-utility test. ``minutil`` is clamped to >= 0, so
    negative-utility itemsets are never PHUIs."""
    minutil = max(0, minutil)
    triple = itemset_utility(items, db)
    if triple.u < minutil:
        return False
    metrics = period_metrics(itemset_tids(items, db), db.size)
    return satisfies_periods(metrics, c)


def item_sort_keys(db: Database) -> dict[int, tuple[int, int, int]]:
    """Total-order key per item: negative items before positive, then
    ascending RTWU, ties broken by ascending id."""
    keys = {}
    for item, sign in db.item_signs.items():
        keys[item] = (0 if sign < 0 else 1, rtwu([item], db), item)
    return keys
