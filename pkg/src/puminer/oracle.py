"""Exhaustive ground-truth enumeration for desk-scale correctness checks.

Every itemset that occurs in at least one transaction is evaluated
directly against the utility floor and period constraints; nothing is
pruned, so the output is invariant to any change in the miner's
strategies or pruning.
"""

from __future__ import annotations

from .dataset import Database
from .measures import PeriodConstraints, item_sort_keys, period_metrics, satisfies_periods
from .miner import Pattern

DEFAULT_ITEM_CAP = 20


def _tid_bits(mask: int) -> list[int]:
    tids = []
    while mask:
        low = mask & -mask
        tids.append(low.bit_length() - 1)
        mask ^= low
    return tids


def enumerate_phuis(
    db: Database,
    c: PeriodConstraints,
    minutil: int,
    max_items: int = DEFAULT_ITEM_CAP,
) -> list[Pattern]:
    """All periodic high-utility itemsets at the given utility floor,
    unsorted. Refuses databases with more distinct items than
    ``max_items`` (2^n enumeration); use the miner for those."""
    items = sorted(db.items())
    if len(items) > max_items:
        raise ValueError(
            f"{len(items)} distinct items exceeds the enumeration cap "
            f"{max_items}; use the miner for this database"
        )
    minutil = max(0, minutil)

    masks: dict[int, int] = {i: 0 for i in items}
    utils: dict[int, dict[int, int]] = {i: {} for i in items}
    for txn in db.transactions:
        for item, u in txn.entries:
            masks[item] |= 1 << txn.tid
            utils[item][txn.tid] = u

    results: list[Pattern] = []

    def visit(start: int, chosen: list[int], mask: int) -> None:
        for idx in range(start, len(items)):
            item = items[idx]
            sub_mask = mask & masks[item]
            if sub_mask == 0:
                # itemset occurs in no transaction; neither do its supersets
                continue
            chosen.append(item)
            tids = _tid_bits(sub_mask)
            utility = sum(utils[i][t] for i in chosen for t in tids)
            metrics = period_metrics(tids, db.size)
            if utility >= minutil and satisfies_periods(metrics, c):
                results.append(Pattern(
                    tuple(chosen), utility, metrics.support,
                    metrics.min_per, metrics.max_per, metrics.avg_per,
                ))
            visit(idx + 1, chosen, sub_mask)
            chosen.pop()

    full = (1 << (db.size + 1)) - 2  # tids 1..size
    visit(0, [], full)
    return results


def sort_patterns(patterns: list[Pattern], db: Database) -> list[Pattern]:
    """Utility descending, ties by lexicographic itemset comparison under
    the item processing order (the miner's tie rule)."""
    keys = item_sort_keys(db)
    return sorted(
        patterns,
        key=lambda p: (-p.utility, tuple(sorted(keys[i] for i in p.items))),
    )


def brute_topk(
    db: Database,
    k: int,
    c: PeriodConstraints,
    max_items: int = DEFAULT_ITEM_CAP,
) -> list[Pattern]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return sort_patterns(enumerate_phuis(db, c, 0, max_items), db)[:k]
