"""Vertical list structures built by two database scans.

Scan 1 collects per-item RTWU, exact utility and period state. Scan 2
builds one PNU-list per surviving item plus the pair table (PEUCS) that
caches RTWU, exact utility and period state for every co-occurring pair.
``construct`` joins two lists sharing a prefix, with lookahead-utility,
support and max-period abandonment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dataset import Database
from .measures import ABSENT, PeriodConstraints, rtu


@dataclass
class ItemStats:
    item: int
    negative: bool
    rtwu: int = 0
    utility: int = 0
    support: int = 0
    max_per: int = 0
    min_per: Optional[int] = ABSENT
    last_tid: int = 0


@dataclass(frozen=True)
class ItemOrder:
    items: tuple[int, ...]           # surviving items in processing order
    rank: dict[int, int]             # item -> position in ``items``

    def __contains__(self, item: int) -> bool:
        return item in self.rank


@dataclass
class PNUList:
    items: tuple[int, ...]           # itemset in processing order
    entries: list[tuple[int, int, int, int]]  # (tid, pu, nu, ru), ascending tid
    sum_pu: int = 0
    sum_nu: int = 0
    sum_ru: int = 0
    sum_rtu: int = 0                 # RTWU of the itemset (sum over entry tids)
    support: int = 0
    max_per: int = 0
    min_per: Optional[int] = ABSENT
    last_tid: int = 0


@dataclass
class PairStats:
    rtwu: int = 0
    utility: int = 0
    support: int = 0
    max_per: int = 0
    min_per: Optional[int] = ABSENT
    last_tid: int = 0


# PEUCS: triangular map keyed by (earlier item, later item) in the processing
# order, present for exactly the co-occurring surviving pairs.
PEUCS = dict[tuple[int, int], PairStats]


def _bump_period(obj, tid: int) -> None:
    """Fold the gap to the previous occurrence into the period state.

    The gap from the virtual tid 0 (first occurrence) feeds max_per only;
    gaps between consecutive occurrences also feed min_per. The trailing
    gap is folded in by the finalize step.
    """
    gap = tid - obj.last_tid
    if gap > obj.max_per:
        obj.max_per = gap
    if obj.last_tid != 0:
        if obj.min_per is ABSENT or gap < obj.min_per:
            obj.min_per = gap
    obj.last_tid = tid
    obj.support += 1


def _finalize_period(obj, db_size: int) -> None:
    tail = db_size - obj.last_tid
    if tail > obj.max_per:
        obj.max_per = tail


def scan1(db: Database) -> dict[int, ItemStats]:
    """First pass: exact RTWU, exact utility and period state per item."""
    stats: dict[int, ItemStats] = {}
    for txn in db.transactions:
        r = rtu(txn)
        for item, u in txn.entries:
            st = stats.get(item)
            if st is None:
                st = stats[item] = ItemStats(item, db.item_signs[item] < 0)
            st.rtwu += r
            st.utility += u
            _bump_period(st, txn.tid)
    for st in stats.values():
        _finalize_period(st, db.size)
    return stats


def avg_period(support: int, db_size: int) -> Fraction:
    return Fraction(db_size, support + 1)


def build_order(
    stats: dict[int, ItemStats],
    minutil: int,
    c: PeriodConstraints,
    db_size: int,
) -> ItemOrder:
    """Keep items passing the anti-monotone filters (RTWU, maxPer, maxAvg)
    and order them: negatives first, then ascending RTWU, ties by id."""
    survivors = [
        st for st in stats.values()
        if st.rtwu >= minutil
        and st.max_per <= c.max_per
        and avg_period(st.support, db_size) <= c.max_avg
    ]
    survivors.sort(key=lambda st: (0 if st.negative else 1, st.rtwu, st.item))
    items = tuple(st.item for st in survivors)
    return ItemOrder(items, {item: i for i, item in enumerate(items)})


def scan2(db: Database, order: ItemOrder) -> tuple[list[PNUList], PEUCS]:
    """Second pass: singleton PNU-lists and the PEUCS pair table.

    Items outside the order are dropped from transactions; tids and the
    database size are unchanged. Pair RTWU sums the RTU of the original
    transactions where the pair co-occurs.
    """
    singles = {item: PNUList((item,), []) for item in order.items}
    peucs: PEUCS = {}
    for txn in db.transactions:
        kept = [(item, u) for item, u in txn.entries if item in order.rank]
        if not kept:
            continue
        kept.sort(key=lambda e: order.rank[e[0]])
        r = rtu(txn)
        # suffix sums of positive utilities in processing order
        suffix = [0] * (len(kept) + 1)
        for i in range(len(kept) - 1, -1, -1):
            u = kept[i][1]
            suffix[i] = suffix[i + 1] + (u if u > 0 else 0)
        for i, (item, u) in enumerate(kept):
            lst = singles[item]
            pu = u if u > 0 else 0
            nu = u if u < 0 else 0
            lst.entries.append((txn.tid, pu, nu, suffix[i + 1]))
            lst.sum_pu += pu
            lst.sum_nu += nu
            lst.sum_ru += suffix[i + 1]
            lst.sum_rtu += r
            _bump_period(lst, txn.tid)
        for i in range(len(kept)):
            for j in range(i + 1, len(kept)):
                key = (kept[i][0], kept[j][0])
                pair = peucs.get(key)
                if pair is None:
                    pair = peucs[key] = PairStats()
                pair.rtwu += r
                pair.utility += kept[i][1] + kept[j][1]
                _bump_period(pair, txn.tid)
    for lst in singles.values():
        _finalize_period(lst, db.size)
    for pair in peucs.values():
        _finalize_period(pair, db.size)
    return [singles[item] for item in order.items], peucs


def pnul_bounds(lst: PNUList) -> tuple[int, int]:
    """(exact utility, remaining-utility cap) of a finalized list."""
    return lst.sum_pu + lst.sum_nu, lst.sum_pu + lst.sum_ru


def construct(
    prefix: Optional[PNUList],
    pm: PNUList,
    pn: PNUList,
    minutil: int,
    support_lb: int,
    max_per_limit: int,
    db_size: int,
    rtu_by_tid: list[int],
) -> Optional[PNUList]:
    """Join two lists sharing a prefix into the list of their union.

    Returns None (abandoned) when the lookahead utility bound drops below
    ``minutil``, the remaining possible support drops below ``support_lb``,
    or any gap between accepted tids (including the virtual boundaries)
    exceeds ``max_per_limit``.
    """
    if pm.items[:-1] != pn.items[:-1]:
        raise ValueError(f"lists {pm.items} and {pn.items} do not share a prefix")
    if prefix is not None and prefix.items != pm.items[:-1]:
        raise ValueError(f"prefix {prefix.items} does not match {pm.items}")

    out = PNUList(pm.items + (pn.items[-1],), [])
    sum_utility = pm.sum_pu + pm.sum_ru
    remaining_sup = pm.support
    pn_entries = pn.entries
    p_entries = prefix.entries if prefix is not None else None
    j = pi = 0
    for tid, epu, enu, eru in pm.entries:
        while j < len(pn_entries) and pn_entries[j][0] < tid:
            j += 1
        if j < len(pn_entries) and pn_entries[j][0] == tid:
            _, npu, nnu, nru = pn_entries[j]
            if p_entries is None:
                pu = epu + npu
                nu = enu + nnu
            else:
                while pi < len(p_entries) and p_entries[pi][0] < tid:
                    pi += 1
                if pi >= len(p_entries) or p_entries[pi][0] != tid:
                    raise ValueError(f"prefix list lacks an entry for tid {tid}")
                _, ppu, pnu, _ = p_entries[pi]
                pu = epu + npu - ppu
                nu = enu + nnu - pnu
            gap = tid - out.last_tid
            if gap > max_per_limit:
                return None
            if gap > out.max_per:
                out.max_per = gap
            if out.entries and (out.min_per is ABSENT or gap < out.min_per):
                out.min_per = gap
            out.entries.append((tid, pu, nu, nru))
            out.sum_pu += pu
            out.sum_nu += nu
            out.sum_ru += nru
            out.sum_rtu += rtu_by_tid[tid]
            out.last_tid = tid
        else:
            sum_utility -= epu + eru
            remaining_sup -= 1
            if sum_utility < minutil or remaining_sup < support_lb:
                return None
    if not out.entries:
        # the extension occurs in no transaction, and neither can any superset
        return None
    tail = db_size - out.last_tid
    if tail > max_per_limit:
        return None
    if tail > out.max_per:
        out.max_per = tail
    out.support = len(out.entries)
    return out
