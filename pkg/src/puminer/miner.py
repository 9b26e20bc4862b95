"""Top-k mining driver: preparation passes, threshold raising, and the
depth-first search over the set-enumeration tree.

The minimum-utility floor starts at 0 and only rises: first via the
enabled threshold-raising strategies, then via the bounded top-k pool as
it fills. Extension gating uses only anti-monotone checks (itemset RTWU,
max period, support lower bound), so strategies change cost, never
results.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dataset import Database
from .measures import (
    ABSENT,
    PeriodConstraints,
    item_sort_keys,
    rtu,
    support_bounds,
)
from .strategies import RaiseTrace, eucp_escp_admits, pcud_raise, piu_raise, pru_raise
from .structures import PEUCS, PNUList, build_order, construct, scan1, scan2


@dataclass(frozen=True)
class StrategyConfig:
    use_piu: bool = True
    use_pcud: bool = True
    use_pru: bool = True

    @classmethod
    def full(cls) -> "StrategyConfig":
        return cls(True, True, True)

    @classmethod
    def base(cls) -> "StrategyConfig":
        return cls(True, False, False)


@dataclass(frozen=True)
class Pattern:
    items: tuple[int, ...]  # original ids, ascending
    utility: int
    support: int
    min_per: Optional[int]
    max_per: int
    avg_per: Fraction


@dataclass
class MiningMetrics:
    candidates_visited: int = 0
    lists_constructed: int = 0
    constructs_abandoned: int = 0
    peak_minutil: int = 0
    wall_time: float = 0.0
    join_attempts: Optional[list[tuple[int, ...]]] = None

    def merge(self, other: "MiningMetrics") -> None:
        self.candidates_visited += other.candidates_visited
        self.lists_constructed += other.lists_constructed
        self.constructs_abandoned += other.constructs_abandoned
        if self.join_attempts is not None and other.join_attempts is not None:
            self.join_attempts.extend(other.join_attempts)


@dataclass
class MiningResult:
    patterns: list[Pattern]
    trace: RaiseTrace
    metrics: MiningMetrics


class TopKPool:
    """Bounded pool of the best itemsets seen so far.

    Members are kept k-smallest under the key (-utility, rank sequence),
    which makes eviction order-independent: the lowest utility goes first,
    ties evict the lexicographically greatest itemset under the item
    order. The floor is the k-th utility once full, else 0.
    """

    def __init__(self, k: int, item_keys: dict[int, tuple]):
        self.k = k
        self.item_keys = item_keys
        self._members: dict[frozenset[int], tuple] = {}

    def sort_key(self, items, utility):
        return (-utility, tuple(sorted(self.item_keys[i] for i in items)))

    def insert(self, items: tuple[int, ...], utility: int, metrics_tuple) -> int:
        """Insert a verified pattern; duplicates are ignored. Returns the
        current floor."""
        key = frozenset(items)
        if key not in self._members:
            self._members[key] = (self.sort_key(items, utility), items, utility, metrics_tuple)
            if len(self._members) > self.k:
                worst = max(self._members, key=lambda m: self._members[m][0])
                del self._members[worst]
        return self.floor

    @property
    def floor(self) -> int:
        if len(self._members) < self.k:
            return 0
        return min(m[2] for m in self._members.values())

    def members(self):
        return sorted(self._members.values(), key=lambda m: m[0])


class _Ctx:
    """Shared search state: monotone minutil cell, pool, constants."""

    def __init__(self, pool, c, support_lb, support_ub, peucs, db_size, rtu_by_tid, minutil):
        self.pool = pool
        self.c = c
        self.support_lb = support_lb
        self.support_ub = support_ub
        self.peucs = peucs
        self.db_size = db_size
        self.rtu_by_tid = rtu_by_tid
        self.minutil = minutil
        self._lock = threading.Lock()

    def offer(self, lst: PNUList, utility: int) -> None:
        with self._lock:
            if utility < self.minutil:
                return
            metrics = (lst.support, lst.min_per, lst.max_per,
                       Fraction(self.db_size, lst.support + 1))
            floor = self.pool.insert(lst.items, utility, metrics)
            if floor > self.minutil:
                self.minutil = floor

    def period_ok_full(self, lst: PNUList) -> bool:
        return (
            lst.max_per <= self.c.max_per
            and (lst.min_per is ABSENT or lst.min_per >= self.c.min_per)
            and self.support_lb <= lst.support <= self.support_ub
        )


def _search(prefix: Optional[PNUList], extensions: list[PNUList],
            ctx: _Ctx, metrics: MiningMetrics) -> None:
    for idx, pm in enumerate(extensions):
        metrics.candidates_visited += 1
        utility = pm.sum_pu + pm.sum_nu
        if utility >= ctx.minutil and ctx.period_ok_full(pm):
            ctx.offer(pm, utility)
        # extension gate: anti-monotone checks only (RTWU, maxPer, maxAvg)
        if (pm.sum_rtu >= ctx.minutil
                and pm.max_per <= ctx.c.max_per
                and pm.support >= ctx.support_lb):
            children = []
            m = pm.items[-1]
            for pn in extensions[idx + 1:]:
                n = pn.items[-1]
                if eucp_escp_admits(ctx.peucs, m, n, ctx.minutil, ctx.c, ctx.support_lb):
                    if metrics.join_attempts is not None:
                        metrics.join_attempts.append(pm.items + (n,))
                    child = construct(prefix, pm, pn, ctx.minutil, ctx.support_lb,
                                      ctx.c.max_per, ctx.db_size, ctx.rtu_by_tid)
                    if child is None:
                        metrics.constructs_abandoned += 1
                    else:
                        metrics.lists_constructed += 1
                        children.append(child)
            if children:
                _search(pm, children, ctx, metrics)


def mine_topk(
    db: Database,
    k: int,
    c: PeriodConstraints,
    config: StrategyConfig = StrategyConfig.full(),
    workers: int = 1,
    record_joins: bool = False,
) -> MiningResult:
    """Mine the k highest-utility periodic high-utility itemsets.

    Deterministic for fixed inputs when ``workers == 1``. With more
    workers, sibling subtrees run concurrently; the pattern set is
    unchanged but candidate counts become nondeterministic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    item_keys = item_sort_keys(db)
    pool = TopKPool(k, item_keys)
    metrics = MiningMetrics(join_attempts=[] if record_joins else None)

    if db.size == 0:
        metrics.wall_time = time.perf_counter() - t0
        return MiningResult([], RaiseTrace(), metrics)

    stats = scan1(db)
    minutil = 0
    if config.use_piu:
        minutil = piu_raise(stats, k, c, db.size, minutil)
    after_piu = minutil

    order = build_order(stats, minutil, c, db.size)
    singles, peucs = scan2(db, order)

    if config.use_pcud:
        minutil = pcud_raise(peucs, k, c, db.size, minutil)
    after_pcud = minutil
    if config.use_pru:
        minutil = pru_raise(stats, peucs, k, c, db.size, minutil)
    after_pru = minutil
    trace = RaiseTrace(after_piu, after_pcud, after_pru)

    support_lb, support_ub = support_bounds(db.size, c)
    rtu_by_tid = [0] * (db.size + 1)
    for txn in db.transactions:
        rtu_by_tid[txn.tid] = rtu(txn)
    ctx = _Ctx(pool, c, support_lb, support_ub, peucs, db.size, rtu_by_tid, minutil)

    if workers <= 1 or len(singles) <= 1:
        _search(None, singles, ctx, metrics)
    else:
        # Each task owns one top-level extension; it still sees the later
        # siblings as join partners but does not iterate past its head.
        def run_head(idx: int) -> MiningMetrics:
            local = MiningMetrics(join_attempts=[] if record_joins else None)
            _search_head(None, singles, idx, ctx, local)
            return local

        with ThreadPoolExecutor(max_workers=workers) as ex:
            for local in ex.map(run_head, range(len(singles))):
                metrics.merge(local)

    patterns = [
        Pattern(tuple(sorted(items)), utility, m[0], m[1], m[2], m[3])
        for _, items, utility, m in pool.members()
    ]
    metrics.peak_minutil = ctx.minutil
    metrics.wall_time = time.perf_counter() - t0
    return MiningResult(patterns, trace, metrics)


def _search_head(prefix, extensions, idx, ctx, metrics) -> None:
    """Process exactly one top-level extension (with its later siblings as
    join partners); used by the parallel mode."""
    pm = extensions[idx]
    metrics.candidates_visited += 1
    utility = pm.sum_pu + pm.sum_nu
    if utility >= ctx.minutil and ctx.period_ok_full(pm):
        ctx.offer(pm, utility)
    if (pm.sum_rtu >= ctx.minutil
            and pm.max_per <= ctx.c.max_per
            and pm.support >= ctx.support_lb):
        children = []
        m = pm.items[-1]
        for pn in extensions[idx + 1:]:
            n = pn.items[-1]
            if eucp_escp_admits(ctx.peucs, m, n, ctx.minutil, ctx.c, ctx.support_lb):
                if metrics.join_attempts is not None:
                    metrics.join_attempts.append(pm.items + (n,))
                child = construct(prefix, pm, pn, ctx.minutil, ctx.support_lb,
                                  ctx.c.max_per, ctx.db_size, ctx.rtu_by_tid)
                if child is None:
                    metrics.constructs_abandoned += 1
                else:
                    metrics.lists_constructed += 1
                    children.append(child)
        if children:
            _search(pm, children, ctx, metrics)
