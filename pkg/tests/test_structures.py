import random

import pytest

from puminer.dataset import generate_database, parse_database
from puminer.measures import ABSENT, PeriodConstraints, rtu, rtwu
from puminer.structures import (
    build_order,
    construct,
    pnul_bounds,
    scan1,
    scan2,
)

from conftest import LETTERS, ids


# (rtwu, utility, minPer, maxPer, support) for every co-occurring pair,
# keyed by letters in processing order g < e < c < a < d < b < f.
PEUCS_GOLDEN = {
    ("g", "e"): (47, -15, 3, 4, 3),
    ("g", "c"): (76, -21, 2, 3, 4),
    ("g", "a"): (44, 6, 1, 6, 3),
    ("g", "d"): (88, 20, 1, 2, 5),
    ("g", "b"): (50, 8, 5, 5, 2),
    ("g", "f"): (65, 20, 2, 3, 3),
    ("e", "c"): (57, -23, 2, 4, 4),
    ("e", "a"): (103, -14, 1, 4, 5),
    ("e", "d"): (65, 4, 1, 3, 5),
    ("e", "b"): (84, 2, 2, 6, 3),
    ("e", "f"): (89, 44, 3, 3, 3),
    ("c", "a"): (42, 2, 2, 7, 3),
    ("c", "d"): (128, 27, 1, 3, 6),
    ("c", "b"): (100, 23, 2, 3, 4),
    ("c", "f"): (147, 77, 1, 3, 5),
    ("a", "d"): (62, 41, 1, 3, 5),
    ("a", "b"): (84, 30, 2, 6, 3),
    ("a", "f"): (74, 56, 6, 6, 2),
    ("d", "b"): (60, 38, 2, 5, 3),
    ("d", "f"): (107, 90, 1, 3, 4),
    ("b", "f"): (143, 120, 1, 3, 4),
}


def _prepared(db, c, minutil=0):
    stats = scan1(db)
    order = build_order(stats, minutil, c, db.size)
    singles, peucs = scan2(db, order)
    by_item = {lst.items[0]: lst for lst in singles}
    rtu_by_tid = [0] * (db.size + 1)
    for txn in db.transactions:
        rtu_by_tid[txn.tid] = rtu(txn)
    return stats, order, singles, peucs, by_item, rtu_by_tid


def test_scan1_goldens(running_db):
    stats = scan1(running_db)
    a = stats[LETTERS["a"]]
    assert (a.rtwu, a.utility, a.support, a.max_per, a.min_per) == (115, 20, 6, 3, 1)
    f = stats[LETTERS["f"]]
    assert (f.utility, f.support, f.max_per) == (132, 6, 2)
    assert stats[LETTERS["g"]].negative
    assert not stats[LETTERS["d"]].negative
    assert stats[LETTERS["d"]].utility == 54
    assert stats[LETTERS["b"]].utility == 35


def test_build_order(running_db, constraints):
    stats = scan1(running_db)
    order = build_order(stats, 0, constraints, running_db.size)
    assert order.items == ids("g", "e", "c", "a", "d", "b", "f")
    assert all(item in order for item in order.items)
    assert 99 not in order


def test_build_order_filters(running_db, constraints):
    stats = scan1(running_db)
    order = build_order(stats, 90, constraints, running_db.size)
    expected = {i for i in LETTERS.values() if rtwu((i,), running_db) >= 90}
    assert set(order.items) == expected


def test_scan2_singletons(running_db, constraints):
    _, _, _, _, by_item, _ = _prepared(running_db, constraints)
    f = by_item[LETTERS["f"]]
    assert [e[0] for e in f.entries] == [2, 3, 5, 6, 8, 9]
    assert all(e[3] == 0 for e in f.entries)  # f is last in the order
    assert pnul_bounds(by_item[LETTERS["g"]]) == (-13, 88)
    assert pnul_bounds(by_item[LETTERS["e"]])[1] == 118
    for item, lst in by_item.items():
        assert lst.sum_rtu == rtwu((item,), running_db)
        assert lst.support == len(lst.entries)


def test_peucs_golden_table(running_db, constraints):
    _, _, _, peucs, _, _ = _prepared(running_db, constraints)
    assert len(peucs) == len(PEUCS_GOLDEN)
    for (x, y), (p_rtwu, util, min_per, max_per, support) in PEUCS_GOLDEN.items():
        pair = peucs[LETTERS[x], LETTERS[y]]
        assert (pair.rtwu, pair.utility, pair.min_per, pair.max_per,
                pair.support) == (p_rtwu, util, min_per, max_per, support), (x, y)


def test_construct_ea(running_db, constraints):
    _, _, _, _, by_item, rtu_by_tid = _prepared(running_db, constraints)
    ea = construct(None, by_item[LETTERS["e"]], by_item[LETTERS["a"]],
                   0, 1, 5, running_db.size, rtu_by_tid)
    assert ea is not None
    assert ea.items == ids("e", "a")
    assert [e[0] for e in ea.entries] == [1, 2, 4, 8, 10]


def test_construct_cdb_entries(running_db, constraints):
    _, _, _, _, by_item, rtu_by_tid = _prepared(running_db, constraints)
    c, d, b = (by_item[i] for i in ids("c", "d", "b"))
    cd = construct(None, c, d, 0, 1, 5, running_db.size, rtu_by_tid)
    cb = construct(None, c, b, 0, 1, 5, running_db.size, rtu_by_tid)
    cdb = construct(c, cd, cb, 0, 1, 5, running_db.size, rtu_by_tid)
    assert cdb.items == ids("c", "d", "b")
    assert cdb.entries == [(3, 17, -3, 12), (8, 13, -1, 6), (10, 8, -2, 0)]
    assert cdb.support == 3
    assert cdb.sum_pu + cdb.sum_nu == 32


def test_construct_lookahead_abandon(running_db, constraints):
    _, _, _, _, by_item, rtu_by_tid = _prepared(running_db, constraints)
    c, b, f = (by_item[i] for i in ids("c", "b", "f"))
    cb = construct(None, c, b, 0, 1, 5, running_db.size, rtu_by_tid)
    cf = construct(None, c, f, 0, 1, 5, running_db.size, rtu_by_tid)
    # at a floor of 90 the lookahead bound drops below threshold mid-join
    assert construct(c, cb, cf, 90, 1, 5, running_db.size, rtu_by_tid) is None
    cbf = construct(c, cb, cf, 0, 1, 5, running_db.size, rtu_by_tid)
    assert [e[0] for e in cbf.entries] == [3, 6, 8]


def test_construct_requires_shared_prefix(running_db, constraints):
    _, _, _, _, by_item, rtu_by_tid = _prepared(running_db, constraints)
    e, c, d = (by_item[i] for i in ids("e", "c", "d"))
    cd = construct(None, c, d, 0, 1, 5, running_db.size, rtu_by_tid)
    with pytest.raises(ValueError):
        construct(None, e, cd, 0, 1, 5, running_db.size, rtu_by_tid)


def test_construct_empty_intersection_abandoned():
    db = parse_database(["1:5:5", "2:3:3"])
    c = PeriodConstraints(1, 10, 1, 10)
    _, _, _, _, by_item, rtu_by_tid = _prepared(db, c)
    assert construct(None, by_item[1], by_item[2], 0, 0, 10, db.size,
                     rtu_by_tid) is None


def test_construct_gap_abandoned():
    db = parse_database(["1 2:2:1 1", "1:1:1", "1:1:1", "1:1:1", "1 2:2:1 1"])
    c = PeriodConstraints(1, 10, 1, 10)
    _, _, _, _, by_item, rtu_by_tid = _prepared(db, c)
    # pair occurs at tids 1 and 5: the interior gap of 4 exceeds the limit 2
    assert construct(None, by_item[1], by_item[2], 0, 0, 2, db.size,
                     rtu_by_tid) is None
    ok = construct(None, by_item[1], by_item[2], 0, 0, 4, db.size, rtu_by_tid)
    assert ok is not None and ok.max_per == 4 and ok.min_per == 4


def test_construct_support_underflow_abandoned():
    db = parse_database(["1 2:2:1 1", "1:1:1", "1:1:1"])
    c = PeriodConstraints(1, 10, 1, 10)
    _, _, _, _, by_item, rtu_by_tid = _prepared(db, c)
    # item 1 has support 3 but only one shared tid; demanding 2 must abandon
    assert construct(None, by_item[1], by_item[2], 0, 2, 10, db.size,
                     rtu_by_tid) is None


def _expected_pair_list(db, order, x, y):
    """Direct (tid, pu, nu, ru) computation for the 2-itemset {x, y}."""
    entries = []
    for txn in db.transactions:
        present = {i: u for i, u in txn.entries if i in order.rank}
        if x in present and y in present:
            pu = sum(u for i, u in ((x, present[x]), (y, present[y])) if u > 0)
            nu = sum(u for i, u in ((x, present[x]), (y, present[y])) if u < 0)
            ru = sum(u for i, u in present.items()
                     if u > 0 and order.rank[i] > order.rank[y])
            entries.append((txn.tid, pu, nu, ru))
    return entries


def test_construct_matches_direct_computation():
    c = PeriodConstraints(1, 1000, 1, 1000)
    rng = random.Random(5)
    checked = 0
    for seed in range(40):
        db = generate_database(seed=seed, n_txn=rng.randint(5, 25),
                               n_items=rng.randint(3, 8), max_qty=2,
                               density=0.5)
        _, order, singles, _, _, rtu_by_tid = _prepared(db, c)
        for i, pm in enumerate(singles):
            for pn in singles[i + 1:]:
                got = construct(None, pm, pn, 0, 0, db.size, db.size,
                                rtu_by_tid)
                expected = _expected_pair_list(db, order, pm.items[0], pn.items[0])
                if got is None:
                    continue
                checked += 1
                assert got.entries == expected
                assert got.sum_pu == sum(e[1] for e in expected)
                assert got.sum_nu == sum(e[2] for e in expected)
                assert got.sum_ru == sum(e[3] for e in expected)
                assert got.sum_rtu == sum(rtu_by_tid[e[0]] for e in expected)
    assert checked > 50


def test_remaining_capacity_antimonotone(running_db, constraints):
    _, _, singles, _, _, rtu_by_tid = _prepared(running_db, constraints)
    for i, pm in enumerate(singles):
        for pn in singles[i + 1:]:
            child = construct(None, pm, pn, 0, 0, running_db.size,
                              running_db.size, rtu_by_tid)
            if child is not None:
                assert pnul_bounds(child)[1] <= pnul_bounds(pm)[1]
