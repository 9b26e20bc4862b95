from puminer.strategies import (
    eucp_escp_admits,
    pcud_raise,
    pcudm_values,
    piu_raise,
    piu_values,
    pru_raise,
)
from puminer.structures import build_order, scan1, scan2

from conftest import ids


def _prepared(running_db, constraints):
    stats = scan1(running_db)
    order = build_order(stats, 0, constraints, running_db.size)
    _, peucs = scan2(running_db, order)
    return stats, peucs


def test_piu_pool(running_db, constraints):
    stats, _ = _prepared(running_db, constraints)
    # positive-utility items that fully satisfy the period constraints
    assert sorted(piu_values(stats, constraints, running_db.size)) == [20, 35, 54, 132]


def test_piu_raise(running_db, constraints):
    stats, _ = _prepared(running_db, constraints)
    assert piu_raise(stats, 3, constraints, running_db.size, 0) == 35
    assert piu_raise(stats, 1, constraints, running_db.size, 0) == 132
    # pool smaller than k: no-op
    assert piu_raise(stats, 5, constraints, running_db.size, 0) == 0
    # never lowers an existing floor
    assert piu_raise(stats, 3, constraints, running_db.size, 50) == 50


def test_pcudm(running_db, constraints):
    _, peucs = _prepared(running_db, constraints)
    values = pcudm_values(peucs, constraints, running_db.size, 35)
    assert sorted(values) == [4, 8, 20, 20, 23, 27, 38, 41, 44, 77, 90, 120]


def test_pcud_raise(running_db, constraints):
    _, peucs = _prepared(running_db, constraints)
    assert pcud_raise(peucs, 3, constraints, running_db.size, 35) == 77
    assert pcud_raise(peucs, 50, constraints, running_db.size, 35) == 35


def test_pru_raise(running_db, constraints):
    stats, peucs = _prepared(running_db, constraints)
    assert pru_raise(stats, peucs, 3, constraints, running_db.size, 77) == 90
    # k=2 over the union pool: the two largest utilities are 132 and 120
    assert pru_raise(stats, peucs, 2, constraints, running_db.size, 0) == 120
    assert pru_raise(stats, peucs, 100, constraints, running_db.size, 42) == 42


def test_eucp_escp_admits(running_db, constraints):
    _, peucs = _prepared(running_db, constraints)
    e, a, c = ids("e", "a", "c")
    # RTWU(ea)=103 >= 90, maxPer 4 <= 5, support 5 >= 1
    assert eucp_escp_admits(peucs, e, a, 90, constraints, 1)
    # RTWU(ec)=57 < 90
    assert not eucp_escp_admits(peucs, e, c, 90, constraints, 1)
    # a pair that never co-occurs is absent from the table
    assert not eucp_escp_admits(peucs, 98, 99, 0, constraints, 0)


def test_raisers_monotone(running_db, constraints):
    stats, peucs = _prepared(running_db, constraints)
    m0 = 0
    m1 = piu_raise(stats, 3, constraints, running_db.size, m0)
    m2 = pcud_raise(peucs, 3, constraints, running_db.size, m1)
    m3 = pru_raise(stats, peucs, 3, constraints, running_db.size, m2)
    assert m0 <= m1 <= m2 <= m3
    assert (m1, m2, m3) == (35, 77, 90)
