"""Transaction databases with signed per-item utilities.

File format (SPMF-style, one transaction per line):

    i1 i2 ... in:TU:u1 u2 ... un

where the first field lists item ids, the second the declared transaction
utility, and the third the signed utility of each item in the transaction
(quantity times external utility, pre-multiplied). Lines starting with
``#``, ``%`` or ``@`` are comments.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable

log = logging.getLogger(__name__)

COMMENT_PREFIXES = ("#", "%", "@")


class ParseError(ValueError):
    """Raised for malformed database files; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class Transaction:
    tid: int
    entries: tuple[tuple[int, int], ...]  # (item, signed utility)

    def items(self) -> tuple[int, ...]:
        return tuple(item for item, _ in self.entries)

    def tu(self) -> int:
        return sum(u for _, u in self.entries)


@dataclass(frozen=True)
class Database:
    """Immutable after load; ``size`` is fixed even if items are later filtered."""

    transactions: tuple[Transaction, ...]
    size: int
    item_signs: dict[int, int]  # item -> +1 or -1, consistent database-wide

    def items(self) -> set[int]:
        return set(self.item_signs)


def _sign_map(transactions: Iterable[Transaction]) -> dict[int, int]:
    """Derive the global sign of every item; inconsistent signs are an error."""
    signs: dict[int, int] = {}
    for txn in transactions:
        for item, u in txn.entries:
            if u == 0:
                continue
            s = 1 if u > 0 else -1
            prev = signs.get(item)
            if prev is None:
                signs[item] = s
            elif prev != s:
                raise ParseError(
                    f"item {item} has inconsistent utility sign (tid {txn.tid})"
                )
    return signs


def _finish(transactions: list[Transaction]) -> Database:
    signs = _sign_map(transactions)
    # items that only ever appear with utility 0 default to the positive class
    for txn in transactions:
        for item, _ in txn.entries:
            signs.setdefault(item, 1)
    return Database(tuple(transactions), len(transactions), signs)


def parse_database(lines: Iterable[str]) -> Database:
    """Parse a database from an iterable of text lines.

    The declared TU field is advisory: it is recomputed from the signed
    utilities and a mismatch is logged as a warning, not an error.
    """
    transactions: list[Transaction] = []
    tid = 0
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.startswith(COMMENT_PREFIXES):
            continue
        if not line.strip():
            raise ParseError("empty line (tids must stay consecutive)", line_no)
        fields = line.split(":")
        if len(fields) != 3:
            raise ParseError(f"expected 3 ':'-separated fields, got {len(fields)}", line_no)
        item_tokens = fields[0].split()
        util_tokens = fields[2].split()
        if len(item_tokens) != len(util_tokens):
            raise ParseError(
                f"{len(item_tokens)} items but {len(util_tokens)} utilities", line_no
            )
        if not item_tokens:
            raise ParseError("transaction has no items", line_no)
        try:
            items = [int(t) for t in item_tokens]
            utils = [int(t) for t in util_tokens]
            declared_tu = int(fields[1])
        except ValueError as exc:
            raise ParseError(f"non-integer token ({exc})", line_no) from None
        if any(i <= 0 for i in items):
            raise ParseError("item ids must be positive integers", line_no)
        if len(set(items)) != len(items):
            raise ParseError("duplicate item in transaction", line_no)
        tid += 1
        entries = tuple(zip(items, utils))
        if declared_tu != sum(utils):
            log.warning(
                "line %d: declared TU %d differs from signed sum %d; using the sum",
                line_no, declared_tu, sum(utils),
            )
        transactions.append(Transaction(tid, entries))
    if not transactions:
        raise ParseError("empty database file")
    return _finish(transactions)


def load_database(path) -> Database:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_database(fh)


def serialize_database(db: Database) -> str:
    """Canonical text form; TU is the recomputed signed sum, so a round trip
    reparses without warnings."""
    lines = []
    for txn in db.transactions:
        items = " ".join(str(i) for i, _ in txn.entries)
        utils = " ".join(str(u) for _, u in txn.entries)
        lines.append(f"{items}:{txn.tu()}:{utils}")
    return "\n".join(lines) + "\n"


def generate_database(
    seed: int,
    n_txn: int,
    n_items: int,
    max_qty: int = 5,
    utility_range: tuple[int, int] = (-5, 5),
    density: float = 0.3,
) -> Database:
    """Deterministic synthetic database for a given seed.

    Each item gets a fixed nonzero external utility drawn from
    ``utility_range``, so its sign is consistent database-wide; quantities
    vary per transaction and utilities are stored pre-multiplied.
    """
    lo, hi = utility_range
    if n_txn < 1 or n_items < 1:
        raise ValueError("n_txn and n_items must be >= 1")
    if max_qty < 1:
        raise ValueError("max_qty must be >= 1")
    if lo >= hi:
        raise ValueError("utility_range must be a non-degenerate interval")
    if not (0 < density <= 1):
        raise ValueError("density must be in (0, 1]; transactions are never empty")
    choices = [v for v in range(lo, hi + 1) if v != 0]
    if not choices:
        raise ValueError("utility_range contains no nonzero value")

    rng = random.Random(seed)
    eu = {item: rng.choice(choices) for item in range(1, n_items + 1)}
    transactions = []
    for tid in range(1, n_txn + 1):
        picked = [i for i in range(1, n_items + 1) if rng.random() < density]
        if not picked:
            picked = [rng.randint(1, n_items)]
        entries = tuple((i, rng.randint(1, max_qty) * eu[i]) for i in picked)
        transactions.append(Transaction(tid, entries))
    return _finish(transactions)


def describe(db: Database) -> dict:
    """Summary stats: transaction/item counts, average length, utility extremes."""
    n_entries = sum(len(t.entries) for t in db.transactions)
    utilities = [u for t in db.transactions for _, u in t.entries]
    return {
        "transaction_count": db.size,
        "item_count": len(db.item_signs),
        "avg_transaction_length": n_entries / db.size if db.size else 0.0,
        "min_utility": min(utilities) if utilities else 0,
        "max_utility": max(utilities) if utilities else 0,
    }
