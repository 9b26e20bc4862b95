"""Top-k periodic high-utility itemset mining with signed utilities."""

from .dataset import (
    Database,
    ParseError,
    Transaction,
    describe,
    generate_database,
    load_database,
    parse_database,
    serialize_database,
)
from .measures import (
    ABSENT,
    PeriodConstraints,
    PeriodMetrics,
    UtilityTriple,
    is_phui,
    itemset_utility,
    period_metrics,
    rtu,
    rtwu,
    support_bounds,
)
from .miner import MiningResult, Pattern, StrategyConfig, mine_topk
from .oracle import brute_topk, enumerate_phuis

__version__ = "0.1.0"

__all__ = [
    "ABSENT",
    "Database",
    "MiningResult",
    "ParseError",
    "Pattern",
    "PeriodConstraints",
    "PeriodMetrics",
    "StrategyConfig",
    "Transaction",
    "UtilityTriple",
    "brute_topk",
    "describe",
    "enumerate_phuis",
    "generate_database",
    "is_phui",
    "itemset_utility",
    "load_database",
    "mine_topk",
    "parse_database",
    "period_metrics",
    "rtu",
    "rtwu",
    "serialize_database",
    "support_bounds",
]
