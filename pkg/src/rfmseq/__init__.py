"""Mining compact high recency/frequency/monetary sequential patterns."""

from .model import (
    Instance,
    ItemId,
    Money,
    MTDatabase,
    MTItemset,
    MTSequence,
    Params,
    Pattern,
    PatternStats,
    Timestamp,
    Violation,
    build_database,
    itemset,
    pattern_compare,
    validate_database,
)
from .io import (
    DatasetStats,
    ParseError,
    ValidationError,
    db_stats,
    format_stats,
    parse_mt_database,
    serialize_mt_database,
    serialize_result,
)
from .chain import (
    Chain,
    ChainElement,
    TreeNode,
    build_chain,
    build_initial_chains,
    chain_stats,
    em,
    em_by_sid,
    i_extend,
    pm,
    prepare,
    s_extend,
    swm,
)
from .miner import (
    CandidateEvent,
    MiningResult,
    PruneCounters,
    StrategyToggles,
    collect_extension_items,
    mine,
    mine_maximal,
)
from .maximal import MaximalSet, is_subsequence, maximal_filter, maximal_judge
from .oracle import OracleBudgetError, oracle_mine, oracle_mine_maximal
from .datagen import GenParams, generate, write_database

__version__ = "0.1.0"
