"""Example-based machine translation from French text to AZee expressions."""

from .azee import (
    Atom,
    AzExpr,
    AzNode,
    BadAddressError,
    BadIndentationError,
    DanglingLabelError,
    EmptyInputError,
    ListNode,
    NoNodeAtLineError,
    NodeAddress,
    OrphanArgumentLabelError,
    Rule,
    find_nodes_matching,
    node_at,
    node_at_line,
    parse_az,
    print_az,
    substitute,
    subtree_equal,
    walk,
)
from .bank import (
    Alignment,
    Bank,
    BankLoadError,
    MissingFileError,
    OffsetOutOfRangeError,
    Violation,
    antimatchable,
    bank_from_pairs,
    exact_lookup,
    load_bank,
    validate,
)
from .matching import (
    DegenerateCorrection,
    GapPair,
    MatchCandidate,
    MatchFailure,
    Score,
    TooManyGaps,
    compute_antimatch,
    rank,
    score,
)
from .partitions import (
    CycleDetectedError,
    DepToken,
    DepTree,
    DirectoryParseSource,
    MalformedConlluError,
    MappingParseSource,
    Partition,
    TooShortError,
    enumerate_partitions,
    fallback_chunks,
    load_parse,
    sentence_key,
)
from .tokens import (
    Token,
    TokenizedText,
    common_token_count,
    tokenize,
    tokens_flexibly_equal,
)
from .translate import (
    AntiMatch,
    EmptyQueryError,
    ExactMatch,
    Fallback,
    NoTranslationError,
    TooFewUnitsError,
    TranslateConfig,
    TranslationCandidate,
    make_sss,
    replay_derivation,
    translate,
    translate_by_antimatch,
    translate_by_partition,
    translate_exact,
)

__version__ = "0.1.0"
