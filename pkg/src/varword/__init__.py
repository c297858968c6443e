"""Desk-scale laboratory for variable-word Ramsey search."""

from .words import (
    VarWord,
    assemble_from_blocks,
    char_string,
    flip,
    instantiate,
    iter_bits,
    iter_finsets,
    parse_word,
    shortlex_key,
    var,
    word,
    word_text,
)
from .colorings import (
    Coloring,
    DerivedColoring,
    RuleColoring,
    SeqColoring,
    TableColoring,
    coloring_from_file,
    coloring_to_file,
    parse_coloring,
    serialize_coloring,
)
from .certificates import (
    GammaCertificate,
    ValidityCertificate,
    WitnessTuple,
    build_validity,
    decode_tuple,
    encode_tuple,
    extract_witness,
    find_flip_pair,
    greedy_gamma,
    verify_certificate,
)
from .levels import (
    LevelSequence,
    WitnessChain,
    assemble_solution,
    build_witness_chain,
    compute_levels,
    derive_level_coloring,
)
from .search import (
    CheckResult,
    SolutionReport,
    brute_force_ovw,
    check_seq_solution,
    check_solution,
    find_word,
)
from .solve import solve_ovw
from .fut import (
    IPFragment,
    PairColoring,
    brute_force_fut,
    brute_force_wfut2,
    encode_ovw_as_wfut2,
    fut_to_ovw_pipeline,
    ip_closure_check,
)
from .lll import (
    AdversaryConfig,
    AdversaryTarget,
    ClauseSystem,
    SplitMix64,
    assignment_coloring,
    build_clause_system,
    make_targets,
    moser_tardos,
    verify_adversary,
)
from .matches import (
    EnumSchedule,
    MarkerSchedule,
    find_full_match_pair,
    find_match,
    gap_parity_coloring,
    gap_stats,
    hyperimmune_witness,
    marker_color,
    marker_coloring,
    marker_decomposition,
    marker_polarity,
    match_check,
    parse_marker_schedule,
    parse_schedule,
)

__version__ = "0.1.0"
