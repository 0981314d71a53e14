"""Weak subgame perfect equilibria in Boolean turn-based games on graphs."""
from .errors import (
    ArityMismatch, BudgetExceeded, DeadEndVertex, EmptyLabel, EmptySet, GameError,
    InvalidObjective, MalformedFormula, MissingLasso, MixedObjectives, NotRealizable,
    PayoffAbsent, UnknownVertex, UnsupportedObjective, WeakSPEError,
)
from .game import (
    Buchi, CoBuchi, ExplicitMuller, Game, Lasso, Muller, Parity, Rabin,
    Reachability, Safety, Streett, all_payoffs, evaluate_gain, make_game,
    occ_inf, parse_bits, payoff_bits, payoff_of, reachable_set, validate_game,
)
from .paths import (
    AVOID, IN, PathWitness, bc_buchi_path, closed_walk_covering,
    explicit_muller_path, gen_buchi_cobuchi_path, payoff_path, realizable_inf,
    streett_path,
)
from .fixpoint import (
    Decision, FixpointTrace, LabelingTable, adjust_step, decide_constraint,
    init_labels, remove_step, run_fixpoint,
)
from .witness import (
    SymbolicWitness, WitnessIndex, brute_force_witness_search, build_witness,
    check_goodness, compact_to_lasso, witness_index,
)
from .strategy import (
    MooreProfile, ProfileConfiguration, outcome_from, synthesize_profile,
    verify_weak_spe,
)
from .pipeline import Certificate, certify
from .reductions import (
    ProductGame, ProductVertex, QbfFormula, parse_qdimacs, qbf_to_game,
    qbf_truth, random_game, reach_safety_product,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "BudgetExceeded",
    "DeadEndVertex",
    "EmptyLabel",
    "EmptySet",
    "GameError",
    "InvalidObjective",
    "MalformedFormula",
    "MissingLasso",
    "MixedObjectives",
    "NotRealizable",
    "PayoffAbsent",
    "UnknownVertex",
    "UnsupportedObjective",
    "WeakSPEError",
    "Buchi",
    "CoBuchi",
    "ExplicitMuller",
    "Game",
    "Lasso",
    "Muller",
    "Parity",
    "Rabin",
    "Reachability",
    "Safety",
    "Streett",
    "all_payoffs",
    "evaluate_gain",
    "make_game",
    "occ_inf",
    "parse_bits",
    "payoff_bits",
    "payoff_of",
    "reachable_set",
    "validate_game",
    "AVOID",
    "IN",
    "PathWitness",
    "bc_buchi_path",
    "closed_walk_covering",
    "explicit_muller_path",
    "gen_buchi_cobuchi_path",
    "payoff_path",
    "realizable_inf",
    "streett_path",
    "Decision",
    "FixpointTrace",
    "LabelingTable",
    "adjust_step",
    "decide_constraint",
    "init_labels",
    "remove_step",
    "run_fixpoint",
    "SymbolicWitness",
    "WitnessIndex",
    "brute_force_witness_search",
    "build_witness",
    "check_goodness",
    "compact_to_lasso",
    "witness_index",
    "MooreProfile",
    "ProfileConfiguration",
    "outcome_from",
    "synthesize_profile",
    "verify_weak_spe",
    "Certificate",
    "certify",
    "ProductGame",
    "ProductVertex",
    "QbfFormula",
    "parse_qdimacs",
    "qbf_to_game",
    "qbf_truth",
    "random_game",
    "reach_safety_product",
]
