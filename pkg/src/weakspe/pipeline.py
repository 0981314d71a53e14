"""Decision plus certificate in one call."""
from __future__ import annotations

from dataclasses import dataclass

from .fixpoint import Decision, decide_constraint
from .game import Game, payoff_of
from .strategy import MooreProfile, VerifyReport, outcome_from, synthesize_profile, verify_weak_spe
from .witness import GoodnessReport, SymbolicWitness, build_witness, check_goodness


@dataclass
class Certificate:
    decision: Decision
    witness: SymbolicWitness | None = None
    goodness: GoodnessReport | None = None
    profile: MooreProfile | None = None
    report: VerifyReport | None = None
    outcome_payoff: tuple | None = None

    @property
    def verified(self) -> bool:
        return (self.report is not None and self.report.is_weak_spe
                and self.goodness.good
                and self.outcome_payoff == self.decision.payoff)


def certify(game: Game, v0: int, x, y, order="min", seed=None) -> Certificate:
    """Decide, and when a payoff exists build witness and profile and verify them.

    Reachability and Safety games are certified on their product game,
    available as ``decision.game``.
    """
    decision = decide_constraint(game, v0, x, y, order, seed)
    if not decision.exists:
        return Certificate(decision)
    solved, start = decision.game, decision.initial
    witness = build_witness(solved, decision.table, start, decision.payoff)
    goodness = check_goodness(witness, solved)
    profile = synthesize_profile(witness, solved)
    report = verify_weak_spe(profile, solved)
    outcome = outcome_from(profile, solved, profile.initial)
    return Certificate(decision, witness, goodness, profile, report,
                       payoff_of(solved, outcome))
