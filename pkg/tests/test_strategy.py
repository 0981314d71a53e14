import pytest

from corpus import mixed
from weakspe.errors import MissingLasso, UnsupportedObjective
from weakspe.fixpoint import run_fixpoint
from weakspe.game import Lasso, Reachability, make_game, payoff_of
from weakspe.pipeline import certify
from weakspe.samples import buchi_example, single_loop_game
from weakspe.strategy import (
    MooreProfile, ProfileConfiguration, outcome_from, reachable_configurations,
    synthesize_profile, verify_weak_spe,
)
from weakspe.witness import build_witness, check_goodness


def running_profile():
    g = buchi_example()
    table, _ = run_fixpoint(g, 0)
    return g, synthesize_profile(build_witness(g, table, 0, (0, 1)), g)


def test_outcome_from_initial():
    g, prof = running_profile()
    assert outcome_from(prof, g, prof.initial) == Lasso((0, 1, 2), (3,))
    assert payoff_of(g, outcome_from(prof, g, prof.initial)) == (0, 1)


def test_outcome_after_deviation_slot():
    g, prof = running_profile()
    c = ProfileConfiguration(((2, 4), 0), 4)
    assert outcome_from(prof, g, c) == Lasso((4,), (5,))


def test_deviation_switches_slot():
    g, prof = running_profile()
    c = prof.step(prof.initial, 4)
    assert c.memory == ((2, 4), 0)
    # following the lasso is not a deviation
    c = prof.step(prof.initial, 1)
    assert c.memory == ((0, 0), 1)


def test_verified_running_example():
    g, prof = running_profile()
    report = verify_weak_spe(prof, g)
    assert report.is_weak_spe and report.counterexample is None


def test_single_loop_profile():
    g = single_loop_game()
    table, _ = run_fixpoint(g, 0)
    prof = synthesize_profile(build_witness(g, table, 0, (1,)), g)
    assert outcome_from(prof, g, prof.initial) == Lasso((), (0,))
    assert verify_weak_spe(prof, g).is_weak_spe


def test_bad_choice_at_v4_is_caught():
    g, prof = running_profile()
    lassoes = dict(prof.lassoes)
    lassoes[2, 4] = Lasso((4,), (6,))
    bad = MooreProfile.from_lassoes(lassoes, 0, g)
    report = verify_weak_spe(bad, g)
    assert not report.is_weak_spe
    config, player, alt, before, after = report.counterexample
    assert config.vertex == 4 and player == 2 and alt == 5
    assert (before, after) == (0, 1)


def test_missing_deviation_slot():
    g, prof = running_profile()
    lassoes = dict(prof.lassoes)
    del lassoes[2, 4]
    bad = MooreProfile.from_lassoes(lassoes, 0, g)
    with pytest.raises(MissingLasso):
        verify_weak_spe(bad, g)


def test_raw_reachability_rejected():
    g = make_game(1, [1], [(0, 0)], [Reachability([0])])
    prof = MooreProfile({(0, 0): Lasso((), (0,))}, (0, 0), g.owner)
    with pytest.raises(UnsupportedObjective):
        verify_weak_spe(prof, g)


def test_profile_json_roundtrip():
    g, prof = running_profile()
    again = MooreProfile.from_dict(prof.to_dict(), g)
    assert again.lassoes == prof.lassoes
    assert again.initial == prof.initial


@pytest.mark.parametrize("cls", ["buchi", "cobuchi", "parity", "rabin", "streett", "muller",
                                 "explicit_muller", "reachability", "safety"])
def test_end_to_end(cls):
    for g in mixed(cls, 10):
        n = g.num_players
        cert = certify(g, 0, (0,) * n, (1,) * n)
        if not cert.decision.exists:
            continue
        assert cert.verified
        solved = cert.decision.game
        prof = cert.profile
        bound = (solved.num_vertices * n + 1) * 2 * solved.num_vertices ** 2
        assert prof.size <= bound
        limit = prof.size * solved.num_vertices + 1
        for c in reachable_configurations(prof, solved):
            assert len(outcome_from(prof, solved, c)) <= limit


def test_corrupted_lasso_detected():
    # root lasso replaced by one that player 2 can improve on at v0
    g, prof = running_profile()
    lassoes = dict(prof.lassoes)
    lassoes[0, 0] = Lasso((0, 4), (6,))
    bad = MooreProfile.from_lassoes(lassoes, 0, g)
    assert not verify_weak_spe(bad, g).is_weak_spe


def test_witness_profile_agree():
    g = buchi_example()
    table, _ = run_fixpoint(g, 0)
    wit = build_witness(g, table, 0, (0, 1))
    assert check_goodness(wit, g).good
    prof = synthesize_profile(wit, g)
    for slot, lasso in wit.lassoes.items():
        c = ProfileConfiguration((slot, 0), slot[1])
        assert outcome_from(prof, g, c) == lasso
