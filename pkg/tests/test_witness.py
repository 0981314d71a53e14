import pytest

from corpus import mixed
from weakspe.errors import BudgetExceeded, EmptyLabel, MissingLasso, PayoffAbsent
from weakspe.fixpoint import decide_constraint, run_fixpoint
from weakspe.game import Lasso, payoff_of
from weakspe.paths import PathWitness
from weakspe.reductions import random_game
from weakspe.samples import buchi_example, buchi_example_left, single_loop_game
from weakspe.witness import (
    SymbolicWitness, brute_force_witness_search, build_witness, check_goodness,
    compact_to_lasso, witness_index,
)

# slots listed in the published witness of the running example
EXPECTED_SLOTS = {
    (0, 0): ((0, 1, 2), (3,), (0, 1)),
    (2, 4): ((4,), (5,), (0, 1)),
    (1, 2): ((2,), (3,), (0, 1)),
    (1, 1): ((1, 2), (3,), (0, 1)),
    (1, 3): ((), (3,), (0, 1)),
    (2, 5): ((), (5,), (0, 1)),
    (2, 6): ((), (6,), (0, 0)),
    (1, 5): ((), (5,), (0, 1)),
    (1, 6): ((), (6,), (0, 0)),
}


def running_witness():
    g = buchi_example()
    table, _ = run_fixpoint(g, 0)
    return g, build_witness(g, table, 0, (0, 1))


def test_index_running_example():
    idx = witness_index(buchi_example(), 0)
    assert set(EXPECTED_SLOTS) <= set(idx)
    assert (2, 1) in idx
    assert len(idx) == 10


def test_index_single_loop():
    assert set(witness_index(single_loop_game(), 0)) == {(0, 0), (1, 0)}


def test_compaction_examples():
    g = buchi_example()
    V = frozenset(g.vertices)
    w = PathWitness(0, (0, 1, 2, 1, 2, 3), frozenset({3}), V)
    assert compact_to_lasso(w, g) == Lasso((0, 1, 2), (3,))
    loop = single_loop_game()
    assert compact_to_lasso(PathWitness(0, (0,), frozenset({0}), frozenset({0})), loop) == Lasso((), (0,))


def test_build_matches_published_slots():
    g, wit = running_witness()
    for slot, (stem, cycle, payoff) in EXPECTED_SLOTS.items():
        assert wit[slot] == Lasso(stem, cycle), slot
        assert wit.payoffs[slot] == payoff
        assert payoff_of(g, wit[slot]) == payoff
    assert check_goodness(wit, g).good


def test_deviation_slot_minimizes_own_gain():
    _, wit = running_witness()
    assert wit.payoffs[1, 2] == (0, 1)


def test_goodness_with_extra_slot_from_listing():
    g, wit = running_witness()
    wit.lassoes[2, 1] = Lasso((1, 2), (3,))
    wit.payoffs[2, 1] = (0, 1)
    assert check_goodness(wit, g).good


def test_goodness_violation():
    g, wit = running_witness()
    wit.lassoes[1, 1] = Lasso((), (1, 2))
    report = check_goodness(wit, g)
    assert not report.good
    assert (0, 0, 2, 1, 1) in report.violations


def test_missing_lasso():
    g, wit = running_witness()
    del wit.lassoes[2, 6]
    with pytest.raises(MissingLasso):
        check_goodness(wit, g)


def test_single_loop_witness():
    g = single_loop_game()
    table, _ = run_fixpoint(g, 0)
    wit = build_witness(g, table, 0, (1,))
    assert wit[0, 0] == wit[1, 0] == Lasso((), (0,))
    assert check_goodness(wit, g).good


def test_build_errors():
    g = buchi_example()
    table, _ = run_fixpoint(g, 0)
    with pytest.raises(PayoffAbsent):
        build_witness(g, table, 0, (1, 0))
    emptied = table.without([(6, (0, 0))], table.step)
    with pytest.raises(EmptyLabel):
        build_witness(g, emptied, 0, (0, 1))


def test_witness_json_roundtrip():
    g, wit = running_witness()
    again = SymbolicWitness.from_dict(wit.to_dict(), g)
    assert again.lassoes == wit.lassoes
    assert again.payoffs == wit.payoffs
    assert set(again.index) == set(wit.index)


@pytest.mark.parametrize("cls", ["buchi", "cobuchi", "parity", "rabin", "streett", "muller",
                                 "explicit_muller"])
def test_built_witnesses_are_good_and_labeled(cls):
    for g in mixed(cls, 12):
        table, _ = run_fixpoint(g, 0)
        if not all(table[v] for v in table.vertices):
            continue
        for p0 in sorted(table[0]):
            wit = build_witness(g, table, 0, p0)
            assert check_goodness(wit, g).good
            assert len(wit.lassoes) <= g.num_vertices * g.num_players + 1
            for slot, lasso in wit.lassoes.items():
                p = wit.payoffs[slot]
                assert lasso.first == slot[1]
                assert lasso.is_valid_in(g)
                assert payoff_of(g, lasso) == p
                assert all(p in table[v] for v in lasso.sequence)
                assert len(lasso) <= 2 * g.num_vertices ** 2


def test_product_lassoes_are_short():
    for cls in ("reachability", "safety"):
        for seed in range(30):
            base = random_game(3 + seed % 4, 1 + seed % 3, cls, 0.4, seed)
            d = decide_constraint(base, 0, (0,) * base.num_players, (1,) * base.num_players)
            if not d.exists:
                continue
            prod = d.game
            wit = build_witness(prod, d.table, d.initial, d.payoff)
            assert check_goodness(wit, prod).good
            bound = (base.num_players + 1) * base.num_vertices
            for lasso in wit.lassoes.values():
                assert len(lasso) <= bound


def test_brute_force_examples():
    left = buchi_example_left()
    found = brute_force_witness_search(left, 0, (0, 0), (1, 1), max_len=4)
    assert found is not None and check_goodness(found, left).good
    g = buchi_example()
    assert brute_force_witness_search(g, 0, (1, 1), (0, 0), max_len=4) is None
    loop = single_loop_game()
    assert brute_force_witness_search(loop, 0, (1,), (1,), max_len=1) is not None


def test_brute_force_budget():
    g = buchi_example()
    with pytest.raises(BudgetExceeded):
        brute_force_witness_search(g, 0, (0, 0), (1, 1), max_len=8, budget=3)


def test_brute_force_running_example():
    g = buchi_example()
    found = brute_force_witness_search(g, 0, (0, 0), (1, 1), max_len=2 * 49)
    assert found.payoffs[0, 0] == (0, 1)
    assert check_goodness(found, g).good
    assert brute_force_witness_search(g, 0, (1, 0), (1, 1), max_len=2 * 49) is None


def test_brute_force_agrees_on_small_games():
    for seed in range(15):
        g = random_game(3 + seed % 2, 2, "buchi", 0.5, seed)
        for x, y in [((0, 0), (1, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 1))]:
            d = decide_constraint(g, 0, x, y)
            found = brute_force_witness_search(g, 0, x, y, 2 * g.num_vertices ** 2)
            assert d.exists == (found is not None)
            if found is not None:
                assert check_goodness(found, g).good
                for slot, lasso in found.lassoes.items():
                    assert payoff_of(g, lasso) == found.payoffs[slot]
