import random

import pytest

from oracles import all_lassoes, qbf_brute
from weakspe.errors import MalformedFormula, UnsupportedObjective
from weakspe.fixpoint import decide_constraint
from weakspe.game import Buchi, CoBuchi, Lasso, Reachability, Safety, make_game, payoff_of, validate_game
from weakspe.reductions import (
    OBJECTIVE_CLASSES, QbfFormula, all_formulas, parse_qdimacs, qbf_to_game, qbf_truth,
    qbf_vertex_names, random_formula, random_game, reach_safety_product,
)


def test_product_single_vertex():
    g = make_game(1, [1], [(0, 0)], [Reachability([0])])
    prod = reach_safety_product(g, 0)
    assert prod.num_vertices == 1
    assert prod.info[0].satisfied == {1}
    assert isinstance(prod.objectives[0], Buchi)
    assert decide_constraint(g, 0, (1,), (1,)).exists


def test_product_chain():
    g = make_game(1, [1, 1], [(0, 1), (1, 1)], [Reachability([1])])
    prod = reach_safety_product(g, 0)
    assert [(pv.base, set(pv.satisfied)) for pv in prod.info] == [(0, set()), (1, {1})]
    d = decide_constraint(g, 0, (0,), (1,))
    assert d.payoff == (1,)


def test_product_safety_uses_cobuchi():
    g = make_game(2, [1, 2], [(0, 1), (1, 0), (1, 1)], [Safety([0]), Safety([1])])
    prod = reach_safety_product(g, 0)
    assert all(isinstance(o, CoBuchi) for o in prod.objectives)


def test_product_rejects_other_kinds():
    g = make_game(1, [1], [(0, 0)], [Buchi([0])])
    with pytest.raises(UnsupportedObjective):
        reach_safety_product(g, 0)


@pytest.mark.parametrize("cls", ["reachability", "safety"])
def test_product_payoffs_match(cls):
    for seed in range(25):
        g = random_game(4, 2, cls, 0.4, seed)
        prod = reach_safety_product(g, 0)
        for stem, cycle in all_lassoes(g, 0, 5):
            lasso = Lasso(stem, cycle)
            lifted = prod.lift(lasso)
            assert lifted.is_valid_in(prod)
            assert prod.project(lifted).first == lasso.first
            assert payoff_of(prod, lifted) == payoff_of(g, lasso)


@pytest.mark.parametrize("cls", ["reachability", "safety"])
def test_product_monotone(cls):
    for seed in range(30):
        g = random_game(5, 3, cls, 0.4, seed)
        prod = reach_safety_product(g, 0)
        for u, v in prod.edges:
            assert prod.info[u].satisfied <= prod.info[v].satisfied
            assert prod.info[u].base in g.vertices
            assert g.has_edge(prod.info[u].base, prod.info[v].base)
        assert prod.num_vertices <= g.num_vertices * 2 ** g.num_players


def test_parse_qdimacs():
    text = "c example\np qbf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 2 0\n"
    f = parse_qdimacs(text)
    assert f == QbfFormula(2, ((1, 2), (-1, 2)))
    assert parse_qdimacs(f.to_qdimacs()) == f


def test_parse_renames_in_prefix_order():
    f = parse_qdimacs("p cnf 9 1\ne 7 0\na 3 0\n-7 3 0\n")
    assert f.clauses == ((-1, 2),)


@pytest.mark.parametrize("text", [
    "p qbf 2 1\na 1 0\ne 2 0\n1 0\n",        # starts with a universal
    "p qbf 2 1\ne 1 0\ne 2 0\n1 0\n",        # no alternation
    "p qbf 2 1\ne 1 2 0\n1 0\n",             # block of two
    "p qbf 1 1\ne 1 0\n2 0\n",               # free variable
    "e 1 0\n1 0\n",                          # no header
    "p qbf 1 2\ne 1 0\n1 0\n",               # clause count
    "p qbf 1 1\ne 1 0\n1\n",                 # unterminated clause
])
def test_parse_rejects(text):
    with pytest.raises(MalformedFormula):
        parse_qdimacs(text)


def test_qbf_structure():
    f = QbfFormula(1, ((1,),))
    g, v0, x, y = qbf_to_game(f)
    assert g.num_vertices == 6 and g.num_players == 3
    assert qbf_vertex_names(f) == ["q1", "x1", "~x1", "c1", "t1", "t2"]
    assert (x, y) == ((0, 1, 0), (1, 1, 1))
    rng = random.Random(5)
    for _ in range(50):
        f = random_formula(rng)
        for variant in ("reach", "safety"):
            g, *_ = qbf_to_game(f, variant)
            assert g.num_vertices == 3 * f.num_vars + 2 * f.num_clauses + 1
            assert g.num_players == f.num_clauses + 2


@pytest.mark.parametrize("variant", ["reach", "safety"])
def test_qbf_examples(variant):
    cases = [(QbfFormula(1, ((1,),)), True),
             (QbfFormula(2, ((1, 2), (-1, 2))), False),
             (QbfFormula(1, ((1,), (-1,))), False)]
    for f, truth in cases:
        assert qbf_truth(f) == truth == qbf_brute(f.num_vars, f.clauses)
        g, v0, x, y = qbf_to_game(f, variant)
        assert decide_constraint(g, v0, x, y).exists == truth


def test_qbf_product_size():
    f = QbfFormula(1, ((1,),))
    g, v0, x, y = qbf_to_game(f)
    d = decide_constraint(g, v0, x, y)
    assert d.game.num_vertices <= g.num_vertices * 2 ** g.num_players


def test_qbf_evaluator_matches_brute_force():
    for f in all_formulas(3, 2, max_width=2):
        assert qbf_truth(f) == qbf_brute(f.num_vars, f.clauses)


def test_random_game_determinism_and_validity():
    a = random_game(4, 2, "buchi", 0.5, seed=7)
    b = random_game(4, 2, "buchi", 0.5, seed=7)
    assert a == b and a.to_dict() == b.to_dict()
    for cls in OBJECTIVE_CLASSES:
        for seed in range(10):
            g = random_game(1 + seed % 6, 1 + seed % 3, cls, 0.3, seed)
            assert validate_game(g.to_dict()) == g
            assert all(g.succ[v] for v in g.vertices)


def test_random_game_bad_params():
    with pytest.raises(ValueError):
        random_game(0, 1, "buchi")
    with pytest.raises(ValueError):
        random_game(3, 1, "buchi", edge_density=0)
    with pytest.raises(ValueError):
        random_game(3, 1, "nope")


def test_random_parity_order_stable():
    g = random_game(5, 2, "parity", 0.4, seed=1)
    answers = {decide_constraint(g, 0, (0, 0), (1, 1), order).table.labels.__repr__()
               for order in ("min", "max")}
    assert len(answers) == 1
