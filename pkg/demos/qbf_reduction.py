"""Decide small QBFs by turning them into Reachability and Safety games.

Each formula is solved twice through the game encoding and compared with a
direct evaluation of the formula.

    python3 demos/qbf_reduction.py [path/to/formula.qdimacs]
"""
import random
import sys
from pathlib import Path

from weakspe import decide_constraint, parse_qdimacs, qbf_to_game, qbf_truth
from weakspe.reductions import random_formula


def solve(f):
    answers = {}
    for variant in ("reach", "safety"):
        game, v0, x, y = qbf_to_game(f, variant)
        d = decide_constraint(game, v0, x, y)
        answers[variant] = (d.exists, game.num_vertices, d.game.num_vertices)
    return answers


if len(sys.argv) > 1:
    formulas = [parse_qdimacs(Path(sys.argv[1]).read_text())]
else:
    formulas = [parse_qdimacs((Path(__file__).parent / "data" / "two_vars.qdimacs").read_text())]
    rng = random.Random(3)
    formulas += [random_formula(rng) for _ in range(5)]

for f in formulas:
    truth = qbf_truth(f)
    res = solve(f)
    sizes = ", ".join(f"{k}: {n} -> {m} product vertices" for k, (_, n, m) in res.items())
    agree = all(ok == truth for ok, _, _ in res.values())
    print(f"{f.num_vars} vars, clauses {list(f.clauses)}")
    print(f"  true={truth}  games agree={agree}  ({sizes})")
