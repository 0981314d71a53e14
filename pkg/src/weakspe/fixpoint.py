"""Payoff labeling of vertices pruned by alternating Remove and Adjust steps.

Each reachable vertex starts labeled with every payoff some play from it
can achieve. A Remove step deletes one payoff ``p`` from a vertex ``v`` of
player ``i`` when some successor only carries payoffs that give player
``i`` strictly more than ``p`` does. The following Adjust step deletes
``p`` wherever no play with payoff ``p`` survives inside the vertices still
labeled by ``p``. At the fixpoint the label of the initial vertex is
exactly the set of weak SPE payoffs, provided no reachable label is empty.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import UnsupportedObjective
from .game import Game, all_payoffs, leq, payoff_bits, reachable_set
from .paths import payoff_region

REMOVE = "remove"
ADJUST = "adjust"


@dataclass(frozen=True)
class LabelingTable:
    labels: dict
    step: int = 0

    def __getitem__(self, v) -> frozenset:
        return self.labels[v]

    def __contains__(self, v):
        return v in self.labels

    @property
    def vertices(self) -> list:
        return sorted(self.labels)

    def carrying(self, p) -> frozenset:
        """Vertices whose label contains ``p``."""
        return frozenset(v for v, ps in self.labels.items() if p in ps)

    def without(self, drops, step):
        labels = dict(self.labels)
        for v, p in drops:
            labels[v] = labels[v] - {p}
        return LabelingTable(labels, step)

    def as_bits(self) -> dict:
        return {str(v): sorted(payoff_bits(p) for p in self.labels[v]) for v in self.vertices}

    def same_labels(self, other) -> bool:
        return self.labels == other.labels


@dataclass(frozen=True)
class Removal:
    step: int
    vertex: int
    payoff: tuple
    cause: str

    def to_dict(self):
        return {"k": self.step, "vertex": self.vertex,
                "payoff": payoff_bits(self.payoff), "cause": self.cause}


@dataclass
class FixpointTrace:
    initial: LabelingTable
    removals: list = field(default_factory=list)
    rounds: int = 0
    oracle_calls: int = 0

    def replay(self, step=None) -> LabelingTable:
        """Apply the recorded removals with ``k <= step`` to the initial table.

        Without ``step`` every removal is applied, which reproduces the
        fixpoint at ``k* = 2 * (rounds - 1)``.
        """
        if step is None:
            step = 2 * max(self.rounds - 1, 0)
        drops = [(r.vertex, r.payoff) for r in self.removals if r.step <= step]
        return self.initial.without(drops, step)


def _require_prefix_independent(game):
    if not game.prefix_independent:
        raise UnsupportedObjective(
            f"{game.kind} objectives must go through the product game first")


def init_labels(game: Game, v0: int, trace: FixpointTrace | None = None) -> LabelingTable:
    """Label every vertex reachable from ``v0`` by its achievable payoffs."""
    _require_prefix_independent(game)
    reach = reachable_set(game, v0)
    labels = {v: set() for v in reach}
    for p in all_payoffs(game.num_players):
        for u in payoff_region(game, reach, p):
            labels[u].add(p)
        if trace is not None:
            trace.oracle_calls += 1
    return LabelingTable({v: frozenset(ps) for v, ps in labels.items()}, 0)


def removal_candidates(table: LabelingTable, game: Game) -> list:
    """Every ``(v, p, v')`` allowing a Remove step, sorted."""
    out = []
    for v in table.vertices:
        i = game.owner[v] - 1
        for p in sorted(table[v]):
            for w in game.succ[v]:
                if all(p[i] < q[i] for q in table[w]):
                    out.append((v, p, w))
    return out


def remove_step(table: LabelingTable, game: Game, order="min"):
    """Delete one removable payoff; returns ``(table, (v, p) or None)``.

    ``order`` picks among candidates: ``"min"`` (smallest vertex, then
    payoff), ``"max"`` (largest first), or a :class:`random.Random`.
    """
    cands = removal_candidates(table, game)
    if not cands:
        return LabelingTable(table.labels, table.step + 1), None
    pairs = sorted({(v, p) for v, p, _ in cands})
    if order == "min":
        v, p = pairs[0]
    elif order == "max":
        v, p = pairs[-1]
    elif isinstance(order, random.Random):
        v, p = order.choice(pairs)
    else:
        raise ValueError(f"unknown removal order {order!r}")
    return table.without([(v, p)], table.step + 1), (v, p)


def _adjust(table, game, removed):
    if removed is None:
        return LabelingTable(table.labels, table.step + 1), []
    _, p = removed
    allowed = table.carrying(p)
    keep = payoff_region(game, allowed, p)
    dropped = sorted(allowed - keep)
    return table.without([(u, p) for u in dropped], table.step + 1), dropped


def adjust_step(table: LabelingTable, game: Game, removed) -> LabelingTable:
    """Drop ``p`` wherever no play with payoff ``p`` stays on ``p``-labeled vertices."""
    return _adjust(table, game, removed)[0]


def run_fixpoint(game: Game, v0: int, order="min", seed=None):
    """Iterate Remove/Adjust from the initial labeling until nothing is removable.

    ``order="random"`` draws removals from ``random.Random(seed)``.
    """
    _require_prefix_independent(game)
    if order == "random":
        order = random.Random(seed)
    trace = FixpointTrace(initial=None)
    table = init_labels(game, v0, trace)
    trace.initial = table
    while True:
        trace.rounds += 1
        after_remove, removed = remove_step(table, game, order)
        if removed is None:
            break
        trace.removals.append(Removal(after_remove.step, removed[0], removed[1], REMOVE))
        table, dropped = _adjust(after_remove, game, removed)
        trace.oracle_calls += 1
        trace.removals += [Removal(table.step, u, removed[1], ADJUST) for u in dropped]
    return table, trace


@dataclass
class Decision:
    exists: bool
    payoff: tuple | None
    table: LabelingTable | None
    trace: FixpointTrace | None = None
    game: Game | None = None
    initial: int | None = None
    product: object = None

    def to_dict(self) -> dict:
        d = {"exists": self.exists,
             "payoff": None if self.payoff is None else payoff_bits(self.payoff)}
        if self.table is not None:
            d.update(fixpoint_json(self.table, self.trace))
        if self.product is not None:
            d["product"] = self.product.metadata()
        return d


def fixpoint_json(table: LabelingTable, trace: FixpointTrace | None) -> dict:
    d = {"fixpoint": table.as_bits()}
    if trace is not None:
        d["trace"] = [r.to_dict() for r in trace.removals]
        d["rounds"] = trace.rounds
    return d


def dump_fixpoint(table, trace) -> str:
    return json.dumps(fixpoint_json(table, trace), sort_keys=True)


def decide_constraint(game: Game, v0: int, x, y, order="min", seed=None) -> Decision:
    """Is there a weak SPE from ``v0`` whose payoff ``p`` satisfies ``x <= p <= y``?

    Reachability and Safety games are solved on their product with the set of
    players already satisfied (resp. already touched).
    """
    x, y = tuple(x), tuple(y)
    if len(x) != game.num_players or len(y) != game.num_players:
        raise ValueError("thresholds must have one bit per player")
    if not leq(x, y):
        return Decision(False, None, None, game=game, initial=v0)
    product = None
    solved, start = game, v0
    if not game.prefix_independent:
        from .reductions import reach_safety_product
        product = reach_safety_product(game, v0)
        solved, start = product, product.initial
    table, trace = run_fixpoint(solved, start, order, seed)
    nonempty = all(table[v] for v in table.vertices)
    inside = sorted(p for p in table[start] if leq(x, p) and leq(p, y))
    exists = nonempty and bool(inside)
    return Decision(exists, inside[0] if exists else None, table, trace,
                    solved, start, product)
