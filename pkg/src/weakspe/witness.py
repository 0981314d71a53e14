"""Symbolic witnesses: one lasso per deviation slot.

A slot ``(i, v')`` stands for "player ``i`` just moved to ``v'``"; slot
``(0, v0)`` is the equilibrium outcome itself. A witness is good when no
player can gain by switching, at one of their own vertices on some lasso,
to the lasso of the slot opened by that alternative move.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceeded, EmptyLabel, MissingLasso, PayoffAbsent
from .game import Game, Lasso, leq, payoff_bits, payoff_from_sets, payoff_of, reachable_set
from .graph import bfs_path, remove_cycles, sccs
from .paths import closed_walk_covering, payoff_path, realizable_inf


# ---------------------------------------------------------------------------
# Index

@dataclass(frozen=True)
class WitnessIndex:
    entries: frozenset

    def __iter__(self):
        return iter(sorted(self.entries))

    def __contains__(self, slot):
        return tuple(slot) in self.entries

    def __len__(self):
        return len(self.entries)


def witness_index(game: Game, v0: int) -> WitnessIndex:
    """``(0, v0)`` plus ``(owner(v), v')`` for every edge leaving a reachable ``v``."""
    entries = {(0, v0)}
    for v in reachable_set(game, v0):
        entries.update((game.owner[v], w) for w in game.succ[v])
    return WitnessIndex(frozenset(entries))


def slot_key(slot) -> str:
    return f"{slot[0]},{slot[1]}"


def parse_slot(key: str) -> tuple:
    i, v = key.split(",")
    return int(i), int(v)


# ---------------------------------------------------------------------------
# Compaction

def compact_to_lasso(witness, game: Game) -> Lasso:
    """Bounded lasso realizing ``witness.stem`` followed by a loop over its Inf set.

    The stem is routed to ``min(S)`` and stripped of cycles; the cycle is
    :func:`closed_walk_covering` of ``S``. Product games use the tighter
    layered construction of :func:`_compact_layered`.
    """
    from .reductions import ProductGame

    S = witness.inf_set
    stem = tuple(witness.stem)
    if stem[-1] not in S:
        stem += bfs_path(game, stem[-1], S, witness.allowed)[1:]
    if isinstance(game, ProductGame):
        return _compact_layered(game, stem, S)
    anchor = min(S)
    path = stem + bfs_path(game, stem[-1], {anchor}, S)[1:]
    path = remove_cycles(path)
    return Lasso(path[:-1], closed_walk_covering(game, S))


def _compact_layered(game, stem, S) -> Lasso:
    # In a product game every vertex of one SCC carries the same satisfied
    # set, and that set alone fixes the payoff. So it is enough to keep a
    # cycle-free stem and then, inside S, follow smallest successors until
    # some vertex repeats.
    path = list(remove_cycles(stem))
    seen = {v: k for k, v in enumerate(path)}
    cur = path[-1]
    while True:
        nxt = min(w for w in game.succ[cur] if w in S)
        if nxt in seen:
            k = seen[nxt]
            return Lasso(path[:k], path[k:])
        seen[nxt] = len(path)
        path.append(nxt)
        cur = nxt


# ---------------------------------------------------------------------------
# Witness construction

@dataclass
class SymbolicWitness:
    index: WitnessIndex
    lassoes: dict
    payoffs: dict = field(default_factory=dict)
    initial: int | None = None

    def __getitem__(self, slot) -> Lasso:
        return self.lassoes[tuple(slot)]

    def to_dict(self) -> dict:
        return {
            "index": [list(s) for s in self.index],
            "lassoes": {
                slot_key(s): dict(self.lassoes[s].to_dict(),
                                  payoff=payoff_bits(self.payoffs[s]))
                for s in sorted(self.lassoes)
            },
        }

    @classmethod
    def from_dict(cls, d, game: Game | None = None):
        index = WitnessIndex(frozenset(tuple(s) for s in d["index"]))
        lassoes, payoffs = {}, {}
        for key, entry in d["lassoes"].items():
            s = parse_slot(key)
            lassoes[s] = Lasso.from_dict(entry)
            if game is not None:
                payoffs[s] = payoff_of(game, lassoes[s])
            else:
                payoffs[s] = tuple(int(b) for b in entry["payoff"])
        initial = next((v for i, v in index if i == 0), None)
        return cls(index, lassoes, payoffs, initial)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def slot_payoff(table, slot, p0):
    """Payoff assigned to a slot: ``p0`` for the root, otherwise the label
    element minimizing the deviator's own gain (ties: smallest payoff)."""
    i, v = slot
    if i == 0:
        return p0
    return min(table[v], key=lambda q: (q[i - 1], q))


def build_witness(game: Game, table, v0: int, p0) -> SymbolicWitness:
    """Good symbolic witness for payoff ``p0`` read off a fixpoint table."""
    p0 = tuple(p0)
    for v in table.vertices:
        if not table[v]:
            raise EmptyLabel(f"vertex {v} has an empty label")
    if p0 not in table[v0]:
        raise PayoffAbsent(f"payoff {payoff_bits(p0)} is not in the label of {v0}")
    index = witness_index(game, v0)
    cache = {}
    lassoes, payoffs = {}, {}
    for slot in index:
        p = slot_payoff(table, slot, p0)
        v = slot[1]
        if (v, p) not in cache:
            found = payoff_path(game, table.carrying(p), p, v)
            if found is None:
                raise EmptyLabel(f"no play with payoff {payoff_bits(p)} from {v} in the table")
            cache[v, p] = compact_to_lasso(found, game)
        lassoes[slot] = cache[v, p]
        payoffs[slot] = p
    return SymbolicWitness(index, lassoes, payoffs, v0)


# ---------------------------------------------------------------------------
# Goodness

@dataclass
class GoodnessReport:
    good: bool
    violations: list

    def to_dict(self):
        return {"good": self.good, "violations": [list(t) for t in self.violations]}


def check_goodness(witness: SymbolicWitness, game: Game) -> GoodnessReport:
    """List every ``(j, u, v, i, v')`` where player ``i`` prefers slot ``(i, v')``."""
    for slot in witness.index:
        if slot not in witness.lassoes:
            raise MissingLasso(f"slot {slot} has no lasso")
    gains = {s: payoff_of(game, l) for s, l in witness.lassoes.items()}
    violations = []
    for (j, u) in sorted(witness.lassoes):
        lasso = witness.lassoes[j, u]
        for v in sorted(set(lasso.sequence)):
            i = game.owner[v]
            for w in game.succ[v]:
                if (i, w) not in witness.index:
                    continue
                if gains[j, u][i - 1] < gains[i, w][i - 1]:
                    violations.append((j, u, v, i, w))
    return GoodnessReport(not violations, violations)


# ---------------------------------------------------------------------------
# Exhaustive search

def _min_covering_walks(game, S):
    """For each start ``c`` in S, a shortest closed walk from ``c`` through all of S."""
    out = {}
    for c in sorted(S):
        start = (c, frozenset([c]))
        parent = {start: None}
        todo = deque([start])
        best = None
        while todo and best is None:
            state = todo.popleft()
            v, seen = state
            if seen == S and c in game.succ[v]:
                best = state
                break
            for w in game.succ[v]:
                if w not in S:
                    continue
                nxt = (w, seen | {w})
                if nxt not in parent:
                    parent[nxt] = state
                    todo.append(nxt)
        if best is not None:
            walk = []
            while best is not None:
                walk.append(best[0])
                best = parent[best]
            out[c] = tuple(reversed(walk))
    return out


def _lasso_classes(game, u, max_len):
    """Shortest lasso from ``u`` for every reachable ``(Occ, Inf)`` pair.

    Returns ``{(occ, inf): lasso}`` restricted to lassoes of length at most
    ``max_len``.
    """
    reach = reachable_set(game, u)
    candidates = _realizable_sets(game, reach)
    walks = {S: _min_covering_walks(game, S) for S in candidates}

    # stems: BFS over (last vertex, vertex set); the stem is nonempty here
    start = (u, frozenset([u]))
    parent = {start: None}
    dist = {start: 1}
    order = [start]
    todo = deque([start])
    while todo:
        state = todo.popleft()
        v, seen = state
        for w in game.succ[v]:
            nxt = (w, seen | {w})
            if nxt not in dist:
                dist[nxt] = dist[state] + 1
                parent[nxt] = state
                order.append(nxt)
                todo.append(nxt)

    def stem_of(state):
        out = []
        while state is not None:
            out.append(state[0])
            state = parent[state]
        return tuple(reversed(out))

    best = {}

    def offer(stem, cycle):
        lasso = Lasso(stem, cycle)
        if len(lasso) > max_len:
            return
        occ = frozenset(stem) | frozenset(cycle)
        key = (occ, frozenset(cycle))
        old = best.get(key)
        if old is None or (len(lasso), lasso.sequence) < (len(old), old.sequence):
            best[key] = lasso

    for S in candidates:
        if u in S and u in walks[S]:
            offer((), walks[S][u])
        for state in order:
            v, seen = state
            for c in game.succ[v]:
                if c in walks[S]:
                    offer(stem_of(state), walks[S][c])
    return best


def _realizable_sets(game, within):
    from itertools import combinations
    out = []
    for comp in sccs(game, within):
        verts = sorted(comp)
        for k in range(1, len(verts) + 1):
            for sub in combinations(verts, k):
                if realizable_inf(game, within, sub):
                    out.append(frozenset(sub))
    return out


def brute_force_witness_search(game: Game, v0: int, x, y, max_len: int,
                               budget: int = 1_000_000):
    """Exhaustive search for a good witness whose lassoes have length <= ``max_len``.

    Only the payoff and the vertex set of a lasso matter for goodness, and
    a smaller vertex set never hurts, so per start vertex we keep one
    shortest lasso for every payoff and inclusion-minimal vertex set. Slots
    are then filled one at a time, checking every goodness constraint as
    soon as both of its slots are assigned.
    """
    x, y = tuple(x), tuple(y)
    if not leq(x, y):
        return None
    index = witness_index(game, v0)
    slots = list(index)
    options = {}
    for u in sorted({v for _, v in slots}):
        classes = {}
        for (occ, inf), lasso in _lasso_classes(game, u, max_len).items():
            p = payoff_from_sets(game, occ, inf)
            classes.setdefault(p, []).append((occ, lasso))
        opts = []
        for p in sorted(classes):
            entries = sorted(classes[p], key=lambda e: (len(e[0]), sorted(e[0])))
            kept = []
            for occ, lasso in entries:
                if not any(k <= occ for k, _ in kept):
                    kept.append((occ, lasso))
            opts += [(p, occ, lasso) for occ, lasso in kept]
        options[u] = opts

    def admissible(slot, opt):
        if slot[0] == 0:
            return leq(x, opt[0]) and leq(opt[0], y)
        return True

    # constraints: slot A with option (p, occ) requires, for v in occ owned by
    # i and every successor w, p_i >= payoff(i, w)_i
    chosen = {}
    nodes = 0

    def consistent(slot):
        p, occ, _ = chosen[slot]
        for v in occ:
            i = game.owner[v]
            for w in game.succ[v]:
                other = chosen.get((i, w))
                if other is not None and p[i - 1] < other[0][i - 1]:
                    return False
        # constraints where this slot is the deviation target
        i, w = slot
        if i == 0:
            return True
        for s, (q, occ2, _) in chosen.items():
            if q[i - 1] >= p[i - 1]:
                continue
            if any(game.owner[v] == i and w in game.succ[v] for v in occ2):
                return False
        return True

    def search(k):
        nonlocal nodes
        if k == len(slots):
            return True
        slot = slots[k]
        for opt in options[slot[1]]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"witness search exceeded {budget} nodes")
            if not admissible(slot, opt):
                continue
            chosen[slot] = opt
            if consistent(slot) and search(k + 1):
                return True
            del chosen[slot]
        return False

    if not search(0):
        return None
    lassoes = {s: chosen[s][2] for s in slots}
    payoffs = {s: chosen[s][0] for s in slots}
    return SymbolicWitness(index, lassoes, payoffs, v0)
