"""Existence of infinite paths with a prescribed payoff.

A play with payoff ``p`` exists from ``v`` inside a vertex set ``allowed``
iff some set ``S`` can be the set of vertices visited infinitely often by
such a play: ``S`` is strongly connected with an internal edge, lies in
``allowed``, is reachable from ``v`` inside ``allowed``, and its objective
evaluation gives ``p``. Every oracle below searches for such an ``S`` per
objective class and returns it together with a shortest stem.

Each oracle is written as a generator of "good" sets over a vertex set
``X``, yielding at most one set per top-level SCC. Querying one vertex
takes the first set found in ``Succ*(v)``; :func:`payoff_region` takes all
of them and computes backward reachability, which answers the query for
every vertex of ``allowed`` at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

from . import formula as fm
from .errors import EmptySet, NotRealizable, UnsupportedObjective
from .game import Buchi, CoBuchi, ExplicitMuller, Game, Muller, Parity, Rabin, Streett, reachable_set
from .graph import backward_reach, bfs_path, has_internal_edge, is_strongly_connected, sccs

IN = "in"
AVOID = "avoid"


@dataclass(frozen=True)
class PathWitness:
    """A stem from ``start`` into ``inf_set``; the play loops over ``inf_set`` forever."""

    start: int
    stem: tuple
    inf_set: frozenset
    allowed: frozenset


def realizable_inf(game: Game, allowed, S) -> bool:
    """True iff some play inside ``allowed`` visits exactly ``S`` infinitely often."""
    S = frozenset(S)
    if not S:
        raise EmptySet("candidate Inf set is empty")
    if not S <= frozenset(allowed):
        return False
    return has_internal_edge(game, S) and is_strongly_connected(game, S)


def _loop_path(game, u, within):
    """Shortest path from ``u`` back to ``u`` with at least one edge."""
    best = None
    for w in game.succ[u]:
        if w not in within:
            continue
        p = bfs_path(game, w, {u}, within)
        if p is not None and (best is None or len(p) < len(best)):
            best = p
    return None if best is None else (u,) + best


def _tour(game, points, within):
    """Closed walk inside ``within`` through ``points`` in the given order.

    Returns the walk without its final (repeated) vertex.
    """
    start = points[0]
    walk = [start]
    for t in list(points[1:]):
        if t in walk:
            continue
        leg = bfs_path(game, walk[-1], {t}, within)
        walk.extend(leg[1:])
    if walk[-1] == start:
        back = _loop_path(game, start, within)
    else:
        back = bfs_path(game, walk[-1], {start}, within)
    walk.extend(back[1:-1])
    return tuple(walk)


def closed_walk_covering(game: Game, S, start=None) -> tuple:
    """Closed walk visiting every vertex of ``S`` using only edges inside ``S``.

    Starts at ``min(S)`` unless ``start`` is given; the next target is always
    the smallest-index vertex not yet visited. The returned tuple omits the
    final return to the start vertex, so it can be used directly as a lasso
    cycle. Its length is at most ``|S|**2``.
    """
    S = frozenset(S)
    if not S or not (has_internal_edge(game, S) and is_strongly_connected(game, S)):
        raise NotRealizable(f"{sorted(S)} is not strongly connected with an internal edge")
    start = min(S) if start is None else start
    walk = [start]
    seen = {start}
    for t in sorted(S):
        if t in seen:
            continue
        leg = bfs_path(game, walk[-1], {t}, S)
        walk.extend(leg[1:])
        seen.update(leg)
    if walk[-1] == start:
        walk.extend(_loop_path(game, start, S)[1:-1])
    else:
        walk.extend(bfs_path(game, walk[-1], {start}, S)[1:-1])
    return tuple(walk)


def _first_witness(game, allowed, v, goods):
    allowed = frozenset(allowed)
    if v not in allowed:
        return None
    X = reachable_set(game, v, allowed)
    for S in goods(X):
        stem = bfs_path(game, v, S, allowed)
        return PathWitness(v, stem, frozenset(S), allowed)
    return None


def _region(game, allowed, goods) -> frozenset:
    allowed = frozenset(allowed)
    targets = set()
    for S in goods(allowed):
        targets |= S
    return backward_reach(game, targets, allowed)


# ---------------------------------------------------------------------------
# Generalized Buchi and co-Buchi

def _gen_buchi_goods(game, must_hit, must_avoid):
    must_hit = [frozenset(b) for b in must_hit]
    must_avoid = frozenset(must_avoid)

    def goods(X):
        for comp in sccs(game, X - must_avoid):
            if all(comp & b for b in must_hit):
                yield _shrink(game, comp, must_hit)
    return goods


def _shrink(game, comp, must_hit):
    reps = sorted({min(comp & b) for b in must_hit}) or [min(comp)]
    return frozenset(_tour(game, reps, comp))


def gen_buchi_cobuchi_path(game: Game, allowed, must_hit, must_avoid, v):
    """Path from ``v`` whose Inf set meets every ``must_hit`` set and avoids ``must_avoid``.

    The stem may cross ``must_avoid``; only the looping part is constrained.
    """
    return _first_witness(game, allowed, v, _gen_buchi_goods(game, must_hit, must_avoid))


# ---------------------------------------------------------------------------
# Streett

def _streett_goods(game, pairs):
    pairs = [(frozenset(g), frozenset(r)) for g, r in pairs]

    def search(comp):
        bad = set()
        for g, r in pairs:
            if comp & g and not comp & r:
                bad |= g
        if not bad:
            return comp
        for sub in sccs(game, comp - bad):
            found = search(sub)
            if found is not None:
                return found
        return None

    def goods(X):
        for comp in sccs(game, X):
            found = search(comp)
            if found is not None:
                yield found
    return goods


def streett_path(game: Game, allowed, pairs, v):
    """Path from ``v`` satisfying every pair: Inf misses ``G`` or meets ``R``."""
    return _first_witness(game, allowed, v, _streett_goods(game, pairs))


# ---------------------------------------------------------------------------
# Boolean combinations of Buchi conditions

def _bc_goods(game, base_sets, formula, method):
    base_sets = [frozenset(b) for b in base_sets]
    n = len(base_sets)
    if method == "auto":
        method = "dnf" if fm.dnf_term_count(formula) < 2 ** n else "enumerate"
    if method == "enumerate":
        cases = []
        for alpha in fm.assignments(n):
            if formula.evaluate(alpha):
                hit = [base_sets[j] for j in range(n) if alpha[j]]
                avoid = frozenset().union(*(base_sets[j] for j in range(n) if not alpha[j]))
                cases.append((hit, avoid))
    elif method == "dnf":
        cases = []
        for pos, neg in fm.dnf(formula):
            hit = [base_sets[j - 1] for j in sorted(pos)]
            avoid = frozenset().union(*(base_sets[j - 1] for j in neg))
            cases.append((hit, avoid))
    else:
        raise ValueError(f"unknown method {method!r}")

    def goods(X):
        return chain.from_iterable(_gen_buchi_goods(game, h, a)(X) for h, a in cases)
    return goods


def bc_buchi_path(game: Game, allowed, base_sets, formula, v, method="enumerate"):
    """Path whose pattern of infinitely-visited base sets satisfies ``formula``.

    ``method="enumerate"`` tries satisfying assignments in increasing binary
    order; ``"dnf"`` expands the formula into conjunctive terms instead;
    ``"auto"`` picks whichever has fewer cases. All three agree on existence.
    """
    return _first_witness(game, allowed, v, _bc_goods(game, base_sets, formula, method))


# ---------------------------------------------------------------------------
# Explicit Muller

def _canonical(family):
    return sorted((frozenset(F) for F in family), key=lambda F: (len(F), sorted(F)))


def _muller_in_goods(game, family):
    family = _canonical(family)

    def goods(X):
        for F in family:
            if F and F <= X and has_internal_edge(game, F) and is_strongly_connected(game, F):
                yield F
    return goods


def _muller_avoid_goods(game, family):
    family = frozenset(frozenset(F) for F in family)
    memo = {}

    def search(comp):
        if comp in memo:
            return memo[comp]
        memo[comp] = None
        if comp not in family:
            memo[comp] = comp
            return comp
        for u in sorted(comp):
            for sub in sccs(game, comp - {u}):
                found = search(sub)
                if found is not None:
                    memo[comp] = found
                    return found
        return None

    def goods(X):
        for comp in sccs(game, X):
            found = search(comp)
            if found is not None:
                yield found
    return goods


def explicit_muller_path(game: Game, allowed, candidate_family, mode, v):
    """IN: Inf must equal some member of the family. AVOID: Inf must be outside it."""
    if mode == IN:
        goods = _muller_in_goods(game, candidate_family)
    elif mode == AVOID:
        goods = _muller_avoid_goods(game, candidate_family)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _first_witness(game, allowed, v, goods)


# ---------------------------------------------------------------------------
# Payoff dispatch

def parity_pairs(colors: dict, even: bool) -> list:
    """Streett pairs for "max color seen infinitely often is even" (or odd).

    For each color ``c`` of the losing parity: seeing ``c`` infinitely often
    forces seeing some larger color of the winning parity.
    """
    want = 0 if even else 1
    palette = sorted(set(colors.values()))
    pairs = []
    for c in palette:
        if c % 2 == want:
            continue
        g = frozenset(v for v, x in colors.items() if x == c)
        r = frozenset(v for v, x in colors.items() if x > c and x % 2 == want)
        pairs.append((g, r))
    return pairs


def pair_formula(game: Game, p):
    """Base sets and formula for Rabin or Streett payoffs.

    Each pair ``(G, R)`` of each player contributes variables ``g`` and
    ``r``. A Rabin win is "some pair has g and not r", a Streett win is
    "every pair has not g or r"; losing is the negation.
    """
    base_sets, parts = [], []
    for obj, bit in zip(game.objectives, p):
        terms = []
        for g, r in obj.pairs:
            base_sets += [g, r]
            gv, rv = fm.Var(len(base_sets) - 1), fm.Var(len(base_sets))
            terms.append((gv, rv))
        rabin_like = isinstance(obj, Rabin) == bool(bit)
        if rabin_like:
            parts.append(fm.Or(*(fm.And(gv, fm.Not(rv)) for gv, rv in terms)))
        else:
            parts.append(fm.And(*(fm.Or(fm.Not(gv), rv) for gv, rv in terms)))
    return base_sets, fm.And(*parts)


def muller_formula(game: Game, p):
    """Base sets (one per color per player) and formula for Muller payoffs."""
    base_sets, parts = [], []
    for obj, bit in zip(game.objectives, p):
        col = obj.color_of
        var = {}
        for c in range(1, obj.max_color + 1):
            base_sets.append(frozenset(v for v, x in col.items() if x == c))
            var[c] = fm.Var(len(base_sets))
        palette = range(1, obj.max_color + 1)
        family = sorted(obj.family, key=sorted)
        if bit:
            parts.append(fm.Or(*(
                fm.And(*[var[c] if c in F else fm.Not(var[c]) for c in palette])
                for F in family)))
        else:
            parts.append(fm.And(*(
                fm.Or(*[fm.Not(var[c]) if c in F else var[c] for c in palette])
                for F in family)))
    return base_sets, fm.And(*parts)


def _payoff_goods(game: Game, p):
    p = tuple(p)
    if len(p) != game.num_players:
        raise ValueError(f"payoff {p} has wrong length")
    obj = game.objectives[0]
    if isinstance(obj, Buchi):
        hit = [o.F for o, b in zip(game.objectives, p) if b]
        avoid = frozenset().union(*(o.F for o, b in zip(game.objectives, p) if not b))
        return _gen_buchi_goods(game, hit, avoid)
    if isinstance(obj, CoBuchi):
        hit = [o.F for o, b in zip(game.objectives, p) if not b]
        avoid = frozenset().union(*(o.F for o, b in zip(game.objectives, p) if b))
        return _gen_buchi_goods(game, hit, avoid)
    if isinstance(obj, Parity):
        pairs = []
        for o, b in zip(game.objectives, p):
            pairs += parity_pairs(o.color_of, even=bool(b))
        return _streett_goods(game, pairs)
    if isinstance(obj, (Rabin, Streett)):
        base_sets, f = pair_formula(game, p)
        return _bc_goods(game, base_sets, f, "auto")
    if isinstance(obj, Muller):
        base_sets, f = muller_formula(game, p)
        return _bc_goods(game, base_sets, f, "auto")
    if isinstance(obj, ExplicitMuller):
        union = frozenset().union(*(o.family for o in game.objectives))
        if any(p):
            family = [F for F in union
                      if tuple(int(F in o.family) for o in game.objectives) == p]
            return _muller_in_goods(game, family)
        return _muller_avoid_goods(game, union)
    raise UnsupportedObjective(
        f"{obj.kind} objectives are not prefix-independent; use the product game")


def payoff_path(game: Game, allowed, p, v):
    """A witness for a play from ``v`` inside ``allowed`` with payoff exactly ``p``."""
    return _first_witness(game, allowed, v, _payoff_goods(game, p))


def payoff_region(game: Game, allowed, p) -> frozenset:
    """All ``u`` in ``allowed`` for which :func:`payoff_path` succeeds."""
    return _region(game, allowed, _payoff_goods(game, p))
