"""Game transformations and instance generators.

* :func:`reach_safety_product` turns Reachability (Safety) objectives into
  Buchi (co-Buchi) ones by remembering which players already visited their
  target set.
* :func:`qbf_to_game` builds the game whose constrained weak SPE problem is
  equivalent to the truth of an alternating QBF; :func:`qbf_truth` is the
  naive evaluator used to check it.
* :func:`random_game` draws reproducible small games of every class.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import MalformedFormula, UnsupportedObjective
from .game import (
    Buchi, CoBuchi, ExplicitMuller, Game, Lasso, Muller, Parity, Rabin,
    Reachability, Safety, Streett, make_game,
)
from .graph import has_internal_edge, is_strongly_connected

REACH = "reach"
SAFETY = "safety"


# ---------------------------------------------------------------------------
# Reachability / Safety product

@dataclass(frozen=True)
class ProductVertex:
    base: int
    satisfied: frozenset

    def label(self):
        return {"base": self.base, "satisfied": sorted(self.satisfied)}


@dataclass(frozen=True)
class ProductGame(Game):
    """Product arena; ``info[k]`` describes product vertex ``k``."""

    base: Game | None = field(default=None, compare=False)
    info: tuple = ()

    def metadata(self) -> dict:
        return {
            "base_initial": self.info[self.initial].base,
            "base_vertices": self.base.num_vertices,
            "vertices": [dict(id=k, **pv.label()) for k, pv in enumerate(self.info)],
        }

    def project(self, lasso: Lasso) -> Lasso:
        return Lasso([self.info[v].base for v in lasso.stem],
                     [self.info[v].base for v in lasso.cycle])

    def lift(self, lasso: Lasso) -> Lasso:
        """The product lasso following ``lasso`` from the product initial vertex.

        The base lasso must start at the base initial vertex. The cycle is
        unrolled until the satisfied set stops growing.
        """
        index = {pv: k for k, pv in enumerate(self.info)}
        targets = [o.F for o in self.base.objectives]
        seq = lasso.sequence
        if seq[0] != self.info[self.initial].base:
            raise ValueError("lasso does not start at the initial vertex")
        cur = self.info[self.initial].satisfied
        out = [index[ProductVertex(seq[0], cur)]]
        for v in seq[1:]:
            cur = cur | {i for i, F in enumerate(targets, 1) if v in F}
            out.append(index[ProductVertex(v, cur)])
        stem = list(out[:len(lasso.stem)])
        cycle = out[len(lasso.stem):]
        while True:
            # one more lap of the base cycle from the current satisfied set
            lap = []
            for v in lasso.cycle:
                cur = cur | {i for i, F in enumerate(targets, 1) if v in F}
                lap.append(index[ProductVertex(v, cur)])
            if lap == cycle:
                return Lasso(stem, cycle)
            stem += cycle
            cycle = lap


def _touched(objectives, v):
    return frozenset(i for i, o in enumerate(objectives, 1) if v in o.F)


def reach_safety_product(game: Game, v0: int | None = None) -> ProductGame:
    """Product over the vertices reachable from ``(v0, I0)``.

    ``I`` collects the players whose set ``F_i`` has been visited. Reachability
    becomes Buchi on ``{(v, I) | i in I}``; Safety becomes co-Buchi on the same
    sets. Product vertices are numbered in breadth-first order.
    """
    kinds = {type(o) for o in game.objectives}
    if kinds not in ({Reachability}, {Safety}):
        raise UnsupportedObjective("product game needs all-Reachability or all-Safety objectives")
    v0 = game.initial if v0 is None else v0
    if v0 is None:
        raise ValueError("no initial vertex")
    start = ProductVertex(v0, _touched(game.objectives, v0))
    index = {start: 0}
    info = [start]
    edges = []
    todo = deque([start])
    while todo:
        pv = todo.popleft()
        for u in game.succ[pv.base]:
            nxt = ProductVertex(u, pv.satisfied | _touched(game.objectives, u))
            if nxt not in index:
                index[nxt] = len(info)
                info.append(nxt)
                todo.append(nxt)
            edges.append((index[pv], index[nxt]))
    target = Buchi if kinds == {Reachability} else CoBuchi
    objectives = tuple(
        target([k for k, pv in enumerate(info) if i in pv.satisfied])
        for i in range(1, game.num_players + 1))
    skeleton = make_game(game.num_players, [game.owner[pv.base] for pv in info],
                         edges, objectives, 0)
    return ProductGame(skeleton.num_players, skeleton.owner, skeleton.succ,
                       skeleton.objectives, 0, base=game, info=tuple(info))


# ---------------------------------------------------------------------------
# QBF

@dataclass(frozen=True)
class QbfFormula:
    """``exists x1 forall x2 exists x3 ... (C1 and ... and Cn)``.

    Clauses are tuples of nonzero ints; ``-k`` is the negation of ``x_k``.
    """

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 1:
            raise MalformedFormula("formula needs at least one variable")
        if not clauses:
            raise MalformedFormula("formula needs at least one clause")
        for c in clauses:
            if not c:
                raise MalformedFormula("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise MalformedFormula(f"literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def to_qdimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        for k in range(1, self.num_vars + 1):
            lines.append(f"{'e' if k % 2 else 'a'} {k} 0")
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_qdimacs(text: str) -> QbfFormula:
    """Parse a QDIMACS-style formula with a strictly alternating prefix.

    The header may read ``p cnf m n`` or ``p qbf m n`` with ``m`` the largest
    variable index. Each quantifier line
    binds exactly one variable; the prefix must start with ``e`` and
    alternate. The k-th quantified variable becomes ``x_k``.
    """
    header = None
    prefix = []
    clauses = []
    pending = []
    for raw in text.splitlines():
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] not in ("cnf", "qbf"):
                raise MalformedFormula(f"bad header: {raw!r}")
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise MalformedFormula(f"bad header: {raw!r}") from None
            continue
        if header is None:
            raise MalformedFormula("missing 'p' header")
        if tok[0] in ("e", "a"):
            if clauses or pending:
                raise MalformedFormula("quantifier line after clauses")
            try:
                nums = [int(t) for t in tok[1:]]
            except ValueError:
                raise MalformedFormula(f"bad quantifier line: {raw!r}") from None
            if not nums or nums[-1] != 0:
                raise MalformedFormula(f"quantifier line not terminated by 0: {raw!r}")
            if len(nums) != 2:
                raise MalformedFormula("quantifier blocks must bind exactly one variable")
            prefix.append((tok[0], nums[0]))
            continue
        try:
            nums = [int(t) for t in tok]
        except ValueError:
            raise MalformedFormula(f"bad clause line: {raw!r}") from None
        for lit in nums:
            if lit == 0:
                if not pending:
                    raise MalformedFormula("empty clause")
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise MalformedFormula("missing 'p' header")
    if pending:
        raise MalformedFormula("last clause not terminated by 0")
    m, n = header
    if len(clauses) != n:
        raise MalformedFormula(f"header announces {n} clauses, found {len(clauses)}")
    for k, (q, _) in enumerate(prefix):
        if q != ("e" if k % 2 == 0 else "a"):
            raise MalformedFormula("quantifier prefix must alternate starting with 'e'")
    rename = {}
    for k, (_, var) in enumerate(prefix, 1):
        if var <= 0 or var > m or var in rename:
            raise MalformedFormula(f"variable {var} quantified twice or invalid")
        rename[var] = k
    try:
        renamed = [tuple((1 if l > 0 else -1) * rename[abs(l)] for l in c) for c in clauses]
    except KeyError as exc:
        raise MalformedFormula(f"free variable {exc.args[0]}") from None
    return QbfFormula(m, tuple(renamed))


def qbf_truth(formula: QbfFormula) -> bool:
    """Naive recursive evaluation: odd variables existential, even universal."""
    m = formula.num_vars

    def holds(values):
        return all(any(values[abs(l) - 1] == (l > 0) for l in c) for c in formula.clauses)

    def rec(values):
        k = len(values)
        if k == m:
            return holds(values)
        branches = (rec(values + (b,)) for b in (False, True))
        return any(branches) if k % 2 == 0 else all(branches)

    return rec(())


def qbf_vertex_names(formula: QbfFormula) -> list:
    names = []
    for k in range(1, formula.num_vars + 1):
        names += [f"q{k}", f"x{k}", f"~x{k}"]
    for k in range(1, formula.num_clauses + 1):
        names += [f"c{k}", f"t{k}"]
    names.append(f"t{formula.num_clauses + 1}")
    return names


def qbf_to_game(formula: QbfFormula, variant=REACH):
    """Build the clause/quantifier game for ``formula``.

    Returns ``(game, v0, x, y)`` with ``v0 = q_1``, lower bound
    ``x = (0, .., 0, 1, 0)`` and upper bound all ones. Vertex layout:
    ``q_k, x_k, ~x_k`` at ``3(k-1) .. 3(k-1)+2``, then ``c_k, t_k`` pairs,
    then ``t_{n+1}``. Players ``1..n`` own the clause vertices, player
    ``n+1`` the existential ``q_k``, player ``n+2`` the universal ones;
    single-successor vertices go to player 1.
    """
    if variant not in (REACH, SAFETY):
        raise ValueError(f"unknown variant {variant!r}")
    m, n = formula.num_vars, formula.num_clauses
    q = lambda k: 3 * (k - 1)
    pos = lambda k: 3 * (k - 1) + 1
    neg = lambda k: 3 * (k - 1) + 2
    c = lambda k: 3 * m + 2 * (k - 1)
    t = lambda k: 3 * m + 2 * (k - 1) + 1 if k <= n else 3 * m + 2 * n
    nv = 3 * m + 2 * n + 1
    owner = [1] * nv
    edges = []
    for k in range(1, m + 1):
        owner[q(k)] = n + 1 if k % 2 else n + 2
        edges += [(q(k), pos(k)), (q(k), neg(k))]
        nxt = q(k + 1) if k < m else c(1)
        edges += [(pos(k), nxt), (neg(k), nxt)]
    for k in range(1, n + 1):
        owner[c(k)] = k
        edges += [(c(k), t(k)), (c(k), c(k + 1) if k < n else t(n + 1))]
        edges.append((t(k), t(k)))
    edges.append((t(n + 1), t(n + 1)))

    def literals(clause):
        return {pos(l) if l > 0 else neg(-l) for l in clause}

    all_t = {t(k) for k in range(1, n + 1)}
    if variant == REACH:
        sets = [literals(formula.clauses[i - 1]) | {t(i)} for i in range(1, n + 1)]
        sets += [{t(n + 1)}, all_t]
        objectives = [Reachability(F) for F in sets]
    else:
        sets = [literals(formula.clauses[i - 1]) | {t(n + 1)} for i in range(1, n + 1)]
        sets += [all_t, {t(n + 1)}]
        objectives = [Safety(F) for F in sets]
    game = make_game(n + 2, owner, edges, objectives, q(1))
    x = tuple([0] * n + [1, 0])
    y = tuple([1] * (n + 2))
    return game, q(1), x, y


def all_formulas(max_vars=3, max_clauses=3, max_width=None):
    """Every alternating formula up to the given sizes (clauses as literal sets)."""
    for m in range(1, max_vars + 1):
        lits = [l for k in range(1, m + 1) for l in (k, -k)]
        width = m if max_width is None else min(max_width, m)
        clause_pool = [c for w in range(1, width + 1) for c in combinations(lits, w)
                       if not any(-l in c for l in c)]
        for n in range(1, max_clauses + 1):
            for cs in combinations(clause_pool, n):
                yield QbfFormula(m, cs)


def random_formula(rng: random.Random, max_vars=3, max_clauses=3) -> QbfFormula:
    m = rng.randint(1, max_vars)
    n = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(n):
        width = rng.randint(1, min(3, m))
        vars_ = rng.sample(range(1, m + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return QbfFormula(m, tuple(clauses))


# ---------------------------------------------------------------------------
# Random games

OBJECTIVE_CLASSES = ("reachability", "safety", "buchi", "cobuchi", "parity",
                     "explicit_muller", "muller", "rabin", "streett")


def _subset(rng, items, p, nonempty=True):
    s = {v for v in items if rng.random() < p}
    if nonempty and not s:
        s = {rng.choice(list(items))}
    return s


def _realizable_sets(game, limit=10):
    n = game.num_vertices
    if n > limit:
        return []
    out = []
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if has_internal_edge(game, S) and is_strongly_connected(game, S):
                out.append(S)
    return out


def random_game(num_vertices: int, num_players: int, objective_class: str,
                edge_density: float = 0.4, seed: int = 0, max_colors: int = 4,
                max_pairs: int = 2) -> Game:
    """Reproducible random game; every vertex gets at least one successor.

    The initial vertex is 0. Objective sets are nonempty (Rabin/Streett
    ``R`` sets may be empty).
    """
    if num_vertices < 1 or num_players < 1:
        raise ValueError("sizes must be positive")
    if not 0 < edge_density <= 1:
        raise ValueError("edge density must lie in (0, 1]")
    if objective_class not in OBJECTIVE_CLASSES:
        raise ValueError(f"unknown objective class {objective_class!r}")
    rng = random.Random(seed)
    V = range(num_vertices)
    owner = [rng.randint(1, num_players) for _ in V]
    edges = []
    for u in V:
        out = [v for v in V if rng.random() < edge_density]
        if not out:
            out = [rng.choice(V)]
        edges += [(u, v) for v in out]
    skeleton = make_game(1, owner=[1] * num_vertices, edges=edges,
                         objectives=[Buchi([0])])
    objectives = []
    realizable = None
    for _ in range(num_players):
        if objective_class in ("reachability", "safety", "buchi", "cobuchi"):
            cls = {"reachability": Reachability, "safety": Safety,
                   "buchi": Buchi, "cobuchi": CoBuchi}[objective_class]
            objectives.append(cls(_subset(rng, V, 0.3)))
        elif objective_class == "parity":
            d = rng.randint(1, max_colors)
            objectives.append(Parity({v: rng.randint(1, d) for v in V}))
        elif objective_class == "muller":
            d = rng.randint(1, max(1, max_colors - 1))
            colors = {v: rng.randint(1, d) for v in V}
            used = sorted(set(colors.values()))
            family = [_subset(rng, used, 0.5) for _ in range(rng.randint(1, 3))]
            objectives.append(Muller(colors, family))
        elif objective_class == "explicit_muller":
            if realizable is None:
                realizable = _realizable_sets(skeleton)
            family = []
            for _ in range(rng.randint(1, 3)):
                if realizable and rng.random() < 0.8:
                    family.append(rng.choice(realizable))
                else:
                    family.append(_subset(rng, V, 0.4))
            objectives.append(ExplicitMuller(family))
        else:
            cls = Rabin if objective_class == "rabin" else Streett
            pairs = [(_subset(rng, V, 0.3), _subset(rng, V, 0.3, nonempty=False))
                     for _ in range(rng.randint(1, max_pairs))]
            objectives.append(cls(pairs))
    return make_game(num_players, owner, edges, objectives, 0)
