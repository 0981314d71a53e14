"""Arenas, objectives, lassoes and gain evaluation.

Vertices are the integers ``0 .. n-1``. Players are numbered ``1 .. k``; a
payoff is a tuple of 0/1 ints whose entry ``i - 1`` is player ``i``'s gain.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    ArityMismatch,
    DeadEndVertex,
    GameError,
    InvalidObjective,
    MixedObjectives,
    UnknownVertex,
)

Payoff = tuple  # tuple[int, ...]


def payoff_bits(p) -> str:
    """``(0, 1) -> "01"``; player 1 is the leftmost character."""
    return "".join(str(int(b)) for b in p)


def parse_bits(text: str, num_players: int | None = None) -> Payoff:
    if not text or any(c not in "01" for c in text):
        raise ArityMismatch(f"not a payoff bitstring: {text!r}")
    if num_players is not None and len(text) != num_players:
        raise ArityMismatch(
            f"payoff {text!r} has length {len(text)}, game has {num_players} players")
    return tuple(int(c) for c in text)


def all_payoffs(num_players: int):
    """All payoffs in lexicographic order, ``(0,..,0)`` first."""
    for code in range(2 ** num_players):
        yield tuple((code >> (num_players - 1 - i)) & 1 for i in range(num_players))


def leq(x, y) -> bool:
    return all(a <= b for a, b in zip(x, y))


def _vset(items) -> frozenset:
    return frozenset(int(v) for v in items)


def _family(sets) -> frozenset:
    return frozenset(_vset(s) for s in sets)


def _sorted_family(family):
    return sorted(sorted(s) for s in family)


# ---------------------------------------------------------------------------
# Objectives

class Objective:
    """Common interface; ``gain`` works on the (Occ, Inf) pair of a play."""

    kind = ""
    prefix_independent = True

    def gain(self, occ: frozenset, inf: frozenset) -> int:
        raise NotImplementedError

    def vertices(self) -> set:
        """Vertices mentioned by the objective (for validation)."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class _TargetObjective(Objective):
    F: frozenset

    def __post_init__(self):
        object.__setattr__(self, "F", _vset(self.F))

    def vertices(self):
        return set(self.F)

    def to_dict(self):
        return {"type": self.kind, "F": sorted(self.F)}


@dataclass(frozen=True)
class Reachability(_TargetObjective):
    kind = "reachability"
    prefix_independent = False

    def gain(self, occ, inf):
        return int(bool(occ & self.F))


@dataclass(frozen=True)
class Safety(_TargetObjective):
    kind = "safety"
    prefix_independent = False

    def gain(self, occ, inf):
        return int(not (occ & self.F))


@dataclass(frozen=True)
class Buchi(_TargetObjective):
    kind = "buchi"

    def gain(self, occ, inf):
        return int(bool(inf & self.F))


@dataclass(frozen=True)
class CoBuchi(_TargetObjective):
    kind = "cobuchi"

    def gain(self, occ, inf):
        return int(not (inf & self.F))


def _colors(colors) -> tuple:
    items = colors.items() if hasattr(colors, "items") else colors
    out = tuple(sorted((int(v), int(c)) for v, c in items))
    for v, c in out:
        if c < 1:
            raise InvalidObjective(f"color {c} of vertex {v} is below 1")
    return out


@dataclass(frozen=True)
class Parity(Objective):
    """Player wins iff the largest color seen infinitely often is even."""

    colors: tuple
    kind = "parity"

    def __post_init__(self):
        object.__setattr__(self, "colors", _colors(self.colors))
        if not self.colors:
            raise InvalidObjective("parity coloring is empty")

    @property
    def color_of(self) -> dict:
        return dict(self.colors)

    def gain(self, occ, inf):
        col = self.color_of
        return int(max(col[v] for v in inf) % 2 == 0)

    def vertices(self):
        return {v for v, _ in self.colors}

    def to_dict(self):
        return {"type": self.kind, "colors": {str(v): c for v, c in self.colors}}


@dataclass(frozen=True)
class ExplicitMuller(Objective):
    family: frozenset
    kind = "explicit_muller"

    def __post_init__(self):
        object.__setattr__(self, "family", _family(self.family))

    def gain(self, occ, inf):
        return int(frozenset(inf) in self.family)

    def vertices(self):
        return set().union(*self.family) if self.family else set()

    def to_dict(self):
        return {"type": self.kind, "family": _sorted_family(self.family)}


@dataclass(frozen=True)
class Muller(Objective):
    """Family of color sets; the set of colors seen infinitely often must be in it."""

    colors: tuple
    family: frozenset
    kind = "muller"

    def __post_init__(self):
        object.__setattr__(self, "colors", _colors(self.colors))
        object.__setattr__(self, "family", _family(self.family))
        if not self.colors:
            raise InvalidObjective("muller coloring is empty")
        used = {c for _, c in self.colors}
        for s in self.family:
            if not s <= used:
                raise InvalidObjective(
                    f"muller family mentions colors {sorted(s - used)} not used by any vertex")

    @property
    def color_of(self) -> dict:
        return dict(self.colors)

    @property
    def max_color(self) -> int:
        return max(c for _, c in self.colors)

    def gain(self, occ, inf):
        col = self.color_of
        return int(frozenset(col[v] for v in inf) in self.family)

    def vertices(self):
        return {v for v, _ in self.colors}

    def to_dict(self):
        return {"type": self.kind,
                "colors": {str(v): c for v, c in self.colors},
                "family": _sorted_family(self.family)}


def _pairs(pairs) -> tuple:
    out = []
    for pair in pairs:
        if isinstance(pair, dict):
            g, r = pair["G"], pair["R"]
        else:
            g, r = pair
        out.append((_vset(g), _vset(r)))
    if not out:
        raise InvalidObjective("pair list must be nonempty")
    return tuple(out)


@dataclass(frozen=True)
class _PairObjective(Objective):
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", _pairs(self.pairs))

    def vertices(self):
        vs = set()
        for g, r in self.pairs:
            vs |= g | r
        return vs

    def to_dict(self):
        return {"type": self.kind,
                "pairs": [{"G": sorted(g), "R": sorted(r)} for g, r in self.pairs]}


@dataclass(frozen=True)
class Rabin(_PairObjective):
    kind = "rabin"

    def gain(self, occ, inf):
        return int(any(inf & g and not inf & r for g, r in self.pairs))


@dataclass(frozen=True)
class Streett(_PairObjective):
    kind = "streett"

    def gain(self, occ, inf):
        return int(all(not inf & g or inf & r for g, r in self.pairs))


OBJECTIVE_TYPES = {cls.kind: cls for cls in (
    Reachability, Safety, Buchi, CoBuchi, Parity, ExplicitMuller, Muller, Rabin, Streett)}


def objective_from_dict(d: dict) -> Objective:
    try:
        kind = d["type"]
        cls = OBJECTIVE_TYPES[kind]
    except KeyError:
        raise InvalidObjective(f"unknown objective {d!r}") from None
    try:
        if cls in (Reachability, Safety, Buchi, CoBuchi):
            return cls(d["F"])
        if cls is Parity:
            return Parity(d["colors"])
        if cls is ExplicitMuller:
            return ExplicitMuller(d["family"])
        if cls is Muller:
            return Muller(d["colors"], d["family"])
        return cls(d["pairs"])
    except (KeyError, TypeError) as exc:
        raise InvalidObjective(f"malformed {kind} objective: {exc}") from None


# ---------------------------------------------------------------------------
# Games

@dataclass(frozen=True)
class Game:
    """Turn-based arena with one Boolean objective per player.

    ``owner[v]`` is the player controlling ``v`` and ``succ[v]`` its sorted
    successors. Construction validates the arena; use :func:`make_game` or
    :func:`validate_game` rather than filling the fields by hand.
    """

    num_players: int
    owner: tuple
    succ: tuple
    objectives: tuple
    initial: int | None = None

    def __post_init__(self):
        _check_game(self)

    @property
    def num_vertices(self) -> int:
        return len(self.owner)

    @property
    def vertices(self) -> range:
        return range(len(self.owner))

    @property
    def edges(self) -> list:
        return [(u, v) for u in self.vertices for v in self.succ[u]]

    @property
    def kind(self) -> str:
        return self.objectives[0].kind

    @property
    def prefix_independent(self) -> bool:
        return self.objectives[0].prefix_independent

    def has_edge(self, u, v) -> bool:
        return v in self.succ[u]

    def with_initial(self, v0):
        return Game(self.num_players, self.owner, self.succ, self.objectives, v0)

    def to_dict(self) -> dict:
        d = {
            "players": self.num_players,
            "vertices": [{"id": v, "owner": o} for v, o in enumerate(self.owner)],
            "edges": [list(e) for e in self.edges],
            "objectives": [o.to_dict() for o in self.objectives],
        }
        if self.initial is not None:
            d["initial"] = self.initial
        return d


def _check_game(g: Game):
    if g.num_players < 1:
        raise GameError("a game needs at least one player")
    n = len(g.owner)
    if n == 0:
        raise GameError("a game needs at least one vertex")
    if len(g.succ) != n:
        raise GameError("successor table does not match the vertex count")
    for v, o in enumerate(g.owner):
        if not 1 <= o <= g.num_players:
            raise GameError(f"vertex {v} owned by unknown player {o}")
    for v, out in enumerate(g.succ):
        for w in out:
            if not 0 <= w < n:
                raise UnknownVertex(w, f"edge ({v}, {w})")
        if not out:
            raise DeadEndVertex(v)
    if len(g.objectives) != g.num_players:
        raise ArityMismatch(
            f"{len(g.objectives)} objectives for {g.num_players} players")
    kinds = {o.kind for o in g.objectives}
    if len(kinds) > 1:
        raise MixedObjectives(f"players use different objective types: {sorted(kinds)}")
    for i, obj in enumerate(g.objectives, 1):
        for v in obj.vertices():
            if not 0 <= v < n:
                raise UnknownVertex(v, f"objective of player {i}")
        if isinstance(obj, (Parity, Muller)) and len(obj.colors) != n:
            raise InvalidObjective(f"coloring of player {i} is not total on the vertices")
    if g.initial is not None and not 0 <= g.initial < n:
        raise UnknownVertex(g.initial, "initial vertex")


def make_game(num_players: int, owner, edges: Iterable, objectives, initial=None) -> Game:
    """Build and validate a game from an owner list and an edge list."""
    owner = tuple(int(o) for o in owner)
    n = len(owner)
    out = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not 0 <= u < n:
            raise UnknownVertex(u, f"edge ({u}, {v})")
        if not 0 <= v < n:
            raise UnknownVertex(v, f"edge ({u}, {v})")
        out[u].add(v)
    return Game(int(num_players), owner, tuple(tuple(sorted(s)) for s in out),
                tuple(objectives), initial)


def validate_game(raw) -> Game:
    """Accept a JSON-shaped dict (or an existing :class:`Game`) and validate it."""
    if isinstance(raw, Game):
        _check_game(raw)
        return raw
    try:
        players = int(raw["players"])
        verts = raw["vertices"]
        ids = [int(v["id"]) for v in verts]
        if sorted(ids) != list(range(len(ids))):
            raise GameError("vertex ids must be exactly 0 .. n-1")
        owner = [0] * len(ids)
        for v in verts:
            owner[int(v["id"])] = int(v["owner"])
        objectives = [objective_from_dict(o) for o in raw["objectives"]]
        edges = raw["edges"]
        initial = raw.get("initial")
    except (KeyError, TypeError) as exc:
        raise GameError(f"malformed game description: {exc}") from None
    if len(objectives) != players:
        raise ArityMismatch(f"{len(objectives)} objectives for {players} players")
    return make_game(players, owner, edges, objectives,
                     None if initial is None else int(initial))


# ---------------------------------------------------------------------------
# Plays

@dataclass(frozen=True)
class Lasso:
    """The play ``stem . cycle^omega``; the stem may be empty."""

    stem: tuple = field(default=())
    cycle: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(int(v) for v in self.stem))
        object.__setattr__(self, "cycle", tuple(int(v) for v in self.cycle))
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @property
    def first(self) -> int:
        return self.stem[0] if self.stem else self.cycle[0]

    @property
    def sequence(self) -> tuple:
        return self.stem + self.cycle

    def __len__(self):
        return len(self.stem) + len(self.cycle)

    def next_index(self, pos: int) -> int:
        """Position following ``pos`` in the infinite unrolling."""
        pos += 1
        return pos if pos < len(self) else len(self.stem)

    def is_valid_in(self, game: Game) -> bool:
        seq = self.sequence
        if any(not 0 <= v < game.num_vertices for v in seq):
            return False
        pairs = list(zip(seq, seq[1:])) + [(self.cycle[-1], self.cycle[0])]
        return all(game.has_edge(u, v) for u, v in pairs)

    def to_dict(self) -> dict:
        return {"stem": list(self.stem), "cycle": list(self.cycle)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["stem"], d["cycle"])

    def __str__(self):
        stem = " ".join(f"v{v}" for v in self.stem)
        cyc = " ".join(f"v{v}" for v in self.cycle)
        return f"{stem} ({cyc})^w".strip()


def occ_inf(lasso: Lasso):
    inf = frozenset(lasso.cycle)
    return frozenset(lasso.stem) | inf, inf


def evaluate_gain(objective: Objective, lasso: Lasso) -> int:
    occ, inf = occ_inf(lasso)
    return objective.gain(occ, inf)


def payoff_of(game: Game, lasso: Lasso) -> Payoff:
    occ, inf = occ_inf(lasso)
    return tuple(o.gain(occ, inf) for o in game.objectives)


def payoff_from_sets(game: Game, occ, inf) -> Payoff:
    occ, inf = frozenset(occ), frozenset(inf)
    return tuple(o.gain(occ, inf) for o in game.objectives)


def reachable_set(game: Game, v: int, allowed=None) -> frozenset:
    """Vertices reachable from ``v`` (inclusive), optionally inside ``allowed``."""
    if allowed is not None and v not in allowed:
        return frozenset()
    seen = {v}
    todo = deque([v])
    while todo:
        u = todo.popleft()
        for w in game.succ[u]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                todo.append(w)
    return frozenset(seen)
