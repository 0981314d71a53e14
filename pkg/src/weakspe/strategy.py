"""Finite-memory profiles built from symbolic witnesses, and their verification.

All players read one shared memory ``(slot, pos)``: the lasso currently
being followed and the position of the current vertex on it. A move that
leaves the lasso is a deviation by the owner ``i`` of the vertex left, and
the memory jumps to the start of slot ``(i, v')``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import MissingLasso, UnsupportedObjective
from .game import Game, Lasso, payoff_of
from .witness import parse_slot, slot_key


@dataclass(frozen=True)
class ProfileConfiguration:
    memory: tuple  # (slot, pos)
    vertex: int

    def to_list(self):
        (i, u), pos = self.memory
        return [[i, u], pos, self.vertex]


class MooreProfile:
    def __init__(self, lassoes: dict, initial_slot, owner=None):
        self.lassoes = {tuple(s): l for s, l in lassoes.items()}
        self.initial_slot = tuple(initial_slot)
        if self.initial_slot not in self.lassoes:
            raise MissingLasso(f"initial slot {self.initial_slot} has no lasso")
        self.owner = owner

    @classmethod
    def from_lassoes(cls, lassoes: dict, v0: int, game: Game):
        return cls(lassoes, (0, v0), game.owner)

    @property
    def slots(self) -> list:
        return sorted(self.lassoes)

    @property
    def initial(self) -> ProfileConfiguration:
        lasso = self.lassoes[self.initial_slot]
        return ProfileConfiguration((self.initial_slot, 0), lasso.first)

    @property
    def size(self) -> int:
        """Number of memory states."""
        return sum(len(l) for l in self.lassoes.values())

    def next_move(self, memory, vertex) -> int:
        slot, pos = memory
        lasso = self.lassoes[slot]
        return lasso.sequence[lasso.next_index(pos)]

    def update(self, memory, vertex, target):
        """Memory after the play moves from ``vertex`` to ``target``."""
        slot, pos = memory
        lasso = self.lassoes[slot]
        nxt = lasso.next_index(pos)
        if lasso.sequence[nxt] == target:
            return slot, nxt
        deviator = self.owner[vertex]
        new = (deviator, target)
        if new not in self.lassoes:
            raise MissingLasso(f"no lasso for deviation slot {new}")
        return new, 0

    def step(self, config: ProfileConfiguration, target=None) -> ProfileConfiguration:
        if target is None:
            target = self.next_move(config.memory, config.vertex)
        return ProfileConfiguration(self.update(config.memory, config.vertex, target), target)

    def to_dict(self) -> dict:
        return {
            "slots": [list(s) for s in self.slots],
            "lassoes": {slot_key(s): self.lassoes[s].to_dict() for s in self.slots},
            "initial": list(self.initial_slot),
        }

    @classmethod
    def from_dict(cls, d, game: Game):
        lassoes = {parse_slot(k): Lasso.from_dict(v) for k, v in d["lassoes"].items()}
        for s in d.get("slots", []):
            if tuple(s) not in lassoes:
                raise MissingLasso(f"slot {tuple(s)} has no lasso")
        return cls(lassoes, tuple(d["initial"]), game.owner)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def synthesize_profile(witness, game: Game) -> MooreProfile:
    """Profile following ``rho_{0,v0}`` and switching to ``rho_{i,v'}`` after a deviation."""
    for slot in witness.index:
        if slot not in witness.lassoes:
            raise MissingLasso(f"slot {slot} has no lasso")
    roots = [s for s in witness.index if s[0] == 0]
    return MooreProfile(dict(witness.lassoes), roots[0], game.owner)


def outcome_from(profile: MooreProfile, game: Game, config: ProfileConfiguration) -> Lasso:
    """The play produced by the profile from ``config``, as a lasso."""
    seen = {}
    seq = []
    cur = config
    while cur not in seen:
        seen[cur] = len(seq)
        seq.append(cur.vertex)
        cur = profile.step(cur)
    k = seen[cur]
    return Lasso(seq[:k], seq[k:])


@dataclass
class VerifyReport:
    is_weak_spe: bool
    counterexample: tuple | None = None
    configurations: int = 0

    def to_dict(self) -> dict:
        d = {"is_weak_spe": self.is_weak_spe, "configurations": self.configurations,
             "counterexample": None}
        if self.counterexample is not None:
            config, i, alt, before, after = self.counterexample
            d["counterexample"] = {"configuration": config.to_list(), "player": i,
                                   "alternative": alt, "gain_before": before,
                                   "gain_after": after}
        return d


def reachable_configurations(profile: MooreProfile, game: Game) -> list:
    """Configurations reachable under the profile and any sequence of deviations."""
    start = profile.initial
    seen = {start}
    order = [start]
    todo = deque([start])
    while todo:
        c = todo.popleft()
        for w in game.succ[c.vertex]:
            nxt = profile.step(c, w)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                todo.append(nxt)
    return order


def verify_weak_spe(profile: MooreProfile, game: Game) -> VerifyReport:
    """One-shot deviation check over all reachable configurations.

    Sound for prefix-independent objectives, where the gain of a subgame
    depends only on its continuation.
    """
    if not game.prefix_independent:
        raise UnsupportedObjective(
            f"{game.kind} objectives depend on the history; verify on the product game")
    gains = {}

    def gain(c, i):
        if c not in gains:
            gains[c] = payoff_of(game, outcome_from(profile, game, c))
        return gains[c][i - 1]

    configs = reachable_configurations(profile, game)
    for c in configs:
        v = c.vertex
        i = game.owner[v]
        planned = profile.next_move(c.memory, v)
        for w in game.succ[v]:
            if w == planned:
                continue
            alt = profile.step(c, w)
            before, after = gain(c, i), gain(alt, i)
            if before < after:
                return VerifyReport(False, (c, i, w, before, after), len(configs))
    return VerifyReport(True, None, len(configs))
