"""Small propositional formulas over variables ``1 .. l``.

Used to describe Boolean combinations of Buchi conditions: variable ``j``
is true on a play iff the play visits the ``j``-th base set infinitely often.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product


class Formula:
    def evaluate(self, assignment) -> bool:
        """``assignment[j - 1]`` is the value of variable ``j``."""
        raise NotImplementedError

    def variables(self) -> frozenset:
        raise NotImplementedError

    def nnf(self, negate=False) -> "Formula":
        raise NotImplementedError

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Var(Formula):
    index: int

    def evaluate(self, assignment):
        return bool(assignment[self.index - 1])

    def variables(self):
        return frozenset([self.index])

    def nnf(self, negate=False):
        return Not(self) if negate else self


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def evaluate(self, assignment):
        return not self.arg.evaluate(assignment)

    def variables(self):
        return self.arg.variables()

    def nnf(self, negate=False):
        return self.arg.nnf(not negate)


class _Nary(Formula):
    def __init__(self, *args):
        self.args = tuple(args)

    def __eq__(self, other):
        return type(self) is type(other) and self.args == other.args

    def __hash__(self):
        return hash((type(self).__name__, self.args))

    def __repr__(self):
        return f"{type(self).__name__}{self.args!r}"

    def variables(self):
        return frozenset().union(*(a.variables() for a in self.args))


class And(_Nary):
    """Conjunction; ``And()`` is true."""

    def evaluate(self, assignment):
        return all(a.evaluate(assignment) for a in self.args)

    def nnf(self, negate=False):
        args = [a.nnf(negate) for a in self.args]
        return Or(*args) if negate else And(*args)


class Or(_Nary):
    """Disjunction; ``Or()`` is false."""

    def evaluate(self, assignment):
        return any(a.evaluate(assignment) for a in self.args)

    def nnf(self, negate=False):
        args = [a.nnf(negate) for a in self.args]
        return And(*args) if negate else Or(*args)


TRUE = And()
FALSE = Or()


def assignments(num_vars: int):
    """All assignments in increasing binary order (variable 1 most significant)."""
    return product((0, 1), repeat=num_vars)


def dnf_term_count(f: Formula) -> int:
    """Number of terms the naive DNF expansion of ``f`` produces."""
    f = f.nnf()
    return _count(f)


def _count(f):
    if isinstance(f, (Var, Not)):
        return 1
    if isinstance(f, Or):
        return sum(_count(a) for a in f.args)
    n = 1
    for a in f.args:
        n *= _count(a)
    return n


def dnf(f: Formula) -> list:
    """Expand ``f`` into terms ``(positive vars, negative vars)``.

    Contradictory terms are dropped and duplicates merged; the order is
    deterministic.
    """
    terms = _dnf(f.nnf())
    out = []
    seen = set()
    for pos, neg in terms:
        if pos & neg or (pos, neg) in seen:
            continue
        seen.add((pos, neg))
        out.append((pos, neg))
    return out


def _dnf(f):
    if isinstance(f, Var):
        return [(frozenset([f.index]), frozenset())]
    if isinstance(f, Not):
        return [(frozenset(), frozenset([f.arg.index]))]
    if isinstance(f, Or):
        return [t for a in f.args for t in _dnf(a)]
    terms = [(frozenset(), frozenset())]
    for a in f.args:
        sub = _dnf(a)
        terms = [(p1 | p2, n1 | n2) for p1, n1 in terms for p2, n2 in sub
                 if not (p1 | p2) & (n1 | n2)]
    return terms
