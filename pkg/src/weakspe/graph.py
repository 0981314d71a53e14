"""Graph helpers over a game's arena restricted to a vertex subset.

All traversals visit successors in increasing index order so that every
returned path is reproducible.
"""
from __future__ import annotations

from collections import deque

import networkx as nx


def _cached(game, key, build):
    # games are frozen; derived structures are memoized on the instance
    cache = game.__dict__.setdefault("_derived", {})
    if key not in cache:
        cache[key] = build(game)
    return cache[key]


def _build_digraph(game):
    g = nx.DiGraph()
    g.add_nodes_from(game.vertices)
    g.add_edges_from(game.edges)
    return g


def _build_predecessors(game):
    pred = [[] for _ in game.vertices]
    for u in game.vertices:
        for v in game.succ[u]:
            pred[v].append(u)
    return tuple(tuple(sorted(p)) for p in pred)


def digraph(game) -> nx.DiGraph:
    return _cached(game, "digraph", _build_digraph)


def predecessors(game) -> tuple:
    return _cached(game, "pred", _build_predecessors)


def has_internal_edge(game, comp) -> bool:
    if len(comp) > 1:
        return True
    (v,) = comp
    return v in game.succ[v]


def sccs(game, vertices, nontrivial=True) -> list:
    """SCCs of the subgraph induced by ``vertices``, ordered by minimum vertex.

    With ``nontrivial`` set, components without an internal edge (a single
    vertex lacking a self-loop) are dropped.
    """
    sub = digraph(game).subgraph(vertices)
    comps = [frozenset(c) for c in nx.strongly_connected_components(sub)]
    if nontrivial:
        comps = [c for c in comps if has_internal_edge(game, c)]
    comps.sort(key=min)
    return comps


def is_strongly_connected(game, vertices) -> bool:
    vertices = frozenset(vertices)
    if not vertices:
        return False
    return nx.is_strongly_connected(digraph(game).subgraph(vertices))


def bfs_path(game, start, targets, allowed=None):
    """Shortest path ``start .. t`` with ``t`` in ``targets``, or None.

    Intermediate vertices stay inside ``allowed`` (when given). Ties go to
    the smallest-index successor at every step.
    """
    if start in targets:
        return (start,)
    parent = {start: None}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for w in game.succ[u]:
            if w in parent or (allowed is not None and w not in allowed):
                continue
            parent[w] = u
            if w in targets:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            todo.append(w)
    return None


def backward_reach(game, targets, allowed) -> frozenset:
    """Vertices of ``allowed`` that can reach ``targets`` while staying in ``allowed``."""
    pred = predecessors(game)
    seen = set(t for t in targets if t in allowed)
    todo = deque(seen)
    while todo:
        u = todo.popleft()
        for w in pred[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(seen)


def remove_cycles(path) -> tuple:
    """Drop every loop from a finite path, keeping first and last vertex.

    The result is a simple path; each vertex keeps the position of its last
    occurrence so the output only uses edges of the input.
    """
    out = []
    index = {}
    for v in path:
        if v in index:
            cut = index[v]
            for w in out[cut + 1:]:
                del index[w]
            del out[cut + 1:]
        else:
            index[v] = len(out)
            out.append(v)
    return tuple(out)
