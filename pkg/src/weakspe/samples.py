"""Small hand-built games used in tests, demos and documentation."""
from .game import Buchi, make_game


def buchi_example():
    """Seven-vertex, two-player Buchi game used as the running example.

    Player 2 owns ``v0`` and ``v4``; player 1 owns the rest. Player 1 wants
    to see ``v1`` infinitely often, player 2 wants ``v3`` or ``v5``.
    """
    edges = [(0, 1), (0, 4), (1, 2), (2, 1), (2, 3), (3, 3),
             (4, 5), (4, 6), (5, 5), (6, 6)]
    owner = [2, 1, 1, 1, 2, 1, 1]
    return make_game(2, owner, edges, [Buchi({1}), Buchi({3, 5})], initial=0)


def buchi_example_left():
    """The running example cut down to ``v0 .. v3`` (``v0`` only moves to ``v1``)."""
    edges = [(0, 1), (1, 2), (2, 1), (2, 3), (3, 3)]
    owner = [2, 1, 1, 1]
    return make_game(2, owner, edges, [Buchi({1}), Buchi({3})], initial=0)


def single_loop_game(objective=None):
    """One vertex with a self-loop, one player."""
    return make_game(1, [1], [(0, 0)], [objective or Buchi({0})], initial=0)
