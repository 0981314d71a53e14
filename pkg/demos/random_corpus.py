"""Certify random games of every objective class and summarize.

    python3 demos/random_corpus.py [games-per-class]
"""
import sys
import time

from weakspe import certify
from weakspe.reductions import OBJECTIVE_CLASSES, random_game

per_class = int(sys.argv[1]) if len(sys.argv) > 1 else 20
print(f"{'class':<16} {'games':>5} {'exists':>6} {'verified':>8} {'max lasso':>9} {'secs':>6}")
for cls in OBJECTIVE_CLASSES:
    t = time.perf_counter()
    exists = verified = longest = 0
    for seed in range(per_class):
        g = random_game(3 + seed % 4, 1 + seed % 3, cls, 0.4, seed)
        n = g.num_players
        cert = certify(g, 0, (0,) * n, (1,) * n)
        if cert.decision.exists:
            exists += 1
            verified += cert.verified
            longest = max(longest, max(len(l) for l in cert.witness.lassoes.values()))
    print(f"{cls:<16} {per_class:>5} {exists:>6} {verified:>8} {longest:>9} "
          f"{time.perf_counter() - t:>6.2f}")
