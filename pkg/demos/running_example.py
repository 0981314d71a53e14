"""Walk through the seven-vertex Buchi game step by step.

Prints the label table after every round, the removals that caused each
change, the witness lassoes and a short check of the synthesized profile.

    python3 demos/running_example.py
"""
from weakspe import certify, payoff_bits, run_fixpoint
from weakspe.samples import buchi_example


def show_row(table):
    return "  ".join(f"v{v}:{','.join(sorted(map(payoff_bits, table[v]))) or '-'}"
                     for v in table.vertices)


game = buchi_example()
table, trace = run_fixpoint(game, 0)

print("labels, round by round")
for k in range(2 * trace.rounds - 1):
    print(f"  k={k}  {show_row(trace.replay(k))}")
for r in trace.removals:
    print(f"  removed {payoff_bits(r.payoff)} at v{r.vertex} (k={r.step}, {r.cause})")

cert = certify(game, 0, (0, 0), (1, 1))
print("\nconstraint [00, 11] ->", payoff_bits(cert.decision.payoff))
print("witness lassoes")
for slot in sorted(cert.witness.lassoes):
    print(f"  {slot}: {cert.witness[slot]}  payoff {payoff_bits(cert.witness.payoffs[slot])}")
print(f"\nprofile: {cert.profile.size} memory states, "
      f"{cert.report.configurations} reachable configurations")
print("weak SPE verified:", cert.verified)

strict = certify(game, 0, (1, 0), (1, 1))
print("constraint [10, 11] satisfiable:", strict.decision.exists)
