"""Parity and weak parity games: solving, strategies, and the oracle.

Builds a small game by hand, solves it under both winning conditions, and
cross-checks against the brute-force strategy enumerator.
"""

from weakindex import Game, brute_force_solve, solve_parity, solve_weak

# Eve (E) wins a strong-parity play when the highest rank seen infinitely
# often is even; in a weak game the highest rank seen at least once decides.
g = Game(
    positions={
        "start": ("E", 1),
        "risky": ("A", 2),
        "trap": ("A", 1),
        "safe": ("E", 0),
    },
    edges=(
        ("start", "risky"), ("start", "trap"),
        ("risky", "safe"), ("risky", "trap"),
        ("trap", "trap"),
        ("safe", "safe"),
    ),
    initial="start",
    condition="parity",
)

sol = solve_parity(g)
print("strong parity winners:", sol.winner)
print("strategies:", sol.strategy)

weak = Game(positions=g.positions, edges=g.edges, initial=g.initial, condition="weak")
wsol = solve_weak(weak)
print("weak parity winners:  ", wsol.winner)

print("oracle agrees (strong):", brute_force_solve(g).winner == sol.winner)
print("oracle agrees (weak):  ", brute_force_solve(weak).winner == wsol.winner)

# A stuck player loses: 'dead' below is Eve-owned with no moves.
dead = Game(positions={"dead": ("E", 0)}, edges=(), initial="dead")
print("stuck Eve loses:", solve_parity(dead).winner["dead"] == "A")
