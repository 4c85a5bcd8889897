"""Shared deterministic random generators for the test suite."""

from __future__ import annotations

import pytest

from weakindex.automata import DetAutomaton, State, Transition, TreeAutomaton
from weakindex.errors import EmptyLanguage
from weakindex.games import Game
from weakindex.productivity import trim
from weakindex.rng import SplitMix64

LETTERS = ("a", "b")


def random_game(rng: SplitMix64, max_positions: int = 7, max_rank: int = 3,
                condition: str = "parity") -> Game:
    n = 1 + rng.below(max_positions)
    positions = {}
    for i in range(n):
        positions[f"p{i}"] = ("E" if rng.below(2) == 0 else "A", rng.below(max_rank + 1))
    edges = []
    for i in range(n):
        deg = (0, 1, 1, 1, 2, 2, 2, 2, 3)[rng.below(9)]
        for _ in range(deg):
            edges.append((f"p{i}", f"p{rng.below(n)}"))
    return Game(positions=positions, edges=tuple(edges), initial="p0",
                condition=condition)


def random_det(rng: SplitMix64, max_states: int = 5, letters=LETTERS,
               max_rank: int = 3, rank_weights=None) -> DetAutomaton:
    n = 1 + rng.below(max_states)
    names = [f"q{i}" for i in range(n)]
    if rank_weights is None:
        ranks = list(range(max_rank + 1))
    else:
        ranks = rank_weights
    states = {q: State("A", ranks[rng.below(len(ranks))]) for q in names}
    trans = [Transition(q, a, d, names[rng.below(n)])
             for q in names for a in letters for d in (0, 1)]
    return DetAutomaton(alphabet=tuple(letters), states=states, initial="q0",
                        transitions=tuple(trans), acceptance="parity")


def random_trimmed(rng: SplitMix64, max_states: int = 5, letters=LETTERS,
                   max_rank: int = 3) -> DetAutomaton:
    """Next random deterministic automaton with a nonempty language, trimmed."""
    while True:
        try:
            return trim(random_det(rng, max_states, letters, max_rank))
        except EmptyLanguage:
            continue


def random_weak(rng: SplitMix64, max_states: int = 4, letters=LETTERS,
                max_rank: int = 3) -> TreeAutomaton:
    """Random alternating automaton with weak acceptance; may have stuck
    positions (no move for a letter), which the acceptance game resolves."""
    n = 1 + rng.below(max_states)
    names = [f"q{i}" for i in range(n)]
    states = {q: State("E" if rng.below(2) == 0 else "A", rng.below(max_rank + 1))
              for q in names}
    trans = []
    for q in names:
        for a in letters:
            k = rng.below(4)  # 0..3 moves per (state, letter)
            for _ in range(k):
                d = (0, 1, None)[rng.below(3)]
                trans.append(Transition(q, a, d, names[rng.below(n)]))
    return TreeAutomaton(alphabet=tuple(letters), states=states, initial="q0",
                         transitions=tuple(trans), acceptance="weak")


@pytest.fixture
def rng():
    return SplitMix64(20240809)
