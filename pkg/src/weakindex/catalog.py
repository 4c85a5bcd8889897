"""Catalog of small deterministic automata exercising every classifier level.

Over the alphabet {a, b}:

  all_a        the single all-a tree                      (closed, Pi^0_1)
  ex_b_left    some b on the leftmost path                (open, Sigma^0_1)
  inf_b_left   infinitely many b on the leftmost path     (Pi^0_2)
  fin_b_left   finitely many b on the leftmost path       (Sigma^0_2)
  spine_fin_b  every right spawn off the spine in fin_b   (Pi^0_3 proper)
  split_min    smallest split pattern                     (non-Borel)
"""

from __future__ import annotations

from .automata import DetAutomaton, make_automaton

AB = ("a", "b")


def all_a() -> DetAutomaton:
    return make_automaton(
        AB,
        {"p": ("A", 0), "_bot": ("A", 1)},
        "p",
        [
            ("p", "a", 0, "p"), ("p", "a", 1, "p"),
            ("p", "b", 0, "_bot"), ("p", "b", 1, "_bot"),
            ("_bot", "a", 0, "_bot"), ("_bot", "a", 1, "_bot"),
            ("_bot", "b", 0, "_bot"), ("_bot", "b", 1, "_bot"),
        ],
        deterministic=True,
        name="all_a",
    )


def ex_b_left() -> DetAutomaton:
    return make_automaton(
        AB,
        {"p": ("A", 1), "T": ("A", 0)},
        "p",
        [
            ("p", "a", 0, "p"), ("p", "a", 1, "T"),
            ("p", "b", 0, "T"), ("p", "b", 1, "T"),
            ("T", "a", 0, "T"), ("T", "a", 1, "T"),
            ("T", "b", 0, "T"), ("T", "b", 1, "T"),
        ],
        deterministic=True,
        name="ex_b_left",
    )


def inf_b_left() -> DetAutomaton:
    trans = []
    for q in ("q1", "q2"):
        trans += [(q, "a", 0, "q1"), (q, "a", 1, "T"),
                  (q, "b", 0, "q2"), (q, "b", 1, "T")]
    for letter in AB:
        trans += [("T", letter, 0, "T"), ("T", letter, 1, "T")]
    return make_automaton(
        AB,
        {"q1": ("A", 1), "q2": ("A", 2), "T": ("A", 0)},
        "q1",
        trans,
        deterministic=True,
        name="inf_b_left",
    )


def fin_b_left() -> DetAutomaton:
    trans = []
    for q in ("s0", "s1"):
        trans += [(q, "a", 0, "s0"), (q, "a", 1, "T"),
                  (q, "b", 0, "s1"), (q, "b", 1, "T")]
    for letter in AB:
        trans += [("T", letter, 0, "T"), ("T", letter, 1, "T")]
    return make_automaton(
        AB,
        {"s0": ("A", 0), "s1": ("A", 1), "T": ("A", 0)},
        "s0",
        trans,
        deterministic=True,
        name="fin_b_left",
    )


def spine_fin_b() -> DetAutomaton:
    trans = []
    for letter in AB:
        trans += [("s", letter, 0, "s"), ("s", letter, 1, "s0")]
    for q in ("s0", "s1"):
        trans += [(q, "a", 0, "s0"), (q, "a", 1, "T"),
                  (q, "b", 0, "s1"), (q, "b", 1, "T")]
    for letter in AB:
        trans += [("T", letter, 0, "T"), ("T", letter, 1, "T")]
    return make_automaton(
        AB,
        {"s": ("A", 0), "s0": ("A", 0), "s1": ("A", 1), "T": ("A", 0)},
        "s",
        trans,
        deterministic=True,
        name="spine_fin_b",
    )


def split_min() -> DetAutomaton:
    """Loops through (p,a,0) and (p,a,1) with tops 2 and 3: a split."""
    trans = [
        ("p", "a", 0, "e"), ("p", "a", 1, "o"),
        ("p", "b", 0, "T"), ("p", "b", 1, "T"),
        ("e", "a", 0, "p"), ("e", "a", 1, "T"),
        ("e", "b", 0, "T"), ("e", "b", 1, "T"),
        ("o", "a", 0, "p"), ("o", "a", 1, "T"),
        ("o", "b", 0, "T"), ("o", "b", 1, "T"),
    ]
    for letter in AB:
        trans += [("T", letter, 0, "T"), ("T", letter, 1, "T")]
    return make_automaton(
        AB,
        {"p": ("A", 1), "e": ("A", 2), "o": ("A", 3), "T": ("A", 0)},
        "p",
        trans,
        deterministic=True,
        name="split_min",
    )


CATALOG = {
    "all_a": all_a,
    "ex_b_left": ex_b_left,
    "inf_b_left": inf_b_left,
    "fin_b_left": fin_b_left,
    "spine_fin_b": spine_fin_b,
    "split_min": split_min,
}


def get(name: str) -> DetAutomaton:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog automaton {name!r}; "
                       f"choose from {sorted(CATALOG)}")
    return CATALOG[name]()
