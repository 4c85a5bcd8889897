"""Ground-truth membership, the run-to-weak-game reduction, weak game
language membership, Skurczynski fixtures, sampling, bounded equivalence.

Membership of a regular tree in an automaton's language is decided on the
finite product of automaton and tree graph, solved under the automaton's
acceptance condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .automata import (
    DetAutomaton,
    EXISTENTIAL,
    IndexPair,
    State,
    Transition,
    TreeAutomaton,
    UNIVERSAL,
    index_of,
    normalize_ranks,
)
from .errors import ValidationError
from .games import ADAM, EVE, Game, eve_wins_arrays
from .rng import SplitMix64
from .trees import Node, RegularTree, parse_wlabel


# -- membership --------------------------------------------------------------


def _check_labels(a: TreeAutomaton, t: RegularTree):
    bad = t.labels() - set(a.alphabet)
    if bad:
        raise ValidationError(f"tree labels outside alphabet: {sorted(bad)}")
    if t.arity != 2:
        raise ValidationError("automaton inputs are binary trees")


def _product_arrays(a: TreeAutomaton, t: RegularTree):
    """Reachable product positions (state, node) as an int game."""
    snames = sorted(a.states)
    nnames = sorted(t.nodes)
    sidx = {s: i for i, s in enumerate(snames)}
    nidx = {n: i for i, n in enumerate(nnames)}
    moves = {}
    for s in snames:
        for letter in a.alphabet:
            mv = a.moves(s, letter)
            moves[(sidx[s], letter)] = [
                (d, sidx[q]) for d, q in sorted(mv, key=lambda p: (2 if p[0] is None else p[0], p[1]))
            ]
    children = {nidx[n]: tuple(nidx[c] for c in t.nodes[n].children) for n in nnames}
    labels = {nidx[n]: t.nodes[n].label for n in nnames}
    nn = len(nnames)

    start = sidx[a.initial] * nn + nidx[t.root]
    indexmap = {start: 0}
    owner = [0 if a.states[snames[start // nn]].mode == EXISTENTIAL else 1]
    rank = [a.states[snames[start // nn]].rank]
    succ: list[list[int]] = [[]]
    order = [start]
    head = 0
    while head < len(order):
        code = order[head]
        me = indexmap[code]
        head += 1
        si, ni = divmod(code, nn)
        out = []
        for d, qi in moves[(si, labels[ni])]:
            ni2 = ni if d is None else children[ni][d]
            code2 = qi * nn + ni2
            j = indexmap.get(code2)
            if j is None:
                j = len(order)
                indexmap[code2] = j
                order.append(code2)
                st = a.states[snames[qi]]
                owner.append(0 if st.mode == EXISTENTIAL else 1)
                rank.append(st.rank)
                succ.append([])
            out.append(j)
        succ[me] = out
    return owner, rank, succ


def alt_accepts(a: TreeAutomaton, t: RegularTree) -> bool:
    """Eve wins the acceptance game on the product of automaton and tree."""
    _check_labels(a, t)
    owner, rank, succ = _product_arrays(a, t)
    return eve_wins_arrays(owner, rank, succ, weak=(a.acceptance == "weak"), position=0)


def det_accepts(a: DetAutomaton, t: RegularTree) -> bool:
    """Deterministic membership: the unique run must have no reachable cycle
    with odd top rank; the product game is all-Adam."""
    _check_labels(a, t)
    owner, rank, succ = _product_arrays(a, t)
    return eve_wins_arrays([1] * len(owner), rank, succ, weak=False, position=0)


def product_game(a: TreeAutomaton, t: RegularTree) -> Game:
    """The acceptance game as a public Game value (inspection, tests)."""
    _check_labels(a, t)
    positions = {}
    edges = []
    seen = set()
    stack = [(a.initial, t.root)]
    while stack:
        q, v = stack.pop()
        if (q, v) in seen:
            continue
        seen.add((q, v))
        st = a.states[q]
        pid = f"{q}@{v}"
        positions[pid] = (EVE if st.mode == EXISTENTIAL else ADAM, st.rank)
        for d, q2 in a.moves(q, t.label(v)):
            v2 = v if d is None else t.child(v, d)
            edges.append((pid, f"{q2}@{v2}"))
            stack.append((q2, v2))
    return Game(positions=positions, edges=tuple(edges),
                initial=f"{a.initial}@{t.root}",
                condition=a.acceptance if a.acceptance in ("parity", "weak") else "parity")


# -- run reduction to weak game languages -------------------------------------


@dataclass(frozen=True)
class WInstance:
    """A weak-game-language instance: N-ary tree over owner:rank labels."""

    tree: RegularTree
    band: IndexPair


def run_reduction(a: TreeAutomaton, t: RegularTree) -> WInstance:
    """Fold the acceptance game of a weak automaton on t into an N-ary tree.

    Positions with missing moves are padded with self-looping children
    whose rank is the smallest rank of the owner's losing parity at or
    above the band top.  Such a pad dominates every rank a play can
    otherwise see, so taking it always loses for the owner: extra options
    are never attractive, and a dead end forces its owner into the pad,
    which is exactly the stuck rule.  The band may widen by one.
    """
    if a.acceptance != "weak":
        raise ValidationError("run_reduction expects weak acceptance")
    _check_labels(a, t)
    a = normalize_ranks(a)
    idx = index_of(a)
    iota, kappa = idx.iota, idx.kappa

    seen: dict[tuple[str, str], list] = {}
    order: list[tuple[str, str]] = []

    def visit(q, v):
        if (q, v) not in seen:
            seen[(q, v)] = []
            order.append((q, v))

    visit(a.initial, t.root)
    head = 0
    while head < len(order):
        q, v = order[head]
        head += 1
        for d, q2 in a.moves(q, t.label(v)):
            v2 = v if d is None else t.child(v, d)
            visit(q2, v2)
            seen[(q, v)].append((q2, v2))

    fanout = max((len(s) for s in seen.values()), default=0)
    arity = max(2, fanout)

    def pad_rank(owner_mode):
        losing = 1 if owner_mode == EXISTENTIAL else 0
        return kappa if kappa % 2 == losing else kappa + 1

    pads: dict[tuple[str, int], str] = {}
    nodes: dict[str, Node] = {}
    top_rank = kappa

    def pad_node(owner_mode, rank) -> str:
        key = (owner_mode, rank)
        if key not in pads:
            pid = f"pad_{'E' if owner_mode == EXISTENTIAL else 'A'}_{rank}"
            pads[key] = pid
            nodes[pid] = Node(f"{'E' if owner_mode == EXISTENTIAL else 'A'}:{rank}",
                              tuple(pid for _ in range(arity)))
        return pads[key]

    names = {qv: f"n{i}" for i, qv in enumerate(order)}
    for q, v in order:
        st = a.states[q]
        kids = [names[c] for c in seen[(q, v)]]
        if len(kids) < arity:
            r = pad_rank(st.mode)
            top_rank = max(top_rank, r)
            kids.extend([pad_node(st.mode, r)] * (arity - len(kids)))
        label = f"{'E' if st.mode == EXISTENTIAL else 'A'}:{st.rank}"
        nodes[names[(q, v)]] = Node(label, tuple(kids))

    tree = RegularTree(arity, nodes, names[order[0]])
    return WInstance(tree=tree, band=IndexPair(iota, top_rank))


def w_member(t: RegularTree, band: IndexPair) -> bool:
    """Eve wins the weak parity game read directly off the labeled tree graph."""
    nnames = sorted(t.nodes)
    nidx = {n: i for i, n in enumerate(nnames)}
    owner, rank, succ = [], [], []
    for n in nnames:
        lab = parse_wlabel(t.nodes[n].label)
        if not (band.iota <= lab.rank <= band.kappa):
            raise ValidationError(
                f"node {n} rank {lab.rank} outside band [{band.iota},{band.kappa}]")
        owner.append(0 if lab.owner == "E" else 1)
        rank.append(lab.rank)
        succ.append([nidx[c] for c in t.nodes[n].children])
    return eve_wins_arrays(owner, rank, succ, weak=True, position=nidx[t.root])


# -- Skurczynski fixtures ------------------------------------------------------


def _prefix_automaton(a: TreeAutomaton, prefix: str) -> TreeAutomaton:
    states = {prefix + s: st for s, st in a.states.items()}
    trans = tuple(Transition(prefix + t.source, t.letter, t.direction, prefix + t.target)
                  for t in a.transitions)
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=prefix + a.initial,
                         transitions=trans, acceptance=a.acceptance)


def _dualize(a: TreeAutomaton) -> TreeAutomaton:
    """Swap owners and shift ranks by one: recognizes the complement."""
    states = {s: State(EXISTENTIAL if st.mode == UNIVERSAL else UNIVERSAL, st.rank + 1)
              for s, st in a.states.items()}
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=a.initial,
                         transitions=a.transitions, acceptance=a.acceptance)


def skurczynski(index: IndexPair) -> TreeAutomaton:
    """Weak automaton for the canonical hard language of the given index.

    (0,1) accepts exactly the all-a tree; (1,n+1) is the complement of
    (0,n); (0,n+1) walks the leftmost path and spawns the (1,n+1) automaton
    into every right subtree.
    """
    if index.iota == 0:
        n = index.kappa
        if n < 1:
            raise ValidationError("skurczynski indices start at (0,1)")
        if n == 1:
            states = {
                "w": State(UNIVERSAL, 0),
                "rej": State(UNIVERSAL, 1),
            }
            trans = []
            for d in (0, 1):
                trans.append(Transition("w", "a", d, "w"))
                trans.append(Transition("w", "b", d, "rej"))
                for letter in ("a", "b"):
                    trans.append(Transition("rej", letter, d, "rej"))
            return TreeAutomaton(alphabet=("a", "b"), states=states, initial="w",
                                 transitions=tuple(trans), acceptance="weak",
                                 name=f"skurczynski_0_{n}")
        inner = _prefix_automaton(skurczynski(IndexPair(1, n)), "c_")
        states = dict(inner.states)
        states["spine"] = State(UNIVERSAL, 0)
        trans = list(inner.transitions)
        for letter in ("a", "b"):
            trans.append(Transition("spine", letter, 0, "spine"))
            trans.append(Transition("spine", letter, 1, inner.initial))
        return TreeAutomaton(alphabet=("a", "b"), states=states, initial="spine",
                             transitions=tuple(trans), acceptance="weak",
                             name=f"skurczynski_0_{n}")
    # (1, n+1) = complement of (0, n)
    n = index.kappa - 1
    if n < 1:
        raise ValidationError("skurczynski indices of the sigma side start at (1,2)")
    base = skurczynski(IndexPair(0, n))
    out = _dualize(base)
    return TreeAutomaton(alphabet=out.alphabet, states=out.states, initial=out.initial,
                         transitions=out.transitions, acceptance="weak",
                         name=f"skurczynski_1_{n + 1}")


def skurczynski_member_oracle(index: IndexPair, t: RegularTree) -> bool:
    """Direct recursive evaluation of the language definitions.

    On a regular tree the leftmost path cycles, so the family of right
    subtrees spawned along it is finite and the recursion terminates.
    """
    if t.arity != 2:
        raise ValidationError("oracle expects binary trees")
    if index.iota == 0 and index.kappa == 1:
        return all(t.nodes[n].label == "a" for n in t.nodes)
    if index.iota == 1:
        return not skurczynski_member_oracle(IndexPair(0, index.kappa - 1), t)
    # (0, n) with n >= 2: every right subtree along the leftmost path
    inner = IndexPair(1, index.kappa)
    node = t.root
    visited = set()
    while node not in visited:
        visited.add(node)
        right = t.child(node, 1)
        if not skurczynski_member_oracle(inner, t.rerooted(right)):
            return False
        node = t.child(node, 0)
    return True


# -- sampling ------------------------------------------------------------------


@dataclass(frozen=True)
class SamplerParams:
    seed: int
    max_nodes: int
    alphabet: tuple[str, ...]
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValidationError("count must be >= 1")
        if self.max_nodes < 1:
            raise ValidationError("max_nodes must be >= 1")
        if not self.alphabet:
            raise ValidationError("alphabet must be nonempty")


def sample_regular_tree(p: SamplerParams) -> list[RegularTree]:
    """Deterministic pseudo-random binary regular trees (splitmix64 stream).

    Node count is uniform in [1, max_nodes]; a random tree skeleton keeps
    every node reachable, remaining child slots are wired uniformly.
    """
    rng = SplitMix64(p.seed)
    out = []
    letters = tuple(p.alphabet)
    for _ in range(p.count):
        k = 1 + rng.below(p.max_nodes)
        labels = [letters[rng.below(len(letters))] for _ in range(k)]
        children: list[list[int | None]] = [[None, None] for _ in range(k)]
        for j in range(1, k):
            free = [(i, s) for i in range(j) for s in (0, 1) if children[i][s] is None]
            i, s = free[rng.below(len(free))]
            children[i][s] = j
        for i in range(k):
            for s in (0, 1):
                if children[i][s] is None:
                    children[i][s] = rng.below(k)
        nodes = {
            f"n{i}": Node(labels[i], (f"n{children[i][0]}", f"n{children[i][1]}"))
            for i in range(k)
        }
        out.append(RegularTree(2, nodes, "n0"))
    return out


# -- bounded equivalence --------------------------------------------------------


def _membership(a: TreeAutomaton, t: RegularTree) -> bool:
    if isinstance(a, DetAutomaton):
        return det_accepts(a, t)
    return alt_accepts(a, t)


def deterministic_battery(alphabet) -> list[RegularTree]:
    """All-constant trees plus single-letter perturbations near the root."""
    letters = sorted(set(alphabet))
    out = []
    for base in letters:
        nodes = {"n": Node(base, ("n", "n"))}
        out.append(RegularTree(2, nodes, "n"))
    paths = ["", "0", "1", "00", "01", "10", "11"]
    for base in letters:
        for other in letters:
            if other == base:
                continue
            for spot in paths:
                nodes = {"rest": Node(base, ("rest", "rest"))}
                for depth3 in ("", "0", "1", "00", "01", "10", "11"):
                    label = other if depth3 == spot else base
                    kids = []
                    for s in ("0", "1"):
                        ext = depth3 + s
                        kids.append("p" + ext if len(ext) <= 2 else "rest")
                    nodes["p" + depth3] = Node(label, tuple(kids))
                out.append(RegularTree(2, nodes, "p"))
    return out


def bounded_equiv(a: TreeAutomaton, b: TreeAutomaton, p: SamplerParams) -> Optional[RegularTree]:
    """Compare memberships on the fixed battery plus sampled trees.

    Returns None on pass, or the first mismatching tree.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise ValidationError("bounded_equiv needs a shared alphabet")
    for t in deterministic_battery(a.alphabet):
        if _membership(a, t) != _membership(b, t):
            return t
    for t in sample_regular_tree(p):
        if _membership(a, t) != _membership(b, t):
            return t
    return None
