"""Finite two-player games under strong and weak parity conditions.

Ownership: Eve ('E') wins a strong-parity play when the highest rank
visited infinitely often is even, and a weak-parity play when the highest
rank visited at least once is even.  A player who cannot move loses.

Both solvers return full winning-region partitions with positional
strategies.  Dead ends are handled by an internal totalization: a stuck
position gets a single edge to a self-looping sink whose rank is a fresh
value above every real rank, odd when the stuck owner is Eve and even
when it is Adam.  That encodes the dead-end rule for both conditions at
once.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .errors import FormatError, GameTooLarge, ValidationError

EVE = "E"
ADAM = "A"


@dataclass(frozen=True)
class Game:
    positions: dict[str, tuple[str, int]]  # id -> (owner, rank)
    edges: tuple[tuple[str, str], ...]
    initial: str
    condition: str = "parity"  # 'parity' | 'weak'

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        if self.initial not in self.positions:
            raise ValidationError(f"initial position {self.initial!r} not declared")
        if self.condition not in ("parity", "weak"):
            raise ValidationError(f"unknown condition {self.condition!r}")
        for pid, (owner, rank) in self.positions.items():
            if owner not in (EVE, ADAM):
                raise ValidationError(f"position {pid}: bad owner {owner!r}")
            if rank < 0:
                raise ValidationError(f"position {pid}: negative rank")
        for a, b in self.edges:
            if a not in self.positions or b not in self.positions:
                raise ValidationError(f"edge ({a},{b}) leaves declared positions")

    def successors(self, pid: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == pid)


@dataclass(frozen=True)
class Solution:
    """Winner per position plus positional strategies.

    `strategy` holds, for each non-dead-end position owned by its winner,
    the chosen successor.  For weak games `safe_moves` additionally holds
    a damage-limiting move for positions whose owner loses them: weak
    conditions are not prefix-independent, so a winning play may traverse
    the opponent's fresh-start region and the owner still needs a sound
    move there.
    """

    winner: dict[str, str]
    strategy: dict[str, str]
    safe_moves: dict[str, str] = field(default_factory=dict)

    def region(self, player: str) -> set[str]:
        return {p for p, w in self.winner.items() if w == player}


class _Arena:
    """Int-indexed totalized arena shared by both solvers."""

    def __init__(self, owner: list[int], rank: list[int], succ: list[list[int]],
                 ids: list[str] | None = None):
        n = len(owner)
        self.ids = ids if ids is not None else [str(i) for i in range(n)]
        self.index = {pid: i for i, pid in enumerate(self.ids)}
        self.owner = list(owner) + [0, 0]
        self.rank = list(rank) + [0, 0]
        self.succ = [sorted(set(s)) for s in succ] + [[], []]
        self.pred: list[list[int]] = [[] for _ in range(n + 2)]
        top = max(rank, default=0)
        even_top = top + 2 - (top % 2)
        odd_top = top + 1 + (top % 2)
        # sink n: Eve wins (even rank), sink n+1: Adam wins (odd rank)
        self.eve_sink, self.adam_sink = n, n + 1
        self.rank[n], self.rank[n + 1] = even_top, odd_top
        self.succ[n].append(n)
        self.succ[n + 1].append(n + 1)
        self.dead_ends = set()
        for i in range(n):
            if not self.succ[i]:
                self.dead_ends.add(i)
                sink = self.eve_sink if self.owner[i] == 1 else self.adam_sink
                self.succ[i].append(sink)
        for i in range(n + 2):
            for j in self.succ[i]:
                self.pred[j].append(i)
        for i in range(n + 2):
            self.pred[i].sort()
        self.n_real = n
        self.size = n + 2

    @classmethod
    def from_game(cls, g: Game) -> "_Arena":
        ids = sorted(g.positions)
        index = {pid: i for i, pid in enumerate(ids)}
        n = len(ids)
        owner = [0] * n
        rank = [0] * n
        succ: list[list[int]] = [[] for _ in range(n)]
        for pid, (o, r) in g.positions.items():
            owner[index[pid]] = 0 if o == EVE else 1
            rank[index[pid]] = r
        for a, b in g.edges:
            succ[index[a]].append(index[b])
        return cls(owner, rank, succ, ids)

    def attractor(self, player: int, targets, active: set[int]):
        """Attractor of `targets` for `player` within `active`.

        Returns (attracted set, strategy edges for player positions pulled
        in).  Deterministic: candidates are processed in index order and the
        chosen edge is the smallest-index successor already attracted.
        """
        attr = set(targets)
        strat: dict[int, int] = {}
        cnt = {}
        queue = sorted(attr)
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in self.pred[v]:
                if u not in active or u in attr:
                    continue
                if self.owner[u] == player:
                    # choose the edge before adding u, so a self-loop cannot
                    # pose as progress toward the target
                    strat[u] = min(w for w in self.succ[u] if w in attr)
                    attr.add(u)
                    queue.append(u)
                else:
                    if u not in cnt:
                        cnt[u] = sum(1 for w in self.succ[u] if w in active)
                    cnt[u] -= 1
                    if cnt[u] == 0:
                        attr.add(u)
                        queue.append(u)
        return attr, strat


def _zielonka(a: _Arena, active: set[int]):
    """Returns (eve region, adam region, eve strategy, adam strategy)."""
    if not active:
        return set(), set(), {}, {}
    d = max(a.rank[v] for v in active)
    sigma = d % 2  # player favoured by rank d
    top = {v for v in active if a.rank[v] == d}
    attr, strat_attr = a.attractor(sigma, top, active)
    w0, w1, s0, s1 = _zielonka(a, active - attr)
    wins = (w0, w1)
    strats = (s0, s1)
    if not wins[1 - sigma]:
        strat_sigma = strats[sigma]
        strat_sigma.update(strat_attr)
        for v in top:
            if a.owner[v] == sigma and v not in strat_sigma:
                strat_sigma[v] = min(w for w in a.succ[v] if w in active)
        if sigma == 0:
            return set(active), set(), strat_sigma, {}
        return set(), set(active), {}, strat_sigma
    opp = 1 - sigma
    attr_b, strat_b = a.attractor(opp, wins[opp], active)
    w0b, w1b, s0b, s1b = _zielonka(a, active - attr_b)
    winsb = (w0b, w1b)
    stratsb = (s0b, s1b)
    strat_opp = dict(stratsb[opp])
    strat_opp.update(strat_b)
    for v, t in strats[opp].items():
        if v in wins[opp]:
            strat_opp.setdefault(v, t)
    win_opp = winsb[opp] | attr_b
    win_sigma = winsb[sigma]
    if opp == 0:
        return win_opp, win_sigma, strat_opp, stratsb[sigma]
    return win_sigma, win_opp, stratsb[sigma], strat_opp


def _solve_weak_layers(a: _Arena):
    """Descending-rank attractor layering for the weak condition.

    The highest remaining rank layer is attracted first for the player of
    its parity; each position's strategy (or safe move) stays inside the
    subgame current at its layer, which keeps play out of regions whose
    top rank favours the opponent.
    """
    remaining = set(range(a.size))
    winner = [0] * a.size
    strategy: dict[int, int] = {}
    safe: dict[int, int] = {}
    while remaining:
        d = max(a.rank[v] for v in remaining)
        sigma = d % 2
        top = {v for v in remaining if a.rank[v] == d}
        attr, strat_attr = a.attractor(sigma, top, remaining)
        for v in attr:
            winner[v] = sigma
        for v, t in strat_attr.items():
            strategy[v] = t
        for v in sorted(attr):
            if v in strat_attr:
                continue
            inside = [w for w in a.succ[v] if w in remaining]
            if not inside:
                continue  # totalized arena has no dead ends; defensive
            choice = min((w for w in inside if w in attr), default=min(inside))
            if a.owner[v] == sigma:
                strategy.setdefault(v, choice)
            else:
                safe[v] = choice
        remaining -= attr
    return winner, strategy, safe


def _to_solution(g: Game, a: _Arena, win_eve: set[int], strat: dict[int, int],
                 safe: dict[int, int] | None = None) -> Solution:
    winner = {}
    for pid, i in a.index.items():
        winner[pid] = EVE if i in win_eve else ADAM
    strategy = {}
    for v, t in strat.items():
        if v >= a.n_real or v in a.dead_ends or t >= a.n_real:
            continue
        strategy[a.ids[v]] = a.ids[t]
    safe_moves = {}
    if safe:
        for v, t in safe.items():
            if v >= a.n_real or v in a.dead_ends or t >= a.n_real:
                continue
            safe_moves[a.ids[v]] = a.ids[t]
    return Solution(winner=winner, strategy=strategy, safe_moves=safe_moves)


def _zielonka_full(a: _Arena):
    limit = sys.getrecursionlimit()
    needed = a.size + 1000
    if needed > limit:
        sys.setrecursionlimit(needed)
    try:
        return _zielonka(a, set(range(a.size)))
    finally:
        if needed > limit:
            sys.setrecursionlimit(limit)


def solve_parity(g: Game) -> Solution:
    """Solve a strong-parity game by recursive attractor decomposition."""
    if g.condition != "parity":
        raise ValidationError("solve_parity expects condition parity")
    a = _Arena.from_game(g)
    w0, w1, s0, s1 = _zielonka_full(a)
    strat = {}
    for v, t in s0.items():
        if v in w0 and a.owner[v] == 0:
            strat[v] = t
    for v, t in s1.items():
        if v in w1 and a.owner[v] == 1:
            strat[v] = t
    return _to_solution(g, a, w0, strat)


def solve_weak(g: Game) -> Solution:
    """Solve a weak-parity game by descending-rank attractor layering."""
    if g.condition != "weak":
        raise ValidationError("solve_weak expects condition weak")
    a = _Arena.from_game(g)
    winner, strategy, safe = _solve_weak_layers(a)
    win_eve = {v for v in range(a.size) if winner[v] == 0}
    return _to_solution(g, a, win_eve, strategy, safe)


def eve_wins_arrays(owner: list[int], rank: list[int], succ: list[list[int]],
                    weak: bool, position: int = 0) -> bool:
    """Array-level fast path for membership games (no id or strategy layer).

    owner: 0 = Eve, 1 = Adam per position; succ holds successor indices.
    Dead ends follow the usual rule (stuck owner loses).
    """
    a = _Arena(owner, rank, succ)
    if weak:
        winner, _, _ = _solve_weak_layers(a)
        return winner[position] == 0
    w0, _, _, _ = _zielonka_full(a)
    return position in w0


def solve(g: Game) -> Solution:
    return solve_parity(g) if g.condition == "parity" else solve_weak(g)


# -- brute force oracle ---------------------------------------------------


def _play_outcome(g: Game, succ_choice: dict[str, str], start: str,
                  owners: dict[str, str], ranks: dict[str, str], weak: bool) -> str:
    """Winner of the unique play from start under fixed positional choices."""
    seen_at: dict[str, int] = {}
    path: list[str] = []
    cur = start
    while True:
        if cur in seen_at:
            cycle = path[seen_at[cur]:]
            if weak:
                top = max(ranks[p] for p in path)
            else:
                top = max(ranks[p] for p in cycle)
            return EVE if top % 2 == 0 else ADAM
        seen_at[cur] = len(path)
        path.append(cur)
        nxt = succ_choice.get(cur)
        if nxt is None:
            return ADAM if owners[cur] == EVE else EVE  # stuck owner loses
        cur = nxt


def brute_force_solve(g: Game) -> Solution:
    """Oracle: enumerate positional strategies for both players.

    Justified by positional determinacy of both conditions.  Guarded to
    at most 12 positions.
    """
    if len(g.positions) > 12:
        raise GameTooLarge(f"{len(g.positions)} positions exceeds the guard of 12")
    owners = {p: o for p, (o, _) in g.positions.items()}
    ranks = {p: r for p, (_, r) in g.positions.items()}
    succ = {p: g.successors(p) for p in g.positions}
    weak = g.condition == "weak"

    def strategies(player: str):
        slots = [p for p in sorted(g.positions) if owners[p] == player and succ[p]]
        def expand(i, acc):
            if i == len(slots):
                yield dict(acc)
                return
            p = slots[i]
            for t in succ[p]:
                acc[p] = t
                yield from expand(i + 1, acc)
            del acc[p]
        yield from expand(0, {})

    eve_strats = list(strategies(EVE))
    adam_strats = list(strategies(ADAM))

    def winset(cands, opposing, player):
        best_set: set[str] = set()
        best_strat: dict[str, str] = {}
        union: set[str] = set()
        for mine in cands:
            won = set(g.positions)
            for theirs in opposing:
                choice = {**mine, **theirs}
                won = {p for p in won
                       if _play_outcome(g, choice, p, owners, ranks, weak) == player}
                if not won:
                    break
            union |= won
            if len(won) > len(best_set):
                best_set, best_strat = won, mine
        return union, best_set, best_strat

    eve_union, eve_best, eve_strat = winset(eve_strats, adam_strats, EVE)
    adam_union, adam_best, adam_strat = winset(adam_strats, eve_strats, ADAM)
    if eve_best != eve_union or adam_best != adam_union:
        raise AssertionError("uniform positional determinacy violated")
    if eve_union & adam_union or eve_union | adam_union != set(g.positions):
        raise AssertionError("determinacy violated")
    winner = {p: (EVE if p in eve_union else ADAM) for p in g.positions}
    strategy = {}
    for p, t in eve_strat.items():
        if p in eve_union:
            strategy[p] = t
    for p, t in adam_strat.items():
        if p in adam_union:
            strategy[p] = t
    return Solution(winner=winner, strategy=strategy)


# -- fixture format --------------------------------------------------------


def parse_game(text: str) -> Game:
    positions: dict[str, tuple[str, int]] = {}
    edges: list[tuple[str, str]] = []
    initial = None
    condition = "parity"
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "pos" and len(toks) == 4 and toks[2] in (EVE, ADAM):
            positions[toks[1]] = (toks[2], int(toks[3]))
        elif toks[0] == "edge" and len(toks) == 3:
            edges.append((toks[1], toks[2]))
        elif toks[0] == "init" and len(toks) == 2:
            initial = toks[1]
        elif toks[0] == "condition" and len(toks) == 2:
            condition = toks[1]
        else:
            raise FormatError(f"bad game line {line!r}", ln)
    if initial is None:
        raise FormatError("missing section: init")
    return Game(positions=positions, edges=tuple(edges), initial=initial, condition=condition)
