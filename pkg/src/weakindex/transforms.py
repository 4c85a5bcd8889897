"""Automaton constructions: weak-to-restricted conversion, the three
weakening constructions with their exact state budgets, conjunction, and
the index-minimal weakening dispatch.

State budgets (n input states): restrict gives (kappa-iota+1)*n states,
the (0,2) construction 2n+1, the (1,3) construction 3n+1, and the (1,4)
construction at most 1 + sum over loop SCCs X of (2|X|^2 + 7n).
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import (
    BOT,
    DetAutomaton,
    EXISTENTIAL,
    IndexPair,
    State,
    TOP,
    Transition,
    TreeAutomaton,
    UNIVERSAL,
    index_of,
    normalize_ranks,
)
from .classifier import BorelLevel, classify, relabel_to
from .errors import (
    IndexTooHigh,
    NonWeaklyRecognizable,
    PreconditionViolated,
    UnsupportedGapConstruction,
    ValidationError,
)
from .graphs import condensation, reachable_from
from .patterns import find_replicated_flower, loop_ranks, replicated_set


@dataclass(frozen=True)
class ConstructionTrace:
    construction: str
    input_states: int
    output_states: int
    components: tuple[str, ...] = ()

    def render(self) -> str:
        lines = [f"# construction: {self.construction}",
                 f"# input states: {self.input_states}",
                 f"# output states: {self.output_states}"]
        lines += [f"# {c}" for c in self.components]
        return "\n".join(lines) + "\n"


# -- Lemma 1: weak acceptance to rank-monotone strong parity --------------------


def restrict(a: TreeAutomaton) -> TreeAutomaton:
    """One copy of the automaton per band rank; the copy number tracks the
    highest rank seen, so ranks never decrease along transitions."""
    if a.acceptance != "weak":
        raise ValidationError("restrict expects weak acceptance")
    a = normalize_ranks(a)
    idx = index_of(a)
    states: dict[str, State] = {}
    for i in idx.band():
        for q, st in a.states.items():
            states[f"r{i}_{q}"] = State(st.mode, i)
    transitions = []
    for i in idx.band():
        for t in a.transitions:
            j = max(i, a.rank(t.target))
            transitions.append(Transition(f"r{i}_{t.source}", t.letter, t.direction,
                                          f"r{j}_{t.target}"))
    init = f"r{a.rank(a.initial)}_{a.initial}"
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=init,
                         transitions=tuple(transitions), acceptance="parity",
                         name=f"{a.name}_restricted" if a.name else "restricted")


# -- (1,2) -> weak (0,2) ----------------------------------------------------------


def _shift_into_band(a: DetAutomaton, low: int, high: int) -> DetAutomaton:
    """Even shift landing all ranks inside [low, high]; IndexTooHigh otherwise."""
    ranks = sorted(a.ranks())
    for base in range(low - 1, high + 1):
        shift = base - ranks[0]
        if shift % 2 != 0:
            continue
        if all(low <= r + shift <= high for r in ranks):
            if shift == 0:
                return a
            states = {q: State(st.mode, st.rank + shift) for q, st in a.states.items()}
            return a.with_states(states)
    raise IndexTooHigh(
        f"ranks {ranks} do not fit band [{low},{high}] under an even shift")


def weaken_02(a: DetAutomaton) -> TreeAutomaton:
    """Equivalent weak (0,2)-automaton with exactly 2n+1 states.

    Copy one (rank 0) simulates the input; at any node Adam may demand,
    via the epsilon move into copy two (rank 1), that every path from here
    reaches a rank-2 state, which jumps to the accepting sink.
    """
    a = _shift_into_band(a, 1, 2)
    states: dict[str, State] = {}
    transitions: list[Transition] = []
    for q in a.states:
        states[f"c1_{q}"] = State(UNIVERSAL, 0)
        states[f"c2_{q}"] = State(UNIVERSAL, 1)
        for letter in a.alphabet:
            transitions.append(Transition(f"c1_{q}", letter, None, f"c2_{q}"))
    states[TOP] = State(UNIVERSAL, 2)
    for t in a.transitions:
        transitions.append(Transition(f"c1_{t.source}", t.letter, t.direction,
                                      f"c1_{t.target}"))
        if a.rank(t.source) == 1:
            transitions.append(Transition(f"c2_{t.source}", t.letter, t.direction,
                                          f"c2_{t.target}"))
    for q, st in a.states.items():
        if st.rank == 2:
            for letter in a.alphabet:
                transitions.append(Transition(f"c2_{q}", letter, None, TOP))
    for letter in a.alphabet:
        for d in (0, 1):
            transitions.append(Transition(TOP, letter, d, TOP))
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=f"c1_{a.initial}",
                         transitions=tuple(transitions), acceptance="weak",
                         name=f"{a.name}_weak02" if a.name else "weak02")


# -- (0,1) -> weak (1,3) ------------------------------------------------------------


def weaken_13(a: DetAutomaton) -> TreeAutomaton:
    """Equivalent weak (1,3)-automaton with exactly 3n+1 states.

    Requires the absence of a weak (1,2)-flower replicated by an accepting
    loop; under it, odd states occur finitely often on accepting runs, so
    an existential guess point (copy two) can commit each path to "no odd
    states from here on" (copy three).
    """
    witness = find_replicated_flower(a, IndexPair(1, 2), weak=True)
    if witness is not None:
        raise PreconditionViolated(
            "input has a weak (1,2)-flower replicated by an accepting loop", witness)
    a = _shift_into_band(a, 0, 1)
    tops = loop_ranks(a)
    productive = set(a.states) - {BOT}
    rank_in = {}
    for q, st in a.states.items():
        relevant = st.rank in tops[q]
        rank_in[q] = st.rank if (relevant or q not in productive) else 0

    states: dict[str, State] = {}
    transitions: list[Transition] = []
    for q in a.states:
        states[f"c1_{q}"] = State(UNIVERSAL, 1)
        states[f"c2_{q}"] = State(EXISTENTIAL, 1)
        states[f"c3_{q}"] = State(UNIVERSAL, 2)
        for letter in a.alphabet:
            transitions.append(Transition(f"c2_{q}", letter, None, f"c1_{q}"))
            transitions.append(Transition(f"c2_{q}", letter, None, f"c3_{q}"))
    states[BOT] = State(UNIVERSAL, 3)
    for t in a.transitions:
        transitions.append(Transition(f"c1_{t.source}", t.letter, t.direction,
                                      f"c2_{t.target}"))
        if rank_in[t.source] == 0:
            transitions.append(Transition(f"c3_{t.source}", t.letter, t.direction,
                                          f"c3_{t.target}"))
    for q in a.states:
        if rank_in[q] == 1:
            for letter in a.alphabet:
                transitions.append(Transition(f"c3_{q}", letter, None, BOT))
    for letter in a.alphabet:
        for d in (0, 1):
            transitions.append(Transition(BOT, letter, d, BOT))
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=f"c2_{a.initial}",
                         transitions=tuple(transitions), acceptance="weak",
                         name=f"{a.name}_weak13" if a.name else "weak13")


# -- any det without replicated (0,1)-flower -> weak (1,4) ----------------------------


def _loop_ranks_within(a: DetAutomaton, nodes: set[str]) -> dict[str, set[int]]:
    from .graphs import tarjan_scc

    succ: dict[str, list[str]] = {q: [] for q in nodes}
    for t in a.transitions:
        if t.source in nodes and t.target in nodes:
            succ[t.source].append(t.target)
    succ = {q: sorted(set(s)) for q, s in succ.items()}
    result: dict[str, set[int]] = {q: set() for q in nodes}
    for r in sorted({a.rank(q) for q in nodes}):
        keep = {q for q in nodes if a.rank(q) <= r}
        adj = {q: [w for w in succ[q] if w in keep] for q in keep}
        for comp in tarjan_scc(sorted(keep), adj):
            if len(comp) == 1 and comp[0] not in adj[comp[0]]:
                continue
            if any(a.rank(q) == r for q in comp):
                for q in comp:
                    result[q].add(r)
    return result


def _component_band_ranks(a: DetAutomaton, comp: set[str]) -> dict[str, int]:
    """Relabel one SCC without a (0,1)-flower into ranks {1,2}."""
    tops = _loop_ranks_within(a, comp)
    depth = {}
    for q in comp:
        if a.rank(q) in tops[q]:
            depth[q] = 0
            need = a.rank(q) % 2
            for r in sorted(tops[q]):
                if r >= a.rank(q) and r % 2 == need:
                    depth[q] += 1
                    need ^= 1
    m = max(depth.values())
    if m > 2:
        raise ValidationError("component unexpectedly contains a (0,1)-flower")
    pi = max(a.rank(q) for q in comp if tops[q]) % 2
    offset = 1 if m % 2 == pi else 0
    values = {}
    for q in comp:
        d = depth.get(q, m)
        values[q] = offset + m - d
    shift = 2 - max(values.values())
    shift -= shift % 2
    return {q: v + shift for q, v in values.items()}


def weaken_14(a: DetAutomaton) -> tuple[TreeAutomaton, ConstructionTrace]:
    """Equivalent weak (1,4)-automaton, quadratically many states.

    One conjunct B_X per strongly connected component X with a loop,
    accepting the trees on which every run path entering X leaves it or is
    accepting.  Components replicated by an accepting loop use the doubled
    (0,2)-style checker shifted to ranks 2..4; the others combine a
    guessing copy, an X-avoidance checker, and per-even-rank checkers with
    existential rank-r searchers.
    """
    witness = find_replicated_flower(a, IndexPair(0, 1), weak=False)
    if witness is not None:
        raise PreconditionViolated("input has a (0,1)-flower replicated by an "
                                   "accepting loop", witness)

    rep = replicated_set(a)
    succ: dict[str, set[str]] = {q: set() for q in a.states}
    for t in a.transitions:
        succ[t.source].add(t.target)
    adj = {q: sorted(s) for q, s in succ.items()}
    sccs, comp_of, _ = condensation(sorted(a.states), adj)
    loopy = []
    for comp in sccs:
        if len(comp) > 1 or comp[0] in adj[comp[0]]:
            loopy.append(sorted(comp))
    loopy.sort(key=lambda c: c[0])

    n = len(a.states)
    parts: list[TreeAutomaton] = []
    notes: list[str] = []
    for comp in loopy:
        x = set(comp)
        if x & rep:
            part = _bx_replicated(a, x, adj)
            notes.append(f"B[{'+'.join(comp)}]: replicated, {len(part.states)} states "
                         f"(bound |X|+n+1 = {len(x) + n + 1})")
        else:
            part = _bx_guess(a, x)
            bound = 2 * len(x) * (len(x) + 2) + 3 * n
            notes.append(f"B[{'+'.join(comp)}]: guessed, {len(part.states)} states "
                         f"(bound 2|X|(|X|+2)+3n = {bound})")
        parts.append(part)
    out = conjunction(parts, alphabet=a.alphabet)
    trace = ConstructionTrace(
        construction="weaken_14", input_states=n, output_states=len(out.states),
        components=tuple(notes))
    return out, trace


def _bx_replicated(a: DetAutomaton, x: set[str], adj) -> TreeAutomaton:
    """B_X for a component replicated by an accepting loop: outside states
    rank 4 after X and 2 before it, X itself doubled over ranks 2..4."""
    xrank = _component_band_ranks(a, x)
    after = reachable_from(sorted({w for q in x for w in adj[q] if w not in x}),
                           {q: [w for w in adj[q]] for q in a.states}) - x
    states: dict[str, State] = {}
    transitions: list[Transition] = []

    def outside_rank(q):
        return 4 if q in after else 2

    def entry(q):
        return f"c1_{q}" if q in x else f"o_{q}"

    for q in a.states:
        if q in x:
            states[f"c1_{q}"] = State(UNIVERSAL, 2)
            states[f"c2_{q}"] = State(UNIVERSAL, 3)
            for letter in a.alphabet:
                transitions.append(Transition(f"c1_{q}", letter, None, f"c2_{q}"))
        else:
            states[f"o_{q}"] = State(UNIVERSAL, outside_rank(q))
    states[TOP] = State(UNIVERSAL, 4)
    for letter in a.alphabet:
        for d in (0, 1):
            transitions.append(Transition(TOP, letter, d, TOP))
    for t in a.transitions:
        if t.source in x:
            transitions.append(Transition(f"c1_{t.source}", t.letter, t.direction,
                                          entry(t.target)))
            if xrank[t.source] == 1 and t.target in x:
                transitions.append(Transition(f"c2_{t.source}", t.letter, t.direction,
                                              f"c2_{t.target}"))
        else:
            transitions.append(Transition(f"o_{t.source}", t.letter, t.direction,
                                          entry(t.target)))
    for q in x:
        if xrank[q] == 2:
            for letter in a.alphabet:
                transitions.append(Transition(f"c2_{q}", letter, None, TOP))
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=entry(a.initial),
                         transitions=tuple(transitions), acceptance="weak")


def _bx_guess(a: DetAutomaton, x: set[str]) -> TreeAutomaton:
    """B_X for a non-replicated component: guessing copy (rank 1), the
    X-avoidance checker (rank 2 / sink 3), and per even rank r a checker
    following the unique X-branch with a (3,4) searcher for recurrence."""
    even_ranks = sorted({a.rank(q) for q in x if a.rank(q) % 2 == 0})
    states: dict[str, State] = {}
    transitions: list[Transition] = []

    for q in a.states:
        states[f"g_{q}"] = State(UNIVERSAL, 1)
        states[f"gp_{q}"] = State(EXISTENTIAL, 1)
        for letter in a.alphabet:
            transitions.append(Transition(f"gp_{q}", letter, None, f"g_{q}"))
    for t in a.transitions:
        transitions.append(Transition(f"g_{t.source}", t.letter, t.direction,
                                      f"gp_{t.target}"))

    # C_{A\X}: stay outside X forever
    for q in a.states:
        if q not in x:
            states[f"na_{q}"] = State(UNIVERSAL, 2)
            for letter in a.alphabet:
                transitions.append(Transition(f"gp_{q}", letter, None, f"na_{q}"))
    states["na" + BOT] = State(UNIVERSAL, 3)
    for letter in a.alphabet:
        for d in (0, 1):
            transitions.append(Transition("na" + BOT, letter, d, "na" + BOT))
    for t in a.transitions:
        if t.source not in x:
            tgt = f"na_{t.target}" if t.target not in x else "na" + BOT
            transitions.append(Transition(f"na_{t.source}", t.letter, t.direction, tgt))

    # C_{X,r} for each even rank r used in X
    for r in even_ranks:
        bot_r = f"bot{r}_"
        top_r = f"top{r}_"
        states[bot_r] = State(UNIVERSAL, 3)
        states[top_r] = State(UNIVERSAL, 4)
        for letter in a.alphabet:
            for d in (0, 1):
                transitions.append(Transition(bot_r, letter, d, bot_r))
                transitions.append(Transition(top_r, letter, d, top_r))
        for q in x:
            states[f"m{r}_{q}"] = State(UNIVERSAL, 2)
            states[f"s{r}_{q}"] = State(EXISTENTIAL, 3)
            for letter in a.alphabet:
                if a.rank(q) <= r:
                    transitions.append(Transition(f"gp_{q}", letter, None, f"m{r}_{q}"))
                if a.rank(q) == r:
                    transitions.append(Transition(f"s{r}_{q}", letter, None, top_r))
        for q in x:
            for letter in a.alphabet:
                q0, q1 = a.pair(q, letter)
                inside = [d for d, tgt in ((0, q0), (1, q1)) if tgt in x]
                if len(inside) != 1:
                    # zero or two X-branches: the one-branch shape is violated
                    for d in (0, 1):
                        transitions.append(Transition(f"m{r}_{q}", letter, d, bot_r))
                else:
                    d = inside[0]
                    tgt = (q0, q1)[d]
                    if a.rank(tgt) > r:
                        for dd in (0, 1):
                            transitions.append(Transition(f"m{r}_{q}", letter, dd, bot_r))
                    else:
                        transitions.append(Transition(f"m{r}_{q}", letter, d, f"m{r}_{tgt}"))
                        transitions.append(Transition(f"m{r}_{q}", letter, d, f"s{r}_{tgt}"))
                if a.rank(q) != r:
                    # searcher keeps walking inside X looking for rank r
                    for d, tgt in ((0, q0), (1, q1)):
                        if tgt in x:
                            transitions.append(Transition(f"s{r}_{q}", letter, d,
                                                          f"s{r}_{tgt}"))
    return TreeAutomaton(alphabet=a.alphabet, states=states, initial=f"gp_{a.initial}",
                         transitions=tuple(transitions), acceptance="weak")


# -- conjunction ---------------------------------------------------------------------


def conjunction(automata: list[TreeAutomaton], alphabet=None) -> TreeAutomaton:
    """Fresh universal initial state with epsilon moves to every conjunct."""
    if not automata:
        if alphabet is None:
            raise ValidationError("empty conjunction needs an explicit alphabet")
        states = {"_conj": State(UNIVERSAL, 0)}
        trans = tuple(Transition("_conj", letter, d, "_conj")
                      for letter in sorted(set(alphabet)) for d in (0, 1))
        return TreeAutomaton(alphabet=tuple(alphabet), states=states, initial="_conj",
                             transitions=trans, acceptance="weak")
    base = set(automata[0].alphabet)
    for b in automata[1:]:
        if set(b.alphabet) != base:
            raise ValidationError("conjunction inputs must share the alphabet")
    if alphabet is not None and set(alphabet) != base:
        raise ValidationError("conjunction inputs must share the alphabet")
    states: dict[str, State] = {}
    transitions: list[Transition] = []
    min_rank = min(st.rank for b in automata for st in b.states.values())
    states["_conj"] = State(UNIVERSAL, min_rank)
    for i, b in enumerate(automata):
        for q, st in b.states.items():
            states[f"j{i}_{q}"] = st
        for t in b.transitions:
            transitions.append(Transition(f"j{i}_{t.source}", t.letter, t.direction,
                                          f"j{i}_{t.target}"))
        for letter in sorted(base):
            transitions.append(Transition("_conj", letter, None, f"j{i}_{b.initial}"))
    return TreeAutomaton(alphabet=tuple(sorted(base)), states=states, initial="_conj",
                         transitions=tuple(transitions), acceptance="weak")


# -- full weakening dispatch ------------------------------------------------------------


def weaken(a: DetAutomaton) -> tuple[TreeAutomaton, ConstructionTrace]:
    """Equivalent weak automaton of minimal index.

    Dispatch: level zero gives one-state automata; the first level reuses
    the weak-deterministic relabeling; Pi^0_2 and Sigma^0_2 relabel and
    apply the (0,2)/(1,3) constructions; Delta^0_3 applies the (1,4)
    construction.  Proper Pi^0_3 languages are weakly recognizable with
    index (0,3) but that construction is out of scope; non-Borel languages
    are not weakly recognizable at all.
    """
    report = classify(a)
    level = report.borel.minimal
    n = len(a.states)

    def done(out: TreeAutomaton, how: str, components=()) -> tuple[TreeAutomaton, ConstructionTrace]:
        trace = ConstructionTrace(construction=how, input_states=n,
                                  output_states=len(out.states), components=tuple(components))
        return out, trace

    if level is BorelLevel.SIGMA0:
        return done(report.weak_det[1], "empty_language")
    if level is BorelLevel.PI0:
        states = {"t": State(UNIVERSAL, 0)}
        trans = tuple(Transition("t", letter, d, "t") for letter in a.alphabet for d in (0, 1))
        out = TreeAutomaton(alphabet=a.alphabet, states=states, initial="t",
                            transitions=trans, acceptance="weak", name="accept_all")
        return done(out, "universal_language")
    if level in (BorelLevel.DELTA1, BorelLevel.SIGMA1, BorelLevel.PI1):
        index, out = report.weak_det
        return done(out, f"weak_det_relabel_{index.iota}_{index.kappa}")
    trimmed = report.trimmed
    if level in (BorelLevel.DELTA2, BorelLevel.PI2):
        out = weaken_02(relabel_to(trimmed, IndexPair(1, 2)))
        return done(out, "relabel_12_then_weaken_02")
    if level is BorelLevel.SIGMA2:
        out = weaken_13(relabel_to(trimmed, IndexPair(0, 1)))
        return done(out, "relabel_01_then_weaken_13")
    if level is BorelLevel.DELTA3:
        out, trace = weaken_14(trimmed)
        return out, ConstructionTrace(construction="weaken_14", input_states=n,
                                      output_states=trace.output_states,
                                      components=trace.components)
    if level is BorelLevel.PI3:
        raise UnsupportedGapConstruction((0, 3))
    raise NonWeaklyRecognizable(report.borel.witnesses.get("pi3"))
