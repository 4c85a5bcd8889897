"""Core data model: tree automata, index arithmetic, validation.

Automata are alternating parity/weak tree automata over binary trees.
Deterministic automata are a validated sub-shape (`DetAutomaton`) with a
total transition table and only universal states.  All values are
immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import ValidationError

EXISTENTIAL = "E"
UNIVERSAL = "A"

# direction of a transition: 0 = left, 1 = right, None = epsilon
Direction = Optional[int]

BOT = "_bot"  # reserved id for the all-rejecting sink
TOP = "_top"  # reserved id for the all-accepting sink


class Transition(NamedTuple):
    source: str
    letter: str
    direction: Direction
    target: str


class State(NamedTuple):
    mode: str  # EXISTENTIAL or UNIVERSAL
    rank: int


def _dir_key(d: Direction) -> int:
    return 2 if d is None else d


def transition_sort_key(t: Transition):
    return (t.source, t.letter, _dir_key(t.direction), t.target)


@dataclass(frozen=True)
class IndexPair:
    """Mostowski-Rabin index (iota, kappa) with iota in {0,1}, kappa >= iota."""

    iota: int
    kappa: int

    def __post_init__(self):
        if self.iota not in (0, 1):
            raise ValidationError(f"index iota must be 0 or 1, got {self.iota}")
        if self.kappa < self.iota:
            raise ValidationError(f"index ({self.iota},{self.kappa}) is not constructible")

    def dual(self) -> "IndexPair":
        if self.iota == 0:
            return IndexPair(1, self.kappa + 1)
        return IndexPair(0, self.kappa - 1)

    def ranks_used(self) -> int:
        return self.kappa - self.iota + 1

    def band(self) -> range:
        return range(self.iota, self.kappa + 1)

    def __str__(self):
        return f"({self.iota},{self.kappa})"


def dual_index(i: IndexPair) -> IndexPair:
    return i.dual()


def index_leq(i: IndexPair, j: IndexPair) -> str:
    """Compare two indices: 'less', 'equal', 'greater' or 'incomparable'.

    An index is greater than another when it uses more ranks; equal rank
    counts with different iota are incomparable (dual indices).
    """
    a, b = i.ranks_used(), j.ranks_used()
    if a < b:
        return "less"
    if a > b:
        return "greater"
    return "equal" if i.iota == j.iota else "incomparable"


@dataclass(frozen=True)
class TreeAutomaton:
    """Alternating tree automaton over binary input trees.

    acceptance 'parity': highest rank visited infinitely often is even.
    acceptance 'weak':   highest rank visited at least once is even.
    """

    alphabet: tuple[str, ...]
    states: dict[str, State]
    initial: str
    transitions: tuple[Transition, ...]
    acceptance: str = "parity"
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet))))
        object.__setattr__(
            self,
            "transitions",
            tuple(sorted(set(self.transitions), key=transition_sort_key)),
        )
        self._validate()
        moves: dict[tuple[str, str], list[tuple[Direction, str]]] = {}
        for t in self.transitions:
            moves.setdefault((t.source, t.letter), []).append((t.direction, t.target))
        object.__setattr__(self, "_moves", moves)
        # memo space for derived analyses; sound because values are immutable
        object.__setattr__(self, "_memo", {})

    def _validate(self):
        if not self.alphabet:
            raise ValidationError("empty alphabet")
        if not self.states:
            raise ValidationError("automaton has no states")
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} not declared")
        if self.acceptance not in ("parity", "weak"):
            raise ValidationError(f"unknown acceptance {self.acceptance!r}")
        for sid, st in self.states.items():
            if not sid or not all(c.isalnum() or c == "_" for c in sid):
                raise ValidationError(f"bad state id {sid!r}")
            if st.mode not in (EXISTENTIAL, UNIVERSAL):
                raise ValidationError(f"state {sid}: bad mode {st.mode!r}")
            if st.rank < 0:
                raise ValidationError(f"state {sid}: negative rank")
        for t in self.transitions:
            if t.source not in self.states:
                raise ValidationError(f"transition from unknown state {t.source!r}")
            if t.target not in self.states:
                raise ValidationError(f"transition to unknown state {t.target!r}")
            if t.letter not in self.alphabet:
                raise ValidationError(f"transition on unknown letter {t.letter!r}")
            if t.direction not in (0, 1, None):
                raise ValidationError(f"bad direction {t.direction!r}")

    # -- queries ---------------------------------------------------------

    def rank(self, sid: str) -> int:
        return self.states[sid].rank

    def mode(self, sid: str) -> str:
        return self.states[sid].mode

    def moves(self, sid: str, letter: str) -> list[tuple[Direction, str]]:
        return self._moves.get((sid, letter), [])

    def ranks(self) -> set[int]:
        return {st.rank for st in self.states.values()}

    def is_restricted(self) -> bool:
        """True when ranks never decrease along transitions."""
        return all(self.rank(t.source) <= self.rank(t.target) for t in self.transitions)

    def successors(self, sid: str) -> set[str]:
        out = set()
        for (src, _), pairs in self._moves.items():
            if src == sid:
                out.update(tgt for _, tgt in pairs)
        return out

    def edges(self) -> list[tuple[str, str]]:
        return [(t.source, t.target) for t in self.transitions]

    def with_states(self, states: dict[str, State], name: str = "") -> "TreeAutomaton":
        """Same shape with replaced state table (used by relabelings)."""
        cls = type(self)
        return cls(
            alphabet=self.alphabet,
            states=states,
            initial=self.initial,
            transitions=self.transitions,
            acceptance=self.acceptance,
            name=name or self.name,
        )


@dataclass(frozen=True)
class DetAutomaton(TreeAutomaton):
    """Deterministic automaton: all states universal, total binary table.

    May carry the designated all-rejecting sink `_bot` (odd rank, total
    self-loops).  Transitions are often read through `step`.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.acceptance != "parity":
            raise ValidationError("deterministic automata use strong parity acceptance")
        delta: dict[tuple[str, str, int], str] = {}
        for t in self.transitions:
            if t.direction is None:
                raise ValidationError(f"epsilon transition {t} in deterministic automaton")
            key = (t.source, t.letter, t.direction)
            if key in delta:
                raise ValidationError(f"duplicate transition for {key}")
            delta[key] = t.target
        for sid in self.states:
            st = self.states[sid]
            if st.mode != UNIVERSAL:
                raise ValidationError(f"state {sid}: deterministic automata are all-universal")
            for a in self.alphabet:
                for d in (0, 1):
                    if (sid, a, d) not in delta:
                        raise ValidationError(f"missing transition ({sid},{a},{d}): table not total")
        object.__setattr__(self, "_delta", delta)

    def step(self, sid: str, letter: str, direction: int) -> str:
        return self._delta[(sid, letter, direction)]

    def pair(self, sid: str, letter: str) -> tuple[str, str]:
        return (self._delta[(sid, letter, 0)], self._delta[(sid, letter, 1)])

    def as_alternating(self) -> TreeAutomaton:
        return TreeAutomaton(
            alphabet=self.alphabet,
            states=self.states,
            initial=self.initial,
            transitions=self.transitions,
            acceptance="parity",
            name=self.name,
        )


def index_of(a: TreeAutomaton) -> IndexPair:
    """Index after scaling ranks down by the largest even shift.

    The automaton itself is not mutated; only the index is reported.
    """
    lo, hi = min(a.ranks()), max(a.ranks())
    shift = lo - (lo % 2)
    return IndexPair(lo - shift, hi - shift)


def normalize_ranks(a: TreeAutomaton) -> TreeAutomaton:
    """Shift all ranks down by the largest even amount (min becomes 0 or 1)."""
    lo = min(a.ranks())
    shift = lo - (lo % 2)
    if shift == 0:
        return a
    states = {sid: State(st.mode, st.rank - shift) for sid, st in a.states.items()}
    return a.with_states(states)


def make_automaton(
    alphabet: Iterable[str],
    states: dict[str, tuple[str, int]],
    initial: str,
    transitions: Iterable[tuple],
    acceptance: str = "parity",
    deterministic: bool = False,
    name: str = "",
) -> TreeAutomaton:
    """Convenience constructor from plain tuples."""
    st = {sid: State(m, r) for sid, (m, r) in states.items()}
    tr = tuple(Transition(*t) for t in transitions)
    cls = DetAutomaton if deterministic else TreeAutomaton
    return cls(
        alphabet=tuple(alphabet),
        states=st,
        initial=initial,
        transitions=tr,
        acceptance=acceptance,
        name=name,
    )
