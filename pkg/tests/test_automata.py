import pytest

from weakindex.automata import (
    DetAutomaton,
    IndexPair,
    State,
    TreeAutomaton,
    dual_index,
    index_leq,
    index_of,
    make_automaton,
)
from weakindex.errors import FormatError, ValidationError
from weakindex.formats import parse_automaton, serialize_automaton
from weakindex import catalog
from weakindex.rng import SplitMix64

from conftest import random_det, random_weak


ONE_STATE = """
alphabet a
start q
state q mode A rank 0
trans q a 0 q
trans q a 1 q
acceptance parity
deterministic
"""


def test_parse_one_state_identity_case():
    a = parse_automaton(ONE_STATE)
    assert isinstance(a, DetAutomaton)
    assert a.initial == "q"
    assert len(a.states) == 1
    assert a.pair("q", "a") == ("q", "q")


def test_parse_all_a_catalog_text():
    text = serialize_automaton(catalog.all_a())
    a = parse_automaton(text)
    assert isinstance(a, DetAutomaton)
    assert len(a.states) == 2
    assert a.pair("p", "b") == ("_bot", "_bot")


def test_parse_missing_start_is_an_error():
    with pytest.raises(FormatError, match="start"):
        parse_automaton("alphabet a\nstate q mode A rank 0\nacceptance parity\n")


def test_parse_reports_line_numbers():
    bad = "alphabet a\nstart q\nstate q mode A rank x\nacceptance parity\n"
    with pytest.raises(FormatError, match="line 3"):
        parse_automaton(bad)


def test_parse_unknown_state_is_semantic_error():
    bad = ONE_STATE.replace("trans q a 0 q", "trans q a 0 zz")
    with pytest.raises(FormatError, match="zz"):
        parse_automaton(bad)


def test_parse_non_total_deterministic_table():
    bad = "\n".join(ln for ln in ONE_STATE.splitlines() if "a 1" not in ln)
    with pytest.raises(FormatError, match="total"):
        parse_automaton(bad)


def test_serialize_round_trip_catalog():
    for name in catalog.CATALOG:
        a = catalog.get(name)
        b = parse_automaton(serialize_automaton(a))
        assert b.states == a.states
        assert set(b.transitions) == set(a.transitions)
        assert b.initial == a.initial
        assert isinstance(b, DetAutomaton)


def test_serialize_sorts_transitions():
    a = catalog.all_a()
    text = serialize_automaton(a)
    lines = [l for l in text.splitlines() if l.startswith("trans")]
    assert lines == sorted(lines)


def test_zero_transition_automaton_serializes():
    a = TreeAutomaton(alphabet=("a",), states={"q": State("E", 1)}, initial="q",
                      transitions=(), acceptance="parity")
    b = parse_automaton(serialize_automaton(a))
    assert b.transitions == ()


def test_round_trip_random_automata():
    rng = SplitMix64(11)
    for _ in range(60):
        a = random_det(rng)
        b = parse_automaton(serialize_automaton(a))
        assert b.states == a.states and set(b.transitions) == set(a.transitions)
    for _ in range(60):
        a = random_weak(rng)
        b = parse_automaton(serialize_automaton(a))
        assert b.states == a.states and set(b.transitions) == set(a.transitions)
        assert b.acceptance == "weak"


def _with_ranks(ranks):
    states = {f"q{i}": ("A", r) for i, r in enumerate(ranks)}
    trans = []
    names = list(states)
    for q in names:
        for d in (0, 1):
            trans.append((q, "a", d, names[0]))
    return make_automaton(("a",), states, "q0", trans)


def test_index_of_examples():
    assert index_of(_with_ranks([1, 2])) == IndexPair(1, 2)
    assert index_of(_with_ranks([2, 3])) == IndexPair(0, 1)
    assert index_of(_with_ranks([0, 1, 2])) == IndexPair(0, 2)


def test_index_of_invariant_under_even_shift():
    rng = SplitMix64(5)
    for _ in range(40):
        a = random_det(rng)
        shifted = a.with_states({q: State(st.mode, st.rank + 2)
                                 for q, st in a.states.items()})
        assert index_of(a) == index_of(shifted)


def test_dual_index_paper_values():
    assert dual_index(IndexPair(0, 2)) == IndexPair(1, 3)
    assert dual_index(IndexPair(1, 3)) == IndexPair(0, 2)
    assert dual_index(IndexPair(0, 0)) == IndexPair(1, 1)


def test_dual_is_involution_and_incomparable():
    for iota in (0, 1):
        for kappa in range(iota, 6):
            i = IndexPair(iota, kappa)
            assert dual_index(dual_index(i)) == i
            assert index_leq(i, dual_index(i)) == "incomparable"


def test_index_leq_examples():
    assert index_leq(IndexPair(0, 1), IndexPair(1, 2)) == "incomparable"
    assert index_leq(IndexPair(0, 0), IndexPair(0, 1)) == "less"
    assert index_leq(IndexPair(1, 2), IndexPair(1, 2)) == "equal"
    assert index_leq(IndexPair(0, 3), IndexPair(0, 1)) == "greater"


def test_index_pair_one_zero_not_constructible():
    with pytest.raises(ValidationError):
        IndexPair(1, 0)


def test_validation_unknown_initial():
    with pytest.raises(ValidationError):
        TreeAutomaton(alphabet=("a",), states={"q": State("A", 0)}, initial="zz",
                      transitions=(), acceptance="parity")


def test_validation_rejects_epsilon_in_deterministic():
    with pytest.raises(ValidationError):
        DetAutomaton(alphabet=("a",), states={"q": State("A", 0)}, initial="q",
                     transitions=(
                         __import__("weakindex.automata", fromlist=["Transition"])
                         .Transition("q", "a", None, "q"),),
                     acceptance="parity")
