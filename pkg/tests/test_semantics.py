import pytest

from weakindex import catalog
from weakindex.automata import IndexPair, make_automaton
from weakindex.errors import ValidationError
from weakindex.formats import serialize_regular_tree
from weakindex.rng import SplitMix64
from weakindex.semantics import (
    SamplerParams,
    alt_accepts,
    bounded_equiv,
    det_accepts,
    product_game,
    run_reduction,
    sample_regular_tree,
    skurczynski,
    skurczynski_member_oracle,
    w_member,
)
from weakindex.trees import Node, RegularTree, constant_tree, parse_wlabel

from conftest import random_det, random_weak


def tree_with_b_at_root():
    return RegularTree(2, {"r": Node("b", ("n", "n")), "n": Node("a", ("n", "n"))}, "r")


# -- membership ----------------------------------------------------------------


def test_det_accepts_all_a():
    a = catalog.all_a()
    assert det_accepts(a, constant_tree("a"))
    assert not det_accepts(a, tree_with_b_at_root())


def test_det_accepts_rejects_foreign_labels():
    a = catalog.all_a()
    with pytest.raises(ValidationError):
        det_accepts(a, constant_tree("z"))


def _cycle_oracle(a, t):
    """Independent membership check: search the product graph for a
    reachable cycle whose top rank is odd."""
    start = (a.initial, t.root)
    seen = set()
    stack = [start]
    nodes = []
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen.add(cur)
        nodes.append(cur)
        q, v = cur
        for d in (0, 1):
            stack.append((a.step(q, t.label(v), d), t.child(v, d)))
    idx = {x: i for i, x in enumerate(nodes)}
    succ = {i: set() for i in range(len(nodes))}
    for (q, v) in nodes:
        for d in (0, 1):
            succ[idx[(q, v)]].add(idx[(a.step(q, t.label(v), d), t.child(v, d))])
    # enumerate subsets is exponential; instead check per odd rank r the
    # rank-restricted subgraph for a cycle through a rank-r product node
    ranks = {i: a.rank(nodes[i][0]) for i in range(len(nodes))}
    from weakindex.graphs import tarjan_scc
    for r in sorted({x for x in ranks.values() if x % 2 == 1}):
        keep = [i for i in range(len(nodes)) if ranks[i] <= r]
        keep_set = set(keep)
        adj = {i: sorted(j for j in succ[i] if j in keep_set) for i in keep}
        for comp in tarjan_scc(keep, adj):
            if len(comp) == 1 and comp[0] not in adj[comp[0]]:
                continue
            if any(ranks[i] == r for i in comp):
                return False
    return True


def test_det_accepts_matches_cycle_oracle():
    rng = SplitMix64(888)
    trees = sample_regular_tree(SamplerParams(seed=8, max_nodes=5,
                                              alphabet=("a", "b"), count=20))
    for _ in range(60):
        a = random_det(rng, max_states=5)
        for t in trees:
            assert det_accepts(a, t) == _cycle_oracle(a, t)


def test_alt_accepts_coincides_on_deterministic():
    rng = SplitMix64(999)
    trees = sample_regular_tree(SamplerParams(seed=9, max_nodes=6,
                                              alphabet=("a", "b"), count=20))
    for _ in range(40):
        a = random_det(rng)
        alt = a.as_alternating()
        for t in trees:
            assert det_accepts(a, t) == alt_accepts(alt, t)


def test_product_game_shape():
    g = product_game(catalog.all_a().as_alternating(), constant_tree("a"))
    assert g.initial == "p@n"
    assert g.condition == "parity"


# -- run reduction ----------------------------------------------------------------


def test_run_reduction_trivial_accept_and_reject():
    accept = make_automaton(("a", "b"), {"q": ("A", 0)}, "q",
                            [("q", x, d, "q") for x in ("a", "b") for d in (0, 1)],
                            acceptance="weak")
    inst = run_reduction(accept, constant_tree("a"))
    assert all(parse_wlabel(n.label).owner == "A" for n in inst.tree.nodes.values())
    assert w_member(inst.tree, inst.band)

    reject = make_automaton(("a", "b"), {"q": ("A", 1)}, "q",
                            [("q", x, d, "q") for x in ("a", "b") for d in (0, 1)],
                            acceptance="weak")
    inst = run_reduction(reject, constant_tree("a"))
    assert not w_member(inst.tree, inst.band)


def test_run_reduction_property_on_random_pairs():
    rng = SplitMix64(555)
    trees = sample_regular_tree(SamplerParams(seed=55, max_nodes=6,
                                              alphabet=("a", "b"), count=10))
    for _ in range(60):
        a = random_weak(rng)
        for t in trees:
            inst = run_reduction(a, t)
            assert alt_accepts(a, t) == w_member(inst.tree, inst.band), (a, t)


def test_w_member_trivia():
    t_all = RegularTree(2, {"n": Node("A:0", ("n", "n"))}, "n")
    assert w_member(t_all, IndexPair(0, 1))
    t_rej = RegularTree(2, {"n": Node("E:1", ("n", "n"))}, "n")
    assert not w_member(t_rej, IndexPair(0, 1))


def test_w_member_eve_choice():
    # Eve at the root picks the rank-2 branch over the rank-1 trap
    t = RegularTree(3, {
        "r": Node("E:0", ("trap", "good", "trap")),
        "trap": Node("A:1", ("trap", "trap", "trap")),
        "good": Node("A:2", ("good", "good", "good")),
    }, "r")
    assert w_member(t, IndexPair(0, 2))


def test_w_member_band_violation():
    t = RegularTree(2, {"n": Node("A:5", ("n", "n"))}, "n")
    with pytest.raises(ValidationError):
        w_member(t, IndexPair(0, 2))


# -- Skurczynski fixtures ------------------------------------------------------------


def test_skurczynski_01_exactly_the_all_a_tree():
    a = skurczynski(IndexPair(0, 1))
    assert alt_accepts(a, constant_tree("a"))
    for t in sample_regular_tree(SamplerParams(seed=4, max_nodes=6,
                                               alphabet=("a", "b"), count=40)):
        if any(n.label == "b" for n in t.nodes.values()):
            assert not alt_accepts(a, t)


def test_skurczynski_duality():
    trees = sample_regular_tree(SamplerParams(seed=44, max_nodes=6,
                                              alphabet=("a", "b"), count=60))
    for n in (1, 2, 3):
        lo = skurczynski(IndexPair(0, n))
        hi = skurczynski(IndexPair(1, n + 1))
        for t in trees:
            assert alt_accepts(hi, t) == (not alt_accepts(lo, t))


def test_skurczynski_agrees_with_oracle():
    trees = sample_regular_tree(SamplerParams(seed=46, max_nodes=6,
                                              alphabet=("a", "b"), count=50))
    for idx in (IndexPair(0, 2), IndexPair(1, 3), IndexPair(0, 3)):
        a = skurczynski(idx)
        for t in trees:
            assert alt_accepts(a, t) == skurczynski_member_oracle(idx, t)


def test_skurczynski_oracle_trivia():
    assert skurczynski_member_oracle(IndexPair(0, 1), constant_tree("a"))
    assert not skurczynski_member_oracle(IndexPair(1, 2), constant_tree("a"))


# -- sampler --------------------------------------------------------------------------


def test_sampler_deterministic():
    p = SamplerParams(seed=42, max_nodes=3, alphabet=("a", "b"), count=2)
    t1 = sample_regular_tree(p)
    t2 = sample_regular_tree(p)
    assert [serialize_regular_tree(t) for t in t1] == \
        [serialize_regular_tree(t) for t in t2]


def test_sampler_count_and_validity():
    p = SamplerParams(seed=1, max_nodes=6, alphabet=("a", "b"), count=25)
    trees = sample_regular_tree(p)
    assert len(trees) == 25
    for t in trees:
        assert 1 <= len(t.nodes) <= 6  # construction revalidates reachability


def test_sampler_rejects_bad_params():
    with pytest.raises(ValidationError):
        SamplerParams(seed=1, max_nodes=0, alphabet=("a",), count=1)
    with pytest.raises(ValidationError):
        SamplerParams(seed=1, max_nodes=3, alphabet=("a",), count=0)


# -- bounded equivalence ------------------------------------------------------------------


def test_bounded_equiv_reflexive():
    a = catalog.all_a()
    p = SamplerParams(seed=2, max_nodes=5, alphabet=("a", "b"), count=30)
    assert bounded_equiv(a, a, p) is None


def test_bounded_equiv_finds_counterexample():
    a = catalog.all_a()
    universal = make_automaton(("a", "b"), {"q": ("A", 0)}, "q",
                               [("q", x, d, "q") for x in ("a", "b") for d in (0, 1)],
                               deterministic=True)
    p = SamplerParams(seed=2, max_nodes=5, alphabet=("a", "b"), count=30)
    ce = bounded_equiv(a, universal, p)
    assert ce is not None
    assert any(n.label == "b" for n in ce.nodes.values())
