"""Weak game languages: the run reduction and the hard-language fixtures.

Membership of a tree in a weak automaton's language reduces to membership
of the folded acceptance game in the weak game language of the matching
band.  The Skurczynski fixtures realize each band exactly.
"""

from weakindex import catalog, index_of, weaken
from weakindex.automata import IndexPair
from weakindex.semantics import (
    SamplerParams,
    alt_accepts,
    run_reduction,
    sample_regular_tree,
    skurczynski,
    skurczynski_member_oracle,
    w_member,
)

weak_aut, _ = weaken(catalog.inf_b_left())
trees = sample_regular_tree(SamplerParams(seed=5, max_nodes=7,
                                          alphabet=("a", "b"), count=50))

agree = 0
for t in trees:
    inst = run_reduction(weak_aut, t)
    if alt_accepts(weak_aut, t) == w_member(inst.tree, inst.band):
        agree += 1
print(f"reduction property: {agree}/{len(trees)} trees agree")

inst = run_reduction(weak_aut, trees[0])
print(f"one instance: arity {inst.tree.arity}, {len(inst.tree.nodes)} nodes, "
      f"band {inst.band}")

print("\nSkurczynski fixtures:")
for idx in (IndexPair(0, 1), IndexPair(1, 2), IndexPair(0, 2), IndexPair(1, 3)):
    a = skurczynski(idx)
    ok = all(alt_accepts(a, t) == skurczynski_member_oracle(idx, t) for t in trees)
    print(f"  {idx}: {len(a.states)} states, index_of {index_of(a)}, "
          f"oracle agreement on {len(trees)} trees: {ok}")
