"""Weakening constructions: minimal-index weak automata with exact budgets.

The (1,2) -> weak (0,2) construction uses 2n+1 states, (0,1) -> weak (1,3)
uses 3n+1, and the general (1,4) construction stays quadratic.  Every
output is checked equivalent to its input on sampled regular trees.
"""

from weakindex import catalog, index_of, trim, weaken
from weakindex.classifier import relabel_to
from weakindex.automata import IndexPair
from weakindex.errors import NonWeaklyRecognizable, UnsupportedGapConstruction
from weakindex.semantics import SamplerParams, bounded_equiv
from weakindex.transforms import weaken_02, weaken_14

params = SamplerParams(seed=42, max_nodes=8, alphabet=("a", "b"), count=300)

for name in catalog.CATALOG:
    a = catalog.get(name)
    try:
        out, trace = weaken(a)
    except UnsupportedGapConstruction as e:
        print(f"{name}: {e}")
        continue
    except NonWeaklyRecognizable as e:
        print(f"{name}: {e}")
        continue
    ok = bounded_equiv(a, out, params) is None
    print(f"{name}: {trace.construction} -> {len(out.states)} states, "
          f"index {index_of(out)}, sampled-equivalent: {ok}")

# the 2n+1 budget, spelled out on inf_b_left
a = relabel_to(trim(catalog.inf_b_left()), IndexPair(1, 2))
out = weaken_02(a)
print(f"\nweaken_02 on {len(a.states)} states -> {len(out.states)} = 2n+1")

# the quadratic construction keeps a per-component trace
out, trace = weaken_14(trim(catalog.fin_b_left()))
print(trace.render())
