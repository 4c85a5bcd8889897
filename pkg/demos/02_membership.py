"""Regular trees and membership: the acceptance game in action.

A regular tree is a finite graph presenting an infinite tree; membership
is decided on the finite product of automaton and tree.
"""

from weakindex import catalog, det_accepts, parse_regular_tree, to_dot
from weakindex.trees import constant_tree

all_a = catalog.all_a()
ex_b = catalog.ex_b_left()

t_all_a = constant_tree("a")
t_all_b = constant_tree("b")

# a tree whose leftmost path is a, b, a, b, ... and everything else is a
t_mixed = parse_regular_tree("""
arity 2
root n0
node n0 a n1 rest
node n1 b n0 rest
node rest a rest rest
""")

print("all_a accepts the all-a tree:      ", det_accepts(all_a, t_all_a))
print("all_a rejects the all-b tree:      ", det_accepts(all_a, t_all_b))
print("all_a rejects a single stray b:    ", not det_accepts(all_a, t_mixed))
print("ex_b_left wants a b on path 0*:    ", det_accepts(ex_b, t_mixed))
print("ex_b_left rejects the all-a tree:  ", not det_accepts(ex_b, t_all_a))

print("\nDOT export of all_a:")
print(to_dot(all_a))
