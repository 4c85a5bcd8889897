"""Classifying the catalog: Borel rank and the three index hierarchies.

Each catalog automaton sits at a different level; the classifier reports
the minimal Borel class, the deterministic index, the weak deterministic
index when one exists, and the weak alternating index (or that the
language is not weakly recognizable at all).
"""

from weakindex import catalog, classify

for name in catalog.CATALOG:
    report = classify(catalog.get(name))
    print(f"=== {name}")
    print(report.render(witnesses=(name in ("inf_b_left", "split_min"))))
