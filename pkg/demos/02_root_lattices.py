"""Generalized root lattices of the nine models.

For each model the rank-17 negative definite lattice L (the polarization's
orthogonal complement in xi-perp modulo xi) is computed exactly, every
generalized root with norm down to -4 is enumerated, and the span of the
roots is classified through its Dynkin diagram.
"""

from degen_atlas import catalogue, generalized_roots, script_L, type_string
from degen_atlas.root_classifier import classify
from degen_atlas.surface_pair import format_class

for mid, m in catalogue().items():
    L = script_L(m)
    roots = generalized_roots(L)
    t = classify(roots)
    print(
        f"{mid:8s} type {type_string(t):12s} "
        f"#roots(-2)={2 * len(roots.roots2):4d} #roots(-4)={2 * len(roots.roots4):4d}"
    )

# The D8D8 model has a norm -4 generalized root orthogonal to all the
# -2 roots; it is the generator of the <-4> summand.
m = catalogue()["D8D8"]
L = script_L(m)
t = classify(generalized_roots(L))
(gen,) = t.minus4_generators
print()
print("D8D8 <-4> generator in the pair lattice:", format_class(m.lattice, L.lift(gen)))
print("(any representative modulo the double-curve class xi is equally valid)")
