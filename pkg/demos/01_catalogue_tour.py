"""Tour of the nine catalogue models.

Each model is a pair of rational surfaces glued along an elliptic curve,
carrying a degree-4 polarization h and the isotropic double-curve class xi.
This script prints the surfaces, the numerical invariants, and a few
intersection numbers computed in the rank-20 pair lattice.
"""

from degen_atlas import catalogue, intersect, surface_name
from degen_atlas.surface_pair import class_vector, format_class

models = catalogue()

print(f"{'id':8s} {'V0':16s} {'V1':16s} {'d':>3s}  h^2  h.xi  xi^2")
for mid, m in models.items():
    print(
        f"{mid:8s} {surface_name(m, 0):16s} {surface_name(m, 1):16s} "
        f"{m.d:3d}  {intersect(m, m.h, m.h):3d}  {intersect(m, m.h, m.xi):4d}"
        f"  {intersect(m, m.xi, m.xi):4d}"
    )

print()
m = models["D8D8"]
print("D8D8 polarization:", format_class(m.lattice, m.h))
print("D8D8 double curve:", format_class(m.lattice, m.xi))

# the anticanonical squares of the two components cancel (d-semistability)
e0, e1 = m.double_curve_class(0), m.double_curve_class(1)
print("E0^2 =", intersect(m, e0, e0), " E1^2 =", intersect(m, e1, e1))

# a hyperplane section of a cubic surface has square 3
cubic = models["A11E6"]
v = class_vector(cubic.lattice, {"l'": 3, **{f"e'{i}": -1 for i in range(1, 7)}})
print("anticanonical square on the dP3 component:", intersect(cubic, v, v))
