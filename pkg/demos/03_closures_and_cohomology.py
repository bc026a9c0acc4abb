"""Coalgebra closures and cobar cohomology over finite levels.

Run: python3 demos/03_closures_and_cohomology.py
"""

from comodfilt import (CanonicalLevel, ExplicitSubspace, SubCoalgebra,
                       build_module, coalgebra_closure, cobar_complex,
                       cohomology_dims, group_from_spec, trivial)

print("=== closures of the canonical levels are the levels themselves ===")
for spec in ["Ga@p=2", "Gm@p=3", "SL:2@p=3", "GL:2@p=2"]:
    g = group_from_spec(spec)
    for d in (1, 2):
        res = coalgebra_closure(g, CanonicalLevel(g, d))
        print(f"{spec:>9} d={d}: closure dim {res.dim} "
              f"(level dim {g.filtration_dim(d)}), "
              f"sub-coalgebra check: {res.is_subcoalgebra}")

print()
print("=== closure of a subspace that is not a sub-coalgebra ===")
ga3 = group_from_spec("Ga@p=3")
x = ExplicitSubspace.from_elements(ga3, [ga3.one(), ga3.element({2: 1})])
res = coalgebra_closure(ga3, x)
print("closure(span{1, t^2}) over F_3 =",
      "span{" + ", ".join(map(str, res.subspace.elements())) + "}",
      "  (Delta(t^2) needs t, which is missing)")

print()
print("=== cobar cohomology of the trivial module over O(Ga)_{<=d}, p=2 ===")
ga = group_from_spec("Ga@p=2")
for d in (1, 2, 4, 8):
    c = SubCoalgebra.canonical(ga, d)
    h = cohomology_dims(cobar_complex(c, trivial(ga), 2))
    print(f"d={d}: H^0..H^2 dims = {h}   (H^1 counts primitives: "
          f"t, t^2, t^4, ... up to degree d)")

print()
print("=== H^0 is the fixed-point space ===")
gm = group_from_spec("Gm@p=3")
m = build_module("regular(2)", gm)
c = SubCoalgebra.canonical(gm, 2)
h = cohomology_dims(cobar_complex(c, m, 1))
print(f"regular(2) over Gm: H^0 = {h[0]}  (only the weight-0 line is fixed)")
