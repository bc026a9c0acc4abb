"""Filtration ladders M_X for X = O(G)_{<=d} and growth classification.

Run: python3 demos/02_filtrations_and_growth.py
"""

from comodfilt import (build_module, classify, equal_growth, filtration_dims,
                       group_from_spec)

ga = group_from_spec("Ga@p=2")
gl = group_from_spec("GL:2@p=2")

print("=== dimension ladders d -> dim M_{O(G)_<=d} ===")
cases = [
    (ga, "regular(3)", 6),
    (ga, "polyaffine(2)", 8),
    (ga, "primitives", 16),
    (ga, "translationinvariants", 8),
    (gl, "twiststream(1)", 16),
]
for g, text, dmax in cases:
    m = build_module(text, g)
    dims = filtration_dims(m, dmax).dims
    rep = classify(dims, p=g.p)
    print(f"{text:>22} over {g.spec():<9} dims={dims}")
    print(f"{'':>22}      -> growth verdict: {rep}")

print()
print("=== regular representations: growth degree = dim of the group ===")
for spec, lie_dim in [("Ga@p=2", 1), ("Gm@p=3", 1), ("U:3@p=2", 3),
                      ("SL:2@p=3", 3), ("GL:2@p=2", 4)]:
    g = group_from_spec(spec)
    dims = [g.filtration_dim(d) for d in range(41)]
    print(f"{spec:>9}: {classify(dims, p=g.p)}   (dim g = {lie_dim})")

print()
print("=== comparing two ladders ===")
a = filtration_dims(build_module("polyaffine(2)", ga), 12).dims
doubled = [2 * x for x in a]
rep = equal_growth(a, doubled)
print(f"polyaffine(2) vs its doubling: {rep['verdict']} (ratio {rep['ratio']:.3f})")
cubic = filtration_dims(build_module("polyaffine(3)", ga), 12).dims
print("polyaffine(2) vs polyaffine(3):", equal_growth(a, cubic)["verdict"])
