"""Injectivity over finite levels and detection of mock-injective streams.

Run: python3 demos/04_injectivity.py
"""

from comodfilt import (SubCoalgebra, build_module, group_from_spec,
                       injective_test, injectivity_profile, regular,
                       regular_stream, trivial)

print("=== each level is injective over itself ===")
for spec, d in [("Ga@p=2", 3), ("Gm@p=3", 3), ("U:2@p=2", 3), ("SL:2@p=2", 2)]:
    g = group_from_spec(spec)
    c = SubCoalgebra.canonical(g, d)
    print(f"{spec:>9} d={d}: injective_test(C, C) = {injective_test(c, regular(g, d))}")

print()
print("=== the trivial module is not injective once the level grows ===")
ga = group_from_spec("Ga@p=2")
for d in range(4):
    c = SubCoalgebra.canonical(ga, d)
    print(f"d={d}: injective_test(C, triv) = {injective_test(c, trivial(ga))}")

print()
print("=== levelwise profiles ===")
print("regular stream over Ga, d=0..3:   ",
      injectivity_profile(ga, regular_stream(ga), 3))
ti = build_module("translationinvariants", ga)
profile = injectivity_profile(ga, ti, 4)
print("translation invariants, d=0..4:   ", profile)
print("-> the translation-invariant stream fails injectivity at finite levels")
print("   even though each finite truncation is a perfectly good comodule:")
print("   the failing profile is how mock injectivity shows up at desk scale.")
