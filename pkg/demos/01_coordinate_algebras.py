"""Tour of the coordinate Hopf algebras: normal forms, structure maps, sizes.

Run: python3 demos/01_coordinate_algebras.py
"""

from comodfilt import group_from_spec, truncated_exponential_degree

print("=== catalog groups and their filtration levels ===")
for spec in ["Ga@p=2", "Gm@p=3", "U:3@p=2", "M:2@p=5", "SL:2@p=3", "GL:2@p=2"]:
    g = group_from_spec(spec)
    dims = [g.filtration_dim(d) for d in range(6)]
    print(f"{spec:>9}: dim O(G)_<=d for d=0..5 -> {dims}")

print()
print("=== normal forms in O(GL_2) and O(SL_2) ===")
gl = group_from_spec("GL:2@p=5")
det = gl.det_element()
detinv = gl.element({gl.detinv_mono(): 1})
print("det * det^-1                 =", det * detinv)
x11 = gl.element({gl.gen_mono(0, 0): 1})
print("sigma(x11) over GL(2)        =", gl.antipode(x11))

sl = group_from_spec("SL:2@p=3")
a = sl.element({sl.gen_mono(0, 0): 1}) * sl.element({sl.gen_mono(1, 1): 1})
b = sl.element({sl.gen_mono(0, 1): 1}) * sl.element({sl.gen_mono(1, 0): 1})
print("x11*x22 - x12*x21 over SL(2) =", a - b, " (det = 1)")

print()
print("=== coproducts ===")
ga = group_from_spec("Ga@p=2")
print("Delta(t^2) over Ga, p=2:", ga.coproduct(ga.element({2: 1})),
      " (t^2 is primitive)")
gm = group_from_spec("Gm@p=3")
print("Delta(t^4) over Gm:     ", gm.coproduct(gm.element({4: 1})),
      " (grouplike)")

print()
print("=== truncated exponential degree (matrix case) ===")
for n, p in [(2, 3), (2, 5), (3, 5)]:
    print(f"N={n}, p={p}: max t-degree = {truncated_exponential_degree(n, p)}"
          f"  (= p-1)")
