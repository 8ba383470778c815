"""Tour: the coordinatewise lattice and the four means, two routes each.

Run with: python demos/01_lattice_and_means.py
"""

import numpy as np

from oapoly import (
    InfimumSpec,
    LatticeVector,
    PositiveVector,
    apply_homogeneous,
    geometric_mean,
    harmonic_mean,
    harmonic_mean_via_infimum,
    inf,
    is_disjoint,
    root_mean_power,
    sup,
    weighted_geometric_mean,
    weights,
    wgm_via_infimum,
)
from oapoly.partitions import CompletePartition

print("== lattice operations are coordinatewise ==")
f = LatticeVector([1.0, -2.0, 0.5])
g = LatticeVector([0.0, 3.0, 0.5])
print(f"f           = {list(f)}")
print(f"g           = {list(g)}")
print(f"f v g       = {list(sup(f, g))}")
print(f"f ^ g       = {list(inf(f, g))}")
print(f"|f|         = {list(abs(f))}")
print(f"disjoint?     {is_disjoint(f, g)}   (common support at the last coordinate)")
print(f"disjoint?     {is_disjoint(LatticeVector([1, 0]), LatticeVector([0, 9]))}"
      "   (complementary supports)")

print()
print("== any positively homogeneous scalar function extends pointwise ==")
a = PositiveVector([1.0, 9.0])
b = PositiveVector([4.0, 1.0])
r = apply_homogeneous(lambda x, y: (x * y) ** 0.5, [a, b])
print(f"coordinatewise sqrt(x*y) of {list(a)} and {list(b)} = {list(r)}")

print()
print("== the four means ==")
fs = [PositiveVector([1.0, 2.0]), PositiveVector([3.0, 6.0])]
print(f"inputs: {[list(v) for v in fs]}")
print(f"root mean power (s=2): {list(root_mean_power(2, fs))}")
print(f"geometric mean:        {list(geometric_mean(fs))}")
print(f"harmonic mean:         {list(harmonic_mean(fs))}")
w = weights(CompletePartition((2, 1, 1), 4))
gs = [PositiveVector([16.0]), PositiveVector([1.0]), PositiveVector([1.0])]
print(f"weighted geometric with weights {[str(t) for t in w]} on (16, 1, 1): "
      f"{list(weighted_geometric_mean(w, gs))}")

print()
print("== zero handling: the harmonic mean has a hard zero branch ==")
z = harmonic_mean([PositiveVector([0.0, 2.0]), PositiveVector([5.0, 2.0])])
print(f"harmonic((0,2),(5,2)) = {list(z)}   (exactly zero where any argument vanishes)")

print()
print("== the same means as infima of tangent planes ==")
fs = [PositiveVector([1.0]), PositiveVector([2.0]), PositiveVector([4.0])]
closed = harmonic_mean(fs).entries[0]
print(f"harmonic(1, 2, 4) closed form = {closed} (= 12/7)")
lag = harmonic_mean_via_infimum(fs, InfimumSpec("harmonic", arity=3), "lagrange")
print(f"minimizing over the tangent set (stationary point): {lag.value.entries[0]}")
print("feasible-grid search approaches the infimum from above:")
print(f"{'m':>5} {'grid value':>18} {'gap':>12} {'a priori bound':>15}")
for m in (8, 16, 32, 64, 128):
    spec = InfimumSpec("harmonic", arity=3, resolution=m)
    res = harmonic_mean_via_infimum(fs, spec, "grid")
    v = res.value.entries[0]
    print(f"{m:>5} {v:>18.12f} {v - closed:>12.2e} {res.residual_bound:>15.2e}")

print()
w = weights(CompletePartition((1, 1), 2))
fs = [PositiveVector([1.0]), PositiveVector([9.0])]
closed = weighted_geometric_mean(w, fs).entries[0]
print(f"geometric sqrt(1*9) = {closed} as a constrained infimum:")
for m in (8, 32, 128):
    spec = InfimumSpec("weighted_geometric", weights=w, resolution=m, log_width=2.0)
    res = wgm_via_infimum(w, fs, spec, "grid")
    print(f"  m={m:<4} value={res.value.entries[0]:.10f}  bound={res.residual_bound:.2e}")

print()
print("== exact rational mode (harmonic mean only) ==")
ex = [PositiveVector.exact(["1/1", "1/2"]), PositiveVector.exact([3, "1/9"])]
print(f"harmonic of (1, 1/2) and (3, 1/9) = {[str(v) for v in harmonic_mean(ex)]}")
