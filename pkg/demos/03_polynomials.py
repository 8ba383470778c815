"""Tour: homogeneous polynomials, their multilinear forms, polarization,
and orthogonal additivity.

Run with: python demos/03_polynomials.py
"""

import numpy as np

from oapoly import (
    HomogeneousPolynomial,
    LatticeVector,
    PositiveVector,
    is_positively_orthogonally_additive,
    make_diagonal,
    polarize_blackbox,
)
from oapoly.sampling import sparse_polynomial

print("== a diagonal polynomial: P(f) = f_1^2 + f_2^2 ==")
P = make_diagonal([1.0, 1.0], 2)
f = LatticeVector([3.0, 4.0])
print(f"P((3,4)) = {P(f)[0]}")
print(f"its symmetric bilinear form at ((1,2),(3,6)): "
      f"{P.multilinear(LatticeVector([1, 2]), LatticeVector([3, 6]))[0]}")
print(f"diagonal restriction recovers P: form(f, f) = {P.multilinear(f, f)[0]}")

print()
print("== a mixed polynomial: P(f) = (f_1 + f_2)^2 ==")
# tensor coefficients: {0,0}: 1, {0,1}: 1, {1,1}: 1 (the {0,1} entry is the
# value at either ordered arrangement; the evaluator supplies the count)
Q = HomogeneousPolynomial(2, 2, 1, {(0, 0): [1.0], (0, 1): [1.0], (1, 1): [1.0]})
print(f"Q((1,2)) = {Q(LatticeVector([1, 2]))[0]}   (= (1+2)^2)")

print()
print("== polarization recovers the form from black-box evaluations ==")
fs = [LatticeVector([1.0, 2.0]), LatticeVector([3.0, 6.0])]
print(f"P as a black box: polarized value  = {polarize_blackbox(P, fs)[0]}")
print(f"direct multilinear evaluation      = {P.multilinear(*fs)[0]}")
cross = polarize_blackbox(lambda v: [v[0] ** 2], [LatticeVector([1, 0]), LatticeVector([0, 1])])
print(f"cross coefficient of x*y inside x^2 = {cross[0]} (no cross term)")

print()
print("== additivity on disjoint positive inputs ==")
rep = is_positively_orthogonally_additive(P, trials=64, seed=0, exhaustive=True)
print(f"diagonal P: additive over every support split?  {rep.passed}")
rep = is_positively_orthogonally_additive(Q, trials=64, seed=0, exhaustive=True)
print(f"mixed Q:    additive over every support split?  {rep.passed}")
w = rep.counterexample
print(f"  witness: f={w['f']}, g={w['g']}")
print(f"  Q(f+g) = {w['lhs'][0]:.6g}  vs  Q(f)+Q(g) = {w['rhs'][0]:.6g}")
print("a polynomial is additive on disjoint positive pairs exactly when its")
print("coefficient map has no key touching two distinct coordinates")

print()
print("== adversarial generator: dial in the mixed-coefficient share ==")
rng = np.random.default_rng(42)
for mass in (0.0, 0.2, 0.5):
    R = sparse_polynomial(rng, 3, 4, 1, mixed_terms=2, mixed_mass=mass)
    diag, mixed = R.coefficient_masses()
    share = mixed / (diag + mixed)
    print(f"requested mixed share {mass:.1f} -> realized {share:.3f} "
          f"({len(R.terms)} terms)")
