"""Tour: the executable identity checks and the falsification search.

Additive polynomials interact with the means through a family of exact
identities; non-additive ones must break each identity somewhere. Both
directions run here.

Run with: python demos/04_identity_checks.py
"""

import numpy as np

from oapoly import (
    CompletePartition,
    HomogeneousPolynomial,
    PositiveVector,
    check_cross_terms,
    check_eta_disjoint,
    check_gm,
    check_hm_identity,
    check_rmp,
    check_schur_bounds,
    check_wgm_identity,
    falsify,
    make_diagonal,
    verify_all,
)
from oapoly.sampling import disjoint_pair, positive_tuple

rng = np.random.default_rng(2024)

print("== forward direction: identities hold for additive polynomials ==")
P = make_diagonal([1.0, -0.5, 2.0], 3)
fs = positive_tuple(rng, 3, 3)
print(f"additivity over root mean powers:   residual "
      f"{check_rmp(P, positive_tuple(rng, 4, 3)).max_residual:.2e}")
print(f"P(geometric mean) = form value:     residual "
      f"{check_gm(P, fs).max_residual:.2e}")
print(f"harmonic substitution identity:     residual "
      f"{check_hm_identity(P, fs).max_residual:.2e}")
cp = CompletePartition((2, 1), 3)
print(f"weighted-geometric identity {cp.parts}: residual "
      f"{check_wgm_identity(P, cp, positive_tuple(rng, 2, 3)).max_residual:.2e}")

print()
print("== the harmonic mean is pinched between min and s*min ==")
rep = check_schur_bounds(positive_tuple(rng, 4, 5))
print(f"bounds hold with at most 1 ulp slack: {rep.passed}")
f, g = disjoint_pair(rng, 5)
rep = check_eta_disjoint([f, g, positive_tuple(rng, 1, 5)[0]])
print(f"disjoint pair forces the harmonic mean to exactly 0: {rep.passed}")

print()
print("== cross terms vanish on disjoint pairs, binomially ==")
f, g = disjoint_pair(rng, 4)
rep = check_cross_terms(make_diagonal([1.0, 2.0, -1.0, 0.5], 3), f, g)
print(f"all mixed form values zero and P(f+g) reassembles: {rep.passed}")

print()
print("== converse direction: falsifying a non-additive polynomial ==")
Q = HomogeneousPolynomial(2, 2, 1, {(0, 0): [1.0], (0, 1): [1.0], (1, 1): [1.0]})
for claim in ("HM", "WGM"):
    rep = falsify(Q, claim, budget=10_000, seed=5)
    w = rep.counterexample
    print(f"{claim}: witness after {rep.trials} samples ({w['source']} family), "
          f"residual {w['residual']:.3g}")
    print(f"     inputs {w['inputs']}")

print()
print("== the full randomized sweep (seeded, deterministic) ==")
for rep in verify_all(s=3, n=4, d=2, trials=200, seed=7):
    status = "pass" if rep.passed else "FAIL"
    print(f"{rep.claim_id:<12} {status}  trials={rep.trials}  "
          f"max residual {rep.max_residual:.2e}  tolerance {rep.tolerance:.0e}")
print()
print("the same sweep is available from the command line:")
print("  oapoly verify all --s 3 --n 4 --d 2 --trials 200 --seed 7 --format human")
