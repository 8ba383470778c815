"""Tour: complete partitions and the weight vectors they induce.

A partition (r_1, ..., r_p) of s is *complete* when every q in {1, ..., s}
is a subset sum of the parts. Dividing by s gives the exact weights of a
completely partitioned weighted geometric mean.

Run with: python demos/02_complete_partitions.py
"""

from oapoly import CompletePartition, enumerate_complete, is_complete, weights

print("== completeness is a subset-sum property ==")
for parts, s in [((2, 1, 1), 4), ((1, 3), 4), ((3, 2, 1), 6), ((2, 2, 2), 6)]:
    verdict = "complete" if is_complete(parts, s) else "NOT complete"
    print(f"{parts} of {s}: {verdict}")
print()
print("(1,3) misses q=2; (2,2,2) cannot even reach q=1.")
print("Every complete partition must contain a part equal to 1.")

print()
print("== enumeration, canonical nonincreasing form ==")
for s in range(1, 9):
    parts = enumerate_complete(s)
    listing = ", ".join(str(p) for p in parts)
    print(f"s={s}: {len(parts):>2}   {listing}")

print()
print("== two distinguished families ==")
s = 6
print(f"all ones -> the plain geometric mean:      {(1,) * s} of {s}")
print(f"one part 2, the rest ones (p = s-1):       {(2,) + (1,) * (s - 2)} of {s}")

print()
print("== exact rational weights ==")
for parts in enumerate_complete(6):
    cp = CompletePartition(parts, 6)
    ws = ", ".join(str(w) for w in weights(cp))
    print(f"{str(cp.parts):<20} weights ({ws})  sum exactly 1")
