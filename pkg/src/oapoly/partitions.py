"""Complete partitions of an integer and the weight vectors they induce.

A tuple of positive integers ``(r_1, ..., r_p)`` is a complete partition of
``s`` when the parts sum to ``s`` and every ``q`` in ``{1, ..., s}`` is a
subset sum of the parts. Dividing the parts by ``s`` yields the exact
rational weight vector of a completely partitioned weighted geometric mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DEFAULT_ENUMERATION_BOUND",
    "CompletePartition",
    "WeightVector",
    "is_complete",
    "enumerate_complete",
    "weights",
]

DEFAULT_ENUMERATION_BOUND = 30


def _validate_parts(parts: Sequence[int], s: int) -> tuple[int, ...]:
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"target must be a positive integer, got {s!r}")
    parts = tuple(parts)
    if not parts:
        raise ValueError("a partition needs at least one part")
    for r in parts:
        if not isinstance(r, int) or r < 1:
            raise ValueError(f"parts must be positive integers, got {r!r}")
    return parts


def is_complete(parts: Sequence[int], s: int) -> bool:
    """Check the three defining conditions of a complete partition of ``s``.

    Parts may come in any order. Subset-sum representability of every
    ``q <= s`` is decided by dynamic programming over achievable sums,
    encoded as a bitmask (bit q set = q achievable), so the check is exact
    and costs O(p*s) bit operations.
    """
    parts = _validate_parts(parts, s)
    if sum(parts) != s:
        return False
    achievable = 1  # bit 0: the empty subset
    for r in parts:
        achievable |= achievable << r
    wanted = (1 << (s + 1)) - 2  # bits 1..s
    return achievable & wanted == wanted


def enumerate_complete(s: int, *, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[tuple[int, ...]]:
    """All complete partitions of ``s`` as nonincreasing tuples.

    Output is deterministic: ascending lexicographic order on the tuples.
    Generation walks nondecreasing part sequences and prunes with the
    prefix-sum criterion (first part 1, each next part at most one more than
    the sum so far), which characterizes completeness; `is_complete` provides
    an independent subset-sum route that the tests compare against.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError(f"target must be a positive integer, got {s!r}")
    if s > bound:
        raise ValueError(f"enumeration bound exceeded: s={s} > {bound}")

    found: list[tuple[int, ...]] = []

    def extend(prefix: list[int], total: int) -> None:
        if total == s:
            found.append(tuple(reversed(prefix)))
            return
        low = prefix[-1]
        high = min(s - total, total + 1)
        for nxt in range(low, high + 1):
            prefix.append(nxt)
            extend(prefix, total + nxt)
            prefix.pop()

    extend([1], 1)
    found.sort()
    return found


@dataclass(frozen=True)
class WeightVector:
    """Exact rational weights ``t_k`` with ``0 < t_k <= 1`` summing to 1.

    Weights of a completely partitioned weighted geometric mean are always
    of the form ``r_k / s``; the degenerate single-weight vector ``(1,)``
    (from the one-part partition of s = 1) is admitted.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if not ws:
            raise ValueError("a weight vector needs at least one weight")
        for w in ws:
            if not (0 < w <= 1):
                raise ValueError(f"weights must lie in (0, 1], got {w}")
        if sum(ws) != 1:
            raise ValueError(f"weights must sum to exactly 1, got {sum(ws)}")
        object.__setattr__(self, "weights", ws)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def as_floats(self) -> list[float]:
        return [float(w) for w in self.weights]


@dataclass(frozen=True)
class CompletePartition:
    """A validated complete partition, canonicalized to nonincreasing order."""

    parts: tuple[int, ...]
    target: int

    def __post_init__(self):
        parts = _validate_parts(self.parts, self.target)
        if not is_complete(parts, self.target):
            raise ValueError(
                f"{parts} is not a complete partition of {self.target}"
            )
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def weight_vector(self) -> WeightVector:
        return weights(self)


def weights(cp: CompletePartition) -> WeightVector:
    """The exact weight vector (r_1/s, ..., r_p/s) of a complete partition."""
    return WeightVector(tuple(Fraction(r, cp.target) for r in cp.parts))
