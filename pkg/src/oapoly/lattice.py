"""Coordinatewise vector lattice on R^n with float and exact-rational scalars.

Everything in this package lives on R^n ordered coordinatewise: suprema,
infima and absolute values act entry by entry, and a continuous positively
homogeneous function of k real arguments extends to positive vectors by
pointwise application (on R^n the point evaluations are exactly the lattice
homomorphisms, so nothing more abstract is needed).

Two scalar modes are supported:

* float64 entries (the default), used for all randomized checking;
* exact ``fractions.Fraction`` entries, used for small golden-value
  cross-checks where identities must hold with zero residual.

Vectors are immutable after construction and all operations are pure, so
values can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "LatticeVector",
    "PositiveVector",
    "sup",
    "inf",
    "is_disjoint",
    "apply_homogeneous",
    "vector_to_json",
    "vector_from_json",
]


class DimensionMismatchError(ValueError):
    """Two vectors of different lengths were combined."""


def _coerce(entries: Iterable, exact: bool) -> np.ndarray:
    if exact:
        data = np.array(
            [e if isinstance(e, Fraction) else Fraction(e) for e in entries],
            dtype=object,
        )
    else:
        data = np.array([float(e) for e in entries], dtype=float)
    if data.ndim != 1 or data.size == 0:
        raise ValueError("a lattice vector needs a nonempty, one-dimensional entry list")
    if not exact:
        if not np.all(np.isfinite(data)):
            raise ValueError("lattice vector entries must be finite")
        data = data + 0.0  # normalizes -0.0 so reciprocals cannot produce -inf
    data.flags.writeable = False
    return data


class LatticeVector:
    """Immutable element of the coordinatewise lattice R^n."""

    __slots__ = ("_data", "_exact")

    def __init__(self, entries: Iterable, *, exact: bool = False):
        self._exact = bool(exact)
        self._data = _coerce(entries, self._exact)

    @classmethod
    def exact(cls, entries: Iterable):
        """Build a vector with exact rational entries.

        Accepts ints, ``Fraction`` instances and strings like ``"3/4"``.
        """
        return cls(entries, exact=True)

    @classmethod
    def _from_data(cls, data: np.ndarray, exact: bool):
        vec = object.__new__(cls)
        if not data.flags.writeable:
            data = data.copy()
        data.flags.writeable = False
        vec._data = data
        vec._exact = exact
        if isinstance(vec, PositiveVector):
            vec._check_nonnegative()
        return vec

    # -- basic introspection -------------------------------------------------

    @property
    def dim(self) -> int:
        return self._data.size

    @property
    def is_exact(self) -> bool:
        return self._exact

    @property
    def entries(self) -> tuple:
        """Entries as plain Python scalars (floats, or Fractions in exact mode)."""
        if self._exact:
            return tuple(self._data)
        return tuple(float(x) for x in self._data)

    def to_array(self) -> np.ndarray:
        """Entries as a fresh numpy array (float64, or object for exact mode)."""
        return self._data.copy()

    def __len__(self) -> int:
        return self._data.size

    def __getitem__(self, i: int):
        return self._data[i]

    def __iter__(self):
        return iter(self._data)

    def __repr__(self) -> str:
        tag = "exact " if self._exact else ""
        return f"{type(self).__name__}({tag}{list(self._data)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeVector):
            return NotImplemented
        return (
            self._exact == other._exact
            and self.dim == other.dim
            and bool(np.all(self._data == other._data))
        )

    def __hash__(self) -> int:
        return hash((self._exact, self.entries))

    # -- vector space structure ----------------------------------------------

    def _binary_data(self, other: "LatticeVector") -> None:
        if not isinstance(other, LatticeVector):
            raise TypeError(f"expected a LatticeVector, got {type(other).__name__}")
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )
        if self._exact != other._exact:
            raise ValueError("cannot mix exact and float vectors")

    def _check_scalar(self, scalar) -> None:
        if self._exact and isinstance(scalar, float):
            raise ValueError("scaling an exact vector needs an int or Fraction scalar")

    def __add__(self, other):
        self._binary_data(other)
        cls = (
            PositiveVector
            if isinstance(self, PositiveVector) and isinstance(other, PositiveVector)
            else LatticeVector
        )
        return cls._from_data(self._data + other._data, self._exact)

    def __sub__(self, other):
        self._binary_data(other)
        return LatticeVector._from_data(self._data - other._data, self._exact)

    def __neg__(self):
        return LatticeVector._from_data(-self._data, self._exact)

    def __mul__(self, scalar):
        self._check_scalar(scalar)
        nonneg = scalar >= 0 and isinstance(self, PositiveVector)
        cls = PositiveVector if nonneg else LatticeVector
        return cls._from_data(self._data * scalar, self._exact)

    __rmul__ = __mul__

    def __abs__(self):
        return PositiveVector._from_data(np.abs(self._data), self._exact)


class PositiveVector(LatticeVector):
    """Lattice vector with all entries >= 0 (an element of the positive cone)."""

    __slots__ = ()

    def __init__(self, entries: Iterable, *, exact: bool = False):
        super().__init__(entries, exact=exact)
        self._check_nonnegative()

    def _check_nonnegative(self) -> None:
        if not np.all(self._data >= 0):
            raise ValueError("positive vector entries must be >= 0")


def _pair_class(f: LatticeVector, g: LatticeVector) -> type:
    if isinstance(f, PositiveVector) and isinstance(g, PositiveVector):
        return PositiveVector
    return LatticeVector


def sup(f: LatticeVector, g: LatticeVector) -> LatticeVector:
    """Coordinatewise maximum (the lattice join)."""
    f._binary_data(g)
    return _pair_class(f, g)._from_data(np.maximum(f._data, g._data), f._exact)


def inf(f: LatticeVector, g: LatticeVector) -> LatticeVector:
    """Coordinatewise minimum (the lattice meet)."""
    f._binary_data(g)
    return _pair_class(f, g)._from_data(np.minimum(f._data, g._data), f._exact)


def is_disjoint(f: LatticeVector, g: LatticeVector) -> bool:
    """True iff |f| and |g| have no common support, i.e. min(|f_i|, |g_i|) == 0
    exactly for every coordinate.

    The test is deliberately exact rather than tolerance based; callers that
    need disjoint inputs must construct them with exactly-zero entries.
    """
    f._binary_data(g)
    return bool(np.all(np.minimum(np.abs(f._data), np.abs(g._data)) == 0))


def apply_homogeneous(phi: Callable, fs: Sequence[PositiveVector]) -> PositiveVector:
    """Apply a continuous positively homogeneous scalar function coordinatewise.

    ``phi`` takes k real arguments and must map nonnegative inputs to a
    nonnegative value; ``fs`` supplies k positive vectors of equal dimension.
    On R^n this pointwise evaluation is the whole functional calculus, and it
    commutes with positive scaling exactly because ``phi`` does.
    """
    if not fs:
        raise ValueError("apply_homogeneous needs at least one vector")
    first = fs[0]
    for other in fs[1:]:
        first._binary_data(other)
    values = [phi(*(f._data[i] for f in fs)) for i in range(first.dim)]
    exact = first._exact and all(isinstance(v, (Fraction, int)) for v in values)
    return PositiveVector(values, exact=exact)


# -- JSON wire format ---------------------------------------------------------


def vector_to_json(f: LatticeVector) -> list:
    """A vector as a JSON-ready list: numbers, or "p/q" strings in exact mode."""
    if f.is_exact:
        return [str(e) for e in f.entries]
    return [float(e) for e in f.entries]


def vector_from_json(payload: Sequence, *, positive: bool = False) -> LatticeVector:
    """Parse a vector from its JSON list form.

    Any string entry (e.g. ``"3/4"``) switches the whole vector to exact mode.
    """
    if not isinstance(payload, (list, tuple)) or len(payload) == 0:
        raise ValueError("vector payload must be a nonempty JSON array")
    exact = any(isinstance(e, str) for e in payload)
    cls = PositiveVector if positive else LatticeVector
    if exact:
        return cls([Fraction(e) for e in payload], exact=True)
    return cls([float(e) for e in payload])
