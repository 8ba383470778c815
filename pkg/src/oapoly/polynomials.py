"""Homogeneous polynomials on R^n with their symmetric multilinear forms.

A degree-s polynomial P: R^n -> R^d is stored as a sparse map from index
multisets (sorted s-tuples over 0..n-1) to codomain coefficient vectors. The
stored coefficient is the value of the symmetric tensor at any ordered
arrangement of the key, which pins the one convention everything else relies
on:

    P(f)          = sum_key coeff(key) * multinomial(key) * prod_{i in key} f_i
    P_sym(f_1..f_s) = sum_key coeff(key) * sum over distinct arrangements
                      (i_1..i_s) of the key of f_1[i_1] * ... * f_s[i_s]

so the multilinear form restricted to the diagonal reproduces P exactly, term
by term. Diagonal polynomials (only pure keys (i, ..., i)) are precisely the
positively orthogonally additive ones in this representation.

Coefficients may be floats or exact Fractions; evaluation on exact vectors
with exact coefficients stays exact.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Callable, Mapping, Sequence

import numpy as np

from .lattice import DimensionMismatchError, LatticeVector, PositiveVector
from .reports import DEFAULT_TOLERANCES, ToleranceConfig, VerificationReport, residual

__all__ = [
    "HomogeneousPolynomial",
    "SymmetricMultilinearView",
    "make_diagonal",
    "polarize_blackbox",
    "is_positively_orthogonally_additive",
    "polynomial_to_json",
    "polynomial_from_json",
]

POLARIZATION_DEGREE_CAP = 8


def _multinomial(key: tuple[int, ...]) -> int:
    """Number of ordered arrangements of the index multiset ``key``."""
    out = factorial(len(key))
    for c in Counter(key).values():
        out //= factorial(c)
    return out


@lru_cache(maxsize=4096)
def _arrangements(key: tuple[int, ...]) -> np.ndarray:
    """All distinct ordered arrangements of ``key``, shape (multinomial, s)."""
    arr = np.array(sorted(set(itertools.permutations(key))), dtype=np.intp)
    arr.flags.writeable = False
    return arr


def _coerce_coeff(value, d: int) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(value))
    if any(isinstance(v, Fraction) for v in arr.ravel().tolist()):
        arr = np.array([Fraction(v) if not isinstance(v, Fraction) else v for v in arr], dtype=object)
    else:
        arr = arr.astype(float)
    if arr.shape != (d,):
        raise ValueError(f"coefficient must have shape ({d},), got {arr.shape}")
    return arr


class HomogeneousPolynomial:
    """Degree-s homogeneous polynomial R^n -> R^d with sparse coefficients."""

    __slots__ = ("degree", "domain_dim", "codomain_dim", "terms")

    def __init__(
        self,
        degree: int,
        domain_dim: int,
        codomain_dim: int,
        terms: Mapping[tuple[int, ...], Sequence],
    ):
        if degree < 1 or domain_dim < 1 or codomain_dim < 1:
            raise ValueError("degree and dimensions must be >= 1")
        self.degree = degree
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim
        canon: dict[tuple[int, ...], np.ndarray] = {}
        for key, coeff in terms.items():
            key = tuple(sorted(int(i) for i in key))
            if len(key) != degree:
                raise ValueError(f"key {key} does not have degree {degree}")
            if key and (key[0] < 0 or key[-1] >= domain_dim):
                raise ValueError(f"key {key} has indices outside 0..{domain_dim - 1}")
            arr = _coerce_coeff(coeff, codomain_dim)
            if key in canon:
                arr = canon[key] + arr
            canon[key] = arr
        self.terms = {k: v for k, v in sorted(canon.items()) if np.any(v != 0)}

    @classmethod
    def diagonal(cls, coeffs: Sequence, degree: int) -> "HomogeneousPolynomial":
        """P(f) = sum_i c_i f_i^degree for codomain vectors c_i (scalars mean d=1)."""
        rows = [np.atleast_1d(np.asarray(c)) for c in coeffs]
        if not rows:
            raise ValueError("diagonal construction needs at least one coefficient")
        d = rows[0].shape[0]
        n = len(rows)
        terms = {(i,) * degree: rows[i] for i in range(n)}
        return cls(degree, n, d, terms)

    # -- evaluation ------------------------------------------------------------

    def _check_vector(self, f: LatticeVector) -> None:
        if not isinstance(f, LatticeVector):
            raise TypeError(f"expected a LatticeVector, got {type(f).__name__}")
        if f.dim != self.domain_dim:
            raise DimensionMismatchError(
                f"vector dimension {f.dim} does not match domain {self.domain_dim}"
            )

    def _zero(self, exact: bool) -> np.ndarray:
        if exact or self.is_exact:
            return np.array([Fraction(0)] * self.codomain_dim, dtype=object)
        return np.zeros(self.codomain_dim)

    @property
    def is_exact(self) -> bool:
        return any(c.dtype == object for c in self.terms.values())

    def __call__(self, f: LatticeVector) -> np.ndarray:
        """Evaluate P(f), returning a codomain vector of shape (d,)."""
        self._check_vector(f)
        x = f.to_array()
        out = self._zero(f.is_exact)
        for key, coeff in self.terms.items():
            monomial = np.prod(x[np.array(key, dtype=np.intp)])
            out = out + coeff * (_multinomial(key) * monomial)
        return out

    @property
    def multilinear(self) -> "SymmetricMultilinearView":
        """The unique symmetric s-linear form with P on its diagonal."""
        return SymmetricMultilinearView(self)

    # -- structure -------------------------------------------------------------

    @property
    def has_mixed_terms(self) -> bool:
        """True iff some key touching two distinct coordinates has a nonzero
        coefficient, which is exactly failure of positive orthogonal additivity."""
        return any(len(set(key)) > 1 for key in self.terms)

    def coefficient(self, key: Sequence[int]) -> np.ndarray:
        key = tuple(sorted(int(i) for i in key))
        if key in self.terms:
            return self.terms[key].copy()
        return self._zero(False)

    def coefficient_masses(self) -> tuple[float, float]:
        """(diagonal, mixed) l1 masses of the coefficient map."""
        diag = mixed = 0.0
        for key, coeff in self.terms.items():
            mass = float(sum(abs(c) for c in coeff))
            if len(set(key)) > 1:
                mixed += mass
            else:
                diag += mass
        return diag, mixed

    def __repr__(self) -> str:
        return (
            f"HomogeneousPolynomial(degree={self.degree}, domain_dim={self.domain_dim}, "
            f"codomain_dim={self.codomain_dim}, terms={len(self.terms)})"
        )


@dataclass(frozen=True)
class SymmetricMultilinearView:
    """Callable view of a polynomial's symmetric multilinear form."""

    polynomial: HomogeneousPolynomial

    def __call__(self, *fs: LatticeVector) -> np.ndarray:
        P = self.polynomial
        s = P.degree
        if len(fs) != s:
            raise ValueError(f"the form takes exactly {s} vectors, got {len(fs)}")
        for f in fs:
            P._check_vector(f)
        exact = all(f.is_exact for f in fs)
        X = np.stack([f.to_array() for f in fs])  # (s, n)
        rows = np.arange(s)[None, :]
        out = P._zero(exact)
        for key, coeff in P.terms.items():
            arr = _arrangements(key)            # (A, s)
            picked = X[rows, arr]               # picked[a, k] = fs[k][arr[a, k]]
            out = out + coeff * picked.prod(axis=1).sum()
        return out


def make_diagonal(coeffs: Sequence, degree: int) -> HomogeneousPolynomial:
    """Module-level alias for `HomogeneousPolynomial.diagonal`."""
    return HomogeneousPolynomial.diagonal(coeffs, degree)


def polarize_blackbox(
    evaluator: Callable[[LatticeVector], Sequence],
    fs: Sequence[LatticeVector],
    *,
    check_homogeneity: bool = True,
    homogeneity_tol: float = 1e-6,
) -> np.ndarray:
    """Recover the symmetric multilinear value from black-box evaluations.

    Uses the signed-evaluation identity

        form(f_1..f_s) = (1 / (2^s s!)) * sum over signs e in {-1,1}^s of
                         (prod e_k) * P(sum_k e_k f_k)

    with s = len(fs). The degree is capped at 8: the 2^s term count and the
    s! division make the alternating sum increasingly ill-conditioned.

    When ``check_homogeneity`` is set, the evaluator is first probed at two
    scalings of the summed arguments; a mismatch with degree-s scaling raises
    ValueError rather than returning a silently wrong value.
    """
    s = len(fs)
    if s < 1:
        raise ValueError("polarization needs at least one vector")
    if s > POLARIZATION_DEGREE_CAP:
        raise ValueError(f"degree {s} exceeds the polarization cap {POLARIZATION_DEGREE_CAP}")
    probe = reduce(lambda a, b: a + b, fs)
    if check_homogeneity:
        base = np.atleast_1d(np.asarray(evaluator(probe)))
        for lam in (2, Fraction(1, 2)) if probe.is_exact else (2.0, 0.5):
            scaled = np.atleast_1d(np.asarray(evaluator(probe * lam)))
            expect = base * lam**s
            if float(residual(scaled, expect)) > homogeneity_tol:
                raise ValueError(
                    f"evaluator failed the degree-{s} homogeneity spot check at scale {lam}"
                )
    total = None
    for signs in itertools.product((1, -1), repeat=s):
        arg = reduce(lambda a, b: a + b, (f * sig for f, sig in zip(fs, signs)))
        parity = 1 if signs.count(-1) % 2 == 0 else -1
        val = np.atleast_1d(np.asarray(evaluator(arg))) * parity
        total = val if total is None else total + val
    denom = (2**s) * factorial(s)
    if total.dtype == object:
        return total * Fraction(1, denom)
    return total / denom


def is_positively_orthogonally_additive(
    P: HomogeneousPolynomial,
    trials: int = 200,
    seed: int = 0,
    *,
    exhaustive: bool = False,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """Randomized additivity check of P on disjoint positive pairs.

    Samples support bipartitions (all 2^n of them when ``exhaustive``,
    uniformly random otherwise), fills the two sides with log-uniform
    positive entries, and compares P(f+g) against P(f) + P(g). Failure is a
    report outcome carrying the first counterexample, not an exception.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = P.domain_dim
    rng = np.random.default_rng(seed)
    if exhaustive:
        if n > 16:
            raise ValueError("exhaustive bipartitions are limited to dimension 16")
        masks = [np.array([(m >> i) & 1 for i in range(n)], dtype=bool) for m in range(2**n)]
        draws = max(1, -(-trials // len(masks)))
        plan = [(mask, k) for mask in masks for k in range(draws)]
    else:
        plan = [(rng.integers(0, 2, n).astype(bool), 0) for _ in range(trials)]

    worst = 0.0
    counterexample = None
    for mask, _ in plan:
        entries = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), n))
        entries_g = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), n))
        f = PositiveVector(np.where(mask, entries, 0.0))
        g = PositiveVector(np.where(mask, 0.0, entries_g))
        lhs = P(f + g)
        rhs = P(f) + P(g)
        res = float(residual(lhs, rhs, switch=tolerances.relative_switch))
        worst = max(worst, res)
        if res > tolerances.identity_rel and counterexample is None:
            counterexample = {
                "f": list(f.entries),
                "g": list(g.entries),
                "lhs": lhs,
                "rhs": rhs,
                "residual": res,
            }
    return VerificationReport(
        claim_id="POA",
        trials=len(plan),
        max_residual=worst,
        tolerance=tolerances.identity_rel,
        passed=worst <= tolerances.identity_rel and counterexample is None,
        counterexample=counterexample,
    )


# -- JSON wire format ----------------------------------------------------------


def polynomial_to_json(P: HomogeneousPolynomial) -> dict:
    """{"s", "n", "d", "terms": [{"key": [...], "coeff": [...]}]} with keys 0-based."""
    def scalar(v):
        return str(v) if isinstance(v, Fraction) else float(v)

    return {
        "s": P.degree,
        "n": P.domain_dim,
        "d": P.codomain_dim,
        "terms": [
            {"key": list(key), "coeff": [scalar(c) for c in coeff]}
            for key, coeff in P.terms.items()
        ],
    }


def polynomial_from_json(payload: dict) -> HomogeneousPolynomial:
    """Parse the term-map format, or the shortcut {"s": ..., "diagonal": [[...], ...]}."""
    if not isinstance(payload, dict):
        raise ValueError("polynomial payload must be a JSON object")
    try:
        s = int(payload["s"])
    except KeyError as exc:
        raise ValueError("polynomial payload is missing field 's'") from exc
    if "diagonal" in payload:
        rows = payload["diagonal"]
        if not isinstance(rows, list) or not rows:
            raise ValueError("field 'diagonal' must be a nonempty array of coefficient rows")
        return HomogeneousPolynomial.diagonal([_parse_row(r) for r in rows], s)
    try:
        n, d, raw_terms = int(payload["n"]), int(payload["d"]), payload["terms"]
    except KeyError as exc:
        raise ValueError(f"polynomial payload is missing field {exc.args[0]!r}") from exc
    terms = {}
    for item in raw_terms:
        try:
            key, coeff = item["key"], item["coeff"]
        except (TypeError, KeyError):
            raise ValueError("each term needs fields 'key' and 'coeff'") from None
        terms[tuple(int(i) for i in key)] = _parse_row(coeff)
    return HomogeneousPolynomial(s, n, d, terms)


def _parse_row(row) -> np.ndarray:
    values = row if isinstance(row, list) else [row]
    if any(isinstance(v, str) for v in values):
        return np.array([Fraction(v) for v in values], dtype=object)
    return np.array([float(v) for v in values])
