"""Verification reports, residual policy and the tolerance configuration.

All identity checks in this package reduce two computed sides to a single
scalar residual through one shared policy: componentwise, the deviation is
measured relative to the larger side when that magnitude exceeds the switch
point (default 1), and absolutely otherwise. Identities here span many orders
of magnitude under log-uniform sampling, and this policy keeps one tolerance
meaningful across all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Any

import numpy as np

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "residual",
    "VerificationReport",
    "CLAIM_IDS",
]

CLAIM_IDS = ("RMP", "GM", "SCHUR", "ORTHO", "HM", "GEOS", "WGM", "CROSS_TERMS")


@dataclass(frozen=True)
class ToleranceConfig:
    """One record holding every tolerance and the relative/absolute switch.

    identity_rel
        Residual tolerance for polynomial/mean identity checks.
    grid_abs
        Acceptance threshold for the grid route's final residual against the
        closed form at the maximum configured resolution.
    exact_slack
        Allowed residual in exact-rational replication (0: identities must
        hold exactly).
    relative_switch
        Magnitude above which residuals are measured relatively.
    mixed_abs
        Absolute threshold for mixed multilinear values on disjoint inputs.
    falsify_threshold
        Residual above which a sampled input counts as a witness against an
        identity.
    polarization_rel
        Agreement tolerance between black-box polarization and direct
        multilinear evaluation.
    geos_rel
        Tolerance for the weighted-geometric vs repeated-argument geometric
        mean identity.
    ulp_slack
        Slack, in units in the last place, for the order comparisons of the
        harmonic-mean bounds check.
    """

    identity_rel: float = 1e-9
    grid_abs: float = 1e-4
    exact_slack: float = 0.0
    relative_switch: float = 1.0
    mixed_abs: float = 1e-10
    falsify_threshold: float = 1e-6
    polarization_rel: float = 1e-8
    geos_rel: float = 1e-12
    ulp_slack: int = 1

    def __post_init__(self):
        for name in ("identity_rel", "grid_abs", "relative_switch",
                     "mixed_abs", "falsify_threshold", "polarization_rel", "geos_rel"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.exact_slack < 0 or self.ulp_slack < 0:
            raise ValueError("slacks must be nonnegative")


DEFAULT_TOLERANCES = ToleranceConfig()


def residual(lhs, rhs, *, switch: float = DEFAULT_TOLERANCES.relative_switch):
    """Scalar residual between two values (scalars, arrays or exact Fractions).

    Componentwise |lhs - rhs|, divided by max(|lhs|, |rhs|) where that scale
    exceeds ``switch``; the maximum over components is returned. Exact
    Fraction inputs flow through unconverted, so a zero residual is exact.
    """
    L = np.atleast_1d(np.asarray(lhs))
    R = np.atleast_1d(np.asarray(rhs))
    if L.shape != R.shape:
        raise ValueError(f"shape mismatch: {L.shape} vs {R.shape}")
    diff = np.abs(L - R)
    scale = np.maximum(np.abs(L), np.abs(R))
    out = diff[0] - diff[0]  # zero of the right scalar type
    for d, sc in zip(diff.ravel(), scale.ravel()):
        r = d / sc if sc > switch else d
        if r > out:
            out = r
    return out


def _json_safe(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_json_safe(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an identity check or of a falsification search.

    For ``kind="check"`` the invariant is: ``passed`` iff ``max_residual <=
    tolerance`` and no counterexample was recorded. For ``kind="falsify"``
    the meaning of ``passed`` flips to "a witness was found"; the witness is
    stored in ``counterexample`` and a search that exhausts its budget sets
    ``inconclusive`` instead (distinct from a refutation).
    """

    claim_id: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool
    counterexample: dict | None = None
    kind: str = "check"
    inconclusive: bool = False

    def __post_init__(self):
        if self.kind not in ("check", "falsify"):
            raise ValueError(f"unknown report kind {self.kind!r}")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.kind == "check":
            expect = self.max_residual <= self.tolerance and self.counterexample is None
            if self.passed != expect:
                raise ValueError("check report violates its pass/residual invariant")
            if self.inconclusive:
                raise ValueError("only falsification searches can be inconclusive")
        else:
            if self.passed and self.counterexample is None:
                raise ValueError("a successful falsification must carry its witness")
            if self.passed and self.inconclusive:
                raise ValueError("a report cannot both pass and be inconclusive")

    def to_dict(self) -> dict:
        """JSON-ready representation (Fractions become "p/q" strings)."""
        return _json_safe(asdict(self))

    def csv_row(self) -> list:
        return [self.claim_id, self.trials, self.max_residual, self.tolerance, self.passed]


CSV_HEADER = ["claim_id", "trials", "max_residual", "tolerance", "passed"]
