"""Executable checks for the mean/polynomial identities, plus falsification.

Forward directions are identity checks: compute both sides on concrete
inputs, reduce to one residual, compare against a pinned tolerance. Converse
directions are falsification searches: for a polynomial that fails positive
orthogonal additivity, hunt for an input that breaks the identity. A search
that exhausts its budget reports *inconclusive*, never a pass, because the
identities are universally quantified and sampling cannot certify them.

Claim identifiers:

    RMP          additivity of P over root mean powers of positive tuples
    GM           P of the geometric mean equals the multilinear value
    SCHUR        min <= harmonic mean <= s * min, coordinatewise
    ORTHO        harmonic mean vanishes when two arguments are disjoint
    HM           s-fold harmonic-mean substitution identity for the form
    GEOS         weighted geometric mean as a repeated-argument geometric mean
    WGM          P of a completely partitioned weighted geometric mean equals
                 the multilinear value with repeated arguments
    CROSS_TERMS  mixed multilinear values vanish on disjoint positive pairs,
                 and the binomial expansion reassembles P(f+g)
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import sampling
from .lattice import LatticeVector, PositiveVector, inf, is_disjoint
from .means import geometric_mean, harmonic_mean, root_mean_power, weighted_geometric_mean
from .partitions import CompletePartition, enumerate_complete, weights
from .polynomials import (
    HomogeneousPolynomial,
    is_positively_orthogonally_additive,
)
from .reports import DEFAULT_TOLERANCES, ToleranceConfig, VerificationReport, residual

__all__ = [
    "PreconditionError",
    "check_rmp",
    "check_gm",
    "check_schur_bounds",
    "check_eta_disjoint",
    "check_hm_identity",
    "check_geos_lemma",
    "check_wgm_identity",
    "check_cross_terms",
    "falsify",
    "verify_claim",
    "verify_all",
    "FALSIFIABLE_CLAIMS",
]

FALSIFIABLE_CLAIMS = ("RMP", "GM", "HM", "WGM", "CROSS_TERMS")


class PreconditionError(ValueError):
    """An input violates a check's stated precondition."""


def _vector_payload(fs: Sequence[LatticeVector]) -> list:
    return [list(f.entries) for f in fs]


def _identity_report(claim_id, fs, lhs, rhs, tol, cfg, extra=None) -> VerificationReport:
    res = residual(lhs, rhs, switch=cfg.relative_switch)
    passed = res <= tol
    counterexample = None
    if not passed:
        counterexample = {"inputs": _vector_payload(fs), "lhs": lhs, "rhs": rhs}
        if extra:
            counterexample.update(extra)
    return VerificationReport(
        claim_id=claim_id,
        trials=1,
        max_residual=float(res),
        tolerance=tol,
        passed=passed,
        counterexample=counterexample,
    )


# -- forward checks ------------------------------------------------------------


def check_rmp(
    P: HomogeneousPolynomial,
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """P(root mean power of the tuple) against sum_k P(f_k), r >= 2 vectors.

    Holds for every positively orthogonally additive P; callers are expected
    to supply one (a failure on a non-additive P is informative, not an
    error).
    """
    if len(fs) < 2:
        raise PreconditionError("the root-mean-power identity needs at least two vectors")
    lhs = P(root_mean_power(P.degree, fs))
    rhs = sum(P(f) for f in fs)
    return _identity_report("RMP", fs, lhs, rhs, cfg.identity_rel, cfg)


def check_gm(
    P: HomogeneousPolynomial,
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """P(geometric mean of s vectors) against the multilinear value."""
    if len(fs) != P.degree:
        raise PreconditionError(f"the geometric-mean identity needs exactly {P.degree} vectors")
    lhs = P(geometric_mean(fs))
    rhs = P.multilinear(*fs)
    return _identity_report("GM", fs, lhs, rhs, cfg.identity_rel, cfg)


def check_schur_bounds(
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """Coordinatewise min <= harmonic mean <= s * min.

    Float inputs: violations are measured in units in the last place of the
    violated bound and allowed ``cfg.ulp_slack``. Exact inputs: comparisons
    are exact rational order relations with zero slack.
    """
    s = len(fs)
    eta = harmonic_mean(fs)
    low = fs[0]
    for f in fs[1:]:
        low = inf(low, f)
    exact = eta.is_exact
    e, lo = eta.to_array(), low.to_array()
    hi = lo * s
    if exact:
        viol = Fraction(0)
        for lo_i, e_i, hi_i in zip(lo, e, hi):
            viol = max(viol, lo_i - e_i, e_i - hi_i)
        worst = float(viol)
        tol = cfg.exact_slack
        passed = viol <= tol
    else:
        lower_gap = np.maximum(lo - e, 0.0)
        upper_gap = np.maximum(e - hi, 0.0)
        with np.errstate(invalid="ignore"):
            ulps = np.maximum(
                np.where(lower_gap > 0, lower_gap / np.spacing(lo), 0.0),
                np.where(upper_gap > 0, upper_gap / np.spacing(hi), 0.0),
            )
        worst = float(np.max(ulps))
        tol = float(cfg.ulp_slack)
        passed = worst <= tol
    counterexample = None
    if not passed:
        counterexample = {"inputs": _vector_payload(fs), "harmonic": e, "min": lo}
    return VerificationReport(
        claim_id="SCHUR",
        trials=1,
        max_residual=worst,
        tolerance=tol,
        passed=passed,
        counterexample=counterexample,
    )


def check_eta_disjoint(
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """The harmonic mean is exactly 0 when some two arguments are disjoint."""
    if not any(
        is_disjoint(fs[i], fs[j]) for i in range(len(fs)) for j in range(i + 1, len(fs))
    ):
        raise PreconditionError("no disjoint pair among the arguments")
    eta = harmonic_mean(fs)
    arr = eta.to_array()
    worst = float(max(abs(v) for v in arr))
    passed = worst == 0.0
    counterexample = None
    if not passed:
        counterexample = {"inputs": _vector_payload(fs), "harmonic": arr}
    return VerificationReport(
        claim_id="ORTHO",
        trials=1,
        max_residual=worst,
        tolerance=0.0,
        passed=passed,
        counterexample=counterexample,
    )


def _hm_sides(P: HomogeneousPolynomial, fs: Sequence[PositiveVector]):
    s = P.degree
    eta = harmonic_mean(fs)
    form = P.multilinear
    lhs = form(*fs) * s
    rhs = None
    for j in range(s):
        slots = list(fs)
        slots[j] = eta
        term = form(*slots)
        rhs = term if rhs is None else rhs + term
    return lhs, rhs


def check_hm_identity(
    P: HomogeneousPolynomial,
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """s-fold substitution identity for the symmetric form, degree s >= 2:

        s * form(f_1..f_s) = sum_j form(f_1, .., harmonic mean, .., f_s)

    with the harmonic mean of the whole tuple replacing slot j. Characterizes
    orthogonal additivity of P over positive tuples.
    """
    if P.degree < 2:
        raise PreconditionError("the harmonic-mean identity needs degree >= 2")
    if len(fs) != P.degree:
        raise PreconditionError(f"the identity needs exactly {P.degree} vectors")
    lhs, rhs = _hm_sides(P, fs)
    return _identity_report("HM", fs, lhs, rhs, cfg.identity_rel, cfg)


def check_geos_lemma(
    cp: CompletePartition,
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """Weighted geometric mean with weights r_k/s against the plain geometric
    mean with each argument repeated r_k times."""
    if len(fs) != len(cp.parts):
        raise PreconditionError(f"partition has {len(cp.parts)} parts, got {len(fs)} vectors")
    lhs = weighted_geometric_mean(weights(cp), fs)
    repeated = [f for r, f in zip(cp.parts, fs) for _ in range(r)]
    rhs = geometric_mean(repeated)
    return _identity_report(
        "GEOS", fs, lhs.to_array(), rhs.to_array(), cfg.geos_rel, cfg,
        extra={"partition": list(cp.parts)},
    )


def _wgm_sides(P: HomogeneousPolynomial, cp: CompletePartition, fs: Sequence[PositiveVector]):
    lhs = P(weighted_geometric_mean(weights(cp), fs))
    repeated = [f for r, f in zip(cp.parts, fs) for _ in range(r)]
    rhs = P.multilinear(*repeated)
    return lhs, rhs


def check_wgm_identity(
    P: HomogeneousPolynomial,
    cp: CompletePartition,
    fs: Sequence[PositiveVector],
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """P of the completely partitioned weighted geometric mean against the
    multilinear value with argument k repeated r_k times."""
    if cp.target != P.degree:
        raise PreconditionError(
            f"partition target {cp.target} does not match polynomial degree {P.degree}"
        )
    if len(fs) != len(cp.parts):
        raise PreconditionError(f"partition has {len(cp.parts)} parts, got {len(fs)} vectors")
    lhs, rhs = _wgm_sides(P, cp, fs)
    return _identity_report(
        "WGM", fs, lhs, rhs, cfg.identity_rel, cfg, extra={"partition": list(cp.parts)}
    )


def check_cross_terms(
    P: HomogeneousPolynomial,
    f: PositiveVector,
    g: PositiveVector,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """On a disjoint positive pair: every mixed multilinear value
    form(f repeated k, g repeated s-k), 1 <= k <= s-1, vanishes, and the
    binomial expansion sum_k C(s,k) * form(...) reassembles P(f+g).

    The mixed-value bound is absolute (the values should be exactly zero for
    an additive P); the reconstruction is checked with the identity
    tolerance and validates the multilinear evaluation itself.
    """
    if not is_disjoint(f, g):
        raise PreconditionError("cross-term check needs a disjoint pair")
    s = P.degree
    form = P.multilinear
    mixed_worst = 0.0
    mixed_witness = None
    recon = None
    for k in range(0, s + 1):
        slots = [f] * k + [g] * (s - k)
        val = form(*slots)
        term = val * math.comb(s, k)
        recon = term if recon is None else recon + term
        if 1 <= k <= s - 1:
            mag = float(max(abs(v) for v in np.atleast_1d(val)))
            if mag > mixed_worst:
                mixed_worst = mag
                if mag > cfg.mixed_abs:
                    mixed_witness = {"copies_of_f": k, "value": val}
    total = P(f + g)
    recon_res = float(residual(total, recon, switch=cfg.relative_switch))
    passed = mixed_worst <= cfg.mixed_abs and recon_res <= cfg.identity_rel
    counterexample = None
    if not passed:
        counterexample = {
            "inputs": _vector_payload([f, g]),
            "mixed_max": mixed_worst,
            "binomial_residual": recon_res,
        }
        if mixed_witness:
            counterexample.update(mixed_witness)
    return VerificationReport(
        claim_id="CROSS_TERMS",
        trials=1,
        max_residual=mixed_worst,
        tolerance=cfg.mixed_abs,
        passed=passed,
        counterexample=counterexample,
    )


# -- falsification of the converse directions -----------------------------------


def _claim_residual(claim_id, P, fs, cp, cfg):
    if claim_id == "RMP":
        lhs = P(root_mean_power(P.degree, fs))
        rhs = sum(P(f) for f in fs)
    elif claim_id == "GM":
        lhs = P(geometric_mean(fs))
        rhs = P.multilinear(*fs)
    elif claim_id == "HM":
        lhs, rhs = _hm_sides(P, fs)
    elif claim_id == "WGM":
        lhs, rhs = _wgm_sides(P, cp, fs)
    elif claim_id == "CROSS_TERMS":
        f, g = fs
        lhs = P(f + g)
        rhs = P(f) + P(g)
    else:
        raise ValueError(f"claim {claim_id!r} is not falsifiable against a polynomial")
    return float(residual(lhs, rhs, switch=cfg.relative_switch)), lhs, rhs


def _structured_inputs(claim_id, P, cp, i, j, a, b):
    """Disjoint two-coordinate families used by the converse arguments."""
    n = P.domain_dim
    s = P.degree
    f = PositiveVector([a if k == i else 0.0 for k in range(n)])
    g = PositiveVector([b if k == j else 0.0 for k in range(n)])
    if claim_id in ("RMP", "GM", "HM"):
        count = s if claim_id != "RMP" else max(2, s)
        for split in range(1, count):
            yield [f] * split + [g] * (count - split)
    elif claim_id == "WGM":
        p = len(cp.parts)
        for split in range(1, p):
            yield [f] * split + [g] * (p - split)
    elif claim_id == "CROSS_TERMS":
        yield [f, g]


def falsify(
    P: HomogeneousPolynomial,
    claim_id: str,
    budget: int = 10_000,
    seed: int = 0,
    *,
    partition: CompletePartition | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """Search for an input violating ``claim_id`` for a non-additive P.

    Precondition: P must fail positive orthogonal additivity on exhaustive
    support bipartitions (exact structural fact for the sparse
    representation; cross-checked by sampling when the dimension is small).
    A structured family of disjoint two-coordinate inputs, taken from the
    converse proofs, is tried first; random positive tuples follow until the
    budget is spent. ``passed`` means a witness was found; exhausting the
    budget yields an inconclusive report, never a pass.
    """
    if claim_id not in FALSIFIABLE_CLAIMS:
        raise ValueError(f"claim {claim_id!r} is not falsifiable (choose from {FALSIFIABLE_CLAIMS})")
    if not P.has_mixed_terms:
        raise PreconditionError(
            "polynomial is positively orthogonally additive; nothing to falsify"
        )
    if P.domain_dim <= 6:
        structural = is_positively_orthogonally_additive(
            P, trials=2 ** P.domain_dim, seed=seed, exhaustive=True, tolerances=cfg
        )
        if structural.passed:
            raise PreconditionError(
                "polynomial passed the exhaustive additivity check; nothing to falsify"
            )
    cp = partition
    if claim_id == "WGM":
        if cp is None:
            cp = CompletePartition((1,) * P.degree, P.degree)
        if cp.target != P.degree:
            raise PreconditionError("partition target must equal the polynomial degree")

    rng = np.random.default_rng(seed)
    used = 0
    best = 0.0
    witness = None

    def try_inputs(fs, source):
        nonlocal used, best, witness
        used += 1
        res, lhs, rhs = _claim_residual(claim_id, P, fs, cp, cfg)
        if res > best:
            best = res
        if res > cfg.falsify_threshold and witness is None:
            witness = {
                "inputs": _vector_payload(fs),
                "lhs": lhs,
                "rhs": rhs,
                "residual": res,
                "source": source,
            }

    n = P.domain_dim
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if used >= budget or witness is not None:
                break
            a, b = sampling.log_uniform(rng, 2, low=1.0, high=10.0)
            for fs in _structured_inputs(claim_id, P, cp, i, j, float(a), float(b)):
                try_inputs(fs, "structured")
                if used >= budget or witness is not None:
                    break

    while used < budget and witness is None:
        if claim_id == "WGM":
            fs = sampling.positive_tuple(rng, len(cp.parts), n)
        elif claim_id == "CROSS_TERMS":
            fs = list(sampling.disjoint_pair(rng, n))
        elif claim_id == "RMP":
            fs = sampling.positive_tuple(rng, max(2, P.degree), n)
        else:
            fs = sampling.positive_tuple(rng, P.degree, n)
        try_inputs(fs, "random")

    found = witness is not None
    return VerificationReport(
        claim_id=claim_id,
        trials=used,
        max_residual=best,
        tolerance=cfg.falsify_threshold,
        passed=found,
        counterexample=witness,
        kind="falsify",
        inconclusive=not found,
    )


# -- randomized sweep runners ----------------------------------------------------


def _aggregate(claim_id, reports, tolerance) -> VerificationReport:
    worst = max((r.max_residual for r in reports), default=0.0)
    counterexample = next((r.counterexample for r in reports if not r.passed), None)
    passed = all(r.passed for r in reports)
    return VerificationReport(
        claim_id=claim_id,
        trials=len(reports),
        max_residual=worst,
        tolerance=tolerance,
        passed=passed,
        counterexample=counterexample,
    )


def verify_claim(
    claim_id: str,
    *,
    s: int = 3,
    n: int = 4,
    d: int = 1,
    trials: int = 100,
    seed: int = 0,
    partition: CompletePartition | None = None,
    poly: HomogeneousPolynomial | None = None,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> VerificationReport:
    """Run ``trials`` randomized instances of one claim and aggregate.

    Inputs are sampled log-uniformly; polynomials default to fresh random
    diagonal ones per trial (the additive family the forward statements
    quantify over). The aggregate keeps the worst residual and the first
    counterexample. Identical seeds give identical reports.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if s < 2 and claim_id in ("HM", "GM", "WGM", "RMP", "CROSS_TERMS"):
        raise ValueError(f"claim {claim_id} needs degree s >= 2")
    rng = np.random.default_rng(seed)
    partitions_pool = enumerate_complete(s) if claim_id in ("GEOS", "WGM") else None
    reports = []
    for _ in range(trials):
        P = poly
        if P is None and claim_id in ("RMP", "GM", "HM", "WGM", "CROSS_TERMS"):
            P = sampling.diagonal_polynomial(rng, s, n, d)
        if claim_id == "RMP":
            r = int(rng.integers(2, 5))
            rep = check_rmp(P, sampling.positive_tuple(rng, r, n), cfg)
        elif claim_id == "GM":
            rep = check_gm(P, sampling.positive_tuple(rng, s, n), cfg)
        elif claim_id == "SCHUR":
            arity = int(rng.integers(1, s + 1))
            rep = check_schur_bounds(sampling.positive_tuple(rng, arity, n), cfg)
        elif claim_id == "ORTHO":
            arity = int(rng.integers(2, max(3, s + 1)))
            rep = check_eta_disjoint(sampling.tuple_with_disjoint_pair(rng, arity, n), cfg)
        elif claim_id == "HM":
            rep = check_hm_identity(P, sampling.positive_tuple(rng, s, n), cfg)
        elif claim_id == "GEOS":
            cp = partition or CompletePartition(
                partitions_pool[int(rng.integers(0, len(partitions_pool)))], s
            )
            rep = check_geos_lemma(cp, sampling.positive_tuple(rng, len(cp.parts), n), cfg)
        elif claim_id == "WGM":
            cp = partition or CompletePartition(
                partitions_pool[int(rng.integers(0, len(partitions_pool)))], s
            )
            rep = check_wgm_identity(
                P, cp, sampling.positive_tuple(rng, len(cp.parts), n), cfg
            )
        elif claim_id == "CROSS_TERMS":
            f, g = sampling.disjoint_pair(rng, n)
            rep = check_cross_terms(P, f, g, cfg)
        else:
            raise ValueError(f"unknown claim {claim_id!r}")
        reports.append(rep)
    return _aggregate(claim_id, reports, reports[0].tolerance)


def verify_all(
    *,
    s: int = 3,
    n: int = 4,
    d: int = 1,
    trials: int = 100,
    seed: int = 0,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> list[VerificationReport]:
    """Run every claim with a deterministic per-claim seed derived from ``seed``."""
    out = []
    for offset, claim_id in enumerate(
        ("RMP", "GM", "SCHUR", "ORTHO", "HM", "GEOS", "WGM", "CROSS_TERMS")
    ):
        out.append(
            verify_claim(
                claim_id, s=s, n=n, d=d, trials=trials, seed=seed + offset, cfg=cfg
            )
        )
    return out
