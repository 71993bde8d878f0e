"""Polygon-inequality residuals, the delta indicator, and randomized audits.

For a partition {P_1, ..., P_k} and a measure E, the residual at block j is
r_j = sum_{l != j} E(P_l)^alpha - E(P_j)^alpha; the inequality holds when
every residual clears -VIOLATION_TOL.  Audits draw deterministic per-trial
states (seed, trial index) so any trial can be replayed in isolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gallery
from .measures import MeasureKind, measure_value
from .tensor import DimensionProfile, InputError, Ket, Partition, haar_random_ket

# A residual below -VIOLATION_TOL counts as a violation; measure values
# compound several decompositions, so this sits well above the 1e-12
# linear-algebra tolerances.
VIOLATION_TOL = 1e-9

# Measure values at or below this are treated as exact zeros before powering
# (0^alpha := 0): fractional powers would otherwise blow 1e-16 roundoff
# residue up to order one.
MEASURE_FLOOR = 1e-12

SAMPLERS = ("haar", "purification", "gw")


def _powered(values: np.ndarray, alpha: float) -> np.ndarray:
    out = np.zeros(len(values))
    big = values > MEASURE_FLOOR
    out[big] = values[big] ** alpha
    return out


def _check_alpha(alpha: float, allow_unproven: bool) -> float:
    alpha = float(alpha)
    if alpha <= 0.0:
        raise InputError(f"alpha must be positive, got {alpha}")
    if alpha > 1.0 and not allow_unproven:
        raise InputError(
            f"alpha = {alpha} is outside the proven range (0, 1]; "
            "pass allow_unproven=True to evaluate it anyway"
        )
    return alpha


@dataclass(frozen=True)
class EpiReport:
    """One polygon-inequality evaluation: values, residuals, verdict."""

    partition: Partition
    measure: MeasureKind
    alpha: float
    values: tuple[float, ...]
    residuals: tuple[float, ...]
    min_residual: float
    holds: bool


def one_to_rest_values(psi: Ket, partition: Partition, measure: MeasureKind) -> np.ndarray:
    """Measure each block against its complement, in block order."""
    partition.validate_for(psi.profile)
    if partition.k < 2:
        raise InputError("one-to-rest values need at least 2 blocks")
    return np.array([measure_value(psi, block, measure) for block in partition.blocks])


def epi_residuals(values, alpha: float, *, allow_unproven: bool = False) -> np.ndarray:
    """r_j = sum_{l != j} v_l^alpha - v_j^alpha for each block j."""
    alpha = _check_alpha(alpha, allow_unproven)
    values = np.asarray(values, dtype=float)
    if np.any(values < 0):
        raise InputError("measure values must be non-negative")
    powered = _powered(values, alpha)
    return powered.sum() - 2.0 * powered


def epi_report(
    psi: Ket,
    partition: Partition,
    measure: MeasureKind,
    alpha: float,
    *,
    tolerance: float = VIOLATION_TOL,
    allow_unproven: bool = False,
) -> EpiReport:
    """Evaluate the polygon inequality for one state, partition and exponent."""
    values = one_to_rest_values(psi, partition, measure)
    residuals = epi_residuals(values, alpha, allow_unproven=allow_unproven)
    min_residual = float(residuals.min())
    return EpiReport(
        partition=partition,
        measure=measure,
        alpha=float(alpha),
        values=tuple(float(v) for v in values),
        residuals=tuple(float(r) for r in residuals),
        min_residual=min_residual,
        holds=min_residual >= -tolerance,
    )


def indicator_delta(psi: Ket, alpha: float) -> tuple[float, np.ndarray]:
    """Geometric-measure indicator: delta = min_i tau_i over the singleton cuts.

    tau_i = sum_{j != i} G^alpha(A_j | rest) - G^alpha(A_i | rest); for three
    qubits delta vanishes exactly on the biseparable states.  Needs
    alpha in (0, 1), open at both ends.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise InputError(f"indicator needs alpha in (0, 1), got {alpha}")
    partition = Partition.singletons(psi.profile.n)
    values = one_to_rest_values(psi, partition, MeasureKind("gem"))
    taus = epi_residuals(values, alpha)
    return float(taus.min()), taus


def power_inequality_holds(a: float, b: float, c: float, alpha: float) -> bool:
    """a^alpha + b^alpha >= c^alpha for a, b, c in (0, 1] with a + b >= c.

    Exposed so the inequality can be exercised directly; a 1e-12 additive
    guard absorbs roundoff at the equality boundary.
    """
    for name, v in (("a", a), ("b", b), ("c", c)):
        if not 0.0 < v <= 1.0:
            raise InputError(f"{name} must lie in (0, 1], got {v}")
    if a + b < c:
        raise InputError(f"need a + b >= c, got {a} + {b} < {c}")
    alpha = _check_alpha(alpha, allow_unproven=False)
    return bool(a**alpha + b**alpha + 1e-12 >= c**alpha)


def alpha_sweep(
    values,
    alpha_grid: Sequence[float],
    *,
    block: int | None = None,
    allow_unproven: bool = False,
) -> list[tuple[float, float]]:
    """Residual at one designated block across an exponent grid.

    `block` is the 0-based position in `values`; by default the largest value,
    which is the binding side of the inequality.
    """
    values = np.asarray(values, dtype=float)
    grid = [float(a) for a in alpha_grid]
    if not grid:
        raise InputError("alpha grid must not be empty")
    if np.any(values < 0):
        raise InputError("measure values must be non-negative")
    if block is None:
        block = int(np.argmax(values))
    if not 0 <= block < len(values):
        raise InputError(f"designated block {block} out of range")
    points = []
    for alpha in grid:
        residuals = epi_residuals(values, alpha, allow_unproven=allow_unproven)
        points.append((alpha, float(residuals[block])))
    return points


@dataclass(frozen=True)
class AuditSummary:
    """Outcome of a randomized polygon audit; worst trial replayable by seed."""

    profile: DimensionProfile
    partition: Partition
    measure: MeasureKind
    sampler: str
    alpha: float
    trials: int
    seed: int
    violations: int
    worst_residual: float
    worst_trial: int

    @property
    def worst_seed(self) -> tuple[int, int]:
        return (self.seed, self.worst_trial)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Deterministic per-trial generator, independent of execution order."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(trial)]))


def _purification_dims(profile: DimensionProfile) -> tuple[int, int]:
    dims = profile.dims
    if len(dims) == 2:
        return dims
    if len(dims) == 3 and dims[2] == dims[0] * dims[1]:
        return dims[0], dims[1]
    raise InputError(
        "purification sampler needs marginal dims [da, db] or a profile "
        f"[da, db, da*db], got {dims}"
    )


def sample_state(profile: DimensionProfile, sampler: str, seed: int, trial: int) -> Ket:
    """Draw the trial state for an audit; deterministic in (seed, trial)."""
    if sampler == "haar":
        return haar_random_ket(profile, np.random.SeedSequence([int(seed), int(trial)]))
    rng = trial_rng(seed, trial)
    if sampler == "purification":
        da, db = _purification_dims(profile)
        spec = gallery.ProductPurificationSpec(rng.dirichlet(np.ones(da)), rng.dirichlet(np.ones(db)))
        return gallery.product_purification(spec)
    if sampler == "gw":
        dims = profile.dims
        if len(set(dims)) != 1:
            raise InputError(f"gw sampler needs equal local dimensions, got {dims}")
        n, d = len(dims), dims[0] - 1
        coeffs = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
        return gallery.gw_state(gallery.gw_spec(coeffs))
    raise InputError(f"unknown sampler {sampler!r}, expected one of {SAMPLERS}")


def audit_partition(profile: DimensionProfile, sampler: str, partition: Partition | None) -> Partition:
    """Resolve the partition an audit runs on (singletons by default)."""
    if sampler == "purification":
        da, db = _purification_dims(profile)
        state_n = 3
    else:
        state_n = profile.n
    if partition is None:
        return Partition.singletons(state_n)
    if partition.n != state_n:
        raise InputError(f"partition covers {partition.n} parties, sampled states have {state_n}")
    return partition


def audit_trial_report(
    profile: DimensionProfile,
    partition: Partition | None,
    measure: MeasureKind,
    alpha: float,
    seed: int,
    trial: int,
    *,
    sampler: str = "haar",
    tolerance: float = VIOLATION_TOL,
    allow_unproven: bool = False,
) -> EpiReport:
    """Replay a single audit trial from its derived seed."""
    partition = audit_partition(profile, sampler, partition)
    psi = sample_state(profile, sampler, seed, trial)
    return epi_report(
        psi, partition, measure, alpha, tolerance=tolerance, allow_unproven=allow_unproven
    )


def audit_random(
    profile: DimensionProfile,
    partition: Partition | None,
    measure: MeasureKind,
    alpha: float,
    trials: int,
    seed: int,
    *,
    sampler: str = "haar",
    tolerance: float = VIOLATION_TOL,
    allow_unproven: bool = False,
) -> AuditSummary:
    """Run `trials` independent polygon checks on randomly sampled states."""
    trials = int(trials)
    if trials < 1:
        raise InputError(f"need at least 1 trial, got {trials}")
    alpha = _check_alpha(alpha, allow_unproven)
    partition = audit_partition(profile, sampler, partition)
    violations = 0
    worst_residual = np.inf
    worst_trial = 0
    for trial in range(trials):
        psi = sample_state(profile, sampler, seed, trial)
        values = one_to_rest_values(psi, partition, measure)
        residuals = epi_residuals(values, alpha, allow_unproven=allow_unproven)
        min_residual = float(residuals.min())
        if min_residual < -tolerance:
            violations += 1
        if min_residual < worst_residual:
            worst_residual = min_residual
            worst_trial = trial
    return AuditSummary(
        profile=profile,
        partition=partition,
        measure=measure,
        sampler=sampler,
        alpha=alpha,
        trials=trials,
        seed=int(seed),
        violations=violations,
        worst_residual=float(worst_residual),
        worst_trial=worst_trial,
    )
