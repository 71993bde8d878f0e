"""Analytic state families with closed-form spectra and negativities.

Three families plus the named example states:

* the generalized Schmidt (Acin) form of a three-qubit pure state,
  l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>, whose
  one-qubit Schmidt pairs have closed forms in l0 and two discriminants;
* generalized W-class (GW) states: superpositions of single-excitation
  terms with d levels per party, closed under coarse-graining of parties;
* product purifications |psi> = sum_ij sqrt(a_i b_j)|ij>_AB |ij>_C, the
  family on which the negativity polygon inequality fails.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .tensor import DimensionProfile, InputError, Ket, Partition, flat_index

SPEC_NORM_TOL = 1e-12
BISEP_TOL = 1e-9  # default threshold for calling a discriminant zero

#: The one-qubit lambda_max triple printed for the first worked example, in cut
#: order A, B, C.  Kept verbatim as a sweep fixture; the geometric-measure
#: values of the same state are 1 minus these.
EXAMPLE1_PAPER_VALUES = (9 / 25, 19 / 25, 14 / 25)


@dataclass(frozen=True)
class AcinParams:
    """Generalized Schmidt parameters of a three-qubit pure state."""

    l0: float
    l1: float
    l2: float
    l3: float
    l4: float
    theta: float = 0.0

    def __post_init__(self):
        ls = self.ls
        if any(l < 0 for l in ls):
            raise InputError(f"Acin coefficients must be non-negative, got {ls}")
        ssum = sum(l * l for l in ls)
        if abs(ssum - 1.0) > SPEC_NORM_TOL:
            raise InputError(f"Acin coefficients must satisfy sum l_i^2 = 1, got {ssum}")
        if not 0.0 <= self.theta < math.pi:
            raise InputError(f"theta must lie in [0, pi), got {self.theta}")

    @property
    def ls(self) -> tuple[float, float, float, float, float]:
        return (self.l0, self.l1, self.l2, self.l3, self.l4)


def acin_params(ls, theta: float = 0.0) -> AcinParams:
    """Build AcinParams from an unnormalized non-negative 5-vector."""
    ls = np.asarray(ls, dtype=float)
    nrm = float(np.linalg.norm(ls))
    if nrm == 0.0:
        raise InputError("Acin coefficients cannot all vanish")
    ls = ls / nrm
    return AcinParams(*ls.tolist(), theta=float(theta))


def acin_state(params: AcinParams) -> Ket:
    """The three-qubit ket with the phase carried by the |100> term."""
    profile = DimensionProfile((2, 2, 2))
    amp = np.zeros(8, dtype=complex)
    amp[flat_index((0, 0, 0), profile)] = params.l0
    amp[flat_index((1, 0, 0), profile)] = params.l1 * np.exp(1j * params.theta)
    amp[flat_index((1, 0, 1), profile)] = params.l2
    amp[flat_index((1, 1, 0), profile)] = params.l3
    amp[flat_index((1, 1, 1), profile)] = params.l4
    nrm = float(np.linalg.norm(amp))
    return Ket(profile, amp / nrm)


def acin_cut_determinants(params: AcinParams) -> tuple[float, float, float]:
    """Determinants of the three one-qubit marginals, in cut order A, B, C.

    The B and C determinants are the Delta0/Delta1 of the generalized Schmidt
    form.  The A marginal carries an off-diagonal l0 l1 e^{-i theta}, so its
    determinant is l0^2 (l2^2 + l3^2 + l4^2), not l0^2 (1 - l0^2); the two
    agree exactly when l0 l1 = 0.
    """
    l0, l1, l2, l3, l4 = params.ls
    cross = 2.0 * l1 * l2 * l3 * l4 * math.cos(params.theta)
    da = l0**2 * (l2**2 + l3**2 + l4**2)
    d0 = l0**2 * l3**2 + l0**2 * l4**2 + l1**2 * l4**2 + l2**2 * l3**2 - cross
    d1 = l0**2 * l2**2 + l0**2 * l4**2 + l1**2 * l4**2 + l2**2 * l3**2 - cross
    return da, d0, d1


def acin_discriminants(params: AcinParams) -> tuple[float, float]:
    """(Delta0, Delta1) for the cuts B|AC and C|AB."""
    _, d0, d1 = acin_cut_determinants(params)
    return d0, d1


def _pair_from_determinant(delta: float) -> np.ndarray:
    radicand = 1.0 - 4.0 * delta
    if radicand < -1e-10:
        raise ArithmeticError(f"marginal determinant {delta} exceeds the analytic bound 1/4")
    root = math.sqrt(max(0.0, radicand))
    return np.array([(1.0 + root) / 2.0, (1.0 - root) / 2.0])


def acin_schmidt_spectra(params: AcinParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form descending Schmidt pairs for the cuts A|BC, B|AC, C|AB.

    Each pair is ((1 + sqrt(1 - 4 Delta))/2, (1 - sqrt(1 - 4 Delta))/2) with
    Delta the corresponding marginal determinant.
    """
    da, d0, d1 = acin_cut_determinants(params)
    return (
        _pair_from_determinant(da),
        _pair_from_determinant(d0),
        _pair_from_determinant(d1),
    )


def acin_is_biseparable(params: AcinParams, tol: float = BISEP_TOL) -> set[str]:
    """Cuts across which the state factors: subset of {"A", "B", "C"}.

    A cut is separable exactly when its marginal determinant vanishes; for
    the A cut this covers both l0 in {0, 1} and l2 = l3 = l4 = 0.
    """
    da, d0, d1 = acin_cut_determinants(params)
    cuts = set()
    if da <= tol:
        cuts.add("A")
    if d0 <= tol:
        cuts.add("B")
    if d1 <= tol:
        cuts.add("C")
    return cuts


@dataclass(frozen=True, eq=False)
class GWSpec:
    """Coefficients a[j, i] of a generalized W-class state.

    Party j (of n, local dimension d+1) carries amplitude a[j, i] on the label
    with level i+1 at party j and 0 elsewhere.  The ground label |00...0>
    never appears.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.array(self.coeffs, dtype=complex))
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise InputError("GW coefficients must form an n x d matrix")
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > SPEC_NORM_TOL:
            raise InputError(f"GW coefficients must have unit square sum, got {total}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    @property
    def d(self) -> int:
        return self.coeffs.shape[1]

    def block_weights(self, partition: Partition) -> np.ndarray:
        """Summed |a|^2 per partition block."""
        partition_n = partition.n
        if partition_n != self.n:
            raise InputError(f"partition covers {partition_n} parties, spec has {self.n}")
        w = np.array(
            [sum(float(np.sum(np.abs(self.coeffs[j - 1]) ** 2)) for j in b) for b in partition.blocks]
        )
        return w


def gw_spec(coeffs) -> GWSpec:
    """Build a GWSpec from an unnormalized coefficient matrix."""
    c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
    nrm = math.sqrt(float(np.sum(np.abs(c) ** 2)))
    if nrm == 0.0:
        raise InputError("GW coefficients cannot all vanish")
    return GWSpec(c / nrm)


def gw_state(spec: GWSpec) -> Ket:
    """The GW ket on n parties of local dimension d+1."""
    profile = DimensionProfile((spec.d + 1,) * spec.n)
    amp = np.zeros(profile.total_dim, dtype=complex)
    label = [0] * spec.n
    for j in range(spec.n):
        for i in range(spec.d):
            label[j] = i + 1
            amp[flat_index(label, profile)] = spec.coeffs[j, i]
        label[j] = 0
    nrm = float(np.linalg.norm(amp))
    return Ket(profile, amp / nrm)


def gw_coarse_grain(spec: GWSpec, partition: Partition) -> GWSpec:
    """Merge parties into blocks; the result is again a GW state.

    Each block's coefficient vector is the concatenation of its members'
    vectors in ascending party order (the single-excitation states inside a
    block are orthonormal and relabel as new levels).  Vectors are zero-padded
    to a common length, which only adds unused levels.
    """
    if partition.n != spec.n:
        raise InputError(f"partition covers {partition.n} parties, spec has {spec.n}")
    widest = max(len(b) for b in partition.blocks) * spec.d
    merged = np.zeros((partition.k, widest), dtype=complex)
    for row, block in enumerate(partition.blocks):
        vec = np.concatenate([spec.coeffs[j - 1] for j in block])
        merged[row, : vec.size] = vec
    return GWSpec(merged)


def gw_negativity_closed(spec: GWSpec, partition: Partition) -> np.ndarray:
    """Closed-form one-to-rest negativities of a GW state across a tripartition.

    With block weights (a, b, c) these are sqrt(a(b+c)), sqrt(b(a+c)),
    sqrt(c(a+b)) in block order.
    """
    if partition.k != 3:
        raise InputError(f"closed-form negativities need exactly 3 blocks, got {partition.k}")
    w = spec.block_weights(partition)
    total = float(np.sum(w))
    return np.sqrt(np.maximum(0.0, w * (total - w)))


@dataclass(frozen=True, eq=False)
class ProductPurificationSpec:
    """Spectra (a, b) of the two marginals the purification must reproduce."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        for field_name in ("a", "b"):
            vec = np.array(getattr(self, field_name), dtype=float).reshape(-1)
            if vec.size < 1 or np.any(vec < 0):
                raise InputError(f"spectrum {field_name} must be a non-negative vector")
            if abs(float(vec.sum()) - 1.0) > SPEC_NORM_TOL:
                raise InputError(f"spectrum {field_name} must sum to 1, got {vec.sum()}")
            vec.flags.writeable = False
            object.__setattr__(self, field_name, vec)


def product_purification(spec: ProductPurificationSpec) -> Ket:
    """|psi> = sum_ij sqrt(a_i b_j) |ij>_AB |ij>_C on dims [d_a, d_b, d_a*d_b].

    The purifier C is one subsystem whose level for (i, j) is the flat
    row-major label i*d_b + j, so Tr_C gives diag(a) (x) diag(b) exactly.
    """
    da, db = spec.a.size, spec.b.size
    profile = DimensionProfile((da, db, da * db))
    amp = np.zeros(profile.total_dim, dtype=complex)
    for i in range(da):
        for j in range(db):
            amp[flat_index((i, j, i * db + j), profile)] = math.sqrt(spec.a[i] * spec.b[j])
    nrm = float(np.linalg.norm(amp))
    return Ket(profile, amp / nrm)


def negativity_gap_closed(spec: ProductPurificationSpec) -> float:
    """N_{C|AB} - N_{A|BC} - N_{B|AC} of the purification, in closed form.

    Equals (1 - (sum sqrt(a_i))^2)(1 - (sum sqrt(b_j))^2) / 2, strictly
    positive whenever both spectra have rank >= 2.
    """
    sa = float(np.sum(np.sqrt(spec.a))) ** 2
    sb = float(np.sum(np.sqrt(spec.b))) ** 2
    return 0.5 * (1.0 - sa) * (1.0 - sb)


_GHZ_RE = re.compile(r"^ghz\((\d+)\)$")
_W_RE = re.compile(r"^w\((\d+)\)$")


def ghz_state(n: int) -> Ket:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 2:
        raise InputError("GHZ needs at least 2 qubits")
    profile = DimensionProfile((2,) * n)
    amp = np.zeros(profile.total_dim, dtype=complex)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return Ket(profile, amp)


def w_state(n: int) -> Ket:
    """Equal superposition of the n single-excitation qubit labels."""
    if n < 2:
        raise InputError("W needs at least 2 qubits")
    profile = DimensionProfile((2,) * n)
    amp = np.zeros(profile.total_dim, dtype=complex)
    for j in range(n):
        label = [0] * n
        label[j] = 1
        amp[flat_index(label, profile)] = 1.0 / math.sqrt(n)
    return Ket(profile, amp)


def _example1() -> Ket:
    profile = DimensionProfile((3, 3, 3))
    amp = np.zeros(27, dtype=complex)
    amp[flat_index((1, 0, 2), profile)] = 3 / 5
    amp[flat_index((2, 0, 0), profile)] = 2 * math.sqrt(2) / 5
    amp[flat_index((0, 1, 0), profile)] = 2 / 5
    amp[flat_index((0, 2, 0), profile)] = math.sqrt(2) / 5
    amp[flat_index((0, 0, 1), profile)] = math.sqrt(2) / 5
    return Ket(profile, amp / np.linalg.norm(amp))


def _example2() -> Ket:
    # Purifier first: subsystem A has dimension 9 and label 3*b + c.
    profile = DimensionProfile((9, 3, 3))
    amp = np.zeros(81, dtype=complex)
    for b in range(3):
        for c in range(3):
            amp[flat_index((3 * b + c, b, c), profile)] = 1 / 3
    return Ket(profile, amp / np.linalg.norm(amp))


def _example3() -> Ket:
    profile = DimensionProfile((3, 3, 3, 3))
    amp = np.zeros(81, dtype=complex)
    amp[flat_index((0, 0, 0, 1), profile)] = 0.3
    amp[flat_index((0, 0, 2, 0), profile)] = 0.4
    amp[flat_index((0, 1, 0, 0), profile)] = 0.5
    amp[flat_index((1, 0, 0, 0), profile)] = math.sqrt(0.5)
    return Ket(profile, amp / np.linalg.norm(amp))


def example3_gw_spec() -> GWSpec:
    """The four-party, two-level GW coefficients behind the third example."""
    coeffs = np.zeros((4, 2), dtype=complex)
    coeffs[0, 0] = math.sqrt(0.5)  # A, level 1
    coeffs[1, 0] = 0.5  # B, level 1
    coeffs[2, 1] = 0.4  # C, level 2
    coeffs[3, 0] = 0.3  # D, level 1
    return GWSpec(coeffs)


def named_state(name: str) -> Ket:
    """Gallery lookup: example1 / example2 / example3 / bell / ghz(n) / w(n)."""
    key = name.strip().lower()
    if key == "example1":
        return _example1()
    if key == "example2":
        return _example2()
    if key == "example3":
        return _example3()
    if key == "bell":
        return ghz_state(2)
    m = _GHZ_RE.match(key)
    if m:
        return ghz_state(int(m.group(1)))
    m = _W_RE.match(key)
    if m:
        return w_state(int(m.group(1)))
    raise InputError(f"unknown gallery state {name!r}")
