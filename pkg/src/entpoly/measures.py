"""Bipartite entanglement measures for pure states, plus two-qubit Wootters.

Every measure here is evaluated across a cut: a 1-based block of subsystems
against its complement.  Pure-state values come straight from the squared
Schmidt coefficients of that cut; the trace-norm negativity also accepts
arbitrary density operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    DensityOp,
    InputError,
    Ket,
    _transposed_matrix,
    hermitize,
    reduced_spectrum,
)

# Eigenvalues of the Wootters spin-flip product are real and non-negative up
# to roundoff; anything beyond these tolerances signals a logic error.
WOOTTERS_IMAG_TOL = 1e-8
WOOTTERS_NEG_TOL = 1e-8

# Square roots amplify spectral roundoff (1e-16 -> 1e-8), so quantities that
# feed a sqrt are snapped to 0 below these floors: purity deficits 1 - Tr rho^q
# of product states, and the numerically-zero spin-flip eigenvalues.
PURITY_DEFICIT_FLOOR = 1e-12
WOOTTERS_ZERO_FLOOR = 1e-13

_MEASURE_NAMES = ("gem", "negativity", "concurrence", "qconcurrence")


@dataclass(frozen=True)
class MeasureKind:
    """Selects one of the supported measures; `q` applies to qconcurrence only."""

    name: str
    q: float | None = None

    def __post_init__(self):
        if self.name not in _MEASURE_NAMES:
            raise InputError(f"unknown measure {self.name!r}, expected one of {_MEASURE_NAMES}")
        if self.name == "qconcurrence":
            if self.q is None:
                raise InputError("qconcurrence needs a q parameter")
            object.__setattr__(self, "q", float(self.q))
            if self.q < 1.0:
                raise InputError(f"qconcurrence needs q >= 1, got {self.q}")
        elif self.q is not None:
            raise InputError(f"measure {self.name!r} takes no q parameter")

    @classmethod
    def parse(cls, name: str, q: float | None = None) -> "MeasureKind":
        name = name.strip().lower()
        if name == "qconcurrence":
            return cls(name, 2.0 if q is None else float(q))
        return cls(name)

    @property
    def label(self) -> str:
        if self.name == "qconcurrence":
            return f"qconcurrence(q={self.q:g})"
        return self.name


GEM = MeasureKind("gem")
NEGATIVITY = MeasureKind("negativity")
CONCURRENCE = MeasureKind("concurrence")


def q_concurrence_kind(q: float) -> MeasureKind:
    return MeasureKind("qconcurrence", float(q))


def gem_pure(psi: Ket, block) -> float:
    """Geometric measure 1 - lambda_max across the cut; 0 iff product."""
    lam = reduced_spectrum(psi, block)
    return max(0.0, 1.0 - float(lam[0]))


def negativity(state: Ket | DensityOp, block) -> float:
    """(trace norm of the partial transpose - 1) / 2, for kets or densities."""
    if isinstance(state, Ket):
        profile = state.profile
        mat = np.outer(state.amplitudes, state.amplitudes.conj())
    else:
        profile = state.profile
        mat = state.matrix
    idx = profile.block_indices(block)
    pt = _transposed_matrix(mat, profile.dims, [i - 1 for i in idx])
    tn = float(np.sum(np.abs(np.linalg.eigvalsh(hermitize(pt)))))
    return max(0.0, (tn - 1.0) / 2.0)


def negativity_pure_schmidt(psi: Ket, block) -> float:
    """((sum_i sqrt(lambda_i))^2 - 1) / 2 from the Schmidt spectrum of the cut."""
    lam = reduced_spectrum(psi, block)
    return max(0.0, (float(np.sum(np.sqrt(lam))) ** 2 - 1.0) / 2.0)


def concurrence_pure(psi: Ket, block) -> float:
    """sqrt(2 (1 - Tr rho_S^2)) across the cut."""
    lam = reduced_spectrum(psi, block)
    deficit = 1.0 - float(np.sum(lam**2))
    if deficit <= PURITY_DEFICIT_FLOOR:
        return 0.0
    return float(np.sqrt(2.0 * deficit))


def q_concurrence(psi: Ket, block, q: float) -> float:
    """1 - Tr rho_S^q for real q >= 1."""
    q = float(q)
    if q < 1.0:
        raise InputError(f"q-concurrence needs q >= 1, got {q}")
    lam = reduced_spectrum(psi, block)
    deficit = 1.0 - float(np.sum(lam**q))
    if deficit <= PURITY_DEFICIT_FLOOR:
        return 0.0
    return deficit


_SYSY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)  # sigma_y (x) sigma_y in the computational basis


def wootters_concurrence(rho: DensityOp) -> float:
    """Analytic two-qubit mixed-state concurrence max{sqrt(mu1) - sum sqrt(mu_i), 0}.

    The eigenvalues mu_i of rho (sy x sy) rho* (sy x sy) are real non-negative
    in exact arithmetic; complex conjugation is taken in the computational
    basis the state is stored in.
    """
    if rho.profile.dims != (2, 2):
        raise InputError(f"Wootters formula needs a two-qubit state, got dims {rho.profile.dims}")
    R = rho.matrix @ _SYSY @ rho.matrix.conj() @ _SYSY
    mu = np.linalg.eigvals(R)
    worst_imag = float(np.max(np.abs(mu.imag)))
    if worst_imag > WOOTTERS_IMAG_TOL:
        raise ArithmeticError(f"spin-flip eigenvalues drifted complex ({worst_imag:.3e})")
    vals = np.sort(mu.real)[::-1]
    if vals[-1] < -WOOTTERS_NEG_TOL:
        raise ArithmeticError(f"spin-flip eigenvalue {vals[-1]:.3e} too negative")
    vals[vals < WOOTTERS_ZERO_FLOOR] = 0.0
    roots = np.sqrt(vals)
    return max(0.0, float(roots[0] - roots[1] - roots[2] - roots[3]))


def measure_value(psi: Ket, block, kind: MeasureKind) -> float:
    """Evaluate a MeasureKind on a pure state across the given cut.

    Negativity uses the Schmidt-spectrum path here; the trace-norm path is
    available separately and agrees on pure inputs.
    """
    if kind.name == "gem":
        return gem_pure(psi, block)
    if kind.name == "negativity":
        return negativity_pure_schmidt(psi, block)
    if kind.name == "concurrence":
        return concurrence_pure(psi, block)
    return q_concurrence(psi, block, kind.q)
