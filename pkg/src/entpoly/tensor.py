"""Multi-qudit tensor bookkeeping: index maps, marginals, spectra, random states.

Subsystems are numbered 1..n throughout the public API.  Flat amplitude
vectors are row-major with subsystem 1 most significant, so the basis label
|i1 i2 ... in> sits at position sum_k i_k * prod_{l>k} d_l.  All values are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

# Construction / verification tolerances, exposed read-only for tests.
NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10  # density eigenvalues in [-PSD_TOL, 0) are roundoff, below is a bug
SPECTRUM_SUM_TOL = 1e-10


class InputError(ValueError):
    """A caller violated an operation's contract (bad index set, bad parameter...)."""


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered local dimensions (d1, ..., dn) of an n-partite system."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 1:
            raise InputError("a system needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise InputError(f"local dimensions must be >= 2, got {dims}")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def block_dim(self, block: Iterable[int]) -> int:
        """Product of local dimensions over a 1-based subsystem index set."""
        return math.prod(self.dims[i - 1] for i in self.block_indices(block))

    def block_indices(self, block: Iterable[int], *, allow_full: bool = True) -> tuple[int, ...]:
        """Validate a 1-based index set and return it sorted (still 1-based)."""
        raw = tuple(int(i) for i in block)
        idx = tuple(sorted(set(raw)))
        if len(idx) != len(raw):
            raise InputError(f"duplicate subsystem indices in {raw}")
        if not idx:
            raise InputError("index set must not be empty")
        if idx[0] < 1 or idx[-1] > self.n:
            raise InputError(f"subsystem indices must lie in 1..{self.n}, got {raw}")
        if not allow_full and len(idx) == self.n:
            raise InputError("index set must be a proper subset of the subsystems")
        return idx

    def complement(self, block: Iterable[int]) -> tuple[int, ...]:
        kept = set(self.block_indices(block))
        return tuple(i for i in range(1, self.n + 1) if i not in kept)


@dataclass(frozen=True, eq=False)
class Ket:
    """Normalized pure state: flat complex amplitudes over a DimensionProfile."""

    profile: DimensionProfile
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != self.profile.total_dim:
            raise InputError(
                f"expected {self.profile.total_dim} amplitudes for dims "
                f"{self.profile.dims}, got {amp.size}"
            )
        nrm = float(np.linalg.norm(amp))
        if abs(nrm - 1.0) > NORM_TOL:
            raise InputError(f"ket must be normalized, |norm - 1| = {abs(nrm - 1.0):.3e}")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True, eq=False)
class DensityOp:
    """Hermitian, PSD, unit-trace operator over a DimensionProfile."""

    profile: DimensionProfile
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        D = self.profile.total_dim
        if mat.shape != (D, D):
            raise InputError(f"expected a {D}x{D} matrix for dims {self.profile.dims}")
        herm_dev = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_dev > HERMITIAN_TOL:
            raise InputError(f"matrix is not Hermitian (max deviation {herm_dev:.3e})")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise InputError(f"trace must be 1, got {tr}")
        lo = float(np.min(np.linalg.eigvalsh(hermitize(mat))))
        if lo < -PSD_TOL:
            raise InputError(f"matrix has eigenvalue {lo:.3e} below -{PSD_TOL}")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)


def hermitize(mat: np.ndarray) -> np.ndarray:
    """Symmetrize (M + M^dag)/2 so symmetric eigensolvers see no drift."""
    return (mat + mat.conj().T) / 2.0


def flat_index(multi: Sequence[int], profile: DimensionProfile) -> int:
    """Flat position of the basis label |multi[0] multi[1] ...> (subsystem 1 first)."""
    if len(multi) != profile.n:
        raise InputError(f"label has {len(multi)} entries, profile has {profile.n}")
    x = 0
    for k, d in zip(multi, profile.dims):
        k = int(k)
        if not 0 <= k < d:
            raise InputError(f"label entry {k} out of range for local dimension {d}")
        x = x * d + k
    return x


def multi_index(flat: int, profile: DimensionProfile) -> tuple[int, ...]:
    """Inverse of flat_index."""
    flat = int(flat)
    if not 0 <= flat < profile.total_dim:
        raise InputError(f"flat index {flat} out of range for dims {profile.dims}")
    out = []
    for d in reversed(profile.dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


def basis_ket(profile: DimensionProfile, multi: Sequence[int]) -> Ket:
    """Computational basis state |multi>."""
    amp = np.zeros(profile.total_dim, dtype=complex)
    amp[flat_index(multi, profile)] = 1.0
    return Ket(profile, amp)


def density_of(psi: Ket) -> DensityOp:
    """Rank-1 projector |psi><psi|."""
    mat = np.outer(psi.amplitudes, psi.amplitudes.conj())
    mat /= float(np.trace(mat).real)
    return DensityOp(psi.profile, mat)


def _traced_matrix(mat: np.ndarray, dims: tuple[int, ...], keep0: Sequence[int]) -> np.ndarray:
    """Partial trace of a raw matrix, 0-based keep indices."""
    n = len(dims)
    T = mat.reshape(*dims, *dims)
    row = list(range(n))
    col = [n + i if i in keep0 else i for i in range(n)]
    out = [i for i in keep0] + [n + i for i in keep0]
    dk = math.prod(dims[i] for i in keep0)
    return np.einsum(T, row + col, out).reshape(dk, dk)


def partial_trace(rho: DensityOp, keep: Iterable[int]) -> DensityOp:
    """Trace out everything except the (1-based) subsystems in `keep`."""
    idx = rho.profile.block_indices(keep)
    keep0 = [i - 1 for i in idx]
    red = _traced_matrix(rho.matrix, rho.profile.dims, keep0)
    sub = DimensionProfile(tuple(rho.profile.dims[i] for i in keep0))
    return DensityOp(sub, hermitize(red))


def _transposed_matrix(mat: np.ndarray, dims: tuple[int, ...], block0: Sequence[int]) -> np.ndarray:
    n = len(dims)
    D = math.prod(dims)
    perm = list(range(2 * n))
    for i in block0:
        perm[i], perm[n + i] = perm[n + i], perm[i]
    return mat.reshape(*dims, *dims).transpose(perm).reshape(D, D)


def partial_transpose(rho: DensityOp, block: Iterable[int]) -> np.ndarray:
    """Transpose the (1-based) subsystems in `block`; Hermitian but maybe not PSD.

    Pure axis reindexing, so applying it twice restores the input bit-exactly.
    """
    raw = tuple(block)
    if not raw:
        return rho.matrix.copy()
    idx = rho.profile.block_indices(raw)
    return _transposed_matrix(rho.matrix, rho.profile.dims, [i - 1 for i in idx])


def reduced_spectrum(psi: Ket, block: Iterable[int]) -> np.ndarray:
    """Squared Schmidt coefficients across the cut block | complement, descending.

    Computed from the singular values of the reshaped amplitude tensor and
    zero-padded to the block dimension, so it equals the eigenvalue list of
    the block's reduced density operator.
    """
    idx = psi.profile.block_indices(block, allow_full=False)
    block0 = [i - 1 for i in idx]
    rest0 = [i for i in range(psi.profile.n) if i not in block0]
    T = psi.amplitudes.reshape(psi.profile.dims)
    d_block = math.prod(psi.profile.dims[i] for i in block0)
    M = T.transpose(block0 + rest0).reshape(d_block, -1)
    s = np.linalg.svd(M, compute_uv=False)
    lam = np.zeros(d_block)
    lam[: s.size] = s**2
    return lam


def schatten_norm(M: np.ndarray, p: float) -> float:
    """Schatten p-norm (p-norm of the singular values); p = inf is the largest one."""
    M = np.asarray(M, dtype=complex)
    s = np.linalg.svd(M, compute_uv=False)
    if math.isinf(p):
        return float(s[0]) if s.size else 0.0
    p = float(p)
    if p < 1.0:
        raise InputError(f"Schatten norm needs p >= 1, got {p}")
    if p == 1.0:
        return float(np.sum(s))
    return float(np.sum(s**p) ** (1.0 / p))


def haar_random_ket(profile: DimensionProfile, seed) -> Ket:
    """Haar-random pure state; `seed` is anything numpy's default_rng accepts."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(profile.total_dim) + 1j * rng.standard_normal(profile.total_dim)
    return Ket(profile, z / np.linalg.norm(z))


def random_density(profile: DimensionProfile, rank: int, seed) -> DensityOp:
    """Reduced state of a Haar-random purification with the requested rank."""
    D = profile.total_dim
    rank = int(rank)
    if not 1 <= rank <= D:
        raise InputError(f"rank must lie in 1..{D}, got {rank}")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((D, rank)) + 1j * rng.standard_normal((D, rank))
    mat = G @ G.conj().T
    mat /= float(np.trace(mat).real)
    return DensityOp(profile, hermitize(mat))


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks of 1-based subsystem indices covering 1..n."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks or any(not b for b in blocks):
            raise InputError("partition blocks must be non-empty")
        flat = [i for b in blocks for i in b]
        if len(set(flat)) != len(flat):
            raise InputError(f"partition blocks overlap: {blocks}")
        if set(flat) != set(range(1, len(flat) + 1)):
            raise InputError(f"partition must cover 1..n exactly, got {blocks}")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "1|2,3|4": blocks split by '|', members by ','."""
        try:
            blocks = tuple(
                tuple(int(tok) for tok in part.split(",")) for part in text.split("|")
            )
        except ValueError as exc:
            raise InputError(f"cannot parse partition {text!r}") from exc
        return cls(blocks)

    def validate_for(self, profile: DimensionProfile) -> None:
        if self.n != profile.n:
            raise InputError(
                f"partition covers {self.n} subsystems but the state has {profile.n}"
            )


def iter_partitions(n: int, min_blocks: int = 1, max_blocks: int | None = None) -> Iterator[Partition]:
    """All set partitions of 1..n with a block count in [min_blocks, max_blocks]."""
    if max_blocks is None:
        max_blocks = n

    def grow(i: int, blocks: list[list[int]]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        if len(blocks) < max_blocks:
            blocks.append([i])
            yield from grow(i + 1, blocks)
            blocks.pop()

    for raw in grow(1, []):
        if min_blocks <= len(raw) <= max_blocks:
            yield Partition(raw)
