"""Pure states, reduced density matrices and the basic operations on them.

Basis convention: party 1 is the most significant digit, i.e. the amplitude
of ``|k_1 k_2 ... k_n>`` lives at index ``sum_k k_j * d**(n - j)``. Parties are
labelled 1..n everywhere in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

ENTROPY_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector of ``n`` parties with local dimension ``d``."""

    n: int
    d: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 2 or self.d < 2:
            raise InputError(f"need n >= 2 and d >= 2, got n={self.n}, d={self.d}")
        if self.amps.shape != (self.d**self.n,):
            raise InputError(
                f"expected {self.d**self.n} amplitudes for n={self.n}, d={self.d}, "
                f"got shape {self.amps.shape}"
            )
        if abs(np.linalg.norm(self.amps) - 1.0) > 1e-12:
            raise InputError("amplitudes are not normalized; use make_state")
        self.amps.setflags(write=False)

    @property
    def tensor(self) -> np.ndarray:
        return self.amps.reshape((self.d,) * self.n)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    parties: tuple[int, ...]
    mat: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def make_state(n: int, d: int, amps: Iterable[complex]) -> PureState:
    """Build a :class:`PureState`, dividing ``amps`` by its Euclidean norm."""
    vec = np.asarray(list(amps) if not isinstance(amps, np.ndarray) else amps, dtype=complex)
    vec = vec.reshape(-1)
    if vec.size != d**n:
        raise InputError(f"expected {d**n} amplitudes for n={n}, d={d}, got {vec.size}")
    if not np.all(np.isfinite(vec)):
        raise InputError("amplitudes contain NaN or Inf")
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise InputError("zero vector is not a state")
    return PureState(n, d, vec / norm)


def _check_keep(n: int, keep: Sequence[int]) -> tuple[int, ...]:
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep or len(keep) >= n:
        raise InputError(f"keep must be a nonempty proper subset of 1..{n}, got {keep}")
    if keep[0] < 1 or keep[-1] > n:
        raise InputError(f"party labels must lie in 1..{n}, got {keep}")
    return keep


def split_matrix(state: PureState, keep: Sequence[int]) -> np.ndarray:
    """Amplitudes reshaped to a (d^|keep|, d^(n-|keep|)) matrix, rows = kept parties."""
    keep = _check_keep(state.n, keep)
    axes = [k - 1 for k in keep]
    rest = [k for k in range(state.n) if k not in axes]
    t = np.transpose(state.tensor, axes + rest)
    return t.reshape(state.d ** len(keep), -1)


def partial_trace(state: PureState, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on ``keep`` by contracting the traced-out amplitude indices."""
    keep = _check_keep(state.n, keep)
    m = split_matrix(state, keep)
    rho = m @ m.conj().T
    return DensityMatrix(keep, rho)


def purity(rho: DensityMatrix | np.ndarray) -> float:
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(mat) ** 2))


def subset_purity(state: PureState, keep: Sequence[int]) -> float:
    """Tr(rho_keep^2) computed from the smaller of the two Gram matrices."""
    m = split_matrix(state, keep)
    g = m @ m.conj().T if m.shape[0] <= m.shape[1] else m.conj().T @ m
    return float(np.sum(np.abs(g) ** 2))


def von_neumann_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """Entropy in bits; eigenvalues below 1e-12 are dropped."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
    evals = np.linalg.eigvalsh(mat)
    evals = evals[evals > ENTROPY_CUTOFF]
    return float(-np.sum(evals * np.log2(evals)))


def apply_local(state: PureState, us: Sequence[np.ndarray]) -> PureState:
    """Apply ``u_1 (x) ... (x) u_n`` without forming the full tensor product."""
    if len(us) != state.n:
        raise InputError(f"need {state.n} local factors, got {len(us)}")
    t = state.tensor
    for k, u in enumerate(us):
        u = np.asarray(u, dtype=complex)
        if u.shape != (state.d, state.d):
            raise InputError(f"factor {k + 1} has shape {u.shape}, expected {(state.d, state.d)}")
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    return PureState(state.n, state.d, t.reshape(-1).copy())


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix (phase-corrected)."""
    if dim < 1:
        raise InputError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_state(n: int, d: int, seed) -> PureState:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d**n) + 1j * rng.standard_normal(d**n)
    return make_state(n, d, v)


def product_state(n: int, d: int, seed=None) -> PureState:
    """Tensor product of single-party states (|0...0> when ``seed`` is None)."""
    if seed is None:
        v = np.zeros(d**n, dtype=complex)
        v[0] = 1.0
        return PureState(n, d, v)
    rng = np.random.default_rng(seed)
    v = np.ones(1, dtype=complex)
    for _ in range(n):
        f = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v = np.kron(v, f / np.linalg.norm(f))
    return make_state(n, d, v)
