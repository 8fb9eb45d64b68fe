"""Operator-to-state mapping for two-qudit operators and the reshaping maps.

An operator ``A`` on C^d (x) C^d is a d^2 x d^2 matrix with composite row label
``(i alpha)`` and column label ``(j beta)``. It maps to the four-party state
with amplitude ``<i alpha|A|j beta>`` on ``|i alpha j beta>``.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError
from .statecore import PureState

# einsum signatures from <i a|A|j b> to the reshaped entry positions
_RESHAPES = {
    "R1": "iajb->baji",
    "R2": "iajb->ijab",
    "T1": "iajb->jaib",
    "T2": "iajb->ibja",
}


def local_dim(A: np.ndarray) -> int:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"operator must be square, got shape {A.shape}")
    d = int(round(np.sqrt(A.shape[0])))
    if d * d != A.shape[0] or d < 2:
        raise InputError(f"operator dimension {A.shape[0]} is not d^2 with d >= 2")
    return d


def reshape(A: np.ndarray, kind: str) -> np.ndarray:
    """Realignment (R1, R2) or partial transpose (T1, T2) of ``A``."""
    try:
        sig = _RESHAPES[kind]
    except KeyError:
        raise InputError(f"unknown reshape {kind!r}; choose from {sorted(_RESHAPES)}") from None
    d = local_dim(A)
    a4 = np.asarray(A).reshape(d, d, d, d)
    return np.einsum(sig, a4).reshape(d * d, d * d)


def _normalized(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    local_dim(A)
    norm = np.linalg.norm(A)
    if norm == 0:
        raise InputError("zero operator has no associated state")
    return A / norm


def op_to_state(A: np.ndarray) -> PureState:
    """Map ``A`` to the normalized state |A>; Frobenius normalization (1/d for unitaries)."""
    An = _normalized(A)
    d = local_dim(An)
    return PureState(4, d, An.reshape(-1).copy())


def pair_marginals(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(rho_12, rho_13, rho_14) of |A> from Gram matrices of A, A^R2 and A^T2."""
    An = _normalized(A)
    r2 = reshape(An, "R2")
    t2 = reshape(An, "T2")
    return An @ An.conj().T, r2 @ r2.conj().T, t2 @ t2.conj().T


def _is_unitary(M: np.ndarray, tol: float) -> bool:
    return bool(np.abs(M @ M.conj().T - np.eye(M.shape[0])).max() < tol)


def is_dual_unitary(A: np.ndarray, tol: float = 1e-10) -> tuple[bool, bool]:
    """Whether A^R2 and A^T2 are unitary (A must be unitary itself)."""
    A = np.asarray(A, dtype=complex)
    local_dim(A)
    if not _is_unitary(A, tol):
        raise InputError("operator is not unitary within tolerance")
    return _is_unitary(reshape(A, "R2"), tol), _is_unitary(reshape(A, "T2"), tol)


def permutation_operator(images, d: int, signs=None) -> np.ndarray:
    """Matrix sending basis point ``t`` to ``images[t]``, optionally with per-point signs/phases."""
    images = np.asarray(images, dtype=int)
    n = d * d
    if images.shape != (n,) or sorted(images.tolist()) != list(range(n)):
        raise InputError(f"images must be a permutation of 0..{n - 1}")
    P = np.zeros((n, n), dtype=complex)
    P[images, np.arange(n)] = 1.0 if signs is None else np.asarray(signs)
    return P


# a few standard gates on two qudits

def identity_op(d: int = 2) -> np.ndarray:
    return np.eye(d * d, dtype=complex)


def swap_op(d: int = 2) -> np.ndarray:
    images = [j * d + i for i in range(d) for j in range(d)]
    return permutation_operator(images, d)


def cnot_op() -> np.ndarray:
    return permutation_operator([0, 1, 3, 2], 2)


def dcnot_op() -> np.ndarray:
    # CNOT(2->1) after CNOT(1->2)
    c21 = permutation_operator([0, 3, 2, 1], 2)
    return c21 @ cnot_op()
