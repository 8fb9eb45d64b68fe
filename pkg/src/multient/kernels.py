"""Purity numerators of integer-amplitude four-party states.

The compiled kernel in ``_kernels`` is used when it was built; otherwise (or
when ``MULTIENT_PURE=1``) a batched numpy implementation computes the same
integers. Both take a (N, d^2) array of permutation images and an optional
(N, d^2) array of +-1 signs.
"""
from __future__ import annotations

import os

import numpy as np

from .errors import InputError

SUBSETS = ((1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4))


def purity_numerators_numpy(images, signs, d: int) -> np.ndarray:
    images = np.asarray(images, dtype=np.int64)
    N, d2 = images.shape
    T = np.zeros((N, d2, d2), dtype=np.int64)
    rows = np.arange(N)[:, None]
    T[rows, images, np.arange(d2)[None, :]] = 1 if signs is None else np.asarray(signs, dtype=np.int64)
    T = T.reshape(N, d, d, d, d)
    out = np.empty((N, len(SUBSETS)), dtype=np.int64)
    for k, sub in enumerate(SUBSETS):
        keep = [p - 1 for p in sub]
        rest = [p for p in range(4) if p not in keep]
        M = T.transpose([0] + [p + 1 for p in keep] + [p + 1 for p in rest]).reshape(N, d ** len(sub), -1)
        G = M @ M.transpose(0, 2, 1)
        out[:, k] = np.einsum("nij,nij->n", G, G)
    return out


try:
    if os.environ.get("MULTIENT_PURE"):
        raise ImportError("compiled kernel disabled by MULTIENT_PURE")
    from ._kernels import purity_numerators as purity_numerators_compiled

    BACKEND = "cython"
except ImportError:
    purity_numerators_compiled = None
    BACKEND = "numpy"


def _validate(images, signs, d):
    images = np.ascontiguousarray(images, dtype=np.int64)
    if images.ndim != 2 or images.shape[1] != d * d:
        raise InputError(f"images must have shape (N, {d * d})")
    if images.size and not np.array_equal(np.sort(images, axis=1), np.broadcast_to(np.arange(d * d), images.shape)):
        raise InputError("every row of images must be a permutation")
    if signs is not None:
        signs = np.ascontiguousarray(signs, dtype=np.int8)
        if signs.shape != images.shape or not np.all(np.abs(signs) == 1):
            raise InputError("signs must be +-1 with the same shape as images")
    return images, signs


def purity_numerators(images, signs=None, d: int = 3, backend: str | None = None) -> np.ndarray:
    """Integer numerators over the common denominator d^4, columns ordered as SUBSETS."""
    images, signs = _validate(images, signs, d)
    backend = backend or BACKEND
    if backend == "cython" and purity_numerators_compiled is not None and d <= 4:
        return purity_numerators_compiled(images, signs, d)
    if backend not in ("cython", "numpy"):
        raise InputError(f"unknown backend {backend!r}")
    return purity_numerators_numpy(images, signs, d)
