import itertools

import numpy as np
import pytest

from multient.statecore import make_state


def brute_reduced(amps, n, d, keep):
    """Reduced density matrix by explicit summation over basis labels (oracle)."""
    keep = [k - 1 for k in keep]
    rest = [k for k in range(n) if k not in keep]
    psi = np.asarray(amps).reshape((d,) * n)
    dim = d ** len(keep)
    rho = np.zeros((dim, dim), dtype=complex)
    for r in itertools.product(range(d), repeat=len(keep)):
        for c in itertools.product(range(d), repeat=len(keep)):
            acc = 0.0
            for e in itertools.product(range(d), repeat=len(rest)):
                ir = [0] * n
                ic = [0] * n
                for k, v in zip(keep, r):
                    ir[k] = v
                for k, v in zip(keep, c):
                    ic[k] = v
                for k, v in zip(rest, e):
                    ir[k] = ic[k] = v
                acc += psi[tuple(ir)] * np.conj(psi[tuple(ic)])
            ri = int(np.ravel_multi_index(r, (d,) * len(keep))) if keep else 0
            ci = int(np.ravel_multi_index(c, (d,) * len(keep))) if keep else 0
            rho[ri, ci] = acc
    return rho


@pytest.fixture
def bell():
    return make_state(2, 2, [1, 0, 0, 1])


@pytest.fixture
def w3():
    v = np.zeros(8)
    v[[1, 2, 4]] = 1
    return make_state(3, 2, v)


@pytest.fixture
def ghz3():
    v = np.zeros(8)
    v[[0, 7]] = 1
    return make_state(3, 2, v)


@pytest.fixture
def ghz4():
    v = np.zeros(16)
    v[[0, 15]] = 1
    return make_state(4, 2, v)
