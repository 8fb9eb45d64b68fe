"""Named reference states and the nine four-qubit LOCC families.

Family states are written unnormalized and normalized after construction, so
the normalization constant of a parametrized family depends on its parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import chmap
from .errors import InputError
from .measures import MeasureReport, measure_report
from .statecore import PureState, make_state
from .weylfam import WeylPoint


def _qubits(terms: dict[str, complex]) -> np.ndarray:
    v = np.zeros(16, dtype=complex)
    for bits, c in terms.items():
        v[int(bits, 2)] += c
    return v


def ghz(n: int = 3, d: int = 2) -> PureState:
    v = np.zeros(d**n, dtype=complex)
    step = sum(d**k for k in range(n))
    v[::step] = 1.0
    return make_state(n, d, v)


def w_state(n: int = 3) -> PureState:
    v = np.zeros(2**n, dtype=complex)
    for k in range(n):
        v[1 << k] = 1.0
    return make_state(n, 2, v)


def ame43() -> PureState:
    """Permutation state of (i, j) -> (i + j, i + 2j) mod 3, an AME(4, 3) state."""
    images = [((i + j) % 3) * 3 + (i + 2 * j) % 3 for i in range(3) for j in range(3)]
    return chmap.op_to_state(chmap.permutation_operator(images, 3))


def g_abcd(a, b, c, d) -> np.ndarray:
    return _qubits({
        "0000": (a + d) / 2, "1111": (a + d) / 2,
        "0011": (a - d) / 2, "1100": (a - d) / 2,
        "0101": (b + c) / 2, "1010": (b + c) / 2,
        "0110": (b - c) / 2, "1001": (b - c) / 2,
    })


def l_abc2(a, b, c) -> np.ndarray:
    return _qubits({
        "0000": (a + b) / 2, "1111": (a + b) / 2,
        "0011": (a - b) / 2, "1100": (a - b) / 2,
        "0101": c, "1010": c,
        "0110": 1.0,
    })


def l_a2b2(a, b) -> np.ndarray:
    return _qubits({
        "0000": a, "1111": a, "0101": b, "1010": b, "0110": 1.0, "0011": 1.0,
    })


def l_ab3(a, b) -> np.ndarray:
    return _qubits({
        "0000": a, "1111": a,
        "0101": (a + b) / 2, "1010": (a + b) / 2,
        "0110": (a - b) / 2, "1001": (a - b) / 2,
        "0001": 1j / np.sqrt(2), "0010": 1j / np.sqrt(2),
        "0111": 1.0, "1011": 1.0,
    })


def l_a4(a) -> np.ndarray:
    return _qubits({
        "0000": a, "0101": a, "1010": a, "1111": a,
        "0001": 1j, "0110": 1.0, "1011": -1j,
    })


def l_a2_0(a) -> np.ndarray:
    return _qubits({"0000": a, "1111": a, "0011": 1.0, "0101": 1.0, "0110": 1.0})


def l_05_3() -> np.ndarray:
    return _qubits({"0000": 1, "0101": 1, "1000": 1, "1110": 1})


def l_07_1() -> np.ndarray:
    return _qubits({"0000": 1, "1011": 1, "1101": 1, "1110": 1})


def l_03_03() -> np.ndarray:
    return _qubits({"0000": 1, "0111": 1})


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple[str, ...]
    build: Callable[..., PureState]
    summary: str
    defaults: dict = field(default_factory=dict)


def _four_qubit(fn):
    return lambda **kw: make_state(4, 2, fn(**kw))


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("ghz", ("n", "d"), lambda n=3, d=2: ghz(int(n), int(d)),
                     "GHZ state on n qudits", {"n": 3, "d": 2}),
        CatalogEntry("w", ("n",), lambda n=3: w_state(int(n)), "W state on n qubits", {"n": 3}),
        CatalogEntry("identity", ("d",), lambda d=2: chmap.op_to_state(chmap.identity_op(int(d))),
                     "|I> of the two-qudit identity", {"d": 2}),
        CatalogEntry("swap", ("d",), lambda d=2: chmap.op_to_state(chmap.swap_op(int(d))),
                     "|S> of the two-qudit SWAP", {"d": 2}),
        CatalogEntry("cnot", (), lambda: chmap.op_to_state(chmap.cnot_op()), "|CNOT>"),
        CatalogEntry("dcnot", (), lambda: chmap.op_to_state(chmap.dcnot_op()), "|DCNOT>"),
        CatalogEntry("ame43", (), ame43, "AME(4,3) permutation state"),
        CatalogEntry("g_abcd", ("a", "b", "c", "d"), _four_qubit(g_abcd), "G_abcd family"),
        CatalogEntry("l_abc2", ("a", "b", "c"), _four_qubit(l_abc2), "L_abc2 family"),
        CatalogEntry("l_a2b2", ("a", "b"), _four_qubit(l_a2b2), "L_a2b2 family"),
        CatalogEntry("l_ab3", ("a", "b"), _four_qubit(l_ab3), "L_ab3 family"),
        CatalogEntry("l_a4", ("a",), _four_qubit(l_a4), "L_a4 family"),
        CatalogEntry("l_a2_0", ("a",), _four_qubit(l_a2_0), "L_{a2 + 0_{3+1}} family"),
        CatalogEntry("l_05_3", (), _four_qubit(l_05_3), "L_{0_{5+3}}"),
        CatalogEntry("l_07_1", (), _four_qubit(l_07_1), "L_{0_{7+1}}"),
        CatalogEntry("l_03_03", (), _four_qubit(l_03_03), "L_{0_{3+1} 0_{3+1}} (biseparable)"),
    ]
}

FAMILIES = ("g_abcd", "l_abc2", "l_a2b2", "l_ab3", "l_a4", "l_a2_0")


def named_state(name: str, **params) -> PureState:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise InputError(f"unknown state {name!r}; known: {', '.join(CATALOG)}") from None
    unknown = set(params) - set(entry.params)
    if unknown:
        raise InputError(f"{name} takes no parameter(s) {sorted(unknown)}")
    kwargs = dict(entry.defaults)
    kwargs.update(params)
    missing = [p for p in entry.params if p not in kwargs]
    if missing:
        raise InputError(f"{name} requires parameter(s) {missing}")
    return entry.build(**kwargs)


def weyl_to_gabcd(p: WeylPoint) -> tuple[complex, complex, complex, complex]:
    """(a, b, c, d) with |G_abcd> equal to |X(p)>, from the Bell-basis eigenvalues of X."""
    a = np.exp(-1j * (p.x - p.y + p.z))  # Phi+
    b = np.exp(-1j * (p.x + p.y - p.z))  # Psi+
    c = np.exp(1j * (p.x + p.y + p.z))  # Psi-
    d = np.exp(-1j * (-p.x + p.y + p.z))  # Phi-
    return a, b, c, d


def class_sweep(name: str, grid: Iterable[dict]) -> Iterator[tuple[dict, MeasureReport]]:
    if name not in FAMILIES:
        raise InputError(f"{name!r} is not a parametrized family; choose from {FAMILIES}")
    grid = list(grid)
    if not grid:
        raise InputError("empty parameter grid")
    for params in grid:
        yield params, measure_report(named_state(name, **params))


def default_grid(name: str, points: int = 1000, seed=0, kind: str = "phase",
                 low: float = -1.0, high: float = 1.0) -> list[dict]:
    """Seeded parameter grid for a family.

    ``kind="phase"`` draws unit-modulus parameters e^{i phi}, phi uniform in
    [0, 2 pi), the same modulus as the fixed terms of each family (and as the
    G_abcd parameters of the Cartan family). ``kind="real"`` draws reals
    uniformly from [low, high].
    """
    if name not in FAMILIES:
        raise InputError(f"{name!r} is not a parametrized family")
    if points < 1:
        raise InputError("empty parameter grid")
    keys = CATALOG[name].params
    rng = np.random.default_rng(seed)
    if kind == "phase":
        vals = np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=(points, len(keys))))
        return [dict(zip(keys, map(complex, row))) for row in vals]
    if kind == "real":
        vals = rng.uniform(low, high, size=(points, len(keys)))
        return [dict(zip(keys, map(float, row))) for row in vals]
    raise InputError(f"grid kind must be 'phase' or 'real', got {kind!r}")
