"""Cartan family X(x, y, z) of two-qubit unitaries and its closed-form measures."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy import cos, sin

from .errors import InputError

QUARTER = np.pi / 4
_CHAMBER_SLACK = 1e-12

LOCAL_CNOT = "local_cnot"
SWAP_DCNOT = "swap_dcnot"
EDGES = (LOCAL_CNOT, SWAP_DCNOT)


@dataclass(frozen=True)
class WeylPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        x, y, z = self.x, self.y, self.z
        s = _CHAMBER_SLACK
        if not (abs(z) <= y + s and y <= x + s and x <= QUARTER + s and 0 <= abs(z)):
            raise InputError(f"({x}, {y}, {z}) is outside 0 <= |z| <= y <= x <= pi/4")


def cartan_unitary(p: WeylPoint) -> np.ndarray:
    """exp[-i(x XX + y YY + z ZZ)] written out entrywise."""
    cm, cp = cos(p.x - p.y), cos(p.x + p.y)
    sm, sp = sin(p.x - p.y), sin(p.x + p.y)
    em, ep = np.exp(-1j * p.z), np.exp(1j * p.z)
    return np.array(
        [
            [em * cm, 0, 0, -1j * em * sm],
            [0, ep * cp, -1j * ep * sp, 0],
            [0, -1j * ep * sp, ep * cp, 0],
            [-1j * em * sm, 0, 0, em * cm],
        ],
        dtype=complex,
    )


def pair_purity_brackets(x, y, z):
    """Closed-form Tr rho_13^2 and Tr rho_14^2 of |X(x, y, z)>."""
    cm, cp, sm, sp = cos(x - y), cos(x + y), sin(x - y), sin(x + y)
    c2z, s2z = cos(2 * z), sin(2 * z)
    p13 = (
        (cm**2 + cp**2) ** 2
        + (sp**2 + sm**2) ** 2
        + (2 * cm * cp * c2z) ** 2
        + (2 * sp * sm * c2z) ** 2
    ) / 8
    p14 = (
        (cm**2 + sp**2) ** 2
        + (cp**2 + sm**2) ** 2
        + (2 * cm * sp * s2z) ** 2
        + (2 * cp * sm * s2z) ** 2
    ) / 8
    return p13, p14


def gme_ame_closed_form(p: WeylPoint) -> float:
    p13, p14 = pair_purity_brackets(p.x, p.y, p.z)
    return float(16 / 9 * (1 - p13) * (1 - p14))


def edge_formula(edge: str, t: float) -> float:
    """Single-parameter GME-AME along the LOCAL-CNOT (x, 0, 0) or SWAP-DCNOT (pi/4, pi/4, z) edge."""
    if not -_CHAMBER_SLACK <= t <= QUARTER + _CHAMBER_SLACK:
        raise InputError(f"edge parameter {t} outside [0, pi/4]")
    if edge == LOCAL_CNOT:
        return float((1 - cos(4 * t)) / 3)
    if edge == SWAP_DCNOT:
        return float((cos(4 * t) + 1) / 3)
    raise InputError(f"unknown edge {edge!r}; choose from {EDGES}")


def edge_point(edge: str, t: float) -> WeylPoint:
    if edge == LOCAL_CNOT:
        return WeylPoint(t, 0.0, 0.0)
    if edge == SWAP_DCNOT:
        return WeylPoint(QUARTER, QUARTER, t)
    raise InputError(f"unknown edge {edge!r}; choose from {EDGES}")


def scott_f_published(x, y, z):
    """Published form of f(x, y, z), kept for auditing.

    Agrees with the pair-purity form only on the y = 0 edge; off that edge it
    does not reproduce Sct_2 (e.g. 15 instead of 12 at the SWAP vertex).
    """
    s2x2y = sin(2 * x) * sin(2 * y)
    return (
        2
        + 4 * cos(x - y) ** 4
        + (-1 + s2x2y) ** 2
        + (1 + s2x2y) ** 2
        + (sin(x - y) ** 2 + sin(x + y) ** 2) ** 2
        + 4 * cos(2 * z) ** 2 * (cos(x - y) ** 2 * cos(x + y) ** 2 + sin(x + y) ** 4)
        - (-2 + cos(4 * x) + cos(4 * y)) * sin(2 * z) ** 2
    )


def scott_f(x, y, z):
    """f(x, y, z) = 8 (Tr rho_12^2 + Tr rho_13^2 + Tr rho_14^2) with Tr rho_12^2 = 1/4."""
    p13, p14 = pair_purity_brackets(x, y, z)
    return 2 + 8 * p13 + 8 * p14


def scott_closed_form(p: WeylPoint) -> float:
    """Sct_2(|X>) = 4/3 - f/18 with f from the pair-purity brackets."""
    return float(4 / 3 - scott_f(p.x, p.y, p.z) / 18)


def scott_closed_form_published(p: WeylPoint) -> float:
    return float(4 / 3 - scott_f_published(p.x, p.y, p.z) / 18)


def sample_chamber(count: int, seed) -> list[WeylPoint]:
    """Uniform points of the chamber by rejection from its bounding box."""
    if count < 1:
        raise InputError("count must be >= 1")
    rng = np.random.default_rng(seed)
    out: list[WeylPoint] = []
    while len(out) < count:
        batch = rng.uniform([0, 0, -QUARTER], [QUARTER, QUARTER, QUARTER], size=(4 * count, 3))
        ok = (np.abs(batch[:, 2]) <= batch[:, 1]) & (batch[:, 1] <= batch[:, 0])
        for x, y, z in batch[ok][: count - len(out)]:
            out.append(WeylPoint(float(x), float(y), float(z)))
    return out
