"""Four-qubit polygon (simplex volume) GME measure.

The six face areas ``gamma_ij`` and the scale ``lambda`` solve

    gamma_ij + gamma_ik + gamma_il = E_{i|jkl}                       (4 eqs)
    -sqrt(g_ab g_cd) + sqrt(g_ac g_bd) + sqrt(g_ad g_bc) = lambda E_{ab|cd}   (3 eqs)

for the bipartitions 12|34, 13|24, 14|23. Nonnegativity is enforced by
solving for square roots (gamma = u**2, lambda = v**2).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .errors import ConsistencyError, InputError, SolverError
from .statecore import PureState, partial_trace, von_neumann_entropy

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
_IDX = {p: k for k, p in enumerate(PAIRS)}
# (named pair, its complement) for 12|34, 13|24, 14|23
BIPARTITIONS = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))
R_BAND = 1e-9
VANISHING_ENTROPY = 1e-9

# face-incidence matrix: row i sums the three gammas touching party i
_FACES = np.array([[1.0 if i + 1 in p else 0.0 for p in PAIRS] for i in range(4)])
# gamma index pairs appearing in R_0 in the order (12*34, 13*24, 14*23)
_PRODUCTS = [(_IDX[a], _IDX[b]) for a, b in BIPARTITIONS]


@dataclass(frozen=True)
class EntropyVector:
    singles: tuple[float, float, float, float]
    pairs: tuple[float, float, float]  # E_{12|34}, E_{13|24}, E_{14|23}

    def __post_init__(self):
        if min(self.singles + self.pairs) < -1e-12:
            raise InputError("entropies must be nonnegative")
        if max(self.singles) > 1 + 1e-9 or max(self.pairs) > 2 + 1e-9:
            raise InputError("entropy exceeds the four-qubit bound")

    def vanishing(self, tol: float = VANISHING_ENTROPY) -> bool:
        return min(self.singles + self.pairs) < tol


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    max_restarts: int = 32
    residual_tol: float = 1e-10
    distinct_tol: float = 1e-6
    stop_at_first: bool = False


@dataclass
class PolygonSolution:
    gammas: np.ndarray
    lam: float
    residual: float
    ambiguous: bool = False
    alternatives: list = field(default_factory=list)

    def r_values(self) -> tuple[float, float, float, float]:
        return r_coefficients(self.gammas)


def entropy_vector(state: PureState) -> EntropyVector:
    if (state.n, state.d) != (4, 2):
        raise InputError("entropy vector is defined for four-qubit states")
    singles = tuple(von_neumann_entropy(partial_trace(state, [j])) for j in range(1, 5))
    pairs = tuple(von_neumann_entropy(partial_trace(state, p)) for p, _ in BIPARTITIONS)
    return EntropyVector(singles, pairs)


def _radicals(g: np.ndarray) -> np.ndarray:
    s = np.sqrt(np.clip(g, 0.0, None))
    return np.array([s[a] * s[b] for a, b in _PRODUCTS])


def r_coefficients(gammas: np.ndarray) -> tuple[float, float, float, float]:
    t = _radicals(np.asarray(gammas, dtype=float))
    total = t.sum()
    return total, total - 2 * t[0], total - 2 * t[1], total - 2 * t[2]


def system_residuals(gammas: np.ndarray, lam: float, ev: EntropyVector) -> np.ndarray:
    """All seven equation residuals for given gammas and lambda."""
    g = np.asarray(gammas, dtype=float)
    face = _FACES @ g - np.asarray(ev.singles)
    _, r1, r2, r3 = r_coefficients(g)
    rad = np.array([r1, r2, r3]) - lam * np.asarray(ev.pairs)
    return np.concatenate([face, rad])


def _fun(w, singles, pairs):
    u, v = w[:6], w[6]
    g = u * u
    face = _FACES @ g - singles
    t = np.array([abs(u[a] * u[b]) for a, b in _PRODUCTS])
    total = t.sum()
    rad = np.array([total - 2 * t[0], total - 2 * t[1], total - 2 * t[2]]) - v * v * pairs
    return np.concatenate([face, rad])


def _jac(w, singles, pairs):
    u, v = w[:6], w[6]
    J = np.zeros((7, 7))
    J[:4, :6] = _FACES * (2 * u)
    # d|u_a u_b|/du_a = sign(u_a) |u_b|
    dt = np.zeros((3, 6))
    for k, (a, b) in enumerate(_PRODUCTS):
        dt[k, a] = np.sign(u[a]) * abs(u[b])
        dt[k, b] = np.sign(u[b]) * abs(u[a])
    sign = np.ones((3, 3)) - 2 * np.eye(3)
    J[4:, :6] = sign @ dt
    J[4:, 6] = -2 * v * pairs
    return J


def _start(rng: np.random.Generator, singles: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    g0 = rng.uniform(0.0, 1.0, 6)
    # least-squares projection onto the face equations
    corr, *_ = np.linalg.lstsq(_FACES, singles - _FACES @ g0, rcond=None)
    g = np.clip(g0 + corr, 1e-6, None)
    _, r1, _, _ = r_coefficients(g)
    lam = max(r1 / pairs[0], 1e-6)
    return np.concatenate([np.sqrt(g), [np.sqrt(lam)]])


def solve_polygon_system(ev: EntropyVector, cfg: SolverConfig | None = None) -> PolygonSolution:
    """Damped least squares (Levenberg-Marquardt) from seeded restarts."""
    cfg = cfg or SolverConfig()
    if max(ev.singles + ev.pairs) < VANISHING_ENTROPY:
        return PolygonSolution(np.zeros(6), 0.0, 0.0)
    if min(ev.pairs) < VANISHING_ENTROPY:
        raise InputError("a vanishing bipartition entropy makes the radical system degenerate")
    singles = np.asarray(ev.singles, dtype=float)
    pairs = np.asarray(ev.pairs, dtype=float)
    rng = np.random.default_rng(cfg.seed)

    accepted: list[PolygonSolution] = []
    best = np.inf
    for _ in range(cfg.max_restarts):
        w0 = _start(rng, singles, pairs)
        res = least_squares(
            _fun, w0, jac=_jac, args=(singles, pairs), method="lm",
            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000,
        )
        gam = res.x[:6] ** 2
        lam = float(res.x[6] ** 2)
        resid = float(np.abs(system_residuals(gam, lam, ev)).max())
        best = min(best, resid)
        if resid < cfg.residual_tol:
            accepted.append(PolygonSolution(gam, lam, resid))
            if cfg.stop_at_first:
                break
    if not accepted:
        raise SolverError(
            f"polygon system did not converge in {cfg.max_restarts} starts "
            f"(best residual {best:.3e})",
            best,
        )
    first = accepted[0]
    for sol in accepted[1:]:
        if np.abs(sol.gammas - first.gammas).max() > cfg.distinct_tol and not any(
            np.abs(sol.gammas - alt.gammas).max() <= cfg.distinct_tol for alt in first.alternatives
        ):
            first.alternatives.append(sol)
    first.ambiguous = bool(first.alternatives)
    return first


def polygon_from_solution(sol: PolygonSolution) -> float:
    rs = list(sol.r_values())
    for k, r in enumerate(rs):
        if r < 0:
            if r < -R_BAND:
                raise ConsistencyError(f"R_{k} = {r:.3e} is negative beyond round-off")
            rs[k] = 0.0
    s_total = 2.0 * float(np.sum(sol.gammas))
    volume = np.sqrt(2.0) / 3.0 * np.sqrt(s_total) * (rs[0] * rs[1] * rs[2] * rs[3]) ** 0.25
    return float(3 ** (7 / 6) / 2 * volume ** (2 / 3))


def polygon_details(state: PureState, cfg: SolverConfig | None = None):
    """(P, solution or None); the solution is None when P is short-circuited to 0."""
    ev = entropy_vector(state)
    if ev.vanishing():
        return 0.0, None
    sol = solve_polygon_system(ev, cfg)
    return polygon_from_solution(sol), sol


def polygon_measure(state: PureState, cfg: SolverConfig | None = None) -> float:
    return polygon_details(state, cfg)[0]
