"""GME-AME measure, Scott measure, k-uniformity and consolidated reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .chmap import op_to_state, pair_marginals
from .errors import ConsistencyError, InputError
from .statecore import PureState, partial_trace, purity, subset_purity

FLAG_TOL = 1e-9
ROUNDOFF = 1e-12


@dataclass(frozen=True)
class BipartitionLedger:
    """Canonical subsets per size ``l`` and their multiplicity ``m_l``.

    For even ``n`` at ``l = n/2`` only subsets containing party 1 are listed, so
    each bipartition appears once.
    """

    n: int
    entries: dict  # l -> tuple of subsets

    def m(self, l: int) -> int:
        return len(self.entries[l])

    def subsets(self):
        for l, subs in self.entries.items():
            for s in subs:
                yield l, s


@lru_cache(maxsize=None)
def bipartition_ledger(n: int) -> BipartitionLedger:
    if n < 2:
        raise InputError("need at least two parties")
    entries = {}
    for l in range(1, n // 2 + 1):
        subs = list(combinations(range(1, n + 1), l))
        if 2 * l == n:
            subs = [s for s in subs if s[0] == 1]
        entries[l] = tuple(subs)
    return BipartitionLedger(n, entries)


def _linear_entropy(p: float) -> float:
    """1 - p, with round-off residue of a pure reduction snapped to exactly zero."""
    le = 1.0 - p
    if le < -ROUNDOFF:
        raise ConsistencyError(f"purity {p!r} exceeds 1 beyond round-off")
    return 0.0 if le <= ROUNDOFF else le


def gme_ame_from_purities(n: int, d: int, purities: dict) -> float:
    """Product of normalized linear entropies over the ledger subsets."""
    value = 1.0
    for l, s in bipartition_ledger(n).subsets():
        dl = d**l
        value *= dl / (dl - 1) * _linear_entropy(purities[s])
    return value


def ledger_purities(state: PureState) -> dict:
    return {s: subset_purity(state, s) for _, s in bipartition_ledger(state.n).subsets()}


def gme_ame(state: PureState) -> float:
    """GME-AME value in [0, 1]: zero for biseparable states, one only for AME states."""
    return gme_ame_from_purities(state.n, state.d, ledger_purities(state))


def gme_ame_operator(A: np.ndarray) -> float:
    """GME-AME of |A> using the Gram-matrix shortcuts for the pair marginals."""
    state = op_to_state(A)
    r12, r13, r14 = pair_marginals(A)
    purities = {(j,): purity(partial_trace(state, [j])) for j in range(1, 5)}
    purities.update({(1, 2): purity(r12), (1, 3): purity(r13), (1, 4): purity(r14)})
    return gme_ame_from_purities(4, state.d, purities)


def _check_k(n: int, k: int):
    if not 1 <= k <= n // 2:
        raise InputError(f"k must lie in 1..{n // 2}, got {k}")


def scott_from_purities(n: int, d: int, k: int, purity_sum: float) -> float:
    # k!(n-k)!/n! == 1 / C(n, k); purity_sum runs over all C(n, k) subsets
    dk = d**k
    return dk / (dk - 1) * (1.0 - purity_sum / comb(n, k))


def scott(state: PureState, k: int) -> float:
    """Scott's average linear entropy over all C(n, k) size-k reductions."""
    _check_k(state.n, k)
    total = sum(subset_purity(state, s) for s in combinations(range(1, state.n + 1), k))
    return scott_from_purities(state.n, state.d, k, total)


def is_k_uniform(state: PureState, k: int, tol: float = FLAG_TOL) -> bool:
    _check_k(state.n, k)
    target = np.eye(state.d**k) / state.d**k
    for s in combinations(range(1, state.n + 1), k):
        if np.abs(partial_trace(state, s).mat - target).max() >= tol:
            return False
    return True


@dataclass
class MeasureReport:
    gme_ame: float
    scott: dict[int, float]
    purities: dict[tuple, float]
    flags: set[str] = field(default_factory=set)
    polygon: float | None = None

    def to_dict(self, digits: int = 12) -> dict:
        fmt = lambda v: float(f"{v:.{digits}g}")
        out = {
            "gme_ame": fmt(self.gme_ame),
            "scott": {str(k): fmt(v) for k, v in sorted(self.scott.items())},
            "purities": {"".join(map(str, s)): fmt(v) for s, v in sorted(self.purities.items())},
            "flags": sorted(self.flags),
        }
        if self.polygon is not None:
            out["polygon"] = fmt(self.polygon)
        return out


def measure_report(state: PureState, want_polygon: bool = False, solver_cfg=None) -> MeasureReport:
    if want_polygon and (state.n, state.d) != (4, 2):
        raise InputError("polygon measure is defined for four qubits only")
    n, d = state.n, state.d
    purities = {}
    for l in range(1, n // 2 + 1):
        for s in combinations(range(1, n + 1), l):
            purities[s] = subset_purity(state, s)
    value = gme_ame_from_purities(n, d, purities)
    scotts = {
        k: scott_from_purities(n, d, k, sum(p for s, p in purities.items() if len(s) == k))
        for k in range(1, n // 2 + 1)
    }

    flags = set()
    ledger = [s for _, s in bipartition_ledger(n).subsets()]
    if min(1.0 - purities[s] for s in ledger) < FLAG_TOL:
        flags.add("biseparable")
    if value >= 1 - FLAG_TOL:
        flags.add("ame")
    for k in range(1, n // 2 + 1):
        if is_k_uniform(state, k, FLAG_TOL):
            flags.add(f"k_uniform({k})")

    poly = None
    if want_polygon:
        from .polygon import polygon_measure

        poly = polygon_measure(state, solver_cfg)
    return MeasureReport(value, scotts, purities, flags, poly)
