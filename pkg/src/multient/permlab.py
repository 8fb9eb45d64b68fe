"""Bipartite permutation states: enumeration, enphasing, exact measures, classes.

A permutation spec on d^2 basis points maps point ``t = i*d + j`` to
``images[t]``; its state is |P> with amplitude 1/d (times a sign or phase) on
``|images[t]>|t>``. Purities of permutation and +-1 enphased states are
integers over d^4, so all measure values are exact rationals.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import kernels
from .chmap import op_to_state, permutation_operator
from .errors import InputError
from .statecore import PureState

EXACT_MEASURES = ("gme_ame", "scott", "scott1")
MEASURES = EXACT_MEASURES + ("polygon",)
CHUNK = 32768


@dataclass(frozen=True)
class PermutationSpec:
    d: int
    images: tuple[int, ...]
    phases: tuple[float, ...] | None = None

    def __post_init__(self):
        n = self.d * self.d
        if sorted(self.images) != list(range(n)):
            raise InputError(f"images must be a bijection on 0..{n - 1}")
        if self.phases is not None and len(self.phases) != n:
            raise InputError(f"phases must have length {n}")

    @classmethod
    def from_map(cls, d: int, fn, phases=None) -> "PermutationSpec":
        """Spec from a map (i, j) -> (m, n) on digit pairs."""
        images = []
        for i in range(d):
            for j in range(d):
                m, n = fn(i, j)
                images.append((m % d) * d + n % d)
        return cls(d, tuple(images), phases)

    def operator(self) -> np.ndarray:
        signs = None if self.phases is None else np.exp(1j * np.asarray(self.phases))
        return permutation_operator(self.images, self.d, signs)


def perm_state(spec: PermutationSpec) -> PureState:
    """|P> normalized by 1/d; with phases, amplitude e^{i theta_t}/d at the mapped point."""
    return op_to_state(spec.operator())


class Record(NamedTuple):
    index: int
    images: tuple
    signs: tuple | None
    values: dict


# ---------------------------------------------------------------- exact values

def exact_values(nums: Sequence[int], d: int, measures: Iterable[str] = ("gme_ame",)) -> dict:
    """Measure values from the seven purity numerators (parties 1, 2, 3, 4, 12, 13, 14)."""
    den = d**4
    f1 = Fraction(d, d - 1)
    f2 = Fraction(d * d, d * d - 1)
    singles = [Fraction(int(v), den) for v in nums[:4]]
    pairs = [Fraction(int(v), den) for v in nums[4:7]]
    out = {}
    for m in measures:
        if m == "gme_ame":
            v = Fraction(1)
            for p in singles:
                v *= f1 * (1 - p)
            for p in pairs:
                v *= f2 * (1 - p)
            out[m] = v
        elif m == "scott":
            # all six pairs; complements share purities
            out[m] = f2 * (1 - 2 * sum(pairs) / 6)
        elif m == "scott1":
            out[m] = f1 * (1 - sum(singles) / 4)
        elif m != "polygon":
            raise InputError(f"unknown measure {m!r}; choose from {MEASURES}")
    return out


def all_permutations(d: int) -> np.ndarray:
    """Every bijection of d^2 points, in lexicographic order (row = rank)."""
    return np.array(list(itertools.permutations(range(d * d))), dtype=np.int64)


def sign_patterns(d: int) -> np.ndarray:
    """All 2^(d^2) +-1 patterns; bit t of the pattern index sets phase pi on point t."""
    n = d * d
    bits = (np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1
    return (1 - 2 * bits).astype(np.int8)


def _check_sweep_args(d: int, enphase: str):
    if d not in (2, 3):
        raise InputError(f"exhaustive sweeps support d in {{2, 3}}, got {d}")
    if enphase not in ("none", "binary"):
        raise InputError(f"enphase must be 'none' or 'binary', got {enphase!r}")
    if enphase == "binary" and d != 2:
        raise InputError("binary enphasing is only swept for d = 2")


def sweep_arrays(d: int, enphase: str = "none", threads: int = 1, backend: str | None = None):
    """(images, signs, numerators) for the whole family, rows in index order."""
    _check_sweep_args(d, enphase)
    perms = all_permutations(d)
    signs = None
    if enphase == "binary":
        pats = sign_patterns(d)
        signs = np.tile(pats, (len(perms), 1))
        perms = np.repeat(perms, len(pats), axis=0)

    chunks = [(s, min(s + CHUNK, len(perms))) for s in range(0, len(perms), CHUNK)]

    def work(bounds):
        a, b = bounds
        sg = None if signs is None else signs[a:b]
        return kernels.purity_numerators(perms[a:b], sg, d, backend)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return perms, signs, np.concatenate(parts, axis=0)


def sweep(d: int, measures: Iterable[str] = ("gme_ame",), enphase: str = "none",
          threads: int = 1, solver_cfg=None) -> Iterator[Record]:
    """Stream records in lexicographic order (binary enphase: index = rank * 2^(d^2) + pattern)."""
    measures = tuple(measures)
    for m in measures:
        if m not in MEASURES:
            raise InputError(f"unknown measure {m!r}; choose from {MEASURES}")
    if "polygon" in measures and d != 2:
        raise InputError("polygon measure is only available for d = 2")
    perms, signs, nums = sweep_arrays(d, enphase, threads)
    yield from _records(perms, signs, nums, d, measures, solver_cfg)


def _records(perms, signs, nums, d, measures, solver_cfg=None, offset=0):
    cache: dict[tuple, dict] = {}
    for i in range(len(perms)):
        key = tuple(nums[i])
        vals = cache.get(key)
        if vals is None:
            vals = cache[key] = exact_values(key, d, measures)
        vals = dict(vals)
        sg = None if signs is None else tuple(int(s) for s in signs[i])
        if "polygon" in measures:
            from .polygon import polygon_measure

            phases = None if sg is None else tuple(0.0 if s > 0 else np.pi for s in sg)
            spec = PermutationSpec(d, tuple(int(v) for v in perms[i]), phases)
            vals["polygon"] = polygon_measure(perm_state(spec), solver_cfg)
        yield Record(offset + i, tuple(int(v) for v in perms[i]), sg, vals)


def enphase_sweep(spec: PermutationSpec, measures: Iterable[str] = ("gme_ame",),
                  solver_cfg=None) -> Iterator[Record]:
    """All {0, pi} phase patterns on one permutation; index = pattern number."""
    if spec.d != 2:
        raise InputError("enphase sweeps are defined for d = 2")
    pats = sign_patterns(spec.d)
    perms = np.tile(np.asarray(spec.images, dtype=np.int64), (len(pats), 1))
    nums = kernels.purity_numerators(perms, pats, spec.d)
    yield from _records(perms, pats, nums, spec.d, tuple(measures), solver_cfg)


def exact_record_values(spec: PermutationSpec, measures=("gme_ame",)) -> dict:
    """Exact values for a single spec with no phases or {0, pi} phases."""
    signs = None
    if spec.phases is not None:
        ph = np.mod(np.asarray(spec.phases), 2 * np.pi)
        if not np.all(np.isclose(ph, 0) | np.isclose(ph, np.pi) | np.isclose(ph, 2 * np.pi)):
            raise InputError("exact evaluation needs phases in {0, pi}")
        signs = np.where(np.isclose(ph, np.pi), -1, 1)[None, :]
    nums = kernels.purity_numerators(np.asarray([spec.images]), signs, spec.d)[0]
    return exact_values(nums, spec.d, measures)


# ------------------------------------------------------------- classification

@dataclass(frozen=True)
class ClassEntry:
    value: Fraction | float
    count: int
    representative: int


@dataclass
class ClassHistogram:
    entries: list[ClassEntry]
    total: int

    def __len__(self):
        return len(self.entries)

    def count_of(self, value) -> int:
        for e in self.entries:
            if e.value == value:
                return e.count
        return 0

    def as_dict(self) -> dict:
        return {e.value: e.count for e in self.entries}


def classify(records: Iterable, measure: str = "gme_ame", mode: str = "exact",
             eps: float = 1e-9) -> ClassHistogram:
    """Group record values exactly, or merge sorted float values closer than ``eps``."""
    counts: dict = {}
    reps: dict = {}
    total = 0
    for rec in records:
        v = rec.values[measure]
        total += 1
        if v in counts:
            counts[v] += 1
        else:
            counts[v] = 1
            reps[v] = rec.index
    if total == 0:
        raise InputError("cannot classify an empty record stream")
    if mode == "exact":
        entries = [ClassEntry(v, counts[v], reps[v]) for v in sorted(counts)]
        return ClassHistogram(entries, total)
    if mode != "tol":
        raise InputError(f"mode must be 'exact' or 'tol', got {mode!r}")
    entries: list[ClassEntry] = []
    anchor = None
    for v in sorted(counts, key=float):
        fv = float(v)
        if anchor is not None and fv - anchor <= eps:
            last = entries[-1]
            entries[-1] = ClassEntry(last.value, last.count + counts[v], min(last.representative, reps[v]))
        else:
            entries.append(ClassEntry(fv, counts[v], reps[v]))
            anchor = fv
    return ClassHistogram(entries, total)


def classify_arrays(nums: np.ndarray, d: int, measure: str = "gme_ame") -> ClassHistogram:
    """Exact histogram straight from a numerator array (no per-record objects)."""
    uniq, first, inverse = np.unique(nums, axis=0, return_index=True, return_inverse=True)
    per_row = np.bincount(inverse.reshape(-1), minlength=len(uniq))
    counts: dict[Fraction, int] = {}
    reps: dict[Fraction, int] = {}
    for row, idx, c in zip(uniq, first, per_row):
        v = exact_values(row, d, (measure,))[measure]
        counts[v] = counts.get(v, 0) + int(c)
        reps[v] = min(reps.get(v, idx), int(idx))
    entries = [ClassEntry(v, counts[v], reps[v]) for v in sorted(counts)]
    return ClassHistogram(entries, int(nums.shape[0]))


# -------------------------------------------------------- published tables

# (value to 4 decimals, count), in the order printed; duplicates are kept as printed.
PUBLISHED_GME_AME_D3 = (
    (0.0000, 72), (0.4444, 1296), (0.5000, 864), (0.5093, 1296), (0.6019, 1296),
    (0.6296, 5184), (0.6667, 13608), (0.6713, 10368), (0.6821, 10368), (0.6914, 12960),
    (0.6944, 3456), (0.7160, 23328), (0.7222, 2592), (0.7346, 5184), (0.7407, 10368),
    (0.7415, 25920), (0.7500, 288), (0.7608, 36288), (0.6420, 5184), (0.7894, 10368),
    (0.6667, 13608), (0.8133, 25920), (0.8889, 1296), (0.7176, 10368), (0.8148, 15552),
    (0.7222, 2592), (0.8395, 20736), (0.8403, 1728), (0.7654, 64800), (0.8056, 5184),
    (0.7901, 34344), (0.8920, 2592), (1.0000, 72),
)
PUBLISHED_SCOTT_D3 = (
    (0.6667, 72), (0.8148, 1170), (0.8333, 864), (0.8148, 1422), (0.8796, 20736),
    (0.8704, 10368), (0.8889, 27432), (0.9630, 3888), (0.8889, 27432), (0.8981, 36288),
    (0.9167, 101376), (0.9352, 46656), (0.8519, 1296), (0.9074, 44064), (0.9259, 44712),
    (1.0000, 72),
)


def compare_with_published(hist: ClassHistogram, table, decimals: int = 4) -> dict:
    """Machine-readable discrepancy report between an exact histogram and a printed table."""
    printed: dict[float, list[int]] = {}
    for v, c in table:
        printed.setdefault(round(v, decimals), []).append(c)
    computed: dict[float, list] = {}
    for e in hist.entries:
        computed.setdefault(round(float(e.value), decimals), []).append(e)

    matched, count_mismatch, missing, extra, duplicates = [], [], [], [], []
    for v, counts in sorted(printed.items()):
        if len(counts) > 1:
            duplicates.append({"value": v, "counts": counts})
    for v in sorted(set(printed) | set(computed)):
        got = computed.get(v, [])
        want = printed.get(v, [])
        got_count = sum(e.count for e in got)
        exact = [f"{e.value.numerator}/{e.value.denominator}" if isinstance(e.value, Fraction)
                 else repr(e.value) for e in got]
        if not got:
            missing.append({"value": v, "printed_counts": want})
        elif not want:
            extra.append({"value": v, "exact": exact, "count": got_count})
        elif got_count in want or got_count == sum(want):
            matched.append({"value": v, "exact": exact, "count": got_count, "printed_counts": want})
        else:
            count_mismatch.append({"value": v, "exact": exact, "count": got_count,
                                   "printed_counts": want})
    printed_total = sum(c for _, c in table)
    return {
        "computed_classes": len(hist.entries),
        "printed_rows": len(table),
        "printed_distinct_values": len(printed),
        "computed_total": hist.total,
        "printed_total": printed_total,
        "matched": matched,
        "count_mismatch": count_mismatch,
        "missing_from_computed": missing,
        "absent_from_printed": extra,
        "duplicate_printed_rows": duplicates,
    }


def qubit_audit() -> dict:
    """Normalized d = 2 class values alongside their prefactor-stripped counterparts."""
    perms, _, nums = sweep_arrays(2)
    g = classify_arrays(nums, 2, "gme_ame")
    s = classify_arrays(nums, 2, "scott")
    pair_prefactor = Fraction(4, 3) ** 3
    return {
        "records": int(len(perms)),
        "gme_ame_classes": [(str(e.value), e.count) for e in g.entries],
        "scott_classes": [(str(e.value), e.count) for e in s.entries],
        "gme_ame_max": str(g.entries[-1].value),
        "gme_ame_max_without_pair_prefactor": str(g.entries[-1].value / pair_prefactor),
        "scott_max": str(s.entries[-1].value),
        "scott_max_without_prefactor": str(s.entries[-1].value / Fraction(4, 3)),
        "printed_maxima": {"gme_ame": 0.3, "scott": 0.7, "polygon": 0.96},
    }
