"""Time-series distances (Euclidean, DTW), barycenters, k-means, and the
all-pairs similarity distance matrix.

DTW uses squared pointwise cost over monotone alignment paths with steps
{(i-1,j), (i,j-1), (i-1,j-1)} and takes the square root of the optimal
cumulative cost, so DTW <= Euclidean for equal-length series (the diagonal
path is admissible).  An optional Sakoe-Chiba band restricts |i - j|.

All randomized behavior is driven by an explicit seed and every tie breaks
toward the lowest index, so runs are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device_data import MetricSeries

try:  # the DP kernel is hot for 127x485-scale data; JIT when available
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

DBA_TOL = 1e-9


class ClusteringError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceMetricChoice:
    kind: str  # "euclidean" | "dtw"
    dtw_band: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("euclidean", "dtw"):
            raise ClusteringError(f"unknown distance metric {self.kind!r}")
        if self.dtw_band is not None and self.dtw_band < 0:
            raise ClusteringError("dtw band must be >= 0")


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: np.ndarray  # n x n, symmetric, zero diagonal

    def to_payload(self) -> dict:
        return {"n": self.n, "d": [[float(v) for v in row] for row in self.d]}


@dataclass
class ClusterResult:
    k: int
    metric: DistanceMetricChoice
    seed: int
    assignments: tuple[int, ...]
    barycenters: tuple[tuple[float, ...], ...]
    inertia: float
    iterations: int
    inertia_history: tuple[float, ...] = ()
    empty_repairs: int = 0

    def to_payload(self) -> dict:
        return {
            "k": self.k,
            "metric": {"kind": self.metric.kind, "band": self.metric.dtw_band},
            "seed": self.seed,
            "assignments": list(self.assignments),
            "barycenters": [list(b) for b in self.barycenters],
            "inertia": self.inertia,
            "iterations": self.iterations,
        }


def _as_series(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 1:
        raise ClusteringError("series must be one-dimensional")
    if np.isnan(arr).any():
        raise ClusteringError("series contains absent values; preprocess first")
    return arr


def euclidean_distance(a, b) -> float:
    """sqrt of the summed squared pointwise differences."""
    a, b = _as_series(a), _as_series(b)
    if len(a) != len(b):
        raise ClusteringError(f"length mismatch {len(a)} vs {len(b)}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


@njit(cache=True)
def _dtw_table(a: np.ndarray, b: np.ndarray, band: int) -> np.ndarray:
    """Cumulative squared-cost table; band < 0 means unconstrained."""
    n, m = a.shape[0], b.shape[0]
    table = np.full((n, m), np.inf)
    for i in range(n):
        j_lo, j_hi = 0, m - 1
        if band >= 0:
            j_lo = max(0, i - band)
            j_hi = min(m - 1, i + band)
        for j in range(j_lo, j_hi + 1):
            cost = (a[i] - b[j]) ** 2
            if i == 0 and j == 0:
                table[0, 0] = cost
                continue
            best = np.inf
            if i > 0 and table[i - 1, j] < best:
                best = table[i - 1, j]
            if j > 0 and table[i, j - 1] < best:
                best = table[i, j - 1]
            if i > 0 and j > 0 and table[i - 1, j - 1] < best:
                best = table[i - 1, j - 1]
            table[i, j] = cost + best
    return table


def _dtw_checked(a, b, band: int | None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b = _as_series(a), _as_series(b)
    if len(a) == 0 or len(b) == 0:
        raise ClusteringError("dtw requires non-empty series")
    if band is not None and band < abs(len(a) - len(b)):
        raise ClusteringError(
            f"band {band} cannot reach the corner of a {len(a)}x{len(b)} alignment")
    table = _dtw_table(a, b, -1 if band is None else band)
    return a, b, table


def dtw_distance(a, b, band: int | None = None) -> float:
    """Dynamic time warping distance (sqrt of optimal cumulative squared cost)."""
    _, _, table = _dtw_checked(a, b, band)
    end = table[-1, -1]
    if not np.isfinite(end):
        raise ClusteringError("band leaves the alignment corner unreachable")
    return float(math.sqrt(end))


def dtw_path(a, b, band: int | None = None) -> tuple[float, list[tuple[int, int]]]:
    """Distance plus one optimal alignment path from (0,0) to (n-1,m-1).
    Ties prefer the diagonal, then (i-1,j), then (i,j-1)."""
    a, b, table = _dtw_checked(a, b, band)
    end = table[-1, -1]
    if not np.isfinite(end):
        raise ClusteringError("band leaves the alignment corner unreachable")
    i, j = len(a) - 1, len(b) - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        candidates = []
        if i > 0 and j > 0:
            candidates.append((table[i - 1, j - 1], (i - 1, j - 1)))
        if i > 0:
            candidates.append((table[i - 1, j], (i - 1, j)))
        if j > 0:
            candidates.append((table[i, j - 1], (i, j - 1)))
        _, (i, j) = min(candidates, key=lambda c: c[0])
        path.append((i, j))
    path.reverse()
    return float(math.sqrt(end)), path


def _metric_distance(a, b, metric: DistanceMetricChoice) -> float:
    if metric.kind == "euclidean":
        return euclidean_distance(a, b)
    return dtw_distance(a, b, metric.dtw_band)


def preprocess_series(series: MetricSeries, impute: bool = True,
                      znorm: bool = False) -> np.ndarray:
    """Turn a MetricSeries into a complete real vector.

    Absent values are linearly interpolated between the nearest present
    neighbors, with flat extension at the edges.  Optional z-normalization
    maps constant series to all zeros.
    """
    values = np.array([np.nan if v is None else v for v in series.values], dtype=float)
    mask = ~np.isnan(values)
    if not impute:
        if not mask.all():
            raise ClusteringError(
                f"qubit {series.qubit} series has absent values; enable impute")
    elif not mask.all():
        if mask.sum() < 1:
            raise ClusteringError(
                f"qubit {series.qubit} series has no present values to impute from")
        # a single present value extends flat across the whole grid
        idx = np.arange(len(values))
        values = np.interp(idx, idx[mask], values[mask])
    if znorm:
        sd = values.std()
        values = np.zeros_like(values) if sd == 0 else (values - values.mean()) / sd
    return values


def euclidean_barycenter(members) -> np.ndarray:
    """Pointwise arithmetic mean: the minimizer of summed squared Euclidean
    distance to the members."""
    arrays = [_as_series(m) for m in members]
    if not arrays:
        raise ClusteringError("barycenter of an empty set")
    length = len(arrays[0])
    if any(len(a) != length for a in arrays):
        raise ClusteringError("members must share one length")
    return np.mean(np.stack(arrays), axis=0)


def dba_barycenter(members, iterations: int = 10,
                   band: int | None = None) -> np.ndarray:
    """DTW barycenter averaging.

    Starts from the medoid (member minimizing summed DTW distance to the
    others, ties to the lowest index), then repeatedly aligns every member
    to the current barycenter along an optimal DTW path and replaces each
    barycenter point with the mean of the member points aligned to it.
    Stops at the iteration cap or when the max pointwise change < 1e-9.
    """
    arrays = [_as_series(m) for m in members]
    if not arrays:
        raise ClusteringError("barycenter of an empty set")
    if len(arrays) == 1:
        return arrays[0].copy()

    sums = [sum(dtw_distance(a, b, band) for b in arrays) for a in arrays]
    center = arrays[int(np.argmin(sums))].copy()

    for _ in range(iterations):
        totals = np.zeros_like(center)
        counts = np.zeros(len(center))
        for member in arrays:
            _, path = dtw_path(center, member, band)
            for i, j in path:
                totals[i] += member[j]
                counts[i] += 1
        updated = totals / counts  # every row is visited by the path
        if np.max(np.abs(updated - center)) < DBA_TOL:
            center = updated
            break
        center = updated
    return center


def _barycenter(members, metric: DistanceMetricChoice) -> np.ndarray:
    if metric.kind == "euclidean":
        return euclidean_barycenter(members)
    return dba_barycenter(members, band=metric.dtw_band)


def _plus_plus_init(data: np.ndarray, k: int, metric: DistanceMetricChoice,
                    rng: np.random.Generator) -> list[np.ndarray]:
    """k-means++ seeding: subsequent centers drawn with probability
    proportional to the squared distance to the nearest chosen center."""
    n = data.shape[0]
    centers = [data[int(rng.integers(n))].copy()]
    d2 = np.array([_metric_distance(x, centers[0], metric) ** 2 for x in data])
    while len(centers) < k:
        total = d2.sum()
        if total <= 0:
            pick = int(rng.integers(n))
        else:
            pick = int(rng.choice(n, p=d2 / total))
        centers.append(data[pick].copy())
        new = np.array([_metric_distance(x, centers[-1], metric) ** 2 for x in data])
        d2 = np.minimum(d2, new)
    return centers


def kmeans_timeseries(series_set, k: int, metric: DistanceMetricChoice,
                      seed: int, max_iter: int = 100) -> ClusterResult:
    """Seeded k-means over equal-length real series.

    Assignment takes the nearest barycenter under the chosen metric (ties to
    the lowest cluster id); the update step is the pointwise mean for
    Euclidean and DBA for DTW.  Empty clusters seize the point farthest from
    its barycenter.  Converges when assignments stop changing.
    """
    data = np.stack([_as_series(s) for s in series_set])
    n = data.shape[0]
    if k < 1:
        raise ClusteringError(f"k must be >= 1, got {k}")
    if k > n:
        raise ClusteringError(f"k exceeds series count ({k} > {n})")

    rng = np.random.default_rng(seed)
    centers = _plus_plus_init(data, k, metric, rng)

    def distances_to_centers() -> np.ndarray:
        return np.array([[_metric_distance(x, c, metric) for c in centers]
                         for x in data])

    def repair_empty(assign: np.ndarray, dists: np.ndarray) -> int:
        repairs = 0
        for cluster in range(k):
            if (assign == cluster).any():
                continue
            sizes = np.bincount(assign, minlength=k)
            own = dists[np.arange(n), assign]
            candidates = [i for i in range(n) if sizes[assign[i]] > 1]
            victim = max(candidates, key=lambda i: (own[i], -i))
            assign[victim] = cluster
            repairs += 1
        return repairs

    prev: np.ndarray | None = None
    history: list[float] = []
    repairs = 0
    iterations = max_iter
    for it in range(1, max_iter + 1):
        dists = distances_to_centers()
        assign = dists.argmin(axis=1)
        repairs += repair_empty(assign, dists)
        history.append(float(np.sum(dists[np.arange(n), assign] ** 2)))
        if prev is not None and np.array_equal(assign, prev):
            iterations = it
            break
        prev = assign
        centers = [_barycenter(data[assign == c], metric) for c in range(k)]
    else:
        dists = distances_to_centers()
        assign = dists.argmin(axis=1)
        repairs += repair_empty(assign, dists)
        history.append(float(np.sum(dists[np.arange(n), assign] ** 2)))

    inertia = history[-1]
    return ClusterResult(
        k=k,
        metric=metric,
        seed=seed,
        assignments=tuple(int(c) for c in assign),
        barycenters=tuple(tuple(float(v) for v in c) for c in centers),
        inertia=inertia,
        iterations=iterations,
        inertia_history=tuple(history),
        empty_repairs=repairs,
    )


def distance_matrix(series_set, metric: DistanceMetricChoice) -> DistanceMatrix:
    """All-pairs distances, computed once per unordered pair."""
    data = [_as_series(s) for s in series_set]
    n = len(data)
    if n == 0:
        raise ClusteringError("distance matrix of an empty set")
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = _metric_distance(data[i], data[j], metric)
    return DistanceMatrix(n, d)
