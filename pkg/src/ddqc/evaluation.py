"""Distance matrices over labeled corpora and the scores computed on them."""
from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from . import baselines
from .core import QuantizationParams, quantify, weighted_levels
from .degree_stats import DegreeDistribution, cdf_on_grid, from_graph
from .errors import DegenerateNormalizationError, DomainError, ParameterError

METHODS = ("ddqc", "ks", "powerlaw", "percentiles")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    ids: tuple[str, ...]
    labels: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    method: str
    params: QuantizationParams | None = None

    def __post_init__(self):
        n = len(self.ids)
        if self.values.shape != (n, n) or len(self.labels) != n:
            raise ValueError("ids, labels and values disagree in size")
        self.values.setflags(write=False)

    def __len__(self):
        return len(self.ids)

    def subset(self, idx: Sequence[int]) -> "DistanceMatrix":
        idx = np.asarray(idx)
        return DistanceMatrix(
            tuple(self.ids[i] for i in idx),
            tuple(self.labels[i] for i in idx),
            self.values[np.ix_(idx, idx)].copy(),
            self.method,
            self.params,
        )


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    ids: tuple[str, ...]
    labels: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    mu: float
    sigma: float


def _degree_distributions(items) -> list[DegreeDistribution]:
    out = []
    for it in items:
        if isinstance(it, DegreeDistribution):
            out.append(it)
        else:
            out.append(from_graph(getattr(it, "graph", it)))
    return out


def distance_values(dds: Sequence[DegreeDistribution], method: str, params: QuantizationParams | None = None,
                    allow_degenerate_fit: bool = False) -> np.ndarray:
    """Symmetric pairwise distance values with a zero diagonal."""
    if method == "ddqc":
        params = params or QuantizationParams()
        feats = np.stack([weighted_levels(quantify(dd, params), params.gamma) for dd in dds])
        values = cdist(feats, feats, "cityblock")
    elif method == "percentiles":
        feats = np.stack([baselines.percentiles_quantify(dd) for dd in dds])
        values = cdist(feats, feats, "cityblock")
    elif method == "ks":
        top = max(dd.max_degree for dd in dds)
        feats = np.stack([cdf_on_grid(dd, top) for dd in dds])
        values = cdist(feats, feats, "chebyshev")
    elif method == "powerlaw":
        exps = np.array([baselines.powerlaw_exponent(dd, allow_degenerate_fit) for dd in dds])
        values = np.abs(exps[:, None] - exps[None, :])
    else:
        raise ParameterError(f"unknown method {method!r}; expected one of {METHODS}")
    values = np.maximum(values, values.T)
    np.fill_diagonal(values, 0.0)
    return values


def pairwise_distances(items, method: str = "ddqc", params: QuantizationParams | None = None,
                       allow_degenerate_fit: bool = False) -> DistanceMatrix:
    """Distance matrix over labeled graphs; each item is summarized once.

    Power-law fit failures abort the whole matrix rather than leaving holes.
    """
    items = list(items)
    if len(items) < 2:
        raise DomainError("need at least two items for a distance matrix")
    dds = _degree_distributions(items)
    values = distance_values(dds, method, params, allow_degenerate_fit)
    ids = tuple(getattr(it, "instance_id", str(i)) for i, it in enumerate(items))
    labels = tuple(getattr(it, "label", "") for it in items)
    return DistanceMatrix(ids, labels, values, method, params if method == "ddqc" else None)


def _offdiag_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def normalize_zscores(m: DistanceMatrix) -> NormalizedMatrix:
    n = len(m)
    if n < 2:
        raise DomainError("need at least two items to normalize")
    off = m.values[_offdiag_mask(n)]
    mu = float(off.mean())
    sigma = float(np.sqrt(np.mean((off - mu) ** 2)))
    if sigma <= 1e-12 * max(1.0, abs(mu)):
        raise DegenerateNormalizationError("all pairwise distances are equal; z-scores undefined")
    z = (m.values - mu) / sigma
    np.fill_diagonal(z, 0.0)
    return NormalizedMatrix(m.ids, m.labels, z, mu, sigma)


def _class_masks(labels) -> tuple[np.ndarray, np.ndarray]:
    lab = np.asarray(labels, dtype=object)
    same = lab[:, None] == lab[None, :]
    off = _offdiag_mask(len(lab))
    return same & off, ~same & off


def intra_inter(nm: NormalizedMatrix) -> tuple[float, float]:
    intra_mask, inter_mask = _class_masks(nm.labels)
    if not intra_mask.any():
        raise DomainError("no same-class pairs")
    if not inter_mask.any():
        raise DomainError("no cross-class pairs")
    return float(nm.values[intra_mask].mean()), float(nm.values[inter_mask].mean())


def knn_predictions(m: DistanceMatrix, K: int) -> list[str]:
    n = len(m)
    if not 1 <= K < n:
        raise ParameterError(f"K must satisfy 1 <= K < {n}, got {K}")
    id_rank = np.empty(n, dtype=np.int64)
    id_rank[sorted(range(n), key=lambda i: m.ids[i])] = np.arange(n)
    preds = []
    for i in range(n):
        others = np.array([j for j in range(n) if j != i])
        order = others[np.lexsort((id_rank[others], m.values[i, others]))]
        neighbours = [m.labels[j] for j in order[:K]]
        tally = Counter(neighbours)
        best = max(tally.values())
        tied = {lab for lab, c in tally.items() if c == best}
        preds.append(next(lab for lab in neighbours if lab in tied))
    return preds


def knn_accuracy(m: DistanceMatrix, K: int) -> float:
    """Leave-one-out kNN accuracy.

    Neighbour ties break by ascending instance id; vote ties go to the tied
    label whose member is nearest.
    """
    preds = knn_predictions(m, K)
    return sum(p == t for p, t in zip(preds, m.labels)) / len(m)


def subset_knn_experiment(m: DistanceMatrix, subset_size: int, iterations: int, K: int, seed: int = 0) -> float:
    n = len(m)
    if not 2 <= subset_size <= n:
        raise ParameterError(f"subset_size must lie in [2, {n}], got {subset_size}")
    if iterations < 1:
        raise ParameterError("iterations must be >= 1")
    rng = np.random.default_rng(seed)
    accs = []
    for _ in range(iterations):
        idx = np.sort(rng.choice(n, size=subset_size, replace=False))
        accs.append(knn_accuracy(m.subset(idx), K))
    return float(np.mean(accs))


def temporal_neighbor_distance(nm: NormalizedMatrix, snapshot_ids: Sequence[str]) -> dict[str, float]:
    """Mean normalized distance of each snapshot to its chronological neighbours."""
    if len(snapshot_ids) < 2:
        raise DomainError("need at least two snapshots")
    pos = {iid: i for i, iid in enumerate(nm.ids)}
    missing = [s for s in snapshot_ids if s not in pos]
    if missing:
        raise DomainError(f"unknown snapshot ids: {missing}")
    idx = [pos[s] for s in snapshot_ids]
    out = {}
    for t, s in enumerate(snapshot_ids):
        nbrs = [idx[t + d] for d in (-1, 1) if 0 <= t + d < len(idx)]
        out[s] = float(np.mean([nm.values[idx[t], j] for j in nbrs]))
    return out


@dataclass
class SweepCell:
    alpha: float
    gamma: float
    intra: float
    inter: float

    @property
    def separation(self) -> float:
        return self.inter - self.intra


def parameter_sweep(items, alphas: Sequence[float], gammas: Sequence[float], beta: int = 3) -> list[SweepCell]:
    """INTRA/INTER of the DDQC distance on an alpha x gamma grid."""
    dds = _degree_distributions(items)
    labels = tuple(getattr(it, "label", "") for it in items)
    ids = tuple(getattr(it, "instance_id", str(i)) for i, it in enumerate(items))
    cells = []
    for a in alphas:
        qs = [quantify(dd, QuantizationParams(a, beta)) for dd in dds]
        for g in gammas:
            params = QuantizationParams(a, beta, g)
            feats = np.stack([weighted_levels(q, g) for q in qs])
            values = cdist(feats, feats, "cityblock")
            np.fill_diagonal(values, 0.0)
            nm = normalize_zscores(DistanceMatrix(ids, labels, values, "ddqc", params))
            intra, inter = intra_inter(nm)
            cells.append(SweepCell(float(a), float(g), intra, inter))
    return cells


def stability(m: DistanceMatrix, sizes: Sequence[int], seed: int = 0, repeats: int = 1) -> dict[int, tuple[float, float]]:
    """INTRA/INTER recomputed on random sub-corpora of each size."""
    rng = np.random.default_rng(seed)
    out = {}
    for size in sizes:
        if not 2 <= size <= len(m):
            raise ParameterError(f"size {size} outside [2, {len(m)}]")
        vals = []
        for _ in range(repeats):
            idx = np.sort(rng.choice(len(m), size=size, replace=False))
            vals.append(intra_inter(normalize_zscores(m.subset(idx))))
        out[int(size)] = (float(np.mean([v[0] for v in vals])), float(np.mean([v[1] for v in vals])))
    return out


# --- reports -----------------------------------------------------------------


@dataclass
class EvaluationReport:
    """Accumulates results as tidy ``experiment, method, param, value`` rows."""

    rows: list[tuple[str, str, str, float]] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, experiment: str, method: str, param: str, value: float) -> None:
        if experiment.startswith("knn") and not 0.0 <= value <= 1.0:
            raise ValueError(f"accuracy out of range: {value}")
        self.rows.append((experiment, method, str(param), float(value)))

    def to_dict(self) -> dict:
        nested: dict = {}
        for exp, method, param, value in self.rows:
            nested.setdefault(exp, {}).setdefault(method, {})[param] = value
        return {"meta": self.meta, "results": nested}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["experiment", "method", "param", "value"])
        for exp, method, param, value in self.rows:
            w.writerow([exp, method, param, "nan" if math.isnan(value) else repr(value)])
        return buf.getvalue()
