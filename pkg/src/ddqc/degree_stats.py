"""Degree distributions, their moments and step CDF."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class DegreeDistribution:
    """Probability mass function over the distinct degrees of a graph.

    Probabilities are stored as integer multiplicities over ``n_nodes`` so
    interval sums can be formed from exact counts.
    """

    support: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    n_nodes: int
    mean: float
    std: float

    def __post_init__(self):
        self.support.setflags(write=False)
        self.counts.setflags(write=False)

    @property
    def probs(self) -> np.ndarray:
        return self.counts / self.n_nodes

    @property
    def min_degree(self) -> int:
        return int(self.support[0])

    @property
    def max_degree(self) -> int:
        return int(self.support[-1])

    def count_below(self, x: float, inclusive: bool = False) -> int:
        """Number of nodes with degree < x (or <= x when ``inclusive``)."""
        side = "right" if inclusive else "left"
        idx = int(np.searchsorted(self.support, x, side=side))
        return int(self._cumcounts[idx])

    @property
    def _cumcounts(self) -> np.ndarray:
        cached = self.__dict__.get("_cum")
        if cached is None:
            cached = np.concatenate([[0], np.cumsum(self.counts)])
            object.__setattr__(self, "_cum", cached)
        return cached

    def to_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "mean": self.mean,
            "std": self.std,
            "support": self.support.tolist(),
            "probs": self.probs.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["degree", "probability"])
        for d, p in zip(self.support.tolist(), self.probs.tolist()):
            writer.writerow([d, repr(p)])
        return buf.getvalue()


def from_degree_sequence(seq) -> DegreeDistribution:
    arr = np.asarray(seq, dtype=np.int64).ravel()
    if arr.size == 0:
        raise DomainError("degree sequence is empty")
    if arr.min() < 0:
        raise DomainError("degrees must be nonnegative")
    support, counts = np.unique(arr, return_counts=True)
    n = int(arr.size)
    # exact integer moments, one rounding each
    s1 = sum(int(c) * int(d) for d, c in zip(support, counts))
    s2 = sum(int(c) * int(d) * int(d) for d, c in zip(support, counts))
    mean = s1 / n
    var_num = n * s2 - s1 * s1
    std = math.sqrt(var_num / (n * n)) if var_num > 0 else 0.0
    return DegreeDistribution(support.astype(np.int64), counts.astype(np.int64), n, mean, std)


def from_graph(graph) -> DegreeDistribution:
    from .graph_io import degree_sequence

    return from_degree_sequence(degree_sequence(graph))


def mean(dd: DegreeDistribution) -> float:
    return dd.mean


def std(dd: DegreeDistribution) -> float:
    return dd.std


def cdf(dd: DegreeDistribution, d) -> float:
    """Right-continuous step CDF ``P(degree <= d)``."""
    return dd.count_below(d, inclusive=True) / dd.n_nodes


def cdf_on_grid(dd: DegreeDistribution, upto: int) -> np.ndarray:
    """CDF evaluated at every integer ``0..upto``."""
    grid = np.arange(upto + 1)
    idx = np.searchsorted(dd.support, grid, side="right")
    return dd._cumcounts[idx] / dd.n_nodes
