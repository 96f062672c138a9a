"""Degree distribution quantification and the multi-granularity DDQC distance.

A distribution is cut into four regions at ``[min, mu - a*sigma, mu,
mu + a*sigma, max]``; each region is split into ``L = 2**beta`` equal
intervals and the probability mass in every interval forms the feature
vector. Intervals are half-open except the overall rightmost one, and a
region whose upper bound falls below its lower bound contributes zeros.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .degree_stats import DegreeDistribution
from .errors import DomainError, ParameterError

DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 3
DEFAULT_GAMMA = 0.8


@dataclass(frozen=True)
class QuantizationParams:
    alpha: float = DEFAULT_ALPHA
    beta: int = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        if not self.alpha > 0:
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")
        if int(self.beta) != self.beta or self.beta < 0:
            raise ParameterError(f"beta must be a nonnegative integer, got {self.beta}")
        if not self.gamma > 0:
            raise ParameterError(f"gamma must be > 0, got {self.gamma}")
        object.__setattr__(self, "beta", int(self.beta))

    @property
    def splits(self) -> int:
        return 2**self.beta


@dataclass(frozen=True)
class IntervalGrid:
    region_points: tuple[float, ...]
    region_lengths: tuple[float, ...]
    interval_points: tuple[float, ...]
    L: int

    @property
    def raw_lengths(self) -> tuple[float, ...]:
        p = self.region_points
        return tuple(p[r + 1] - p[r] for r in range(4))


@dataclass(frozen=True, eq=False)
class QuantifiedDistribution:
    alpha: float
    beta: int
    idp: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.idp.setflags(write=False)
        if len(self.idp) != 4 * 2**self.beta:
            raise ValueError(f"idp has {len(self.idp)} entries, expected {4 * 2**self.beta}")

    def __eq__(self, other):
        if not isinstance(other, QuantifiedDistribution):
            return NotImplemented
        return (self.alpha == other.alpha and self.beta == other.beta
                and np.array_equal(self.idp, other.idp))

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "idp": self.idp.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [repr(self.alpha), self.beta] + [repr(x) for x in self.idp.tolist()]
        )
        return buf.getvalue()


def region_bounds(dd: DegreeDistribution, alpha: float) -> list[float]:
    spread = alpha * dd.std
    return [float(dd.min_degree), dd.mean - spread, dd.mean, dd.mean + spread, float(dd.max_degree)]


def interval_grid(dd: DegreeDistribution, alpha: float, L: int) -> IntervalGrid:
    if L < 1:
        raise ParameterError(f"L must be >= 1, got {L}")
    pts = region_bounds(dd, alpha)
    lengths = [max(pts[r + 1] - pts[r], 0.0) for r in range(4)]
    borders = []
    for r in range(4):
        # (t*len)/L keeps borders bitwise identical across power-of-two L
        borders.extend(pts[r] + (t * lengths[r]) / L for t in range(L))
    # equals pts[3] + lengths[3] exactly in real arithmetic
    borders.append(pts[4] if pts[4] >= pts[3] else pts[3])
    return IntervalGrid(tuple(pts), tuple(lengths), tuple(borders), L)


def interval_points(dd: DegreeDistribution, alpha: float, L: int) -> list[float]:
    return list(interval_grid(dd, alpha, L).interval_points)


def _idp_count(dd: DegreeDistribution, lo: float, hi: float, closed_right: bool) -> int:
    if hi < lo:
        return 0
    return max(dd.count_below(hi, inclusive=closed_right) - dd.count_below(lo), 0)


def idp(dd: DegreeDistribution, lo: float, hi: float, closed_right: bool = False) -> float:
    """Probability mass of degrees in ``[lo, hi)``, or ``[lo, hi]`` if closed."""
    return _idp_count(dd, lo, hi, closed_right) / dd.n_nodes


def quantify(dd: DegreeDistribution, params: QuantizationParams | None = None) -> QuantifiedDistribution:
    params = params or QuantizationParams()
    L = params.splits
    grid = interval_grid(dd, params.alpha, L)
    pts = np.asarray(grid.interval_points)
    n_int = 4 * L
    cum = dd._cumcounts
    lo_idx = np.searchsorted(dd.support, pts[:-1], side="left")
    hi_idx = np.searchsorted(dd.support, pts[1:], side="left")
    hi_idx[-1] = np.searchsorted(dd.support, pts[-1], side="right")
    counts = cum[hi_idx] - cum[lo_idx]
    counts[pts[1:] < pts[:-1]] = 0
    counts = np.maximum(counts, 0)
    for r, raw in enumerate(grid.raw_lengths):
        if raw < 0:
            counts[r * L:(r + 1) * L] = 0
    vec = counts / dd.n_nodes
    assert len(vec) == n_int
    return QuantifiedDistribution(float(params.alpha), params.beta, vec)


def coarsen(q: QuantifiedDistribution) -> QuantifiedDistribution:
    """Merge adjacent interval pairs: level beta -> beta - 1."""
    if q.beta < 1:
        raise DomainError("cannot coarsen a beta=0 quantification")
    return QuantifiedDistribution(q.alpha, q.beta - 1, q.idp[0::2] + q.idp[1::2])


def levels(q: QuantifiedDistribution) -> list[np.ndarray]:
    """IDP vectors at every granularity, index s holding level s (0..beta)."""
    out = [q.idp]
    cur = q
    while cur.beta > 0:
        cur = coarsen(cur)
        out.append(cur.idp)
    return out[::-1]


def _check_compatible(q1: QuantifiedDistribution, q2: QuantifiedDistribution) -> None:
    if q1.beta != q2.beta or q1.alpha != q2.alpha:
        raise ParameterError(
            f"quantifications use different parameters: (alpha={q1.alpha}, beta={q1.beta}) "
            f"vs (alpha={q2.alpha}, beta={q2.beta})"
        )


def ddqc_distance(q1: QuantifiedDistribution, q2: QuantifiedDistribution, gamma: float = DEFAULT_GAMMA) -> float:
    _check_compatible(q1, q2)
    if not gamma > 0:
        raise ParameterError(f"gamma must be > 0, got {gamma}")
    total = 0.0
    for s, (a, b) in enumerate(zip(levels(q1), levels(q2))):
        total += gamma**s * float(np.abs(a - b).sum())
    return total


def weighted_levels(q: QuantifiedDistribution, gamma: float) -> np.ndarray:
    """Concatenated ``gamma**s``-scaled level vectors.

    The L1 distance between two of these equals :func:`ddqc_distance`, which
    lets whole distance matrices be filled with a single cityblock pass.
    """
    return np.concatenate([gamma**s * v for s, v in enumerate(levels(q))])


def distance_upper_bound(beta: int, gamma: float) -> float:
    return sum(2 * gamma**s for s in range(beta + 1))
