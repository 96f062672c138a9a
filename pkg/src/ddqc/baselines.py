"""Baseline comparators: two-sample KS, fitted power-law exponent, percentiles."""
from __future__ import annotations

import numpy as np

from .core import idp
from .degree_stats import DegreeDistribution, cdf
from .errors import FitError

N_PERCENTILE_BINS = 8


def ks_distance(dd1: DegreeDistribution, dd2: DegreeDistribution) -> float:
    """Max absolute CDF difference, evaluated at the union of both supports."""
    points = np.union1d(dd1.support, dd2.support)
    s1 = np.array([cdf(dd1, d) for d in points])
    s2 = np.array([cdf(dd2, d) for d in points])
    return float(np.max(np.abs(s1 - s2)))


def powerlaw_exponent(dd: DegreeDistribution, allow_degenerate: bool = False) -> float:
    """Approximate discrete MLE of the power-law exponent.

    ``1 + n / sum(ln(d / (d_min - 0.5)))`` over all nodes with positive
    degree, ``d_min`` being the smallest positive degree. Requires at least
    two distinct positive degrees unless ``allow_degenerate`` is set, in which
    case a single positive degree yields the same closed form.
    """
    positive = dd.support > 0
    degrees = dd.support[positive]
    counts = dd.counts[positive]
    if len(degrees) == 0:
        raise FitError("no positive degrees to fit")
    if len(degrees) == 1 and not allow_degenerate:
        raise FitError(f"degenerate support: every positive degree equals {int(degrees[0])}")
    d_min = float(degrees[0])
    log_sum = float(np.sum(counts * np.log(degrees / (d_min - 0.5))))
    return 1.0 + int(counts.sum()) / log_sum


def powerlaw_distance(dd1: DegreeDistribution, dd2: DegreeDistribution, allow_degenerate: bool = False) -> float:
    return abs(powerlaw_exponent(dd1, allow_degenerate) - powerlaw_exponent(dd2, allow_degenerate))


def percentiles_quantify(dd: DegreeDistribution) -> np.ndarray:
    """Mass in eight equal-width bins spanning ``[min_degree, max_degree]``."""
    lo, hi = float(dd.min_degree), float(dd.max_degree)
    if lo == hi:
        out = np.zeros(N_PERCENTILE_BINS)
        out[-1] = 1.0
        return out
    width = hi - lo
    edges = [lo + (i * width) / N_PERCENTILE_BINS for i in range(N_PERCENTILE_BINS)] + [hi]
    return np.array([
        idp(dd, edges[i], edges[i + 1], closed_right=(i == N_PERCENTILE_BINS - 1))
        for i in range(N_PERCENTILE_BINS)
    ])


def percentiles_distance(v1, v2) -> float:
    return float(np.abs(np.asarray(v1) - np.asarray(v2)).sum())
