"""Closed-form SEP/BEP for one-dimensional constellations.

Decision regions of both detectors on the real line are unions of at most
one interval per point. They are found with a left-to-right sweep over the
points sorted by position, in the manner of an upper-envelope (convex hull)
construction: each point's log-posterior is affine in ``y`` after dropping
the common ``-y^2 / (2 sigma^2)`` term, so a point whose interval inverts can
be discarded for good.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import q_function
from .constellation import Bundle, ValidationError
from .detectors import Detector, ErrorKind, ErrorSpec, check_sigma


@dataclass(frozen=True)
class RegionIntervals:
    """Decision interval ``[lower[k], upper[k]]`` of each point (original order).

    Points without a region have ``lower = upper = nan``.
    """

    lower: np.ndarray
    upper: np.ndarray

    def is_empty(self, k: int) -> bool:
        return bool(np.isnan(self.lower[k]))

    def boundaries(self) -> list[float]:
        """Finite region boundaries in increasing order."""
        vals = self.lower[np.isfinite(self.lower)]
        return sorted(float(v) for v in vals)


def _require_1d(bundle: Bundle):
    if bundle.N != 1:
        raise ValidationError(f"exact evaluation needs a 1-D constellation, got N={bundle.N}", "dimension")


def pair_boundary(xi: float, xj: float, pi: float, pj: float, detector: Detector, sigma: Optional[float]) -> float:
    """Point where the ``i`` and ``j`` metrics tie, for ``xi < xj``."""
    mid = 0.5 * (xi + xj)
    if Detector(detector) is Detector.ML or pi == pj:
        return mid
    return mid + sigma * sigma * math.log(pi / pj) / (xj - xi)


def regions_1d(bundle: Bundle, detector: Detector, sigma: Optional[float] = None) -> RegionIntervals:
    _require_1d(bundle)
    if Detector(detector) is Detector.MAP:
        sigma = check_sigma(sigma)
    x = bundle.points[:, 0]
    p = bundle.probs
    order = np.argsort(x, kind="stable")

    # (index, left edge) of surviving points, left to right
    stack: list[tuple[int, float]] = []
    for j in order:
        left = -math.inf
        while stack:
            k, k_left = stack[-1]
            t = pair_boundary(x[k], x[j], p[k], p[j], detector, sigma)
            if t <= k_left:
                stack.pop()
                continue
            left = t
            break
        stack.append((int(j), left))

    lower = np.full(bundle.M, np.nan)
    upper = np.full(bundle.M, np.nan)
    for pos, (k, k_left) in enumerate(stack):
        lower[k] = k_left
        upper[k] = stack[pos + 1][1] if pos + 1 < len(stack) else math.inf
    return RegionIntervals(lower, upper)


def _interval_prob(lo: float, hi: float) -> float:
    """P(lo < Z < hi) for standard normal Z, accurate in both tails."""
    if lo >= 0.0:
        return q_function(lo) - q_function(hi)
    if hi <= 0.0:
        return q_function(-hi) - q_function(-lo)
    return 1.0 - q_function(-lo) - q_function(hi)


def transition_exact(bundle: Bundle, detector: Detector, sigma: float) -> np.ndarray:
    """Matrix of ``Pr{decide j | sent i}``; empty regions give zero columns."""
    _require_1d(bundle)
    s = check_sigma(sigma)
    regions = regions_1d(bundle, detector, s)
    x = bundle.points[:, 0]
    F = np.zeros((bundle.M, bundle.M))
    for j in range(bundle.M):
        if regions.is_empty(j):
            continue
        a, b = regions.lower[j], regions.upper[j]
        for i in range(bundle.M):
            F[i, j] = _interval_prob((a - x[i]) / s, (b - x[i]) / s)
    return F


def error_exact(bundle: Bundle, spec: ErrorSpec, sigma: float) -> float:
    """``sum_i p_i sum_{j != i} h_ij F_ij`` with exact transition probabilities."""
    F = transition_exact(bundle, spec.detector, sigma)
    h = spec.weights(bundle)
    return float(np.dot(bundle.probs, (h * F).sum(axis=1)))


def sep_exact(bundle: Bundle, detector: Detector, sigma: float) -> float:
    return error_exact(bundle, ErrorSpec(detector, ErrorKind.SEP), sigma)


def bep_exact(bundle: Bundle, detector: Detector, sigma: float) -> float:
    bundle.require_labeling()
    return error_exact(bundle, ErrorSpec(detector, ErrorKind.BEP), sigma)
