"""MAP and ML decision rules, pairwise boundary offsets and 2-D region rasters."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constellation import Bundle, ValidationError


class Detector(str, enum.Enum):
    MAP = "map"
    ML = "ml"


class ErrorKind(str, enum.Enum):
    SEP = "sep"
    BEP = "bep"


@dataclass(frozen=True)
class ErrorSpec:
    """Which of the four error probabilities to evaluate."""

    detector: Detector = Detector.ML
    error: ErrorKind = ErrorKind.SEP

    def __post_init__(self):
        object.__setattr__(self, "detector", Detector(self.detector))
        object.__setattr__(self, "error", ErrorKind(self.error))

    def weights(self, bundle: Bundle) -> np.ndarray:
        """Per-pair error weights: 1 for SEP, normalized Hamming distance for BEP."""
        if self.error is ErrorKind.SEP:
            h = np.ones((bundle.M, bundle.M))
        else:
            lab = bundle.require_labeling()
            h = lab.hamming_matrix / lab.m
        np.fill_diagonal(h, 0.0)
        return h


def check_sigma(sigma) -> float:
    s = float("nan") if sigma is None else float(sigma)
    if not (s > 0.0 and math.isfinite(s)):
        raise ValueError(f"noise standard deviation must be positive and finite, got {sigma!r}")
    return s


def decision_metric(
    y: np.ndarray, bundle: Bundle, detector: Detector, sigma: Optional[float] = None
) -> np.ndarray:
    """Per-candidate cost whose argmin is the decision, shape ``(K, M)``.

    ML uses squared distances; MAP adds ``-2 sigma^2 log p_j``. Uniform
    priors skip the prior term, so MAP and ML agree bit for bit there.
    """
    diff = y[:, None, :] - bundle.points[None, :, :]
    cost = np.einsum("kmn,kmn->km", diff, diff)
    if Detector(detector) is Detector.MAP and not bundle.is_uniform:
        s = check_sigma(sigma)
        cost = cost - (2.0 * s * s) * np.log(bundle.probs)[None, :]
    return cost


def decide(
    y, bundle: Bundle, detector: Detector = Detector.ML, sigma: Optional[float] = None
):
    """Detect the transmitted index from received vector(s) ``y``.

    Parameters
    ----------
    y : array_like, shape (N,) or (K, N)
        Received vector or a batch of them. For one-dimensional bundles a
        flat batch of scalars is also accepted.
    detector : Detector
        ``MAP`` requires ``sigma``; ``ML`` ignores it.

    Returns
    -------
    int or ndarray of int
        Index maximizing ``log p_j - ||y - x_j||^2 / (2 sigma^2)`` (MAP) or
        minimizing ``||y - x_j||`` (ML). Ties go to the lowest index.
    """
    arr = np.asarray(y, dtype=float)
    single = arr.ndim == 0 or (arr.ndim == 1 and (bundle.N > 1 or arr.size == 1))
    if single:
        arr = arr.reshape(1, -1)
    elif arr.ndim == 1:
        arr = arr[:, None]
    if arr.shape[1] != bundle.N:
        raise ValueError(f"received vector has dimension {arr.shape[1]}, constellation has {bundle.N}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("received vector must be finite")
    idx = np.argmin(decision_metric(arr, bundle, detector, sigma), axis=1)
    return int(idx[0]) if single else idx


def delta_ij(i: int, j: int, bundle: Bundle, detector: Detector, sigma: Optional[float] = None) -> float:
    """Signed distance from ``x_i`` to the pairwise ``i``/``j`` decision hyperplane."""
    if i == j:
        raise ValueError("delta_ij needs two distinct indices")
    dij = float(bundle.med.dist[i, j])
    if Detector(detector) is Detector.ML:
        return dij / 2.0
    s = check_sigma(sigma)
    return dij / 2.0 + s * s * math.log(bundle.probs[i] / bundle.probs[j]) / dij


def delta_matrix(bundle: Bundle, detector: Detector, sigma: Optional[float] = None) -> np.ndarray:
    """All ``delta_ij`` at once; the diagonal is ``nan``."""
    dist = bundle.med.dist
    with np.errstate(divide="ignore", invalid="ignore"):
        out = dist / 2.0
        if Detector(detector) is Detector.MAP:
            s = check_sigma(sigma)
            logp = np.log(bundle.probs)
            out = out + s * s * (logp[:, None] - logp[None, :]) / dist
    np.fill_diagonal(out, np.nan)
    return out


def rasterize_regions(
    bundle: Bundle,
    detector: Detector,
    sigma: Optional[float],
    window: tuple[float, float, float, float],
    resolution: int | tuple[int, int],
) -> np.ndarray:
    """Classify the cell centers of a 2-D window.

    ``window`` is ``(xmin, xmax, ymin, ymax)``. Returns an ``(ny, nx)`` grid
    of indices whose row 0 is the lowest ``y``.
    """
    if bundle.N != 2:
        raise ValidationError(f"region rasters need a 2-D constellation, got N={bundle.N}", "dimension")
    nx, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if not (xmax > xmin and ymax > ymin and nx >= 1 and ny >= 1):
        raise ValueError("window must have positive extent and resolution at least 1")
    xs, ys = cell_centers(window, (nx, ny))
    gx, gy = np.meshgrid(xs, ys)
    y = np.column_stack([gx.ravel(), gy.ravel()])
    return decide(y, bundle, detector, sigma).reshape(ny, nx)


def cell_centers(window, resolution) -> tuple[np.ndarray, np.ndarray]:
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    nx, ny = resolution
    xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    return xs, ys
