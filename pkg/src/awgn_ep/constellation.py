"""Constellation geometry, priors, binary labelings and derived static quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

PROB_SUM_TOL = 1e-12
DISTINCT_TOL = 1e-12
MED_REL_TOL = 1e-9


class ValidationError(ValueError):
    """Raised when a constellation bundle violates a model assumption.

    ``location`` names the offending input element (e.g. ``"probs[2]"``) so
    that file parsers can forward it to the user.
    """

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class Labeling:
    """One-to-one assignment of length-``m`` bit strings to constellation points."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValidationError("labeling is empty", "labels")
        m = len(labels[0])
        for k, s in enumerate(labels):
            if not s or set(s) - {"0", "1"}:
                raise ValidationError(f"label {s!r} is not a binary string", f"labels[{k}]")
            if len(s) != m:
                raise ValidationError(
                    f"label {s!r} has length {len(s)}, expected {m}", f"labels[{k}]"
                )
        if len(labels) != 2**m:
            raise ValidationError(
                f"{len(labels)} labels of length {m}; a labeling needs exactly 2**m = {2**m}",
                "labels",
            )
        seen: dict[str, int] = {}
        for k, s in enumerate(labels):
            if s in seen:
                raise ValidationError(
                    f"label {s!r} duplicates labels[{seen[s]}]", f"labels[{k}]"
                )
            seen[s] = k

    @property
    def m(self) -> int:
        return len(self.labels[0])

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def bits(self) -> np.ndarray:
        return np.array([[c == "1" for c in s] for s in self.labels], dtype=np.int8)

    @cached_property
    def hamming_matrix(self) -> np.ndarray:
        b = self.bits
        return (b[:, None, :] != b[None, :, :]).sum(axis=2)

    @classmethod
    def natural(cls, m: int) -> "Labeling":
        """Natural binary labeling of ``2**m`` points."""
        return cls(tuple(format(k, f"0{m}b") for k in range(2**m)))


def hamming(labeling: Labeling, i: int, j: int) -> int:
    """Number of bit positions in which the labels of points ``i`` and ``j`` differ."""
    n = len(labeling)
    for name, k in (("i", i), ("j", j)):
        if not 0 <= k < n:
            raise IndexError(f"{name}={k} out of range for {n} labels")
    return sum(a != b for a, b in zip(labeling.labels[i], labeling.labels[j]))


@dataclass(frozen=True)
class MedGraph:
    """Pairwise distances and the minimum-Euclidean-distance neighbor structure.

    Attributes
    ----------
    dist : ndarray, shape (M, M)
        Euclidean distances between points.
    d : float
        Minimum Euclidean distance (MED) over distinct pairs.
    med_mask : ndarray of bool, shape (M, M)
        ``med_mask[i, j]`` is True iff ``(i, j)`` is a MED pair.
    """

    dist: np.ndarray
    d: float
    med_mask: np.ndarray

    @property
    def med_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(zip(*(idx.tolist() for idx in np.nonzero(self.med_mask))))

    @property
    def neighbor_counts(self) -> np.ndarray:
        return self.med_mask.sum(axis=1)


@dataclass(frozen=True, eq=False)
class Bundle:
    """A validated constellation together with its prior and optional labeling.

    Use :func:`validate` to build one. Points are stored as an ``(M, N)``
    float array; indices are zero-based throughout the package.
    """

    points: np.ndarray
    probs: np.ndarray
    labeling: Optional[Labeling] = None
    name: Optional[str] = field(default=None, compare=False)

    @property
    def M(self) -> int:
        return self.points.shape[0]

    @property
    def N(self) -> int:
        return self.points.shape[1]

    @cached_property
    def med(self) -> MedGraph:
        return med_graph(self.points)

    @cached_property
    def energy(self) -> float:
        return average_energy(self.points, self.probs)

    @cached_property
    def log_max_ratio(self) -> float:
        return math.log(self.probs.max() / self.probs.min())

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.probs == self.probs[0]))

    def require_labeling(self) -> Labeling:
        if self.labeling is None:
            raise ValidationError("bit error probability requires a labeling", "labels")
        return self.labeling

    def __eq__(self, other):
        if not isinstance(other, Bundle):
            return NotImplemented
        return (
            np.array_equal(self.points, other.points)
            and np.array_equal(self.probs, other.probs)
            and self.labeling == other.labeling
        )

    __hash__ = None


def validate(
    points: Sequence,
    probs: Sequence[float],
    labels: Optional[Sequence[str] | Labeling] = None,
    name: Optional[str] = None,
) -> Bundle:
    """Check all model assumptions and return an immutable :class:`Bundle`.

    ``points`` may be a flat sequence for one-dimensional constellations.
    """
    pts = np.array(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise ValidationError(f"points must be an M x N array, got shape {pts.shape}", "points")
    M = pts.shape[0]
    if M < 2:
        raise ValidationError(f"need at least 2 points, got {M}", "points")
    bad = np.argwhere(~np.isfinite(pts))
    if bad.size:
        k = int(bad[0, 0])
        raise ValidationError(f"non-finite coordinate {pts[k].tolist()}", f"points[{k}]")

    scale = max(1.0, float(np.abs(pts).max()))
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    close = np.argwhere(np.triu(dist <= DISTINCT_TOL * scale, k=1))
    if close.size:
        i, j = (int(v) for v in close[0])
        raise ValidationError(f"duplicate point: coincides with points[{i}]", f"points[{j}]")

    p = np.array(probs, dtype=float)
    if p.ndim != 1 or p.shape[0] != M:
        raise ValidationError(f"expected {M} probabilities, got {p.size}", "probs")
    for k, v in enumerate(p):
        if not (0.0 < v < 1.0):
            raise ValidationError(f"probability {v!r} not in the open interval (0, 1)", f"probs[{k}]")
    total = math.fsum(p)
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"probabilities sum to {total!r}, not 1", "probs")

    if labels is not None and not isinstance(labels, Labeling):
        labels = Labeling(tuple(labels))
    if labels is not None and len(labels) != M:
        raise ValidationError(f"{len(labels)} labels for {M} points", "labels")

    pts.setflags(write=False)
    p.setflags(write=False)
    return Bundle(pts, p, labels, name)


def med_graph(points: np.ndarray) -> MedGraph:
    """Distances, MED and MED-pair structure of a point set.

    A pair belongs to the MED set when its distance is within a relative
    ``MED_REL_TOL`` of the minimum, so that decimal files with rounded
    coordinates keep their intended neighbor structure.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    off = ~np.eye(len(pts), dtype=bool)
    d = float(dist[off].min())
    mask = off & (dist <= d * (1.0 + MED_REL_TOL))
    dist.setflags(write=False)
    mask.setflags(write=False)
    return MedGraph(dist, d, mask)


def average_energy(points: np.ndarray, probs: np.ndarray) -> float:
    """Average symbol energy ``sum_i p_i ||x_i||^2``."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return float(np.dot(probs, (pts**2).sum(axis=1)))
