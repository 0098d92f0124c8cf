"""High-SNR constants of the error probability and the MAP/ML ratio."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import q_function
from .constellation import Bundle
from .detectors import Detector, ErrorKind, ErrorSpec, check_sigma


@dataclass(frozen=True)
class AsymptoticSummary:
    B_map_sep: float
    B_ml_sep: float
    R_sep: float
    B_map_bep: Optional[float] = None
    B_ml_bep: Optional[float] = None
    R_bep: Optional[float] = None


def asymptotic_B(bundle: Bundle, spec: ErrorSpec) -> float:
    """Multiplier ``B`` with ``P(sigma) ~ B Q(d / (2 sigma))`` as sigma -> 0.

    ``B = sum_i p_i sum_{j: delta_ij = d} h_ij w_ij`` where ``w_ij`` is
    ``sqrt(p_j / p_i)`` for MAP and 1 for ML. Summed i-major so repeated
    runs give identical floating-point results.
    """
    h = spec.weights(bundle)
    p = bundle.probs.tolist()
    mask = bundle.med.med_mask
    is_map = spec.detector is Detector.MAP
    total = 0.0
    for i in range(bundle.M):
        inner = 0.0
        for j in range(bundle.M):
            if mask[i, j]:
                w = math.sqrt(p[j] / p[i]) if is_map else 1.0
                inner += float(h[i, j]) * w
        total += p[i] * inner
    return total


def ratio_R(bundle: Bundle, error: ErrorKind = ErrorKind.SEP) -> float:
    """Asymptotic ratio of MAP to ML error probability; always in (0, 1]."""
    b_map = asymptotic_B(bundle, ErrorSpec(Detector.MAP, error))
    b_ml = asymptotic_B(bundle, ErrorSpec(Detector.ML, error))
    return b_map / b_ml


def asymptotic_approx(bundle: Bundle, spec: ErrorSpec, sigma: float) -> float:
    s = check_sigma(sigma)
    return asymptotic_B(bundle, spec) * q_function(bundle.med.d / (2.0 * s))


def summarize(bundle: Bundle) -> AsymptoticSummary:
    def b(det, err):
        return asymptotic_B(bundle, ErrorSpec(det, err))

    b_map_sep, b_ml_sep = b(Detector.MAP, ErrorKind.SEP), b(Detector.ML, ErrorKind.SEP)
    if bundle.labeling is None:
        return AsymptoticSummary(b_map_sep, b_ml_sep, b_map_sep / b_ml_sep)
    b_map_bep, b_ml_bep = b(Detector.MAP, ErrorKind.BEP), b(Detector.ML, ErrorKind.BEP)
    return AsymptoticSummary(
        b_map_sep, b_ml_sep, b_map_sep / b_ml_sep, b_map_bep, b_ml_bep, b_map_bep / b_ml_bep
    )
