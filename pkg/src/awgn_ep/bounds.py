"""Gaussian Q-function and upper/lower bounds on transition and error probabilities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, log_ndtr

from .constellation import Bundle
from .detectors import Detector, ErrorSpec, check_sigma, delta_ij, delta_matrix

SQRT3 = math.sqrt(3.0)
HYPERCUBE_FACTOR = 2.0 * (1.0 + SQRT3)


class BoundNotValid(ValueError):
    """The lower bound is undefined at this noise level (sigma >= tau)."""

    def __init__(self, sigma: float, tau: float):
        self.sigma = sigma
        self.tau = tau
        super().__init__(f"bound not valid at this noise level: sigma={sigma!r} >= tau={tau!r}")


def q_function(x):
    """Gaussian tail probability ``Q(x) = erfc(x / sqrt(2)) / 2``, clipped to [0, 1]."""
    out = np.clip(0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0)), 0.0, 1.0)
    return float(out) if np.ndim(out) == 0 else out


def log_q_function(x):
    """``log Q(x)``, finite far beyond the range where ``Q`` underflows."""
    out = log_ndtr(-np.asarray(x, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def transition_ub(i: int, j: int, bundle: Bundle, detector: Detector, sigma: float) -> float:
    """Upper bound ``Q(delta_ij / sigma)`` on the probability of deciding ``j`` given ``i``."""
    s = check_sigma(sigma)
    return q_function(delta_ij(i, j, bundle, detector, s) / s)


@dataclass(frozen=True)
class LowerBoundGeometry:
    """Hypercube radius and validity thresholds of the lower bound.

    ``tau`` is stored per ordered pair with ``inf`` on the diagonal and
    everywhere when the prior is uniform.
    """

    r: float
    tau: np.ndarray
    max_ratio: float
    log_max_ratio: float

    @property
    def min_tau(self) -> float:
        return float(self.tau.min())


def tau_matrix(bundle: Bundle) -> np.ndarray:
    d = bundle.med.d
    logp = np.log(bundle.probs)
    term = HYPERCUBE_FACTOR * math.sqrt(bundle.N) * np.abs(logp[:, None] - logp[None, :])
    term = term + 4.0 * bundle.log_max_ratio
    with np.errstate(divide="ignore"):
        tau = np.where(term > 0.0, d / np.sqrt(term), np.inf)
    np.fill_diagonal(tau, np.inf)
    tau.setflags(write=False)
    return tau


def min_tau(bundle: Bundle) -> float:
    return float(tau_matrix(bundle).min())


def lb_threshold_snr_db(bundle: Bundle) -> float:
    """E_s / sigma^2 in dB above which the lower bound is defined (``-inf`` if always)."""
    t = min_tau(bundle)
    if math.isinf(t):
        return -math.inf
    return 10.0 * math.log10(bundle.energy / t**2)


def lb_geometry(bundle: Bundle, sigma: float) -> LowerBoundGeometry:
    s = check_sigma(sigma)
    d = bundle.med.d
    lmr = bundle.log_max_ratio
    r = (d * d - 4.0 * s * s * lmr) / (HYPERCUBE_FACTOR * d)
    return LowerBoundGeometry(r, tau_matrix(bundle), math.exp(lmr), lmr)


def _lb_terms(bundle: Bundle, detector: Detector, s: float, geom: LowerBoundGeometry) -> np.ndarray:
    """Lower-bound term for every ordered pair, zero off the MED set, clamped at 0."""
    d = bundle.med.d
    N = bundle.N
    half_side = geom.r / math.sqrt(N)
    delta = delta_matrix(bundle, detector, s)
    outer = q_function(d / (2.0 * s) + half_side / s)
    spread = (1.0 - 2.0 * q_function(half_side / s)) ** (N - 1)
    with np.errstate(invalid="ignore"):
        terms = (q_function(np.nan_to_num(delta / s)) - outer) * spread
    return np.where(bundle.med.med_mask, np.maximum(terms, 0.0), 0.0)


def transition_lb(i: int, j: int, bundle: Bundle, detector: Detector, sigma: float) -> float:
    """Lower bound on the probability of deciding ``j`` given ``i``.

    Raises :class:`BoundNotValid` when ``sigma >= tau_ij``.
    """
    if i == j:
        raise ValueError("transition_lb needs two distinct indices")
    s = check_sigma(sigma)
    geom = lb_geometry(bundle, s)
    tau = float(geom.tau[i, j])
    if s >= tau:
        raise BoundNotValid(s, tau)
    if not bundle.med.med_mask[i, j]:
        return 0.0
    d = bundle.med.d
    half_side = geom.r / math.sqrt(bundle.N)
    val = (
        q_function(delta_ij(i, j, bundle, detector, s) / s)
        - q_function(d / (2.0 * s) + half_side / s)
    ) * (1.0 - 2.0 * q_function(half_side / s)) ** (bundle.N - 1)
    return max(val, 0.0)


def _weighted_sum(bundle: Bundle, spec: ErrorSpec, terms: np.ndarray) -> float:
    h = spec.weights(bundle)
    return float(np.dot(bundle.probs, (h * terms).sum(axis=1)))


def error_ub(bundle: Bundle, spec: ErrorSpec, sigma: float) -> float:
    """Union-type upper bound summing ``p_i h_ij Q(delta_ij / sigma)`` over all ``j != i``."""
    s = check_sigma(sigma)
    delta = delta_matrix(bundle, spec.detector, s)
    terms = q_function(np.nan_to_num(delta / s))
    np.fill_diagonal(terms, 0.0)
    return _weighted_sum(bundle, spec, terms)


def error_ub_normalized(bundle: Bundle, spec: ErrorSpec, sigma: float) -> float:
    """``error_ub / Q(d / (2 sigma))`` evaluated in the log domain.

    Stays accurate at noise levels where both numerator and denominator
    underflow; this is the quantity whose limit is the asymptotic ``B``.
    """
    s = check_sigma(sigma)
    delta = delta_matrix(bundle, spec.detector, s)
    log_ref = log_q_function(bundle.med.d / (2.0 * s))
    log_terms = log_q_function(np.nan_to_num(delta / s)) - log_ref
    np.fill_diagonal(log_terms, -np.inf)
    terms = np.exp(log_terms)
    return _weighted_sum(bundle, spec, terms)


def error_lb(bundle: Bundle, spec: ErrorSpec, sigma: float) -> float:
    """Lower bound restricted to MED pairs; valid only below ``min tau``.

    Raises :class:`BoundNotValid` when ``sigma >= min tau``.
    """
    s = check_sigma(sigma)
    geom = lb_geometry(bundle, s)
    if s >= geom.min_tau:
        raise BoundNotValid(s, geom.min_tau)
    return max(_weighted_sum(bundle, spec, _lb_terms(bundle, spec.detector, s, geom)), 0.0)


def error_lb_or_none(bundle: Bundle, spec: ErrorSpec, sigma: float):
    """:func:`error_lb`, with ``None`` marking the invalid region (for sweeps)."""
    try:
        return error_lb(bundle, spec, sigma)
    except BoundNotValid:
        return None
