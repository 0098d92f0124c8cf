"""Error probabilities of MAP and ML detection for arbitrary constellations on the AWGN channel."""

from .asymptotics import AsymptoticSummary, asymptotic_approx, asymptotic_B, ratio_R, summarize
from .bounds import (
    BoundNotValid,
    LowerBoundGeometry,
    error_lb,
    error_lb_or_none,
    error_ub,
    error_ub_normalized,
    lb_geometry,
    lb_threshold_snr_db,
    log_q_function,
    min_tau,
    q_function,
    transition_lb,
    transition_ub,
)
from .constellation import Bundle, Labeling, MedGraph, ValidationError, average_energy, hamming, med_graph, validate
from .detectors import Detector, ErrorKind, ErrorSpec, decide, delta_ij, rasterize_regions
from .exact1d import RegionIntervals, bep_exact, error_exact, regions_1d, sep_exact, transition_exact
from .fileformat import ConstellationFileError, parse_constellation, serialize_constellation
from .montecarlo import SimConfig, SimResult, SweepRow, sigma_from_snr_db, simulate, sweep

__all__ = [
    "AsymptoticSummary",
    "BoundNotValid",
    "Bundle",
    "ConstellationFileError",
    "Detector",
    "ErrorKind",
    "ErrorSpec",
    "Labeling",
    "LowerBoundGeometry",
    "MedGraph",
    "RegionIntervals",
    "SimConfig",
    "SimResult",
    "SweepRow",
    "ValidationError",
    "asymptotic_B",
    "asymptotic_approx",
    "average_energy",
    "bep_exact",
    "decide",
    "delta_ij",
    "error_exact",
    "error_lb",
    "error_lb_or_none",
    "error_ub",
    "error_ub_normalized",
    "hamming",
    "lb_geometry",
    "lb_threshold_snr_db",
    "log_q_function",
    "med_graph",
    "min_tau",
    "parse_constellation",
    "q_function",
    "rasterize_regions",
    "ratio_R",
    "regions_1d",
    "sep_exact",
    "serialize_constellation",
    "sigma_from_snr_db",
    "simulate",
    "summarize",
    "sweep",
    "transition_exact",
    "transition_lb",
    "transition_ub",
    "validate",
]
