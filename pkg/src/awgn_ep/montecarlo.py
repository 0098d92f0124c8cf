"""Seeded Monte Carlo estimation of SEP/BEP and composite SNR sweeps.

Reproducibility contract: the trial range ``[0, trials)`` is split into
``workers`` contiguous blocks. Block ``b`` draws from a Philox counter-based
generator keyed by ``SeedSequence(seed, spawn_key=(b,))``, so a result
depends only on ``(seed, trials, workers)`` and never on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .asymptotics import asymptotic_approx
from .bounds import error_lb_or_none, error_ub
from .constellation import Bundle
from .detectors import Detector, ErrorKind, ErrorSpec, check_sigma, decide
from .exact1d import error_exact

CHUNK = 1 << 16
MIN_RELIABLE_ERRORS = 100


@dataclass(frozen=True)
class SimConfig:
    trials: int = 100_000
    seed: int = 0
    detector: Detector = Detector.ML
    error_kind: ErrorKind = ErrorKind.SEP
    workers: int = 1

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if int(self.workers) < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, "detector", Detector(self.detector))
        object.__setattr__(self, "error_kind", ErrorKind(self.error_kind))

    @property
    def spec(self) -> ErrorSpec:
        return ErrorSpec(self.detector, self.error_kind)


@dataclass(frozen=True)
class SimResult:
    """Sample mean of the per-trial error score and its standard error.

    ``errors_observed`` is the symbol-error count for SEP and the summed
    normalized bit-error mass for BEP.
    """

    estimate: float
    stderr: float
    trials: int
    errors_observed: float


def block_sizes(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if b < extra else 0) for b in range(workers)]


def block_generator(seed: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1), spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss))


def _run_block(bundle: Bundle, sigma: float, config: SimConfig, block: int, n: int) -> tuple[float, float, int]:
    rng = block_generator(config.seed, block)
    if config.error_kind is ErrorKind.BEP:
        lab = bundle.require_labeling()
        score_table = lab.hamming_matrix / lab.m
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        k = min(CHUNK, n - done)
        sent = rng.choice(bundle.M, size=k, p=bundle.probs)
        y = bundle.points[sent] + sigma * rng.standard_normal((k, bundle.N))
        got = decide(y, bundle, config.detector, sigma)
        if config.error_kind is ErrorKind.SEP:
            score = (got != sent).astype(float)
        else:
            score = score_table[sent, got]
        total += float(score.sum())
        total_sq += float(np.dot(score, score))
        done += k
    return total, total_sq, n


def simulate(bundle: Bundle, sigma: float, config: SimConfig) -> SimResult:
    """Estimate the error probability of ``config.detector`` at noise std ``sigma``."""
    s = check_sigma(sigma)
    if config.error_kind is ErrorKind.BEP:
        bundle.require_labeling()
    sizes = [(b, n) for b, n in enumerate(block_sizes(int(config.trials), int(config.workers))) if n]
    if config.workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(lambda bn: _run_block(bundle, s, config, *bn), sizes))
    else:
        parts = [_run_block(bundle, s, config, b, n) for b, n in sizes]

    # reduce in block order so the sum is independent of scheduling
    total = math.fsum(t for t, _, _ in parts)
    total_sq = math.fsum(q for _, q, _ in parts)
    n = int(config.trials)
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return SimResult(min(max(mean, 0.0), 1.0), math.sqrt(var / n), n, total)


def sigma_from_snr_db(bundle: Bundle, snr_db: float) -> float:
    """Per-dimension noise std for ``E_s / sigma^2`` given in dB."""
    if not math.isfinite(snr_db):
        raise ValueError(f"SNR must be finite, got {snr_db!r}")
    return math.sqrt(bundle.energy / 10.0 ** (snr_db / 10.0))


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    sigma: float
    ub: float
    lb: Optional[float]
    asym: float
    sim: Optional[SimResult] = None
    exact: Optional[float] = field(default=None)


def sweep(
    bundle: Bundle,
    snr_grid: Sequence[float],
    spec: ErrorSpec,
    config: Optional[SimConfig] = None,
    exact: bool = False,
) -> list[SweepRow]:
    """Evaluate bounds, asymptote and (optionally) simulation and exact values on a grid.

    ``lb`` is ``None`` wherever the lower bound is not defined. When
    ``config`` is given its detector and error kind must match ``spec``.
    """
    grid = [float(v) for v in snr_grid]
    if not grid:
        raise ValueError("SNR grid is empty")
    if config is not None and config.spec != spec:
        raise ValueError(f"simulation config {config.spec} does not match {spec}")
    rows = []
    for snr in grid:
        sigma = sigma_from_snr_db(bundle, snr)
        rows.append(
            SweepRow(
                snr_db=snr,
                sigma=sigma,
                ub=error_ub(bundle, spec, sigma),
                lb=error_lb_or_none(bundle, spec, sigma),
                asym=asymptotic_approx(bundle, spec, sigma),
                sim=simulate(bundle, sigma, config) if config is not None else None,
                exact=error_exact(bundle, spec, sigma) if exact else None,
            )
        )
    return rows
