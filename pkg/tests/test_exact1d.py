import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq

from awgn_ep import (
    Detector,
    ErrorSpec,
    ValidationError,
    asymptotic_approx,
    bep_exact,
    decide,
    error_exact,
    q_function,
    regions_1d,
    sep_exact,
    sigma_from_snr_db,
    transition_exact,
    validate,
)
from awgn_ep import library

from conftest import random_1d_bundle


def integrated_transitions(bundle, detector, sigma, n=20_001):
    """Oracle: locate decision changes with ``decide`` and integrate the density numerically.

    Change points found on a coarse grid are bisected to machine precision,
    then each segment's Gaussian mass is computed with adaptive quadrature.
    """
    x = bundle.points[:, 0]
    lo, hi = x.min() - 40 * sigma, x.max() + 40 * sigma
    y = np.linspace(lo, hi, n)
    got = decide(y, bundle, detector, sigma)
    cuts = []
    for k in np.nonzero(got[1:] != got[:-1])[0]:
        a, b = y[k], y[k + 1]
        left = got[k]
        for _ in range(80):
            m = 0.5 * (a + b)
            a, b = (m, b) if decide([m], bundle, detector, sigma) == left else (a, m)
        cuts.append(0.5 * (a + b))
    edges = [lo] + cuts + [hi]
    owners = [int(decide([0.5 * (e0 + e1)], bundle, detector, sigma)) for e0, e1 in zip(edges, edges[1:])]
    F = np.zeros((bundle.M, bundle.M))
    for i in range(bundle.M):
        def dens(t):
            return math.exp(-((t - x[i]) ** 2) / (2 * sigma**2)) / (sigma * math.sqrt(2 * math.pi))

        for (e0, e1), j in zip(zip(edges, edges[1:]), owners):
            F[i, j] += quad(dens, e0, e1, points=[x[i]] if e0 < x[i] < e1 else None, epsabs=1e-14, epsrel=1e-12, limit=200)[0]
    return F


class TestRegions:
    def test_ml_midpoints(self, asym):
        assert regions_1d(asym, Detector.ML).boundaries() == [-0.5, 1.0]

    def test_map_boundary(self, asym):
        # -0.5 + 0.1 ln(0.62 / 0.07)
        b = regions_1d(asym, Detector.MAP, math.sqrt(0.1)).boundaries()
        assert b[0] == pytest.approx(-0.281877576401022, rel=1e-12)

    def test_unsorted_points_keep_original_indices(self):
        b = validate([2.0, -1.0, 0.0], [0.31, 0.62, 0.07])
        r = regions_1d(b, Detector.ML)
        assert (r.lower[1], r.upper[1]) == (-math.inf, -0.5)
        assert (r.lower[0], r.upper[0]) == (1.0, math.inf)

    def test_middle_region_vanishes(self):
        b = library.three_point_symmetric(0.45)
        ratio = math.log(0.45 / 0.10)
        threshold = 1.0 / (2.0 * ratio)  # sigma^2 at which t_12 meets t_23

        def middle_decided(s2):
            ys = np.linspace(-1, 1, 20001)
            return bool(np.any(decide(ys, b, Detector.MAP, math.sqrt(s2)) == 1))

        # bisection oracle over the detector itself
        lo, hi = 0.01, 2.0
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if middle_decided(mid) else (lo, mid)
        assert lo == pytest.approx(threshold, rel=1e-3)
        assert not regions_1d(b, Detector.MAP, math.sqrt(threshold * 1.01)).is_empty(0)
        assert regions_1d(b, Detector.MAP, math.sqrt(threshold * 1.01)).is_empty(1)
        assert not regions_1d(b, Detector.MAP, math.sqrt(threshold * 0.99)).is_empty(1)

    def test_intervals_partition_the_line(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            b = random_1d_bundle(rng, int(rng.integers(2, 9)))
            s = float(rng.uniform(0.05, 3.0))
            r = regions_1d(b, Detector.MAP, s)
            live = sorted((r.lower[k], r.upper[k]) for k in range(b.M) if not r.is_empty(k))
            assert live[0][0] == -math.inf and live[-1][1] == math.inf
            for (a0, b0), (a1, b1) in zip(live, live[1:]):
                assert b0 == a1 and a0 < b0

    def test_ml_regions_never_empty(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            b = random_1d_bundle(rng, 8)
            r = regions_1d(b, Detector.ML)
            assert not any(r.is_empty(k) for k in range(b.M))

    def test_needs_one_dimension(self):
        with pytest.raises(ValidationError):
            regions_1d(library.ring_4_12(), Detector.ML)


class TestTransition:
    @pytest.mark.parametrize("detector", list(Detector))
    def test_against_integration_oracle(self, asym, detector):
        for s in (0.2, 0.5, 1.5):
            F = transition_exact(asym, detector, s)
            np.testing.assert_allclose(F, integrated_transitions(asym, detector, s), rtol=1e-8, atol=1e-12)

    def test_empty_region_column_is_zero(self):
        b = library.three_point_symmetric(0.45)
        F = transition_exact(b, Detector.MAP, 1.5)
        assert np.all(F[:, 1] == 0)

    def test_antipodal_correct_decision(self):
        b = validate([-1.0, 1.0], [0.5, 0.5])
        for s in (0.3, 1.0):
            assert transition_exact(b, Detector.ML, s)[0, 0] == pytest.approx(1 - q_function(1 / s), rel=1e-14)

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(1234)
        for _ in range(1000):
            b = random_1d_bundle(rng, int(rng.integers(2, 9)))
            det = Detector.MAP if rng.random() < 0.5 else Detector.ML
            F = transition_exact(b, det, float(rng.uniform(0.02, 4.0)))
            np.testing.assert_allclose(F.sum(axis=1), 1.0, atol=1e-12)


class TestSepBep:
    @pytest.mark.parametrize("sigma", [0.1, 0.25, 0.5, 1.0])
    def test_uniform_pam_formula(self, pam3, sigma):
        want = 2 * (3 - 1) / 3 * q_function(1 / (2 * sigma))
        for det in Detector:
            assert sep_exact(pam3, det, sigma) == pytest.approx(want, rel=1e-12)

    def test_uniform_pam_bep_natural_labels(self):
        b = library.uniform_pam(4, d=2.0)
        s = 0.6
        q1, q3, q5 = (q_function(k / s) for k in (1, 3, 5))
        # outer points: neighbor (1 bit) and beyond; labels 00, 01, 10, 11
        F = transition_exact(b, Detector.ML, s)
        H = b.labeling.hamming_matrix / 2
        want = float(np.dot(b.probs, (H * F).sum(axis=1)))
        assert bep_exact(b, Detector.ML, s) == pytest.approx(want, rel=1e-14)
        assert F[0, 1] == pytest.approx(q1 - q3, rel=1e-12)
        assert F[0, 3] == pytest.approx(q5, rel=1e-12)

    def test_map_not_worse_than_ml(self, asym):
        for snr in np.arange(1, 20):
            s = sigma_from_snr_db(asym, snr)
            assert sep_exact(asym, Detector.MAP, s) <= sep_exact(asym, Detector.ML, s)

    def test_map_optimal_on_random_bundles(self):
        rng = np.random.default_rng(77)
        for _ in range(300):
            b = random_1d_bundle(rng, int(rng.integers(2, 9)))
            s = float(rng.uniform(0.05, 3.0))
            assert sep_exact(b, Detector.MAP, s) <= sep_exact(b, Detector.ML, s) + 1e-15

    def test_map_asymptote_crossing(self, asym):
        spec = ErrorSpec(Detector.MAP, "sep")

        def gap(snr):
            s = sigma_from_snr_db(asym, snr)
            return error_exact(asym, spec, s) - asymptotic_approx(asym, spec, s)

        assert round(brentq(gap, 1.0, 5.0), 1) == 2.6
        assert all(gap(snr) < 0 for snr in np.arange(2.7, 30, 0.5))

    def test_bep_needs_labels(self, asym):
        with pytest.raises(ValidationError):
            bep_exact(asym, Detector.ML, 0.3)
