import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awgn_ep import Labeling, ValidationError, average_energy, hamming, med_graph, validate
from awgn_ep import library


def brute_force_med(points):
    """Enumerate all ordered pairs in pure Python."""
    pts = [tuple(map(float, p)) for p in np.atleast_2d(np.asarray(points, dtype=float).T).T]
    dist = {
        (i, j): math.dist(pts[i], pts[j]) for i, j in itertools.permutations(range(len(pts)), 2)
    }
    d = min(dist.values())
    pairs = {k for k, v in dist.items() if v <= d * (1 + 1e-9)}
    G = [sum(1 for (a, _) in pairs if a == i) for i in range(len(pts))]
    return d, pairs, G


class TestValidate:
    def test_example_bundle_is_valid(self):
        b = validate([-1, 0, 2], [0.62, 0.07, 0.31])
        assert (b.M, b.N) == (3, 1)

    @pytest.mark.parametrize("probs", [(0.5, 0.5, 0.0), (1.0, 0.0, 0.0), (0.6, 0.5, -0.1)])
    def test_probability_outside_open_interval(self, probs):
        with pytest.raises(ValidationError, match=r"not in the open interval"):
            validate([0, 1, 2], probs)

    def test_duplicate_point(self):
        with pytest.raises(ValidationError, match="duplicate point") as exc:
            validate([[0, 0], [1, 0], [0, 0]], [0.2, 0.3, 0.5])
        assert exc.value.location == "points[2]"

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValidationError, match="sum to 0.999"):
            validate([0, 1, 2], [0.333, 0.333, 0.333])

    def test_single_point_rejected(self):
        with pytest.raises(ValidationError):
            validate([[0.0]], [1.0 - 1e-16])

    def test_non_finite_point(self):
        with pytest.raises(ValidationError, match="non-finite"):
            validate([0, np.inf], [0.5, 0.5])

    def test_labeling_needs_power_of_two(self):
        with pytest.raises(ValidationError, match="2\\*\\*m"):
            validate([0, 1, 2], [0.2, 0.3, 0.5], ["00", "01", "10"])

    def test_duplicate_label(self):
        with pytest.raises(ValidationError, match="duplicates") as exc:
            validate([0, 1, 2, 3], [0.25] * 4, ["00", "01", "01", "11"])
        assert exc.value.location == "labels[2]"

    def test_unequal_label_lengths(self):
        with pytest.raises(ValidationError, match="length"):
            validate([0, 1], [0.5, 0.5], ["0", "10"])

    def test_label_count_mismatch(self):
        with pytest.raises(ValidationError):
            validate([0, 1, 2, 3], [0.25] * 4, ["0", "1"])

    def test_bundle_is_read_only(self, asym):
        with pytest.raises(ValueError):
            asym.points[0, 0] = 5.0

    def test_bep_requires_labeling(self, asym):
        with pytest.raises(ValidationError, match="labeling"):
            asym.require_labeling()


class TestMedGraph:
    def test_asymmetric_three_points(self):
        g = med_graph(np.array([-1.0, 0.0, 2.0]))
        assert g.d == 1.0
        assert g.med_pairs == {(0, 1), (1, 0)}
        assert g.neighbor_counts.tolist() == [1, 1, 0]

    def test_equally_spaced_three_points(self):
        g = med_graph(np.array([-1.0, 0.0, 1.0]))
        assert g.d == 1.0
        assert g.med_pairs == {(0, 1), (1, 0), (1, 2), (2, 1)}
        assert g.neighbor_counts.tolist() == [1, 2, 1]

    def test_ring_constellation_has_two_neighbors_everywhere(self):
        b = library.ring_4_12(0.22)
        assert b.med.neighbor_counts.tolist() == [2] * 16

    def test_rounded_decimals_keep_neighbor_structure(self):
        g = med_graph(np.array([0.0, 0.1, 0.2, 0.3]))
        assert g.neighbor_counts.tolist() == [1, 2, 2, 1]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 9), st.integers(1, 3), st.integers(0, 2**32 - 1))
    def test_matches_brute_force(self, M, N, seed):
        rng = np.random.default_rng(seed)
        pts = np.round(rng.normal(size=(M, N)), 1) if seed % 2 else rng.normal(size=(M, N))
        if len({tuple(p) for p in pts}) < M:
            return
        g = med_graph(pts)
        d, pairs, G = brute_force_med(pts)
        assert g.d == pytest.approx(d, rel=1e-15)
        assert g.med_pairs == pairs
        assert g.neighbor_counts.tolist() == G

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 12), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_graph_invariants(self, M, N, seed):
        pts = np.random.default_rng(seed).normal(size=(M, N))
        g = med_graph(pts)
        assert g.d > 0 and g.med_pairs
        assert np.all(np.diag(g.dist) == 0)
        assert np.array_equal(g.dist, g.dist.T)
        assert all((j, i) in g.med_pairs for i, j in g.med_pairs)
        assert g.neighbor_counts.sum() == len(g.med_pairs)
        assert len(g.med_pairs) % 2 == 0



def test_triangle_inequality():
    rng = np.random.default_rng(7)
    for _ in range(20):
        D = med_graph(rng.normal(size=(8, 3))).dist
        # D[i, k] <= D[i, j] + D[j, k] for all triples
        lhs = D[:, None, :]
        rhs = D[:, :, None] + D[None, :, :]
        assert np.all(lhs <= rhs + 1e-12)


class TestEnergy:
    def test_uniform(self):
        assert average_energy(np.array([-1.0, 0.0, 1.0]), np.full(3, 1 / 3)) == pytest.approx(2 / 3, rel=1e-15)

    def test_asymmetric(self, asym):
        assert asym.energy == pytest.approx(1.86, rel=1e-15)

    def test_ring(self):
        b = library.ring_4_12(0.22)
        r1, r2 = library.ring_radii()
        assert b.energy == pytest.approx(4 * 0.22 * r1**2 + 12 * 0.01 * r2**2, rel=1e-13)
        assert (round(r1, 2), round(r2, 2)) == (0.71, 1.93)


class TestHamming:
    def test_examples(self):
        assert hamming(Labeling(("00", "01", "10", "11")), 0, 1) == 1
        assert hamming(Labeling(("00", "01", "10", "11")), 0, 0) == 0
        lab = Labeling.natural(3)
        assert hamming(lab, lab.labels.index("011"), lab.labels.index("100")) == 3

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            hamming(Labeling.natural(2), 0, 4)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_is_a_metric(self, m):
        H = Labeling.natural(m).hamming_matrix
        assert np.all(np.diag(H) == 0)
        assert np.all(H[~np.eye(len(H), dtype=bool)] > 0)
        assert np.array_equal(H, H.T)
        if m <= 6:
            assert np.all(H[:, None, :] <= H[:, :, None] + H[None, :, :])

    def test_matrix_matches_scalar(self):
        lab = Labeling(("110", "000", "011", "101", "111", "001", "010", "100"))
        for i in range(8):
            for j in range(8):
                assert lab.hamming_matrix[i, j] == hamming(lab, i, j)
