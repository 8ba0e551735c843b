"""Tie-averaged ranks and rank correlation, scalar and profile forms."""

import numpy as np
import pytest

from qubokit import (
    CorrelationProfile,
    average_ranks,
    correlation_profile,
    profile_from_arrays,
    spearman,
)
from qubokit.dataset import Dataset


def oracle_ranks(values):
    """Quadratic-time tie-averaged ranks: below-count plus half the tie run."""
    values = np.asarray(values, dtype=float)
    out = np.empty(values.size)
    for i, v in enumerate(values):
        below = np.sum(values < v)
        equal = np.sum(values == v)
        out[i] = below + (equal + 1) / 2.0
    return out


def oracle_spearman(x, y):
    rx = oracle_ranks(x)
    ry = oracle_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    return float((dx @ dy) / np.sqrt((dx @ dx) * (dy @ dy)))


class TestAverageRanks:
    def test_distinct_values(self):
        assert average_ranks([30.0, 10.0, 20.0]).tolist() == [3.0, 1.0, 2.0]

    def test_tie_pair_shares_mean_rank(self):
        assert average_ranks([5.0, 5.0, 9.0]).tolist() == [1.5, 1.5, 3.0]

    def test_all_equal(self):
        assert average_ranks([2.0, 2.0, 2.0, 2.0]).tolist() == [2.5] * 4

    def test_matches_oracle_on_random_data(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(2, 40))
            # coarse grid forces plenty of ties
            x = rng.integers(0, 6, n).astype(float)
            assert average_ranks(x).tolist() == oracle_ranks(x).tolist()


class TestSpearman:
    def test_perfect_agreement(self):
        assert spearman([1.0, 2.0, 3.0], [10.0, 20.0, 30.0]) == 1.0

    def test_perfect_reversal(self):
        assert spearman([1.0, 2.0, 3.0], [30.0, 20.0, 10.0]) == -1.0

    def test_single_swap(self):
        assert spearman([1.0, 2.0, 3.0, 4.0], [1.0, 3.0, 2.0, 4.0]) == pytest.approx(0.8)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=60)
        y = rng.normal(size=60) + 0.5 * x
        base = spearman(x, y)
        assert spearman(np.exp(x), y) == pytest.approx(base, abs=1e-12)
        assert spearman(x, y**3) == pytest.approx(base, abs=1e-12)

    def test_constant_input_warns_and_returns_zero(self):
        with pytest.warns(UserWarning):
            assert spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) == 0.0
        with pytest.warns(UserWarning):
            assert spearman([1.0, 2.0, 3.0], [7.0, 7.0, 7.0]) == 0.0

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            spearman([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_too_short_rejected(self):
        with pytest.raises(ValueError):
            spearman([1.0], [2.0])

    def test_range_clipped(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(2, 30))
            x = rng.integers(0, 5, n).astype(float)
            y = rng.integers(0, 5, n).astype(float)
            if np.all(x == x[0]) or np.all(y == y[0]):
                continue
            assert -1.0 <= spearman(x, y) <= 1.0

    def test_matches_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(3, 50))
            x = rng.integers(0, 8, n).astype(float)
            y = rng.integers(0, 8, n).astype(float)
            if np.all(x == x[0]) or np.all(y == y[0]):
                continue
            assert spearman(x, y) == pytest.approx(oracle_spearman(x, y), abs=1e-12)


class TestProfile:
    def _random_profile(self, seed, rows=40, cols=5):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(rows, cols))
        y = (rng.normal(size=rows) > 0).astype(float)
        return X, y, profile_from_arrays(X, y)

    def test_shapes(self):
        _, _, prof = self._random_profile(0)
        assert prof.n_features == 5
        assert prof.target_corr.shape == (5,)
        assert prof.feature_corr.shape == (5, 5)

    def test_unit_diagonal_and_symmetry(self):
        _, _, prof = self._random_profile(1)
        assert np.diag(prof.feature_corr).tolist() == [1.0] * 5
        assert np.array_equal(prof.feature_corr, prof.feature_corr.T)

    def test_values_in_range(self):
        _, _, prof = self._random_profile(2)
        assert np.all(np.abs(prof.target_corr) <= 1.0)
        assert np.all(np.abs(prof.feature_corr) <= 1.0)

    def test_entries_match_scalar_spearman(self):
        X, y, prof = self._random_profile(3)
        for i in range(5):
            assert prof.target_corr[i] == pytest.approx(spearman(X[:, i], y), abs=1e-12)
            for j in range(i + 1, 5):
                expect = spearman(X[:, i], X[:, j])
                assert prof.feature_corr[i, j] == pytest.approx(expect, abs=1e-12)

    def test_arrays_read_only(self):
        _, _, prof = self._random_profile(4)
        with pytest.raises(ValueError):
            prof.target_corr[0] = 0.5

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            CorrelationProfile(np.zeros(3), np.eye(4))

    def test_row_count_mismatch_rejected(self):
        with pytest.raises(ValueError):
            profile_from_arrays(np.zeros((4, 2)), np.zeros(5))
        with pytest.raises(ValueError):
            profile_from_arrays(np.zeros((1, 2)), np.zeros(1))

    def test_to_dict_round_trips_values(self):
        _, _, prof = self._random_profile(5)
        d = prof.to_dict()
        assert d["target_corr"] == prof.target_corr.tolist()
        assert d["feature_corr"] == prof.feature_corr.tolist()

    def test_dataset_wrapper_matches_arrays(self):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(30, 3))
        y = rng.integers(0, 2, 30)
        ds = Dataset(
            names=("a", "b", "c"),
            kinds=("numeric",) * 3,
            columns=tuple(X[:, i] for i in range(3)),
            target=y,
        )
        prof = correlation_profile(ds)
        ref = profile_from_arrays(X, y.astype(float))
        assert np.array_equal(prof.target_corr, ref.target_corr)
        assert np.array_equal(prof.feature_corr, ref.feature_corr)
