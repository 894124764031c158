"""Tests for categorical encoding, column pruning, kNN imputation and scaling."""

import numpy as np
import pytest

from domain.entities import RawMetricTable
from domain.exceptions import (
    ContractViolation,
    EmptyFeatureError,
    EncodingError,
    ImputationError,
    SchemaError,
)
from domain.services import (
    KNNImputer,
    MetricPipeline,
    MetricPipelineState,
    ScalerState,
    apply_standardizer,
    drop_constant_columns,
    drop_sparse_columns,
    encode_categoricals,
    fit_standardizer,
    impute_knn,
)
from domain.services.metric_preprocessing import donor_distances
from tests.builders import make_table

CATEGORICAL = frozenset({"modifiers"})


class TestEncodeCategoricals:
    def test_codes_follow_sorted_values(self) -> None:
        table = make_table({"modifiers": ["public", "private", "public"]}, CATEGORICAL)
        encoded = encode_categoricals(table)

        np.testing.assert_array_equal(encoded.data["modifiers"], [1.0, 0.0, 1.0])
        assert encoded.category_codes == {"modifiers": {"private": 0, "public": 1}}

    def test_missing_cell_stays_missing(self) -> None:
        table = make_table({"modifiers": ["public", None, "static"]}, CATEGORICAL)
        encoded = encode_categoricals(table)
        assert np.isnan(encoded.data["modifiers"][1])

    def test_stored_codes_are_reused(self) -> None:
        table = make_table({"modifiers": ["public"]}, CATEGORICAL)
        encoded = encode_categoricals(table, codes={"modifiers": {"private": 0, "public": 1}})
        np.testing.assert_array_equal(encoded.data["modifiers"], [1.0])

    def test_unseen_value(self) -> None:
        table = make_table({"modifiers": ["protected"]}, CATEGORICAL)
        with pytest.raises(EncodingError):
            encode_categoricals(table, codes={"modifiers": {"private": 0, "public": 1}})


class TestColumnPruning:
    def test_constant_columns_are_removed(self) -> None:
        table = make_table(
            {"flat": [1, 1, 1], "gappy": [2, None, 2], "varied": [1, 2, 3]}
        )
        pruned = drop_constant_columns(table)
        assert pruned.feature_names == ["varied"]
        assert pruned.removed_columns == ("flat", "gappy")

    def test_all_constant(self) -> None:
        with pytest.raises(EmptyFeatureError):
            drop_constant_columns(make_table({"a": [1, 1], "b": [0, 0]}))

    def test_sparse_threshold_is_strict(self) -> None:
        at_limit = [None] + list(range(19))
        over_limit = [None, None] + list(range(18))
        table = make_table({"at": at_limit, "over": over_limit, "full": list(range(20))})

        pruned = drop_sparse_columns(table, 0.05)

        assert pruned.feature_names == ["at", "full"]
        assert pruned.removed_columns == ("over",)

    @pytest.mark.parametrize("threshold", [0.0, 1.0, 1.5])
    def test_threshold_range(self, threshold: float) -> None:
        with pytest.raises(ContractViolation):
            drop_sparse_columns(make_table({"a": [1, 2]}), threshold)

    def test_every_column_sparse(self) -> None:
        with pytest.raises(EmptyFeatureError):
            drop_sparse_columns(make_table({"a": [None, 1], "b": [2, None]}), 0.05)


class TestKnnImputation:
    def test_mean_of_two_nearest(self) -> None:
        table = make_table({"x": [1, 3, None], "y": [2, 2, 2]})
        imputed = impute_knn(table, k=2)
        assert imputed.data["x"][2] == pytest.approx(2.0)

    def test_equidistant_donors_keep_row_order(self) -> None:
        table = make_table({"x": [1, 3, None], "y": [2, 2, 2]})
        imputed = impute_knn(table, k=1)
        assert imputed.data["x"][2] == pytest.approx(1.0)

    def test_observed_cells_are_untouched(self) -> None:
        table = make_table({"x": [1, 3, None, 8], "y": [2, 5, 2, 1]})
        imputed = impute_knn(table, k=2)
        np.testing.assert_array_equal(imputed.data["x"][[0, 1, 3]], [1, 3, 8])
        np.testing.assert_array_equal(imputed.data["y"], [2, 5, 2, 1])

    def test_too_few_donors(self) -> None:
        table = make_table({"x": [1, 3, None], "y": [2, 2, 2]})
        with pytest.raises(ImputationError):
            impute_knn(table, k=3)

    def test_nan_aware_distance(self) -> None:
        rows = np.array([[1.0, np.nan]])
        donors = np.array([[4.0, 5.0], [np.nan, 1.0]])
        distances = donor_distances(rows, donors)
        assert distances.shape == (1, 2)
        assert distances[0, 0] == pytest.approx(np.sqrt(18.0))
        assert np.isinf(distances[0, 1])

    def test_fitted_donors_serve_new_rows(self) -> None:
        imputer = KNNImputer.fit(np.array([[0.0, 10.0], [1.0, 20.0], [9.0, 90.0]]), 2)
        result = imputer.transform(np.array([[0.5, np.nan]]))
        assert result[0, 1] == pytest.approx(15.0)

    def test_feature_count_must_match(self) -> None:
        imputer = KNNImputer.fit(np.zeros((3, 2)), 1)
        with pytest.raises(SchemaError):
            imputer.transform(np.zeros((1, 3)))

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_exhaustive_neighbour_search(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        matrix = rng.normal(size=(50, 10))
        matrix[rng.random(matrix.shape) < 0.1] = np.nan
        k = 3

        imputed = KNNImputer.fit(matrix, k).transform(matrix)

        expected = matrix.copy()
        for r, c in zip(*np.nonzero(np.isnan(matrix)), strict=True):
            ranked: list[tuple[float, int]] = []
            for j in range(matrix.shape[0]):
                shared = ~np.isnan(matrix[r]) & ~np.isnan(matrix[j])
                if np.isnan(matrix[j, c]) or not shared.any():
                    continue
                gap = matrix[r, shared] - matrix[j, shared]
                distance = np.sqrt(matrix.shape[1] / shared.sum() * np.sum(gap**2))
                ranked.append((float(distance), j))
            nearest = [j for _, j in sorted(ranked)[:k]]
            expected[r, c] = matrix[nearest, c].mean()
        np.testing.assert_allclose(imputed, expected, rtol=1e-9, atol=1e-12)


class TestStandardizer:
    def test_population_z_scores(self) -> None:
        table = make_table({"a": [2, 4, 6]})
        state = fit_standardizer(table)
        matrix = apply_standardizer(state, table)

        assert state.mean[0] == pytest.approx(4.0)
        assert state.std[0] == pytest.approx(np.sqrt(8 / 3))
        np.testing.assert_allclose(matrix.values[:, 0], [-1.22474487, 0.0, 1.22474487])

    def test_feature_mismatch(self) -> None:
        state = fit_standardizer(make_table({"a": [2, 4, 6]}))
        with pytest.raises(SchemaError):
            apply_standardizer(state, make_table({"b": [1, 2, 3]}))

    def test_zero_spread(self) -> None:
        with pytest.raises(ContractViolation):
            fit_standardizer(make_table({"a": [5, 5, 5]}))

    def test_missing_values(self) -> None:
        with pytest.raises(ContractViolation):
            fit_standardizer(make_table({"a": [1, None, 3]}))

    def test_scaled_columns_have_zero_mean_and_unit_variance(self) -> None:
        rng = np.random.default_rng(3)
        columns = {
            f"m{j}": list(rng.normal(loc=10.0**j, scale=3.0**j, size=200)) for j in range(6)
        }
        table = make_table(columns)

        values = apply_standardizer(fit_standardizer(table), table).values

        np.testing.assert_allclose(values.mean(axis=0), 0.0, atol=1e-9)
        np.testing.assert_allclose(values.var(axis=0), 1.0, atol=1e-9)

    def test_restored_scaler_matches_fitted(self) -> None:
        table = make_table({"a": [2, 4, 6, 11], "b": [0.5, -1, 3, 3]})
        state = fit_standardizer(table)
        restored = ScalerState.from_moments(state.feature_names, state.mean, state.std)

        np.testing.assert_allclose(
            apply_standardizer(restored, table).values,
            apply_standardizer(state, table).values,
        )


class TestMetricPipeline:
    @staticmethod
    def _train() -> RawMetricTable:
        return make_table(
            {
                "a": [1, 2, 3, 4],
                "b": [5, 5, 5, 5],
                "modifiers": ["public", "private", "public", "private"],
            },
            CATEGORICAL,
        )

    def test_state_comes_from_training_rows(self) -> None:
        state = MetricPipeline.fit(self._train(), n_neighbors=2)

        assert state.feature_names == ("a", "modifiers")
        assert state.removed_constant == ("b",)
        assert state.removed_sparse == ()
        assert state.category_codes["modifiers"] == {"private": 0, "public": 1}

    def test_test_rows_use_training_statistics(self) -> None:
        state = MetricPipeline.fit(self._train(), n_neighbors=2)
        test = make_table(
            {"a": [10], "b": [99], "modifiers": ["public"]},
            CATEGORICAL,
        )
        matrix = MetricPipeline.transform(state, test)

        assert matrix.feature_names == ("a", "modifiers")
        assert matrix.values[0, 0] == pytest.approx((10 - 2.5) / np.std([1, 2, 3, 4]))
        assert matrix.values[0, 1] == pytest.approx((1 - 0.5) / 0.5)

    def test_unseen_category_at_transform(self) -> None:
        state = MetricPipeline.fit(self._train(), n_neighbors=2)
        test = make_table({"a": [1], "b": [5], "modifiers": ["protected"]}, CATEGORICAL)
        with pytest.raises(EncodingError):
            MetricPipeline.transform(state, test)

    def test_missing_feature_at_transform(self) -> None:
        state = MetricPipeline.fit(self._train(), n_neighbors=2)
        with pytest.raises(SchemaError):
            MetricPipeline.transform(state, make_table({"a": [1]}))

    def test_state_survives_serialisation(self) -> None:
        train = make_table({"a": [1, 2, 3, 4, 5, 6], "c": [3, None, 1, 4, 1, 5]})
        state = MetricPipeline.fit(train, n_neighbors=2, sparsity_threshold=0.5)
        restored = MetricPipelineState.from_dict(state.to_dict())

        original = MetricPipeline.transform(state, train)
        again = MetricPipeline.transform(restored, train)
        np.testing.assert_allclose(again.values, original.values)

    @staticmethod
    def _random_table(seed: int, scale: float = 1.0, shift: float = 0.0) -> RawMetricTable:
        rng = np.random.default_rng(seed)
        matrix = rng.normal(size=(40, 5))
        missing = rng.random(matrix.shape) < 0.03
        matrix = matrix * scale + shift
        return make_table(
            {
                f"m{j}": [None if missing[i, j] else matrix[i, j] for i in range(40)]
                for j in range(5)
            }
        )

    @pytest.mark.parametrize(("scale", "shift"), [(3.0, 0.0), (0.25, -7.0), (1000.0, 42.0)])
    def test_positive_affine_rescaling_leaves_output_unchanged(
        self, scale: float, shift: float
    ) -> None:
        base = self._random_table(11)
        moved = self._random_table(11, scale, shift)

        expected = MetricPipeline.transform(MetricPipeline.fit(base, 3, 0.5), base)
        actual = MetricPipeline.transform(MetricPipeline.fit(moved, 3, 0.5), moved)

        np.testing.assert_allclose(actual.values, expected.values, atol=1e-9)

    def test_rerunning_on_its_own_output_is_a_fixed_point(self) -> None:
        table = self._random_table(5)
        once = MetricPipeline.transform(MetricPipeline.fit(table, 3, 0.5), table)
        again_table = make_table(
            {name: list(once.values[:, j]) for j, name in enumerate(once.feature_names)}
        )

        twice = MetricPipeline.transform(MetricPipeline.fit(again_table, 3, 0.5), again_table)

        np.testing.assert_allclose(twice.values, once.values, atol=1e-9)
