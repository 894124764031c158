"""Use cases wired to the CSV source and run directories on fixture files."""

from collections.abc import Iterator
from dataclasses import replace
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from application import (
    ConcurrentRunner,
    CrossValidateUseCase,
    DatasetRequest,
    EncodeInputsUseCase,
    FeatureBuilder,
    LabelCorpusUseCase,
    LoadDatasetUseCase,
    PrepareMetricsUseCase,
    RawDataset,
    RenderReportUseCase,
    RunGradcheckUseCase,
    RunSweepUseCase,
    TrainModelUseCase,
)
from domain.enums import Ablation, EncoderKind, MetricLevel, Protocol, Smell
from domain.exceptions import DataError, FormatError, LexError, ShapeError
from domain.services import confusion, score, split_train_test
from domain.value_objects import ModelConfig
from infrastructure.files import CsvDatasetSource, RunDirectory


@pytest.fixture
def token_request(review_csv: Path, ck_csv: Path, sources_dir: Path) -> DatasetRequest:
    return DatasetRequest(
        smell=Smell.LONG_METHOD,
        reviews=review_csv,
        encoder=EncoderKind.TOKEN_INDEX,
        level=MetricLevel.METHOD,
        ck_csv=ck_csv,
        sources_dir=sources_dir,
    )


@pytest.fixture
def embedding_request(review_csv: Path, embeddings_csv: Path) -> DatasetRequest:
    return DatasetRequest(
        smell=Smell.LONG_METHOD,
        reviews=review_csv,
        encoder=EncoderKind.CODE2VEC,
        ablation=Ablation.SEMANTIC_ONLY,
        embeddings=embeddings_csv,
    )


@pytest.fixture
def runner() -> Iterator[ConcurrentRunner]:
    with ConcurrentRunner(max_workers=2) as pool:
        yield pool


async def _load(request: DatasetRequest) -> RawDataset:
    return await LoadDatasetUseCase(CsvDatasetSource()).execute(request)


class TestLabelAndPrepare:
    async def test_label_corpus(self, review_csv: Path, tmp_path: Path) -> None:
        store = RunDirectory(tmp_path / "labels")
        corpus = await LabelCorpusUseCase(CsvDatasetSource(), store).execute(
            review_csv, Smell.LONG_METHOD
        )

        assert (corpus.n_negative, corpus.n_positive, corpus.dropped_ties) == (16, 8, 0)
        frame = pd.read_csv(store.location / "corpus_LongMethod.csv", dtype={"sample_id": str})
        assert frame["label"].sum() == 8

    async def test_prepare_metrics(self, ck_csv: Path, tmp_path: Path) -> None:
        store = RunDirectory(tmp_path / "metrics")
        matrix = await PrepareMetricsUseCase(CsvDatasetSource(), store).execute(
            ck_csv, MetricLevel.METHOD
        )

        assert matrix.feature_names == ("loc", "cbo", "wmc", "modifiers")
        assert matrix.values.shape == (24, 4)
        np.testing.assert_allclose(matrix.values.mean(axis=0), 0.0, atol=1e-9)
        assert (store.location / "metrics.json").is_file()

    async def test_encode_tokens(self, sources_dir: Path, tmp_path: Path) -> None:
        store = RunDirectory(tmp_path / "tokens")
        result = await EncodeInputsUseCase(CsvDatasetSource(), store).execute(
            EncoderKind.TOKEN_INDEX, sources_dir=sources_dir
        )
        assert (result.samples, result.width) == (24, 65)

    async def test_encode_embeddings(self, embeddings_csv: Path, tmp_path: Path) -> None:
        store = RunDirectory(tmp_path / "c2v")
        result = await EncodeInputsUseCase(CsvDatasetSource(), store).execute(
            EncoderKind.CODE2VEC, embeddings=embeddings_csv
        )
        assert (result.samples, result.width) == (24, 20)

    async def test_single_vector_encoder_rejects_units(
        self, embeddings_csv: Path, tmp_path: Path
    ) -> None:
        use_case = EncodeInputsUseCase(CsvDatasetSource(), RunDirectory(tmp_path / "cb"))
        with pytest.raises(FormatError):
            await use_case.execute(EncoderKind.CODEBERT, embeddings=embeddings_csv)


class TestLoadDataset:
    async def test_token_inputs(self, token_request: DatasetRequest) -> None:
        dataset = await _load(token_request)

        assert len(dataset) == 24
        assert dataset.corpus.n_positive == 8
        assert dataset.metrics is not None
        assert dataset.metrics.sample_ids == tuple(dataset.corpus.sample_ids)
        assert dataset.tokens is not None
        assert len(dataset.tokens["s01"]) == 65
        assert len(dataset.tokens["s00"]) == 101

    async def test_embeddings_are_averaged(
        self, embedding_request: DatasetRequest, embeddings_csv: Path
    ) -> None:
        dataset = await _load(embedding_request)
        units = CsvDatasetSource().load_embeddings(embeddings_csv)

        assert dataset.metrics is None
        assert dataset.embeddings is not None
        expected = (units.rows["s00#0"] + units.rows["s00#1"]) / 2
        np.testing.assert_allclose(dataset.embeddings.rows["s00"], expected)

    async def test_missing_metric_row(
        self, token_request: DatasetRequest, ck_csv: Path, tmp_path: Path
    ) -> None:
        partial = tmp_path / "partial.csv"
        lines = ck_csv.read_text(encoding="utf-8").splitlines()
        partial.write_text("\n".join(lines[:-1]) + "\n", encoding="utf-8")
        request = DatasetRequest(
            smell=token_request.smell,
            reviews=token_request.reviews,
            level=MetricLevel.METHOD,
            ck_csv=partial,
            sources_dir=token_request.sources_dir,
        )
        with pytest.raises(DataError, match="no metric row"):
            await _load(request)

    async def test_lex_error_names_the_sample(
        self, token_request: DatasetRequest, sources_dir: Path
    ) -> None:
        (sources_dir / "s04.java").write_text('String s = "open', encoding="utf-8")
        with pytest.raises(LexError, match="s04"):
            await _load(token_request)


class TestTraining:
    async def test_cross_validation(
        self,
        token_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        dataset = await _load(token_request)
        store = RunDirectory(tmp_path / "cv")

        report = await CrossValidateUseCase(store, runner).execute(
            dataset, small_model_config, FeatureBuilder(), folds=5, run_name="lm_cv"
        )

        assert report.protocol is Protocol.CV5
        assert report.completed_folds == 5
        assert report.aggregate is not None
        assert -1.0 <= report.aggregate.mcc <= 1.0
        predictions = store.load_predictions()
        assert sorted(p.sample_id for p in predictions) == dataset.corpus.sample_ids
        assert {p.fold for p in predictions} == {1, 2, 3, 4, 5}
        assert (store.location / "history_fold5.csv").is_file()
        assert store.load_report() == report

    async def test_holdout_structural_only(
        self,
        token_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        config = replace(small_model_config, ablation=Ablation.STRUCTURAL_ONLY)
        dataset = await _load(token_request)
        store = RunDirectory(tmp_path / "holdout")

        result = await TrainModelUseCase(store, runner).execute(
            dataset, config, FeatureBuilder(Ablation.STRUCTURAL_ONLY), 0.2, "lm_ck"
        )

        assert result.report.protocol is Protocol.SPLIT_80_20
        assert len(result.fold.predictions) == 5
        assert sum(p.truth for p in result.fold.predictions) == 2
        restored = store.load_checkpoint(config.fingerprint())
        assert restored.preprocessing["metric_pipeline"] is not None
        assert len(result.fold.history.epoch_losses) == config.epochs

    async def test_sweep_records_failed_points(
        self,
        embedding_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        config = replace(small_model_config, ablation=Ablation.SEMANTIC_ONLY)
        dataset = await _load(embedding_request)
        store = RunDirectory(tmp_path / "sweep")

        sweep = await RunSweepUseCase(store, runner).execute(
            dataset,
            config,
            FeatureBuilder(Ablation.SEMANTIC_ONLY),
            kernel_grid=(3, 4),
            beta_grid=(2.0,),
            protocol=Protocol.SPLIT_80_20,
        )

        assert [point.name for point in sweep.points] == ["k3_beta2", "k4_beta2"]
        assert sweep.points[0].report is not None
        (failed,) = sweep.failed
        assert failed.name == "k4_beta2"
        assert isinstance(failed.cause, ShapeError)
        assert (store.location / "k3_beta2" / "report.json").is_file()
        assert (store.location / "k4_beta2" / "config.json").is_file()

    async def test_every_fold_failing_raises(
        self,
        embedding_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        config = replace(small_model_config, kernel_size=4, ablation=Ablation.SEMANTIC_ONLY)
        dataset = await _load(embedding_request)
        store = RunDirectory(tmp_path / "doomed")

        with pytest.raises(ShapeError):
            await CrossValidateUseCase(store, runner).execute(
                dataset, config, FeatureBuilder(Ablation.SEMANTIC_ONLY)
            )
        assert store.load_report().completed_folds == 0


    async def test_semantic_only_cross_validation(
        self,
        embedding_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        config = replace(small_model_config, ablation=Ablation.SEMANTIC_ONLY)
        dataset = await _load(embedding_request)
        store = RunDirectory(tmp_path / "semantic")

        report = await CrossValidateUseCase(store, runner).execute(
            dataset, config, FeatureBuilder(Ablation.SEMANTIC_ONLY), run_name="lm_c2v"
        )

        assert report.completed_folds == 5
        assert dataset.metrics is None
        predictions = store.load_predictions()
        assert sorted(p.sample_id for p in predictions) == dataset.corpus.sample_ids
        assert store.load_report() == report


class TestReproducibility:
    async def test_identical_runs_write_identical_files(
        self,
        token_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        dataset = await _load(token_request)
        for name in ("first", "second"):
            await TrainModelUseCase(RunDirectory(tmp_path / name), runner).execute(
                dataset, small_model_config, FeatureBuilder(), run_name="lm"
            )

        for file in ("checkpoint.json", "report.json"):
            first = (tmp_path / "first" / file).read_bytes()
            assert first == (tmp_path / "second" / file).read_bytes()

    async def test_report_matches_saved_predictions(
        self,
        token_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        dataset = await _load(token_request)
        store = RunDirectory(tmp_path / "cv")
        report = await CrossValidateUseCase(store, runner).execute(
            dataset, small_model_config, FeatureBuilder(), run_name="lm_cv"
        )

        predictions = store.load_predictions()
        for outcome in report.folds:
            rows = [p for p in predictions if p.fold == outcome.index]
            matrix = confusion([p.prediction for p in rows], [p.truth for p in rows])
            assert outcome.confusion == matrix
            assert outcome.scores is not None
            assert score(matrix).as_tuple() == pytest.approx(
                outcome.scores.as_tuple(), abs=1e-12
            )

    async def test_held_out_values_do_not_reach_fitted_state(
        self, token_request: DatasetRequest
    ) -> None:
        dataset = await _load(token_request)
        assert dataset.metrics is not None
        assert dataset.tokens is not None
        train_corpus, test_corpus = split_train_test(dataset.corpus, 0.2, seed=0)
        held_out = test_corpus.sample_ids[0]
        row = dataset.metrics.sample_ids.index(held_out)
        data = {name: column.copy() for name, column in dataset.metrics.data.items()}
        data["loc"][row] = 1e6
        perturbed = replace(
            dataset,
            metrics=replace(dataset.metrics, data=data),
            tokens={**dataset.tokens, held_out: ["unseenToken"] * 500},
        )

        builder = FeatureBuilder()
        original = builder.fit(dataset.with_corpus(train_corpus))
        altered = builder.fit(perturbed.with_corpus(train_corpus))

        assert altered.to_dict() == original.to_dict()


class TestReportingAndChecks:
    async def test_render_report(
        self,
        token_request: DatasetRequest,
        small_model_config: ModelConfig,
        runner: ConcurrentRunner,
        tmp_path: Path,
    ) -> None:
        dataset = await _load(token_request)
        run = RunDirectory(tmp_path / "run")
        await TrainModelUseCase(run, runner).execute(
            dataset, small_model_config, FeatureBuilder(), run_name="lm"
        )
        output = RunDirectory(tmp_path / "compare")

        table = await RenderReportUseCase(output).execute([run], ["token+ck"])

        assert "token+ck" in table
        assert "split80_20" in table
        assert (output.location / "comparison.csv").is_file()

    async def test_gradcheck_passes(self) -> None:
        results = await RunGradcheckUseCase().execute((0,))
        assert all(result.passed for result in results)
        assert results[-1].name == "ensemble"
