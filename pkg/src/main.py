"""Application entry point."""

import argparse
import asyncio
import sys
from collections.abc import Awaitable, Callable, Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from application import (
    CrossValidateUseCase,
    EncodeInputsUseCase,
    LabelCorpusUseCase,
    LoadDatasetUseCase,
    PrepareMetricsUseCase,
    RenderReportUseCase,
    RunGradcheckUseCase,
    RunSweepUseCase,
    TrainModelUseCase,
)
from application.services import ConcurrentRunner, DatasetRequest, FeatureBuilder, RawDataset
from application.services.reporting import render_report
from application.use_cases.run_gradcheck import DEFAULT_SEEDS
from domain.enums import EncoderKind, MetricLevel, Smell
from domain.exceptions import ConfigError, ContractViolation, DomainError, NumericError
from domain.value_objects import FoldReport
from infrastructure.config import ReviewColumns, RunConfig, Settings, get_settings, load_run_config
from infrastructure.files import CsvDatasetSource, RunDirectory
from infrastructure.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

Handler = Callable[[argparse.Namespace, Settings], Awaitable[int]]


def exit_code(error: BaseException) -> int:
    """Exit-code family of a failure: usage/config 1, numeric 3, anything else 2."""
    if isinstance(error, NumericError):
        return EXIT_NUMERIC
    if isinstance(error, ConfigError | ContractViolation):
        return EXIT_USAGE
    return EXIT_DATA


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _review_columns(pairs: Sequence[str] | None) -> ReviewColumns:
    mapping: dict[str, str] = {}
    for pair in pairs or []:
        logical, sep, physical = pair.partition("=")
        if not sep:
            raise ConfigError(f"Column mapping '{pair}' is not of the form logical=physical")
        mapping[logical.strip()] = physical.strip()
    try:
        return ReviewColumns(**mapping)
    except ValidationError as e:
        raise ConfigError(f"Invalid column mapping: {e.errors()[0]['msg']}") from e


def _smell(raw: str) -> Smell:
    try:
        return Smell.parse(raw)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _builder(config: RunConfig) -> FeatureBuilder:
    return FeatureBuilder(config.ablation, config.knn_neighbors, config.sparsity_threshold)


def _run_store(config: RunConfig, settings: Settings) -> RunDirectory:
    store = RunDirectory(config.resolve_output_dir(settings.output_root))
    store.save_config(config.model_dump(mode="json"))
    return store


async def _load_dataset(config: RunConfig) -> RawDataset:
    request = DatasetRequest(
        smell=config.smell,
        reviews=config.reviews,
        encoder=config.encoder,
        ablation=config.ablation,
        level=config.metric_level,
        ck_csv=config.ck_csv,
        embeddings=config.embeddings,
        sources_dir=config.sources_dir,
    )
    return await LoadDatasetUseCase(CsvDatasetSource(config.review_columns)).execute(request)


def _print_reports(reports: Sequence[FoldReport], labels: Sequence[str] | None = None) -> None:
    table, _ = render_report(reports, labels)
    print(table, end="")


async def _label(args: argparse.Namespace, settings: Settings) -> int:
    smell = _smell(args.smell)
    source = CsvDatasetSource(_review_columns(args.column))
    corpus = await LabelCorpusUseCase(source, RunDirectory(args.out)).execute(args.reviews, smell)
    print(
        f"{smell.value}: {corpus.n_negative} non-smelly, {corpus.n_positive} smelly, "
        f"{corpus.dropped_ties} ties dropped"
    )
    return EXIT_OK


async def _prep_metrics(args: argparse.Namespace, settings: Settings) -> int:
    use_case = PrepareMetricsUseCase(CsvDatasetSource(), RunDirectory(args.out))
    level = MetricLevel(args.level)
    matrix = await use_case.execute(args.ck_csv, level, args.neighbors, args.sparsity)
    print(f"{len(matrix.sample_ids)} rows x {len(matrix.feature_names)} features")
    return EXIT_OK


async def _encode(args: argparse.Namespace, settings: Settings) -> int:
    use_case = EncodeInputsUseCase(CsvDatasetSource(), RunDirectory(args.out))
    result = await use_case.execute(EncoderKind(args.encoder), args.sources, args.embeddings)
    print(f"{result.encoder.value}: {result.samples} samples, width {result.width}")
    return EXIT_OK


async def _train(args: argparse.Namespace, settings: Settings) -> int:
    config = load_run_config(args.config, args.set)
    store = _run_store(config, settings)
    dataset = await _load_dataset(config)
    with ConcurrentRunner(settings.max_workers) as runner:
        result = await TrainModelUseCase(store, runner).execute(
            dataset,
            config.to_model_config(),
            _builder(config),
            config.test_fraction,
            config.run_name,
        )
    _print_reports([result.report])
    return EXIT_OK


async def _cv(args: argparse.Namespace, settings: Settings) -> int:
    config = load_run_config(args.config, args.set)
    store = _run_store(config, settings)
    dataset = await _load_dataset(config)
    with ConcurrentRunner(settings.max_workers) as runner:
        report = await CrossValidateUseCase(store, runner).execute(
            dataset, config.to_model_config(), _builder(config), config.folds, config.run_name
        )
    _print_reports([report])
    return EXIT_OK


async def _report(args: argparse.Namespace, settings: Settings) -> int:
    output = RunDirectory(args.out or settings.output_root)
    runs = [RunDirectory(path) for path in args.runs]
    table = await RenderReportUseCase(output).execute(runs, args.label or None)
    print(table, end="")
    return EXIT_OK


async def _gradcheck(args: argparse.Namespace, settings: Settings) -> int:
    results = await RunGradcheckUseCase().execute(tuple(args.seeds))
    for result in results:
        status = "ok" if result.passed else "FAIL"
        print(
            f"{result.name:<16} {result.max_relative_error:.3e}  "
            f"tol {result.tolerance:.0e}  {status}"
        )
    return EXIT_OK if all(result.passed for result in results) else EXIT_NUMERIC


async def _sweep(args: argparse.Namespace, settings: Settings) -> int:
    config = load_run_config(args.config, args.set)
    store = _run_store(config, settings)
    dataset = await _load_dataset(config)
    with ConcurrentRunner(settings.max_workers) as runner:
        sweep = await RunSweepUseCase(store, runner).execute(
            dataset,
            config.to_model_config(),
            _builder(config),
            config.kernel_grid,
            config.beta_grid,
            config.protocol,
            config.folds,
            config.test_fraction,
            config.model_dump(mode="json"),
        )

    done = [point for point in sweep.points if point.report is not None]
    if done:
        reports = [point.report for point in done if point.report is not None]
        table, rows = render_report(reports, [point.name for point in done])
        store.save_comparison(table, rows)
        print(table, end="")
    for point in sweep.failed:
        print(f"error: {point.name}: {point.error}", file=sys.stderr)
    if sweep.failed:
        first = sweep.failed[0].cause
        return exit_code(first) if first is not None else EXIT_DATA
    return EXIT_OK


def _add_config_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, required=True, help="Run config JSON file")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a config value; repeatable, dotted keys reach nested sections",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="smellfuse",
        description="Detect code smells from fused metric and semantic features.",
    )
    parser.add_argument("--log-level", help="Overrides SMELLFUSE_LOG_LEVEL")
    parser.add_argument("--log-format", choices=("console", "json"))
    commands = parser.add_subparsers(dest="command", required=True)

    label = commands.add_parser("label", help="Majority-vote reviews into a binary corpus")
    label.add_argument("--reviews", type=Path, required=True)
    label.add_argument("--smell", required=True, help="e.g. LongMethod, 'feature envy', blob")
    label.add_argument("--out", type=Path, required=True)
    label.add_argument(
        "--column",
        action="append",
        metavar="LOGICAL=PHYSICAL",
        help="Map a review column (sample_id, smell, severity, reviewer_id, source_ref)",
    )
    label.set_defaults(handler=_label)

    prep = commands.add_parser("prep-metrics", help="Preprocess a CK metric export")
    prep.add_argument("--ck-csv", type=Path, required=True)
    prep.add_argument("--level", choices=[level.value for level in MetricLevel], required=True)
    prep.add_argument("--out", type=Path, required=True)
    prep.add_argument("--neighbors", type=int, default=5)
    prep.add_argument("--sparsity", type=float, default=0.05)
    prep.set_defaults(handler=_prep_metrics)

    encode = commands.add_parser("encode", help="Token-index sources or aggregate embeddings")
    encode.add_argument("--encoder", choices=[kind.value for kind in EncoderKind], required=True)
    encode.add_argument("--sources", type=Path, help="Directory of <sample_id>.java files")
    encode.add_argument("--embeddings", type=Path, help="Header-less unit embedding CSV")
    encode.add_argument("--out", type=Path, required=True)
    encode.set_defaults(handler=_encode)

    train = commands.add_parser("train", help="Hold-out training with checkpoint")
    _add_config_options(train)
    train.set_defaults(handler=_train)

    cv = commands.add_parser("cv", help="Stratified k-fold cross-validation")
    _add_config_options(cv)
    cv.set_defaults(handler=_cv)

    report = commands.add_parser("report", help="Compare the reports of several runs")
    report.add_argument("runs", type=Path, nargs="+", help="Run directories")
    report.add_argument("--label", action="append", help="Display name per run, in order")
    report.add_argument("--out", type=Path, help="Where comparison.txt/.csv are written")
    report.set_defaults(handler=_report)

    gradcheck = commands.add_parser("gradcheck", help="Finite-difference gradient checks")
    gradcheck.add_argument("--seeds", type=int, nargs="+", default=list(DEFAULT_SEEDS))
    gradcheck.set_defaults(handler=_gradcheck)

    sweep = commands.add_parser("sweep", help="One run per kernel size and beta")
    _add_config_options(sweep)
    sweep.set_defaults(handler=_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, args.log_format or settings.log_format)

    handler: Handler = args.handler
    try:
        return asyncio.run(handler(args, settings))
    except DomainError as e:
        logger.debug("Command failed", command=args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
