#!/usr/bin/env python3
"""Harsanyi 상호작용 개념 분석 CLI"""

import argparse
import functools
import logging
import sys

import numpy as np
from tqdm import tqdm

from . import __version__
from .analytics import (
    AnalyticsError,
    build_dictionary,
    discrimination_stats,
    effect_histogram,
    explanation_curve,
    mean_order_sensitivity,
    multi_variable_strength,
    random_transfer_baseline,
    salient_size_summary,
    transfer_curve,
)
from .axioms import run_axiom_suite
from .batch import BatchExtraction, BatchExtractor
from .config import RunConfig, apply_overrides, load_config, resolve_output, with_cli_flags
from .constants import (
    ADDITIVE_CHECK_MAX_VARIABLES,
    EXIT_EMPTY_SELECTION,
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT_VIOLATION,
    EXIT_OK,
    MODEL_FILENAME,
    SPARSITY_LEVEL,
    TABLES_DIRNAME,
    TOLERANCE,
)
from .data import (
    SampleSelection,
    TabularDataset,
    corrupt_inputs,
    corrupt_labels,
    iter_grid,
    load_tabular,
    subcategory_filter,
)
from .exporter import ReportExporter, load_tables
from .indices import shapley_from_dividends
from .lattice import harsanyi_transform, normalized_strength_curve, salient_set
from .mlp import (
    Hyperparameters,
    MlpModel,
    TrainingError,
    load_model,
    model_value_function,
    save_model,
    train_mlp,
)
from .models import HarsanyiError, InteractionTable, MetricsReport, VariableSet
from .values import BaselinePolicy, game_profile, make_additive_game

logger = logging.getLogger(__name__)


class EmptySelectionError(HarsanyiError):
    """필터에 해당하는 표본이 없음"""
    pass


# ---------------------------------------------------------------------------
# 공통 준비
# ---------------------------------------------------------------------------

def _setup(args) -> RunConfig:
    """로깅 설정과 실행 설정 (파일 < --set < 개별 플래그)"""
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    config = load_config(args.config)
    if args.set:
        config = apply_overrides(config, args.set)
    return with_cli_flags(
        config,
        output=args.output,
        seed=args.seed,
        architecture=args.arch,
        dataset=args.dataset,
    )


def _load_dataset(config: RunConfig) -> TabularDataset:
    ds = config.dataset
    return load_tabular(
        ds.path,
        ds.schema,
        seed=ds.split_seed,
        test_fraction=ds.test_fraction,
        label_column=ds.label_column,
    ).normalize()


def _hyperparameters(config: RunConfig) -> Hyperparameters:
    m = config.model
    return Hyperparameters(
        learning_rate=m.learning_rate,
        batch_size=m.batch_size,
        epochs=m.epochs,
        hidden_width=m.hidden_width,
    )


def _select(dataset: TabularDataset, config: RunConfig) -> SampleSelection:
    """필터 적용 후 max_samples개 시드 고정 부분 추출 (원래 순서 유지)"""
    ds = config.dataset
    selection = subcategory_filter(dataset, ds.filter, ds.split)
    if len(selection) == 0:
        raise EmptySelectionError(f"선택된 표본 없음: filter={ds.filter}, split={ds.split}")
    if ds.max_samples is not None and len(selection) > ds.max_samples:
        rng = np.random.default_rng(ds.sample_seed)
        keep = np.sort(rng.choice(len(selection), size=ds.max_samples, replace=False))
        selection = SampleSelection(
            name=selection.name,
            split=selection.split,
            indices=selection.indices[keep],
            features=selection.features[keep],
            labels=selection.labels[keep],
            raw=selection.raw[keep],
        )
    return selection


def _baseline(dataset: TabularDataset, config: RunConfig) -> np.ndarray:
    """모델 입력 공간의 기준값 벡터 (explicit 벡터는 원래 단위로 받아 정규화)"""
    ex = config.extraction
    n = dataset.n_features
    if ex.baseline == "mean":
        return BaselinePolicy.per_variable_mean(dataset.x_train).resolve(n)
    if ex.baseline == "zeros":
        return BaselinePolicy.zeros().resolve(n)
    raw = BaselinePolicy.explicit(np.asarray(ex.baseline_vector)).resolve(n)
    return (raw - dataset.mean) / dataset.std


def _extractor(model: MlpModel, dataset: TabularDataset, config: RunConfig) -> BatchExtractor:
    return BatchExtractor(
        value_factory=functools.partial(model_value_function, model),
        baseline=_baseline(dataset, config),
        workers=config.extraction.workers,
        context_variables=config.extraction.context_variables or None,
        quadrature_points=config.extraction.quadrature_points,
    )


def _extract(
    model: MlpModel,
    dataset: TabularDataset,
    selection: SampleSelection,
    config: RunConfig,
    progress: bool,
) -> BatchExtraction:
    extractor = _extractor(model, dataset, config)
    return extractor.extract(selection.features, selection.labels, progress=progress)


def _metadata(command: str, config: RunConfig, **extra) -> dict:
    return {"command": command, "version": __version__, "config": config.to_dict(), **extra}


# ---------------------------------------------------------------------------
# 지표 블록
# ---------------------------------------------------------------------------

def _first_rank_below(curve: np.ndarray, level: float) -> int | None:
    below = np.flatnonzero(curve < level)
    return int(below[0]) + 1 if below.size else None


def add_concept_blocks(
    report: MetricsReport,
    tables: list[InteractionTable],
    config: RunConfig,
    peer_tables: list[InteractionTable] | None = None,
) -> dict[str, dict]:
    """
    테이블 모집단에서 지표 블록 계산 후 보고서에 추가

    Returns:
        CSV로 저장할 곡선 (이름 → 열 딕셔너리)
    """
    an = config.analysis
    curves: dict[str, dict] = {}
    omegas = [salient_set(t, an.salient_lambda, an.include_empty) for t in tables]

    # 희소성
    sparsity = {}
    for include_empty in (False, True):
        curve = normalized_strength_curve(tables, include_empty=include_empty)
        key = "with_empty" if include_empty else "without_empty"
        sparsity[key] = curve
        sparsity[f"{key}_first_rank_below"] = _first_rank_below(curve, SPARSITY_LEVEL)
        curves[f"sparsity_curve_{key}"] = {"rank": np.arange(1, len(curve) + 1), "strength": curve}
    report.add_block(
        "sparsity_curve",
        {"lambda": an.salient_lambda, "level": SPARSITY_LEVEL},
        salient_size=salient_size_summary(omegas),
        **sparsity,
    )

    # 설명 비율 ρ(k)
    rho_blocks = {}
    for lam in an.dictionary_lambdas:
        population = [salient_set(t, lam, an.include_empty) for t in tables]
        try:
            curve = explanation_curve(population, an.dictionary_ks)
        except AnalyticsError as e:
            logger.warning(f"ρ(k) 계산 생략 (λ={lam}): {e}")
            continue
        rho_blocks[f"lambda_{lam:g}"] = curve.to_dict()
        curves[f"rho_curve_lambda_{lam:g}"] = {"k": curve.ks, "rho": curve.rho}
    report.add_block("rho_curve", {"k_grid": list(an.dictionary_ks)}, curves=rho_blocks)

    # 판별력
    try:
        discrimination = discrimination_stats(tables, an.salient_lambda, an.include_empty)
        report.add_block(
            "discrimination", {"lambda": an.salient_lambda}, **discrimination.to_dict()
        )
        curves["discrimination_buckets"] = {
            "alpha_low": [b["alpha_low"] for b in discrimination.buckets],
            "alpha_high": [b["alpha_high"] for b in discrimination.buckets],
            "count": [b["count"] for b in discrimination.buckets],
            "mean_beta": [b["mean_beta"] for b in discrimination.buckets],
        }
    except AnalyticsError as e:
        logger.warning(f"판별력 계산 생략: {e}")

    # 다변수 강도 κ
    try:
        kappa = multi_variable_strength(omegas)
    except AnalyticsError as e:
        logger.warning(f"κ 계산 생략: {e}")
        kappa = None
    report.add_block(
        "kappa",
        {"lambda": an.salient_lambda},
        kappa=kappa,
        excluded_empty=sum(1 for o in omegas if not len(o)),
    )

    # 빈도 상위 개념의 효과 분포
    histograms = []
    if any(len(o) for o in omegas):
        top = build_dictionary(omegas, an.histogram_concepts)
        for mask in top.entries:
            hist = effect_histogram(
                mask, tables, an.salient_lambda, bins=an.histogram_bins,
                include_empty=an.include_empty,
            )
            histograms.append({
                "concept": str(VariableSet(mask, tables[0].n)),
                "frequency": top.frequency[mask],
                **hist.to_dict(),
            })
    report.add_block(
        "histograms",
        {"lambda": an.salient_lambda, "bins": an.histogram_bins},
        concepts=histograms,
    )

    # 평균 Shapley 귀속값
    attributions = np.vstack([shapley_from_dividends(t).values for t in tables])
    report.add_block("attribution", {"method": "dividend"}, mean_shapley=attributions.mean(axis=0))

    # 모델 간 전이율 γ
    if peer_tables is not None:
        gamma = transfer_curve(
            tables, peer_tables, an.gamma_lambdas, an.reference_lambda, an.include_empty
        )
        peers = [salient_set(t, an.reference_lambda, an.include_empty) for t in peer_tables]
        own = [salient_set(t, an.reference_lambda, an.include_empty) for t in tables]
        size1 = int(round(np.mean([len(o) for o in own])))
        size2 = int(round(np.mean([len(o) for o in peers])))
        baseline = random_transfer_baseline(
            size1, size2, tables[0].n, an.transfer_trials, an.transfer_seed
        )
        report.add_block(
            "gamma_curve",
            {"pairing": an.pairing, "reference_lambda": an.reference_lambda},
            **gamma.to_dict(),
            random_baseline={"size1": size1, "size2": size2, **baseline.to_dict()},
        )
        curves["gamma_curve"] = {"lambda": gamma.lambdas, "gamma": gamma.gamma}

    return curves


# ---------------------------------------------------------------------------
# 명령
# ---------------------------------------------------------------------------

def cmd_train(args):
    """모델 학습 및 저장"""
    config = _setup(args)
    dataset = _load_dataset(config)

    model_cfg = config.model
    print(f"📁 {config.dataset.schema} 학습 시작: {model_cfg.architecture} (seed={model_cfg.seed})")
    result = train_mlp(
        dataset,
        config.model.architecture,
        _hyperparameters(config),
        seed=config.model.seed,
        progress=args.verbose and not args.quiet,
    )

    exporter = ReportExporter(resolve_output(config))
    model_path = save_model(result.model, exporter.output_dir / MODEL_FILENAME)

    report = MetricsReport(metadata=_metadata("train", config))
    report.add_block(
        "training",
        {"architecture": config.model.architecture, "seed": config.model.seed},
        **result.to_summary(),
        loss_history=result.history,
    )
    exporter.export_report(report)
    exporter.export_manifest("train", config.to_dict(), {"model": str(model_path)})

    print(f"📊 정확도: 학습 {result.train_accuracy:.4f}, 평가 {result.test_accuracy:.4f}")
    print(f"💾 모델 저장: {model_path}")
    return EXIT_OK


def cmd_extract(args):
    """표본별 Harsanyi 테이블 추출"""
    config = _setup(args)
    output_dir = resolve_output(config)
    model = load_model(args.model or output_dir / MODEL_FILENAME)
    dataset = _load_dataset(config)
    selection = _select(dataset, config)

    print(f"📁 {len(selection)}개 표본 추출 시작 (filter={selection.name})...")
    extractor = _extractor(model, dataset, config)
    batch = extractor.extract(selection.features, selection.labels, progress=not args.quiet)

    exporter = ReportExporter(output_dir)
    saved = exporter.export_tables(batch, csv=args.csv)

    report = MetricsReport(metadata=_metadata("extract", config))
    report.add_block(
        "extraction",
        {"filter": selection.name, "split": selection.split},
        n=extractor.n_variables,
        total=batch.total,
        success=batch.success,
        failed=batch.failed,
        violations=len(batch.violations),
        max_residual=batch.max_residual,
        samples=selection.indices,
    )
    exporter.export_report(report)
    exporter.export_manifest("extract", config.to_dict(), batch.to_summary())

    print(f"📊 결과: 성공 {batch.success}/{batch.total} ({batch.success_rate:.1%})")
    print(f"💾 테이블 저장: {len(saved)}개 → {exporter.tables_dir}")

    if batch.failed:
        count = exporter.export_failed_log(batch)
        print(
            f"✗ 실패 {count}개 (효율성 위반 {len(batch.violations)}개, "
            f"최대 잔차 {batch.max_residual:.3e})",
            file=sys.stderr,
        )
        return EXIT_INVARIANT_VIOLATION
    return EXIT_OK


def cmd_metrics(args):
    """테이블 모집단 지표 보고서"""
    config = _setup(args)
    output_dir = resolve_output(config)
    tables, index = load_tables(args.tables or output_dir / TABLES_DIRNAME)

    peer_tables = None
    if args.peer:
        peer_tables, peer_index = load_tables(args.peer)
        if len(peer_tables) != len(tables) or peer_tables[0].n != tables[0].n:
            raise HarsanyiError(
                f"상대 테이블 불일치: {len(peer_tables)}개 (n={peer_tables[0].n}) "
                f"vs {len(tables)}개 (n={tables[0].n})"
            )
        # γ는 같은 표본끼리 비교
        if "index" in index and "index" in peer_index:
            if index["index"].tolist() != peer_index["index"].tolist():
                raise HarsanyiError("상대 테이블의 표본 인덱스가 다름")

    report = MetricsReport(metadata=_metadata("metrics", config, n=tables[0].n, m=len(tables)))
    curves = add_concept_blocks(report, tables, config, peer_tables)

    exporter = ReportExporter(output_dir)
    exporter.export_report(report)
    for name, columns in curves.items():
        exporter.export_curve(name, columns)
    exporter.export_manifest("metrics", config.to_dict())

    print(f"📊 지표: 표본 {len(tables)}개, 블록 {len(report.blocks)}개")
    if "discrimination" in report.blocks:
        print(f"   β̄ = {report.blocks['discrimination']['beta_bar']:.4f}")
    print(f"💾 보고서 저장: {output_dir}")
    return EXIT_OK


def _noise_point(
    dataset: TabularDataset,
    selection: SampleSelection,
    config: RunConfig,
    sweep: str,
    value: float,
) -> dict:
    """잡음 격자 한 점: 오염 → 재학습 → 추출 → 지표"""
    noise, an = config.noise, config.analysis
    corrupted = dataset
    if sweep == "label" and value > 0:
        corrupted = corrupt_labels(dataset, value, noise.corruption_seed)
    elif sweep == "input" and value > 0:
        corrupted = corrupt_inputs(dataset, value, noise.corruption_seed)

    row = {"sweep": sweep, "value": value}
    try:
        result = train_mlp(
            corrupted, config.model.architecture, _hyperparameters(config), seed=config.model.seed
        )
    except TrainingError as e:
        logger.warning(f"학습 발산 ({sweep}={value}): {e}")
        return {**row, "error": str(e), "epoch": e.epoch}

    # 기준값은 깨끗한 학습 분할 평균
    batch = _extract(result.model, dataset, selection, config, progress=False)
    tables = batch.tables
    row["test_accuracy"] = result.test_accuracy
    row["tables"] = len(tables)
    if not tables:
        return {**row, "error": "추출된 테이블 없음"}

    omegas = [salient_set(t, an.dictionary_lambdas[0], an.include_empty) for t in tables]
    try:
        curve = explanation_curve(omegas, an.dictionary_ks)
        row["rho"] = curve.rho
        row["rho_at_max_k"] = curve.rho[-1]
    except AnalyticsError as e:
        row["error"] = str(e)
    try:
        row["beta_bar"] = discrimination_stats(tables, an.salient_lambda, an.include_empty).beta_bar
    except AnalyticsError as e:
        row["error"] = str(e)
    try:
        row["kappa"] = multi_variable_strength(
            [salient_set(t, an.salient_lambda, an.include_empty) for t in tables]
        )
    except AnalyticsError:
        row["kappa"] = None
    row["model"] = result.model
    row["batch"] = batch
    return row


def _perturbation_pairs(
    model: MlpModel,
    dataset: TabularDataset,
    selection: SampleSelection,
    config: RunConfig,
    clean: BatchExtraction,
) -> list[tuple[InteractionTable, InteractionTable]]:
    """표본에 가우스 교란 x + δ·ε 을 가한 테이블과 원본 테이블 쌍 (표본 인덱스로 대응)"""
    noise = config.noise
    rng = np.random.default_rng(noise.perturbation_seed)
    shifted = selection.features + noise.perturbation_strength * rng.standard_normal(
        selection.features.shape
    )
    perturbed_selection = SampleSelection(
        name=f"{selection.name}+perturbed",
        split=selection.split,
        indices=selection.indices,
        features=shifted,
        labels=selection.labels,
        raw=dataset.denormalize(shifted),
    )
    perturbed = _extract(model, dataset, perturbed_selection, config, progress=False)
    return clean.paired_tables(perturbed)


def cmd_noise_study(args):
    """레이블/입력 잡음 격자 연구"""
    config = _setup(args)
    noise = config.noise
    if not noise.label_ratios and not noise.input_strengths:
        raise HarsanyiError("잡음 격자가 비어 있음")

    dataset = _load_dataset(config)
    selection = _select(dataset, config)

    grid = list(iter_grid(noise.label_ratios, noise.input_strengths))
    print(f"📁 잡음 연구: {len(grid)}개 격자점, 표본 {len(selection)}개")

    cache: dict[float, dict] = {}
    rows = []
    iterator = tqdm(grid, desc="잡음 격자") if not args.quiet else grid
    for sweep, value in iterator:
        if value == 0 and 0.0 in cache:
            rows.append({**cache[0.0], "sweep": sweep})
            continue
        row = _noise_point(dataset, selection, config, sweep, float(value))
        if value == 0:
            cache[0.0] = row
        rows.append(row)

    report = MetricsReport(metadata=_metadata("noise-study", config, m=len(selection)))
    fields = (
        "sweep", "value", "test_accuracy", "tables", "rho_at_max_k", "beta_bar", "kappa", "error",
    )
    report.add_block(
        "noise_study",
        {
            "dictionary_lambda": config.analysis.dictionary_lambdas[0],
            "salient_lambda": config.analysis.salient_lambda,
            "k_grid": list(config.analysis.dictionary_ks),
            "corruption_seed": noise.corruption_seed,
        },
        points=[
            {key: row.get(key) for key in (*fields, "rho", "epoch")}
            for row in rows
        ],
    )

    clean = cache.get(0.0)
    if clean is not None and "model" in clean:
        pairs = _perturbation_pairs(
            clean["model"], dataset, selection, config, clean["batch"]
        )
        if pairs:
            sensitivity = mean_order_sensitivity(pairs)
            report.add_block(
                "order_sensitivity",
                {"strength": noise.perturbation_strength, "seed": noise.perturbation_seed},
                **sensitivity.to_dict(),
            )

    exporter = ReportExporter(resolve_output(config))
    exporter.export_report(report)
    exporter.export_curve("noise_study", {key: [row.get(key) for row in rows] for key in fields})
    exporter.export_manifest("noise-study", config.to_dict())

    failed = sum(1 for row in rows if row.get("error"))
    print(f"📊 격자점 {len(rows)}개 완료 (오류 {failed}개)")
    print(f"💾 보고서 저장: {exporter.output_dir}")
    return EXIT_OK


def cmd_synth_check(args):
    """합성 게임 공리 검증"""
    config = _setup(args)
    checks = run_axiom_suite(max_n=args.max_n, trials=args.trials, seed=config.model.seed)

    # 가산 게임: κ = 0, 강도 곡선의 비영 순위 = n
    n = min(args.max_n, ADDITIVE_CHECK_MAX_VARIABLES)
    weights = np.random.default_rng(config.model.seed).uniform(0.5, 2.0, size=n)
    additive = harsanyi_transform(game_profile(make_additive_game(weights), n))
    additive_salient = salient_set(additive, config.analysis.salient_lambda)
    additive_kappa = multi_variable_strength([additive_salient])
    nonzero_ranks = int(np.sum(normalized_strength_curve([additive]) > TOLERANCE))

    report = MetricsReport(metadata=_metadata("synth-check", config))
    report.add_block(
        "axioms",
        {"max_n": args.max_n, "trials": args.trials, "seed": config.model.seed},
        checks=[c.to_dict() for c in checks],
    )
    report.add_block(
        "additive_game",
        {"n": n, "lambda": config.analysis.salient_lambda},
        kappa=additive_kappa,
        nonzero_ranks=nonzero_ranks,
    )

    exporter = ReportExporter(resolve_output(config))
    exporter.export_report(report)
    exporter.export_manifest("synth-check", config.to_dict())

    for check in checks:
        mark = "✓" if check.passed else "✗"
        print(f"{mark} {check.name}: {check.cases}건, 최대 오차 {check.max_error:.2e}")
    print(f"{'✓' if additive_kappa < TOLERANCE else '✗'} additive κ = {additive_kappa:.2e}")

    if not all(c.passed for c in checks) or additive_kappa >= TOLERANCE or nonzero_ranks != n:
        return EXIT_INVARIANT_VIOLATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# 진입점
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", nargs="?", help="실행 설정 YAML")
    parser.add_argument("-o", "--output", help="출력 디렉토리")
    parser.add_argument("--seed", type=int, help="학습 시드")
    parser.add_argument("--arch", choices=["mlp5", "resmlp5"], help="아키텍처")
    parser.add_argument("--dataset", help="데이터 파일 경로")
    parser.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="설정 덮어쓰기 (section.key=value, 반복 가능)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="상세 로그")
    parser.add_argument("-q", "--quiet", action="store_true", help="진행률 숨김")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harsanyi",
        description="Harsanyi 상호작용 개념 추출 및 품질 지표",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="명령")

    # train 명령
    p_train = subparsers.add_parser("train", help="MLP 학습")
    _add_common(p_train)
    p_train.set_defaults(func=cmd_train)

    # extract 명령
    p_extract = subparsers.add_parser("extract", help="표본별 상호작용 테이블 추출")
    _add_common(p_extract)
    p_extract.add_argument("-m", "--model", help="모델 파일 (기본: <출력>/model.mlpw)")
    p_extract.add_argument("--csv", action="store_true", help="테이블 CSV도 저장")
    p_extract.set_defaults(func=cmd_extract)

    # metrics 명령
    p_metrics = subparsers.add_parser("metrics", help="개념 품질 지표 보고서")
    _add_common(p_metrics)
    p_metrics.add_argument("-t", "--tables", help="테이블 디렉토리 (기본: <출력>/tables)")
    p_metrics.add_argument("-p", "--peer", help="전이율 비교용 상대 모델 테이블 디렉토리")
    p_metrics.set_defaults(func=cmd_metrics)

    # noise-study 명령
    p_noise = subparsers.add_parser("noise-study", help="레이블/입력 잡음 연구")
    _add_common(p_noise)
    p_noise.set_defaults(func=cmd_noise_study)

    # synth-check 명령
    p_synth = subparsers.add_parser("synth-check", help="합성 게임 공리 검증")
    _add_common(p_synth)
    p_synth.add_argument("--max-n", type=int, default=10, help="최대 변수 개수")
    p_synth.add_argument("--trials", type=int, default=20, help="공리별 시행 횟수")
    p_synth.set_defaults(func=cmd_synth_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI 진입점"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_INPUT_ERROR

    try:
        return args.func(args)
    except EmptySelectionError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_EMPTY_SELECTION
    except TrainingError as e:
        print(f"✗ 학습 실패: {e}", file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION
    except HarsanyiError as e:
        print(f"✗ 오류: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"✗ 파일 오류: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
