"""실행 설정 (YAML)

파일 값 < CLI 플래그 순으로 덮어쓰고, 상대 출력 경로에는
HARSANYI_OUTPUT_ROOT 환경 변수를 접두로 붙인다
"""

import os
from dataclasses import asdict, dataclass, field, fields, is_dataclass, replace
from pathlib import Path

import yaml

from .constants import (
    ARCHITECTURE_IDS,
    DEFAULT_BATCH_SIZE,
    DEFAULT_DICTIONARY_KS,
    DEFAULT_EPOCHS,
    DEFAULT_LEARNING_RATE,
    DEFAULT_QUADRATURE_POINTS,
    DEFAULT_SALIENT_LAMBDA,
    DEFAULT_TEST_FRACTION,
    DEFAULT_TRANSFER_TRIALS,
    DICTIONARY_LAMBDA,
    ENV_OUTPUT_ROOT,
    GAMMA_LAMBDAS,
    HIDDEN_WIDTH,
)
from .data import SCHEMAS
from .models import HarsanyiError

BASELINES = ("mean", "zeros", "explicit")
PAIRINGS = ("same-architecture", "cross-architecture")


class ConfigError(HarsanyiError):
    """실행 설정 오류"""
    pass


@dataclass
class DatasetConfig:
    path: str = ""
    schema: str = "wifi"
    label_column: str = "label"
    split_seed: int = 0
    test_fraction: float = DEFAULT_TEST_FRACTION
    filter: str = "all"                  # all / row1 ... / category-<클래스> / class-<인덱스>
    split: str = "test"
    max_samples: int | None = None
    sample_seed: int = 0


@dataclass
class ModelConfig:
    architecture: str = "mlp5"
    seed: int = 0
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    epochs: int = DEFAULT_EPOCHS
    hidden_width: int = HIDDEN_WIDTH


@dataclass
class ExtractionConfig:
    baseline: str = "mean"
    baseline_vector: list[float] | None = None
    workers: int | None = 1
    context_variables: list[int] = field(default_factory=list)
    quadrature_points: int = DEFAULT_QUADRATURE_POINTS


@dataclass
class AnalysisConfig:
    salient_lambda: float = DEFAULT_SALIENT_LAMBDA
    dictionary_lambdas: list[float] = field(
        default_factory=lambda: [DICTIONARY_LAMBDA, DEFAULT_SALIENT_LAMBDA]
    )
    dictionary_ks: list[int] = field(default_factory=lambda: list(DEFAULT_DICTIONARY_KS))
    gamma_lambdas: list[float] = field(default_factory=lambda: list(GAMMA_LAMBDAS))
    reference_lambda: float = DEFAULT_SALIENT_LAMBDA
    pairing: str = "same-architecture"
    peer_seed: int = 1
    transfer_trials: int = DEFAULT_TRANSFER_TRIALS
    transfer_seed: int = 0
    histogram_bins: int = 10
    histogram_concepts: int = 5
    include_empty: bool = False


@dataclass
class NoiseConfig:
    label_ratios: list[float] = field(default_factory=lambda: [0.0, 0.15, 0.3])
    input_strengths: list[float] = field(default_factory=lambda: [0.0, 0.25, 0.5])
    corruption_seed: int = 0
    perturbation_strength: float = 0.1
    perturbation_seed: int = 0


@dataclass
class RunConfig:
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    output: str = "runs/default"

    @classmethod
    def from_dict(cls, data: dict | None) -> "RunConfig":
        """
        중첩 딕셔너리 → RunConfig

        Raises:
            ConfigError: 알 수 없는 섹션/키, 잘못된 값
        """
        config = _build(cls, data or {}, "")
        config.validate()
        return config

    def to_dict(self) -> dict:
        return asdict(self)

    def validate(self) -> None:
        """값 범위 검증"""
        try:
            self._check_ranges()
        except TypeError as e:
            raise ConfigError(f"설정 값 형식 오류: {e}") from e

    def _check_ranges(self) -> None:
        ds, an, noise = self.dataset, self.analysis, self.noise
        if ds.schema not in SCHEMAS:
            raise ConfigError(f"알 수 없는 스키마: {ds.schema} ({', '.join(SCHEMAS)})")
        if ds.split not in ("train", "test"):
            raise ConfigError(f"알 수 없는 분할: {ds.split}")
        if not 0.0 < ds.test_fraction < 1.0:
            raise ConfigError(f"평가 비율은 (0, 1) 범위여야 함: {ds.test_fraction}")
        if ds.max_samples is not None and ds.max_samples < 1:
            raise ConfigError(f"max_samples는 1 이상이어야 함: {ds.max_samples}")
        if self.model.architecture not in ARCHITECTURE_IDS:
            raise ConfigError(f"알 수 없는 아키텍처: {self.model.architecture}")
        if self.model.epochs < 1 or self.model.batch_size < 1:
            raise ConfigError("epochs, batch_size는 1 이상이어야 함")
        if self.extraction.baseline not in BASELINES:
            raise ConfigError(f"알 수 없는 기준값 정책: {self.extraction.baseline}")
        if self.extraction.baseline == "explicit" and not self.extraction.baseline_vector:
            raise ConfigError("explicit 기준값 정책에는 baseline_vector 필요")
        if self.extraction.quadrature_points < 2:
            raise ConfigError(f"적분점 개수는 2 이상이어야 함: {self.extraction.quadrature_points}")
        lambdas = [
            an.salient_lambda, an.reference_lambda, *an.dictionary_lambdas, *an.gamma_lambdas
        ]
        for lam in lambdas:
            if not 0.0 < lam < 1.0:
                raise ConfigError(f"임계 비율 λ는 (0, 1) 범위여야 함: {lam}")
        if not an.dictionary_ks or min(an.dictionary_ks) < 1:
            raise ConfigError(f"사전 크기 격자 오류: {an.dictionary_ks}")
        if an.pairing not in PAIRINGS:
            raise ConfigError(f"알 수 없는 쌍 구성: {an.pairing} ({', '.join(PAIRINGS)})")
        if an.transfer_trials < 1:
            raise ConfigError(f"시행 횟수는 1 이상이어야 함: {an.transfer_trials}")
        for value in [*noise.label_ratios, *noise.input_strengths, noise.perturbation_strength]:
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"잡음 격자 값은 [0, 1] 범위여야 함: {value}")


def _build(cls, data: dict, prefix: str):
    if not isinstance(data, dict):
        raise ConfigError(f"설정 섹션 '{prefix or '(root)'}'은 매핑이어야 함")
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f"알 수 없는 설정 키: {', '.join(prefix + k for k in unknown)}")

    values = {}
    for name, value in data.items():
        default = known[name].default_factory() if callable(known[name].default_factory) else None
        if is_dataclass(default):
            values[name] = _build(type(default), value or {}, f"{prefix}{name}.")
        else:
            values[name] = value
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigError(f"설정 구성 실패: {e}") from e


def load_config(path: str | Path | None) -> RunConfig:
    """
    YAML 설정 로드 (경로가 없으면 기본값)

    Raises:
        ConfigError: 파일 없음, YAML 구문 오류, 잘못된 키/값
    """
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"설정 파일 없음: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"YAML 구문 오류: {path}: {e}") from e
    return RunConfig.from_dict(data)


def apply_overrides(config: RunConfig, assignments: list[str]) -> RunConfig:
    """
    section.key=value 덮어쓰기 (값은 YAML로 해석)

    예: analysis.dictionary_ks=[1,5,10], model.epochs=50
    """
    data = config.to_dict()
    for assignment in assignments:
        key, sep, raw = assignment.partition("=")
        if not sep or not key:
            raise ConfigError(f"덮어쓰기 형식 오류 (section.key=value): {assignment}")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"덮어쓰기 값 해석 실패: {assignment}: {e}") from e

        parts = key.split(".")
        target = data
        for part in parts[:-1]:
            if not isinstance(target.get(part), dict):
                raise ConfigError(f"알 수 없는 설정 섹션: {key}")
            target = target[part]
        if parts[-1] not in target:
            raise ConfigError(f"알 수 없는 설정 키: {key}")
        target[parts[-1]] = value
    return RunConfig.from_dict(data)


def with_cli_flags(
    config: RunConfig,
    output: str | None = None,
    seed: int | None = None,
    architecture: str | None = None,
    dataset: str | None = None,
) -> RunConfig:
    """자주 쓰는 CLI 플래그 반영"""
    if output is not None:
        config = replace(config, output=output)
    if seed is not None:
        config = replace(config, model=replace(config.model, seed=seed))
    if architecture is not None:
        config = replace(config, model=replace(config.model, architecture=architecture))
    if dataset is not None:
        config = replace(config, dataset=replace(config.dataset, path=dataset))
    config.validate()
    return config


def resolve_output(config: RunConfig, environ: dict | None = None) -> Path:
    """출력 디렉토리 (상대 경로면 HARSANYI_OUTPUT_ROOT 접두)"""
    environ = os.environ if environ is None else environ
    output = Path(config.output)
    root = environ.get(ENV_OUTPUT_ROOT)
    if root and not output.is_absolute():
        return Path(root) / output
    return output
