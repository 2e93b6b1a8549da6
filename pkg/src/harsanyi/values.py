"""값 함수 모델

기준값 마스킹 정책, 분류 logit 래퍼, 합성 게임, 배경(context) 강도 평균
"""

import logging
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .constants import (
    DEFAULT_QUADRATURE_POINTS,
    PROBABILITY_CLAMP,
    PROBABILITY_SUM_TOLERANCE,
)
from .lattice import build_partial_profile, build_value_profile, keep_rows
from .models import HarsanyiError, ValueProfile, VariableSet, check_n

logger = logging.getLogger(__name__)


class ValueModelError(HarsanyiError):
    """값 함수 모델 오류"""
    pass


BaselineKind = Literal["mean", "zeros", "explicit"]


@dataclass(frozen=True, eq=False)
class BaselinePolicy:
    """
    마스킹 기준값 정책

    - mean: 참조 데이터셋의 변수별 평균
    - zeros: 영벡터
    - explicit: 지정 벡터
    """
    kind: BaselineKind = "mean"
    vector: np.ndarray | None = None

    @classmethod
    def per_variable_mean(cls, reference: np.ndarray) -> "BaselinePolicy":
        """참조 데이터셋 (샘플 × n) 평균으로 기준값 결정"""
        reference = np.asarray(reference, dtype=np.float64)
        if reference.ndim != 2 or reference.shape[0] == 0:
            raise ValueModelError(f"참조 데이터셋 형태 오류: {reference.shape}")
        return cls(kind="mean", vector=reference.mean(axis=0))

    @classmethod
    def zeros(cls) -> "BaselinePolicy":
        return cls(kind="zeros")

    @classmethod
    def explicit(cls, vector: np.ndarray) -> "BaselinePolicy":
        return cls(kind="explicit", vector=np.asarray(vector, dtype=np.float64))

    def resolve(self, n: int) -> np.ndarray:
        """
        길이 n 기준값 벡터 반환

        Raises:
            ValueModelError: mean 정책에 참조 데이터셋이 연결되지 않음, 길이 불일치
        """
        if self.kind == "zeros":
            return np.zeros(n)
        if self.vector is None:
            raise ValueModelError(f"기준값 미결정: {self.kind} 정책에 참조 벡터 없음")
        vector = np.asarray(self.vector, dtype=np.float64)
        if vector.shape != (n,):
            raise ValueModelError(f"기준값 길이 불일치: {vector.shape[0]} != {n}")
        return vector


@dataclass(frozen=True, eq=False)
class ValueFunctionSpec:
    """값 함수 v(·): 전체 특징 벡터 → 실수 (결정적)"""
    evaluator: Callable[[np.ndarray], float]
    reentrant: bool = False
    description: str = ""
    batch_evaluator: Callable[[np.ndarray], np.ndarray] | None = None
    baseline: np.ndarray | None = None     # 합성 게임의 마스킹 판정 기준
    mask_evaluator: Callable[[np.ndarray], np.ndarray] | None = None   # 유지 마스크 → 값

    def __call__(self, x: np.ndarray) -> float:
        return float(self.evaluator(np.asarray(x, dtype=np.float64)))

    def __add__(self, other: "ValueFunctionSpec") -> "ValueFunctionSpec":
        """두 게임의 합 (선형성 검증용)"""
        mask_evaluator = None
        if self.mask_evaluator is not None and other.mask_evaluator is not None:
            def mask_evaluator(masks: np.ndarray) -> np.ndarray:
                return self.mask_evaluator(masks) + other.mask_evaluator(masks)

        return ValueFunctionSpec(
            evaluator=lambda x: self(x) + other(x),
            reentrant=self.reentrant and other.reentrant,
            description=f"{self.description} + {other.description}",
            baseline=self.baseline if self.baseline is not None else other.baseline,
            mask_evaluator=mask_evaluator,
        )


def mask_sample(sample: np.ndarray, keep: VariableSet, baseline: BaselinePolicy) -> np.ndarray:
    """keep 변수는 sample 값, 나머지는 기준값으로 대체한 벡터"""
    sample = np.asarray(sample, dtype=np.float64)
    if keep.n != sample.shape[0]:
        raise ValueModelError(f"차원 불일치: keep n={keep.n}, sample {sample.shape[0]}")
    base = baseline.resolve(keep.n)
    kept = np.array([i in keep for i in range(keep.n)], dtype=bool)
    return np.where(kept, sample, base)


def logit_values(probabilities: np.ndarray, truth_label: int) -> np.ndarray:
    """
    행별 log(p / (1 - p)), p = 정답 클래스 확률 (1e-12 클램프)

    Args:
        probabilities: (샘플 × 클래스) 확률 행렬
        truth_label: 정답 클래스 인덱스

    Raises:
        ValueModelError: 잘못된 레이블 인덱스, 확률 합 ≠ 1
    """
    probabilities = np.atleast_2d(np.asarray(probabilities, dtype=np.float64))
    n_classes = probabilities.shape[1]
    if not isinstance(truth_label, (int, np.integer)) or not 0 <= truth_label < n_classes:
        raise ValueModelError(f"잘못된 레이블 인덱스: {truth_label} (클래스 {n_classes}개)")

    sums = probabilities.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > PROBABILITY_SUM_TOLERANCE):
        raise ValueModelError(f"확률 합이 1이 아님: {sums.min():.8f}~{sums.max():.8f}")

    p = np.clip(probabilities[:, truth_label], PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP)
    return np.log(p / (1.0 - p))


def logit_value(class_probabilities: np.ndarray, truth_label: int) -> float:
    """v(x) = log(p / (1 - p)), 다중 클래스에서 1 - p는 나머지 클래스 질량"""
    return float(logit_values(class_probabilities, truth_label)[0])


def classification_value_function(
    predict_proba: Callable[[np.ndarray], np.ndarray],
    truth_label: int,
    description: str = "",
) -> ValueFunctionSpec:
    """
    확률 예측기 + 정답 레이블 → 재진입 가능한 logit 값 함수

    Args:
        predict_proba: (샘플 × n) → (샘플 × 클래스) 확률
        truth_label: 정답 클래스
    """
    def evaluate(x: np.ndarray) -> float:
        return logit_value(predict_proba(np.asarray(x)[None, :]), truth_label)

    def evaluate_batch(batch: np.ndarray) -> np.ndarray:
        return logit_values(predict_proba(batch), truth_label)

    return ValueFunctionSpec(
        evaluator=evaluate,
        reentrant=True,
        description=description or f"logit(class={truth_label})",
        batch_evaluator=evaluate_batch,
    )


def _game_baseline(n: int, baseline: np.ndarray | None) -> np.ndarray:
    check_n(n)
    if baseline is None:
        return np.zeros(n)
    baseline = np.asarray(baseline, dtype=np.float64)
    if baseline.shape != (n,):
        raise ValueModelError(f"기준값 길이 불일치: {baseline.shape[0]} != {n}")
    return baseline


def present_masks(batch: np.ndarray, baseline: np.ndarray) -> np.ndarray:
    """
    특징 벡터 배치 → 유지 마스크 (x_i ≠ baseline_i 이면 비트 i)

    특징 공간에서는 기준값과 같은 좌표를 마스킹과 구별할 수 없으므로
    정확한 판정이 필요하면 game_profile처럼 마스크를 직접 넘긴다
    """
    batch = np.atleast_2d(np.asarray(batch, dtype=np.float64))
    weights = np.int64(1) << np.arange(baseline.shape[0], dtype=np.int64)
    return (batch != baseline).astype(np.int64) @ weights


def _game_spec(
    mask_values: Callable[[np.ndarray], np.ndarray],
    base: np.ndarray,
    description: str,
) -> ValueFunctionSpec:
    """마스크 값 함수 하나로 특징 공간 평가기까지 구성"""
    def evaluate(x: np.ndarray) -> float:
        return float(mask_values(present_masks(x, base))[0])

    def evaluate_batch(batch: np.ndarray) -> np.ndarray:
        return mask_values(present_masks(batch, base))

    return ValueFunctionSpec(
        evaluator=evaluate,
        reentrant=True,
        description=description,
        batch_evaluator=evaluate_batch,
        baseline=base,
        mask_evaluator=mask_values,
    )


def make_interaction_game(
    T: VariableSet,
    c: float,
    n: int,
    baseline: np.ndarray | None = None,
) -> ValueFunctionSpec:
    """
    상호작용 게임 v_T(x_S) = c (T ⊆ S), 0 (그 외)

    특징 벡터로 평가하면 변수 i는 x_i ≠ baseline_i 일 때 유지된 것으로 판정
    """
    if T.n != n:
        raise ValueModelError(f"변수 개수 불일치: T n={T.n}, n={n}")
    if len(T) == 0:
        raise ValueModelError("상호작용 게임의 T가 공집합")
    base = _game_baseline(n, baseline)
    c = float(c)

    def mask_values(masks: np.ndarray) -> np.ndarray:
        return np.where((masks & T.bits) == T.bits, c, 0.0)

    return _game_spec(mask_values, base, f"interaction game T={T}, c={c}")


def make_additive_game(
    weights: np.ndarray, baseline: np.ndarray | None = None
) -> ValueFunctionSpec:
    """가산 게임 v(x_S) = Σ_{i∈S} w_i"""
    weights = np.asarray(weights, dtype=np.float64)
    if not np.all(np.isfinite(weights)):
        raise ValueModelError("가산 게임 가중치에 비유한 값")
    n = weights.shape[0]
    base = _game_baseline(n, baseline)

    def mask_values(masks: np.ndarray) -> np.ndarray:
        return keep_rows(masks, n) @ weights

    return _game_spec(mask_values, base, f"additive game n={n}")


def make_random_game(
    seed: int,
    n: int,
    amplitude: float = 1.0,
    baseline: np.ndarray | None = None,
) -> ValueFunctionSpec:
    """시드 고정 무작위 게임: 프로파일 값 ~ U[-amplitude, amplitude]"""
    base = _game_baseline(n, baseline)
    table = np.random.default_rng(seed).uniform(-amplitude, amplitude, size=1 << n)

    def mask_values(masks: np.ndarray) -> np.ndarray:
        return table[masks]

    return _game_spec(mask_values, base, f"random game seed={seed}, n={n}")


def game_profile(spec: ValueFunctionSpec, n: int) -> ValueProfile:
    """
    합성 게임의 값 프로파일

    마스크 값 함수가 있으면 유지 마스크로 직접 평가하고,
    없으면 sample = baseline + 1 로 특징 공간에서 평가
    """
    check_n(n)
    if spec.mask_evaluator is not None:
        values = spec.mask_evaluator(np.arange(1 << n, dtype=np.int64))
        return ValueProfile(n=n, values=np.asarray(values, dtype=np.float64))
    base = _game_baseline(n, spec.baseline)
    return build_value_profile(spec, base + 1.0, base)


@dataclass(frozen=True)
class ContextSpec:
    """배경(context) 변수와 강도 적분점 개수 M"""
    context_mask: VariableSet
    quadrature_points: int = DEFAULT_QUADRATURE_POINTS


def trapezoid_weights(points: int) -> tuple[np.ndarray, np.ndarray]:
    """[0, 1] 균등 사다리꼴 적분점과 가중치"""
    if points < 2:
        raise ValueModelError(f"적분점 개수는 2 이상이어야 함: {points}")
    alphas = np.linspace(0.0, 1.0, points)
    weights = np.full(points, 1.0 / (points - 1))
    weights[[0, -1]] /= 2.0
    return alphas, weights


def context_averaged_profile(
    value_fn: ValueFunctionSpec,
    sample: np.ndarray,
    analyzed: VariableSet,
    ctx: ContextSpec,
    baseline: BaselinePolicy,
    workers: int | None = None,
) -> ValueProfile:
    """
    배경 강도 평균 값 프로파일

    배경 좌표를 α·x + (1-α)·b 로 두고 분석 변수 마스크마다 α에 대해 사다리꼴 평균.
    Möbius 변환이 선형이므로 평균 프로파일의 배당 = α 평균 배당 (이중 적분 금지)

    Args:
        value_fn: 값 함수
        sample: 전체 특징 벡터
        analyzed: 분석 변수 집합 (n = 전체 차원)
        ctx: 배경 변수와 적분점 개수
        baseline: 기준값 정책

    Returns:
        분석 변수 |analyzed|개에 대한 ValueProfile
    """
    sample = np.asarray(sample, dtype=np.float64)
    d = sample.shape[0]
    context = ctx.context_mask
    if analyzed.n != d or context.n != d:
        raise ValueModelError(f"차원 불일치: sample {d}, analyzed {analyzed.n}, context {context.n}")
    if not analyzed.isdisjoint(context) or (analyzed | context).bits != (1 << d) - 1:
        raise ValueModelError("분석 변수와 배경 변수가 특징 벡터를 분할하지 않음")

    alphas, weights = trapezoid_weights(ctx.quadrature_points)
    base = baseline.resolve(d)

    if len(context) == 0:
        return build_value_profile(value_fn, sample, base, workers=workers)

    context_idx = np.array(context.indices)
    accumulated = np.zeros(1 << len(analyzed))
    for alpha, weight in zip(alphas, weights):
        blended = sample.copy()
        blended[context_idx] = alpha * sample[context_idx] + (1.0 - alpha) * base[context_idx]
        profile = build_partial_profile(value_fn, blended, base, analyzed.indices, workers=workers)
        accumulated += weight * profile.values

    logger.debug(f"배경 강도 평균: 분석 {len(analyzed)}개, 배경 {len(context)}개, M={len(alphas)}")
    return ValueProfile(n=len(analyzed), values=accumulated)
