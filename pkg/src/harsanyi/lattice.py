"""부분집합 격자 연산

마스크 열거, 값 프로파일 생성, Harsanyi(Möbius) 변환, 재구성(zeta) 변환,
현저 개념 추출, 정규화 강도 곡선
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, Sequence

import numpy as np

from .constants import PROFILE_CHUNK, TOLERANCE
from .models import (
    InteractionTable,
    LatticeError,
    SalientSet,
    ValueProfile,
    VariableSet,
    check_n,
)

logger = logging.getLogger(__name__)


def keep_rows(masks: np.ndarray, n: int) -> np.ndarray:
    """(len(masks), n) 불리언 행렬: 행 r의 열 i ⇔ 변수 i ∈ masks[r]"""
    masks = np.asarray(masks, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(bool)


def iter_masked_inputs(
    sample: np.ndarray,
    baseline: np.ndarray,
    variables: Sequence[int] | None = None,
    chunk: int = PROFILE_CHUNK,
) -> Iterator[tuple[int, np.ndarray]]:
    """
    마스킹 입력 배치를 마스크 오름차순 구간으로 생성

    Args:
        sample: 원본 특징 벡터
        baseline: 기준값 벡터 (마스킹된 변수 대체값)
        variables: 분석 대상 좌표 (None이면 전체). 행 m의 j번째 비트가 variables[j]에 대응
        chunk: 구간당 최대 행 수

    Yields:
        (시작 마스크, (≤chunk, d) 배열). 대상 밖 좌표는 sample 값을 유지
    """
    sample = np.asarray(sample, dtype=np.float64)
    baseline = np.asarray(baseline, dtype=np.float64)
    if sample.shape != baseline.shape or sample.ndim != 1:
        raise LatticeError(f"차원 불일치: sample {sample.shape}, baseline {baseline.shape}")
    if chunk < 1:
        raise LatticeError(f"구간 크기는 1 이상: {chunk}")

    if variables is None:
        variables = range(sample.shape[0])
    variables = np.asarray(list(variables), dtype=np.int64)
    k = len(variables)
    check_n(k)

    for start in range(0, 1 << k, chunk):
        masks = np.arange(start, min(start + chunk, 1 << k), dtype=np.int64)
        batch = np.tile(sample, (len(masks), 1))
        batch[:, variables] = np.where(
            keep_rows(masks, k), sample[variables], baseline[variables]
        )
        yield start, batch


def evaluate_batch(value_fn: Callable, batch: np.ndarray, workers: int | None = None) -> np.ndarray:
    """
    마스킹 입력 배치 평가 (행 순서 = 마스크 오름차순)

    벡터화 평가기가 있으면 한 번에 호출하고, 재진입 가능한 함수만 스레드 풀로 분산
    """
    batch_evaluator = getattr(value_fn, "batch_evaluator", None)
    if batch_evaluator is not None:
        outputs = np.asarray(batch_evaluator(batch), dtype=np.float64).reshape(-1)
    elif workers and workers > 1 and getattr(value_fn, "reentrant", False):
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outputs = np.array([float(v) for v in executor.map(value_fn, batch)])
    else:
        outputs = np.array([float(value_fn(row)) for row in batch])

    if outputs.shape != (batch.shape[0],):
        raise LatticeError(f"평가 결과 개수 불일치: {outputs.shape[0]} != {batch.shape[0]}")
    return outputs


def _profile_from_outputs(outputs: np.ndarray, n: int) -> ValueProfile:
    bad = np.flatnonzero(~np.isfinite(outputs))
    if bad.size:
        mask = int(bad[0])
        raise LatticeError(
            f"값 함수가 비유한 값을 반환: mask={format(mask, f'0{n}b')} ({outputs[mask]})"
        )
    return ValueProfile(n=n, values=outputs)


def _evaluate_profile(
    value_fn: Callable,
    sample: np.ndarray,
    baseline: np.ndarray,
    variables: Sequence[int] | None,
    workers: int | None,
) -> ValueProfile:
    if variables is not None:
        variables = list(variables)
    n = np.asarray(sample).shape[0] if variables is None else len(variables)
    check_n(n)
    outputs = np.empty(1 << n, dtype=np.float64)
    for start, batch in iter_masked_inputs(sample, baseline, variables):
        outputs[start:start + batch.shape[0]] = evaluate_batch(value_fn, batch, workers=workers)
    logger.debug(f"값 프로파일 평가: n={n}, 평가 {len(outputs)}회")
    return _profile_from_outputs(outputs, n)


def build_value_profile(
    value_fn: Callable,
    sample: np.ndarray,
    baseline: np.ndarray,
    workers: int | None = None,
) -> ValueProfile:
    """
    값 프로파일 생성: 항목 m = v(x_m), m 밖의 변수는 기준값으로 대체

    입력 배치는 PROFILE_CHUNK 행씩 만들어 평가 (n = 25에서도 배치 메모리는 구간 크기로 제한)

    Args:
        value_fn: 특징 벡터 → 실수 (ValueFunctionSpec 또는 일반 callable)
        sample: 특징 벡터 (차원 n ≤ 25)
        baseline: 기준값 벡터
        workers: 재진입 가능 함수의 병렬 스레드 수

    Returns:
        ValueProfile (정확히 2^n 회 평가)

    Raises:
        LatticeError: 차원 불일치, 비유한 평가값
    """
    return _evaluate_profile(value_fn, sample, baseline, None, workers)


def build_partial_profile(
    value_fn: Callable,
    sample: np.ndarray,
    baseline: np.ndarray,
    variables: Sequence[int],
    workers: int | None = None,
) -> ValueProfile:
    """분석 대상 좌표만 마스킹한 값 프로파일 (나머지 좌표는 sample 값 유지)"""
    return _evaluate_profile(value_fn, sample, baseline, variables, workers)


def _subset_sweep(values: np.ndarray, n: int, sign: float) -> np.ndarray:
    """비트별 부분집합 합 스윕 (sign=-1: Möbius, +1: zeta)"""
    array = np.array(values, dtype=np.float64)
    for i in range(n):
        step = 1 << i
        view = array.reshape(-1, 2, step)
        view[:, 1, :] += sign * view[:, 0, :]
    return array


def harsanyi_transform(profile: ValueProfile) -> InteractionTable:
    """
    Harsanyi 배당 I(S|x) = Σ_{T⊆S} (-1)^{|S|-|T|} v(x_T)

    고속 Möbius 변환 (비트별 스윕, O(n·2^n) 덧셈)
    """
    effects = _subset_sweep(profile.values, profile.n, -1.0)
    return InteractionTable(n=profile.n, effects=effects)


def zeta_transform(table: InteractionTable) -> ValueProfile:
    """재구성 변환: 모든 S에 대해 v(x_S) = Σ_{T⊆S} I(T|x)"""
    values = _subset_sweep(table.effects, table.n, 1.0)
    return ValueProfile(n=table.n, values=values)


def as_mask(S: "VariableSet | int", n: int) -> int:
    if isinstance(S, VariableSet):
        if S.n != n:
            raise LatticeError(f"변수 개수 불일치: {S.n} != {n}")
        return S.bits
    mask = int(S)
    if not 0 <= mask < (1 << n):
        raise LatticeError(f"마스크 범위 초과: {mask} (n={n})")
    return mask


def submask_selector(mask: int, n: int) -> np.ndarray:
    """mask의 모든 부분 마스크를 고르는 불리언 벡터"""
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks & ~mask) == 0


def supermask_selector(mask: int, n: int) -> np.ndarray:
    """mask를 포함하는 모든 마스크를 고르는 불리언 벡터"""
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks & mask) == mask


def reconstruct_value(table: InteractionTable, S: "VariableSet | int") -> float:
    """v(x_S) = Σ_{T⊆S} I(T|x)"""
    mask = as_mask(S, table.n)
    return math.fsum(table.effects[submask_selector(mask, table.n)])


def efficiency_residual(profile: ValueProfile, table: InteractionTable) -> float:
    """|Σ_S I(S|x) - v(x_N)|"""
    if profile.n != table.n:
        raise LatticeError(f"변수 개수 불일치: profile {profile.n}, table {table.n}")
    return abs(math.fsum(table.effects) - profile.full_value)


def efficiency_tolerance(profile: ValueProfile) -> float:
    """효율성 잔차 허용치: 1e-9 · max(1, |v(x_N)|)"""
    return TOLERANCE * max(1.0, abs(profile.full_value))


def _check_lambda(lam: float) -> float:
    if not 0.0 < lam < 1.0:
        raise LatticeError(f"임계 비율 λ는 (0, 1) 범위여야 함: {lam}")
    return float(lam)


def salient_set(
    table: InteractionTable,
    lam: float,
    include_empty: bool = False,
) -> SalientSet:
    """
    현저 개념 집합 Ω_x = {S : |I(S|x)| > λ · max_S |I(S|x)|}

    Args:
        table: 상호작용 테이블
        lam: 임계 비율 λ ∈ (0, 1)
        include_empty: ∅을 후보(최댓값 및 구성원)에 포함할지 여부

    Returns:
        SalientSet (모든 효과가 0이면 빈 집합)
    """
    lam = _check_lambda(lam)
    start = 0 if include_empty else 1
    magnitudes = np.abs(table.effects[start:])
    peak = float(magnitudes.max()) if magnitudes.size else 0.0
    threshold = lam * peak

    if peak == 0.0:
        return SalientSet(table.n, {}, lam, include_empty, threshold)

    chosen = np.flatnonzero(magnitudes > threshold) + start
    effects = {int(m): float(table.effects[m]) for m in chosen}
    return SalientSet(table.n, effects, lam, include_empty, threshold)


def normalized_strength_curve(
    tables: Sequence[InteractionTable],
    include_empty: bool = False,
) -> np.ndarray:
    """
    정규화 강도 곡선

    테이블마다 |I(S|x)| / max|I| 를 내림차순 정렬한 뒤 순위별 평균

    Returns:
        길이 2^n (∅ 제외 시 2^n - 1) 내림차순 곡선
    """
    if not tables:
        raise LatticeError("정규화 강도 곡선: 테이블 목록이 비어 있음")
    n = tables[0].n
    start = 0 if include_empty else 1
    curves = []
    for table in tables:
        if table.n != n:
            raise LatticeError(f"변수 개수 불일치: {table.n} != {n}")
        magnitudes = np.abs(table.effects[start:])
        peak = magnitudes.max()
        normalized = magnitudes / peak if peak > 0 else np.zeros_like(magnitudes)
        curves.append(np.sort(normalized)[::-1])
    return np.mean(np.vstack(curves), axis=0)


def permuted_masks(n: int, permutation: Sequence[int]) -> np.ndarray:
    """마스크 m → 변수 i를 permutation[i]로 옮긴 마스크 (비트별 이동)"""
    permutation = np.asarray(permutation, dtype=np.int64)
    if sorted(permutation.tolist()) != list(range(n)):
        raise LatticeError(f"유효한 순열이 아님: {permutation.tolist()}")
    masks = np.arange(1 << n, dtype=np.int64)
    targets = np.zeros_like(masks)
    for source, target in enumerate(permutation):
        targets |= ((masks >> source) & 1) << target
    return targets


def permute_profile(profile: ValueProfile, permutation: Sequence[int]) -> ValueProfile:
    """변수 재배치: 기존 변수 i → 새 변수 permutation[i]"""
    n = profile.n
    values = np.empty(1 << n)
    values[permuted_masks(n, permutation)] = profile.values
    return ValueProfile(n=n, values=values)
