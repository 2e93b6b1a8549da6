"""개념 품질 지표

- 개념 사전 D_k 와 설명 비율 ρ(k)
- 모델 간 전이율 γ 와 무작위 기준선 γ̃
- 판별력 α, β, β̄
- 다변수 강도 κ, 개념별 효과 분포, 차수별 민감도
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .constants import ALPHA_BUCKETS, DEFAULT_SALIENT_LAMBDA, DEFAULT_TRANSFER_TRIALS
from .lattice import salient_set
from .models import (
    ConceptDictionary,
    ConceptStats,
    HarsanyiError,
    InteractionTable,
    SalientSet,
    VariableSet,
)

logger = logging.getLogger(__name__)


class AnalyticsError(HarsanyiError):
    """지표 계산 오류 (빈 모집단, 분모 0)"""
    pass


def _order(mask: int) -> int:
    return bin(mask).count("1")


def _check_population(salient_sets: Sequence[SalientSet]) -> int:
    if not salient_sets:
        raise AnalyticsError("표본 모집단이 비어 있음")
    n = salient_sets[0].n
    for omega in salient_sets:
        if omega.n != n:
            raise AnalyticsError(f"변수 개수 불일치: {omega.n} != {n}")
    return n


# ---------------------------------------------------------------------------
# 개념 사전 / 설명 비율
# ---------------------------------------------------------------------------

def build_dictionary(salient_sets: Sequence[SalientSet], k: int) -> ConceptDictionary:
    """
    빈도 상위 k개 개념으로 사전 구성

    빈도 = 해당 개념이 현저한 표본의 비율. 동률은 마스크 오름차순.
    현저했던 개념이 k개보다 적으면 채우지 않고 부족분만 기록

    Raises:
        AnalyticsError: 빈 모집단, k < 1
    """
    n = _check_population(salient_sets)
    if k < 1:
        raise AnalyticsError(f"사전 크기는 1 이상이어야 함: k={k}")

    counts = Counter(mask for omega in salient_sets for mask in omega.masks)
    ranked = sorted(counts, key=lambda mask: (-counts[mask], mask))
    entries = ranked[:k]
    shortfall = k - len(entries)
    if shortfall:
        logger.warning(f"사전 크기 부족: 요청 {k}, 가능 {len(entries)}")

    population = len(salient_sets)
    frequency = {mask: counts[mask] / population for mask in entries}
    return ConceptDictionary(n=n, entries=entries, frequency=frequency, k=k, shortfall=shortfall)


def explanation_ratio(dictionary: ConceptDictionary, salient_sets: Sequence[SalientSet]) -> float:
    """
    ρ(k) = E_x[|D_k ∩ Ω_x| / |Ω_x|]  (Ω_x가 빈 표본 제외)

    Raises:
        AnalyticsError: 모든 Ω_x가 빈 경우
    """
    ratios = [
        sum(1 for mask in omega.masks if mask in dictionary) / len(omega)
        for omega in salient_sets
        if len(omega)
    ]
    if not ratios:
        raise AnalyticsError("설명 비율: 현저 개념이 있는 표본이 없음")
    return math.fsum(ratios) / len(ratios)


@dataclass
class ExplanationCurve:
    """k 격자에 대한 ρ(k)"""
    ks: list[int]
    rho: list[float]
    shortfalls: list[int]
    excluded: int
    population: int

    def to_dict(self) -> dict:
        return {
            "k": self.ks,
            "rho": self.rho,
            "shortfall": self.shortfalls,
            "excluded_empty": self.excluded,
            "m": self.population,
        }


def explanation_curve(salient_sets: Sequence[SalientSet], ks: Iterable[int]) -> ExplanationCurve:
    """같은 모집단으로 사전을 만들고 ρ(k) 곡선 계산"""
    _check_population(salient_sets)
    ks = sorted(set(int(k) for k in ks))
    rho, shortfalls = [], []
    for k in ks:
        dictionary = build_dictionary(salient_sets, k)
        rho.append(explanation_ratio(dictionary, salient_sets))
        shortfalls.append(dictionary.shortfall)
    excluded = sum(1 for omega in salient_sets if not len(omega))
    if excluded:
        logger.warning(f"설명 비율: Ω가 빈 표본 {excluded}개 제외")
    return ExplanationCurve(ks, rho, shortfalls, excluded, len(salient_sets))


# ---------------------------------------------------------------------------
# 전이율
# ---------------------------------------------------------------------------

def cross_model_transfer(omega1: SalientSet, omega2: SalientSet) -> float:
    """
    γ = |Ω₁ ∩ Ω₂| / |Ω₁|

    Raises:
        AnalyticsError: Ω₁이 빈 경우, 변수 개수 불일치
    """
    if omega1.n != omega2.n:
        raise AnalyticsError(f"변수 개수 불일치: {omega1.n} != {omega2.n}")
    if not len(omega1):
        raise AnalyticsError("전이율: Ω₁이 비어 있음")
    shared = set(omega1.masks) & set(omega2.masks)
    return len(shared) / len(omega1)


@dataclass
class TransferCurve:
    """λ₁ 격자에 대한 평균 γ (Ω₂는 λ₂ 고정)"""
    lambdas: list[float]
    gamma: list[float | None]
    excluded: list[int]
    reference_lambda: float
    population: int

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambdas,
            "gamma": self.gamma,
            "excluded_empty": self.excluded,
            "reference_lambda": self.reference_lambda,
            "m": self.population,
        }


def transfer_curve(
    tables1: Sequence[InteractionTable],
    tables2: Sequence[InteractionTable],
    lambdas: Iterable[float],
    reference_lambda: float = DEFAULT_SALIENT_LAMBDA,
    include_empty: bool = False,
) -> TransferCurve:
    """
    표본별 두 모델 테이블 쌍에서 평균 γ 곡선 계산

    Args:
        tables1: 첫 모델 테이블 (Ω₁, λ₁ 격자)
        tables2: 같은 표본 순서의 둘째 모델 테이블 (Ω₂, λ₂ 고정)
        lambdas: λ₁ 격자
        reference_lambda: λ₂
    """
    if len(tables1) != len(tables2):
        raise AnalyticsError(f"테이블 쌍 개수 불일치: {len(tables1)} != {len(tables2)}")
    if not tables1:
        raise AnalyticsError("전이율 곡선: 테이블이 비어 있음")

    references = [salient_set(t, reference_lambda, include_empty) for t in tables2]
    lambdas = [float(lam) for lam in lambdas]
    gamma, excluded = [], []
    for lam in lambdas:
        values = []
        for t1, omega2 in zip(tables1, references):
            omega1 = salient_set(t1, lam, include_empty)
            if len(omega1):
                values.append(cross_model_transfer(omega1, omega2))
        excluded.append(len(tables1) - len(values))
        gamma.append(math.fsum(values) / len(values) if values else None)
    return TransferCurve(lambdas, gamma, excluded, float(reference_lambda), len(tables1))


@dataclass
class RandomTransferBaseline:
    """무작위 개념 집합 쌍의 기대 γ̃"""
    mean: float
    stderr: float
    expected: float
    trials: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "expected": self.expected,
            "trials": self.trials,
        }


def random_transfer_baseline(
    size1: int,
    size2: int,
    n: int,
    trials: int = DEFAULT_TRANSFER_TRIALS,
    seed: int = 0,
) -> RandomTransferBaseline:
    """
    비어 있지 않은 2^n - 1개 부분집합에서 크기 size1, size2 집합을 균등 추출한
    γ의 몬테카를로 평균과 해석적 기대값 size2 / (2^n - 1)
    """
    universe = (1 << n) - 1
    if not (0 <= size1 <= universe and 0 <= size2 <= universe):
        raise AnalyticsError(f"집합 크기 범위 초과: {size1}, {size2} (최대 {universe})")
    if trials < 1:
        raise AnalyticsError(f"시행 횟수는 1 이상이어야 함: {trials}")

    if size1 == 0 or size2 == 0:
        return RandomTransferBaseline(0.0, 0.0, 0.0, trials)

    rng = np.random.default_rng(seed)
    overlaps = np.empty(trials)
    for t in range(trials):
        first = rng.choice(universe, size=size1, replace=False)
        second = rng.choice(universe, size=size2, replace=False)
        overlaps[t] = np.intersect1d(first, second, assume_unique=True).size / size1

    stderr = float(overlaps.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return RandomTransferBaseline(
        mean=float(overlaps.mean()),
        stderr=stderr,
        expected=size2 / universe,
        trials=trials,
    )


# ---------------------------------------------------------------------------
# 판별력
# ---------------------------------------------------------------------------

@dataclass
class DiscriminationReport:
    """범주 모집단의 개념별 부호 통계와 β̄"""
    m: int
    threshold_ratio: float
    stats: dict[int, ConceptStats]
    beta_bar: float
    buckets: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        ordered = sorted(self.stats.values(), key=lambda s: (-s.alpha, s.mask))
        return {
            "m": self.m,
            "lambda": self.threshold_ratio,
            "beta_bar": self.beta_bar,
            "buckets": self.buckets,
            "concepts": [
                {
                    "mask": s.mask,
                    "m_plus": s.m_plus,
                    "m_minus": s.m_minus,
                    "alpha": s.alpha,
                    "beta": s.beta,
                }
                for s in ordered
            ],
        }


def discrimination_stats(
    tables: Sequence[InteractionTable],
    lam: float,
    include_empty: bool = False,
) -> DiscriminationReport:
    """
    개념별 m⁺, m⁻, α = (m⁺+m⁻)/m, β = max(m⁺,m⁻)/(m⁺+m⁻), β̄ = Σαβ / Σα

    α 구간 (0,0.2], ..., (0.8,1.0] 별 평균 β도 함께 계산

    Raises:
        AnalyticsError: 빈 모집단, 현저 개념 없음
    """
    if not tables:
        raise AnalyticsError("판별력: 표본 모집단이 비어 있음")
    m = len(tables)
    plus: Counter[int] = Counter()
    minus: Counter[int] = Counter()
    for table in tables:
        for mask, effect in salient_set(table, lam, include_empty).effects.items():
            if effect > 0:
                plus[mask] += 1
            elif effect < 0:
                minus[mask] += 1

    masks = sorted(set(plus) | set(minus))
    if not masks:
        raise AnalyticsError("판별력: 현저 개념이 없음")
    stats = {mask: ConceptStats(mask, plus[mask], minus[mask], m) for mask in masks}

    alphas = np.array([stats[mask].alpha for mask in masks])
    betas = np.array([stats[mask].beta for mask in masks])
    beta_bar = float(np.dot(alphas, betas) / alphas.sum())

    buckets = []
    for low, high in ALPHA_BUCKETS:
        chosen = (alphas > low) & (alphas <= high)
        buckets.append({
            "alpha_low": low,
            "alpha_high": high,
            "count": int(chosen.sum()),
            "mean_beta": float(betas[chosen].mean()) if chosen.any() else None,
        })

    logger.debug(f"판별력: m={m}, 개념 {len(masks)}개, β̄={beta_bar:.4f}")
    return DiscriminationReport(m, float(lam), stats, beta_bar, buckets)


# ---------------------------------------------------------------------------
# 다변수 강도 / 효과 분포 / 크기 요약
# ---------------------------------------------------------------------------

def multi_variable_strength(salient_sets: Sequence[SalientSet]) -> float:
    """
    κ = E_x[Σ_{S∈Ω_x,|S|≥2} |I(S)| / Σ_{S∈Ω_x} |I(S)|]

    현저 효과 질량이 0인 표본은 제외

    Raises:
        AnalyticsError: 모든 표본이 제외된 경우
    """
    _check_population(salient_sets)
    ratios = []
    for omega in salient_sets:
        total = math.fsum(abs(v) for v in omega.effects.values())
        if total == 0.0:
            continue
        multi = math.fsum(abs(v) for mask, v in omega.effects.items() if _order(mask) >= 2)
        ratios.append(multi / total)
    if not ratios:
        raise AnalyticsError("다변수 강도: 현저 효과가 있는 표본이 없음")
    excluded = len(salient_sets) - len(ratios)
    if excluded:
        logger.warning(f"다변수 강도: 현저 효과 질량 0인 표본 {excluded}개 제외")
    return math.fsum(ratios) / len(ratios)


@dataclass
class EffectHistogram:
    """S가 현저한 표본들의 I(S|x) 분포"""
    mask: int
    effects: np.ndarray
    counts: list[int]
    edges: list[float]
    mean: float | None
    sign_consistency: float | None

    @property
    def is_empty(self) -> bool:
        return self.effects.size == 0

    def to_dict(self) -> dict:
        return {
            "mask": self.mask,
            "samples": int(self.effects.size),
            "counts": self.counts,
            "edges": self.edges,
            "mean": self.mean,
            "sign_consistency": self.sign_consistency,
        }


def effect_histogram(
    S: "VariableSet | int",
    tables: Sequence[InteractionTable],
    lam: float,
    bins: int = 10,
    include_empty: bool = False,
) -> EffectHistogram:
    """
    개념 S가 현저한 표본의 효과를 모아 구간 빈도, 평균, 부호 일관성 계산

    모든 값이 같으면 그 값 하나의 구간으로 집계
    """
    mask = S.bits if isinstance(S, VariableSet) else int(S)
    collected = []
    for table in tables:
        omega = salient_set(table, lam, include_empty)
        if mask in omega:
            collected.append(omega.effects[mask])
    effects = np.array(collected, dtype=np.float64)

    if effects.size == 0:
        return EffectHistogram(mask, effects, [], [], None, None)

    low, high = float(effects.min()), float(effects.max())
    if low == high:
        counts, edges = [int(effects.size)], [low, high]
    else:
        hist, bin_edges = np.histogram(effects, bins=bins)
        counts, edges = hist.tolist(), bin_edges.tolist()

    positive = int(np.sum(effects > 0))
    negative = int(np.sum(effects < 0))
    return EffectHistogram(
        mask=mask,
        effects=effects,
        counts=counts,
        edges=edges,
        mean=float(effects.mean()),
        sign_consistency=max(positive, negative) / effects.size,
    )


def salient_size_summary(salient_sets: Sequence[SalientSet]) -> dict:
    """|Ω_x| 평균/최소/최대와 후보 부분집합 대비 비율"""
    n = _check_population(salient_sets)
    sizes = np.array([len(omega) for omega in salient_sets])
    candidates = (1 << n) - (0 if salient_sets[0].include_empty else 1)
    return {
        "m": len(salient_sets),
        "candidates": candidates,
        "mean_size": float(sizes.mean()),
        "min_size": int(sizes.min()),
        "max_size": int(sizes.max()),
        "mean_fraction": float(sizes.mean() / candidates),
        "empty": int(np.sum(sizes == 0)),
    }


# ---------------------------------------------------------------------------
# 차수별 민감도
# ---------------------------------------------------------------------------

def order_sensitivity(clean: InteractionTable, perturbed: InteractionTable, s: int) -> float:
    """
    Σ_{|S|=s} |I(S|x+δ) - I(S|x)| / Σ_{|S|=s} |I(S|x)|

    Raises:
        AnalyticsError: 변수 개수 불일치, 차수 범위 초과, 분모 0
    """
    if clean.n != perturbed.n:
        raise AnalyticsError(f"변수 개수 불일치: {clean.n} != {perturbed.n}")
    if not 1 <= s <= clean.n:
        raise AnalyticsError(f"차수 범위 초과: s={s} (1~{clean.n})")
    selected = clean.order_of() == s
    denominator = math.fsum(np.abs(clean.effects[selected]))
    if denominator == 0.0:
        raise AnalyticsError(f"차수 {s}의 효과 질량이 0")
    change = math.fsum(np.abs(perturbed.effects[selected] - clean.effects[selected]))
    return change / denominator


@dataclass
class OrderSensitivity:
    """차수별 평균 민감도"""
    orders: list[int]
    means: list[float | None]
    excluded: list[int]

    def to_dict(self) -> dict:
        return {
            "order": self.orders,
            "sensitivity": self.means,
            "excluded_zero_mass": self.excluded,
        }


def mean_order_sensitivity(
    pairs: Sequence[tuple[InteractionTable, InteractionTable]],
    orders: Iterable[int] | None = None,
) -> OrderSensitivity:
    """(원본, 교란) 테이블 쌍들에 대한 차수별 기대 민감도 (분모 0인 쌍 제외)"""
    if not pairs:
        raise AnalyticsError("민감도: 테이블 쌍이 비어 있음")
    n = pairs[0][0].n
    orders = list(orders) if orders is not None else list(range(1, n + 1))
    means, excluded = [], []
    for s in orders:
        values = []
        for clean, perturbed in pairs:
            try:
                values.append(order_sensitivity(clean, perturbed, s))
            except AnalyticsError:
                if clean.n != perturbed.n or not 1 <= s <= clean.n:
                    raise
        excluded.append(len(pairs) - len(values))
        means.append(math.fsum(values) / len(values) if values else None)
    return OrderSensitivity(orders, means, excluded)
