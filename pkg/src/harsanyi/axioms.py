"""Harsanyi 배당 공리 검증 모음

합성 게임(무작위, 가산, 상호작용)에 대해 효율성, 선형성, 더미, 대칭,
익명성, 재귀, 상호작용 분배 성질과 Shapley 관련 일관성을 점검
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .constants import SHAPLEY_CHECK_MAX_VARIABLES, TAYLOR_CHECK_MAX_VARIABLES, TOLERANCE
from .indices import (
    shapley_from_dividends,
    shapley_permutation_oracle,
    shapley_taylor_index,
)
from .lattice import (
    harsanyi_transform,
    permute_profile,
    permuted_masks,
    salient_set,
    zeta_transform,
)
from .models import ValueProfile, VariableSet
from .values import (
    game_profile,
    make_additive_game,
    make_interaction_game,
    make_random_game,
)

logger = logging.getLogger(__name__)


@dataclass
class AxiomCheck:
    """공리 하나의 검증 결과 (상대 오차 최댓값)"""
    name: str
    cases: int
    max_error: float
    tolerance: float = TOLERANCE

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _relative(difference: np.ndarray | float, scale: np.ndarray | float) -> float:
    """max |차이| / max(1, |기준|)"""
    scale = max(1.0, float(np.max(np.abs(scale))))
    return float(np.max(np.abs(difference))) / scale


def _random_profile(seed: int, n: int) -> ValueProfile:
    return game_profile(make_random_game(seed, n), n)


def _insert_zero_bit(masks: np.ndarray, i: int) -> np.ndarray:
    """(n-1)변수 마스크를 i번째 비트가 0인 n변수 마스크로 확장"""
    low = masks & ((1 << i) - 1)
    high = (masks >> i) << (i + 1)
    return low | high


def check_efficiency(profile: ValueProfile) -> float:
    table = harsanyi_transform(profile)
    return abs(math.fsum(table.effects) - profile.full_value) / max(1.0, abs(profile.full_value))


def check_inversion(profile: ValueProfile) -> float:
    restored = zeta_transform(harsanyi_transform(profile))
    return _relative(restored.values - profile.values, profile.values)


def check_linearity(first: ValueProfile, second: ValueProfile, a: float, b: float) -> float:
    combined = ValueProfile(first.n, a * first.values + b * second.values)
    expected = a * harsanyi_transform(first).effects + b * harsanyi_transform(second).effects
    return _relative(harsanyi_transform(combined).effects - expected, expected)


def check_dummy(rest: ValueProfile, i: int, weight: float) -> float:
    """변수 i가 더미인 게임 v(S) = u(S∖{i}) + w·[i ∈ S]"""
    n = rest.n + 1
    masks = np.arange(1 << n, dtype=np.int64)
    without_i = (masks & ((1 << i) - 1)) | ((masks >> (i + 1)) << i)
    values = rest.values[without_i] + weight * ((masks >> i) & 1)
    table = harsanyi_transform(ValueProfile(n, values))

    with_i = ((masks >> i) & 1).astype(bool)
    others = with_i & (masks != (1 << i))
    errors = [abs(table[1 << i] - weight)]
    if others.any():
        errors.append(float(np.max(np.abs(table.effects[others]))))
    return max(errors) / max(1.0, abs(weight))


def check_symmetry(profile: ValueProfile, i: int, j: int) -> float:
    """i, j 교환에 대칭화한 게임에서 I(S∪{i}) = I(S∪{j})"""
    n = profile.n
    swap = list(range(n))
    swap[i], swap[j] = j, i
    swapped = permute_profile(profile, swap)
    symmetric = ValueProfile(n, (profile.values + swapped.values) / 2.0)
    table = harsanyi_transform(symmetric)

    masks = np.arange(1 << n, dtype=np.int64)
    free = masks[(masks & ((1 << i) | (1 << j))) == 0]
    difference = table.effects[free | (1 << i)] - table.effects[free | (1 << j)]
    return _relative(difference, table.effects)


def check_anonymity(profile: ValueProfile, permutation: list[int]) -> float:
    """변수 재배치 후 배당 = 재배치된 배당"""
    table = harsanyi_transform(profile)
    permuted = harsanyi_transform(permute_profile(profile, permutation))
    targets = permuted_masks(profile.n, permutation)
    return _relative(permuted.effects[targets] - table.effects, table.effects)


def check_recursive(profile: ValueProfile, i: int) -> float:
    """I(S ∪ {i}) = I(S | i 항상 존재) - I(S),  S ⊆ N∖{i}"""
    n = profile.n
    sub = np.arange(1 << (n - 1), dtype=np.int64)
    expanded = _insert_zero_bit(sub, i)
    present = harsanyi_transform(ValueProfile(n - 1, profile.values[expanded | (1 << i)]))
    absent = harsanyi_transform(ValueProfile(n - 1, profile.values[expanded]))
    table = harsanyi_transform(profile)
    difference = table.effects[expanded | (1 << i)] - (present.effects - absent.effects)
    return _relative(difference, table.effects)


def check_interaction_distribution(T: VariableSet, c: float) -> float:
    """상호작용 게임의 배당은 {T: c} 단일 항목"""
    table = harsanyi_transform(game_profile(make_interaction_game(T, c, T.n), T.n))
    expected = np.zeros(1 << T.n)
    expected[T.bits] = c
    return _relative(table.effects - expected, c)


def check_additive_dividends(weights: np.ndarray) -> float:
    """가산 게임의 |S| ≥ 2 배당은 0"""
    n = len(weights)
    table = harsanyi_transform(game_profile(make_additive_game(weights), n))
    higher = table.order_of() >= 2
    if not higher.any():
        return 0.0
    return _relative(table.effects[higher], weights)


def check_shapley_consistency(profile: ValueProfile) -> float:
    fast = shapley_from_dividends(harsanyi_transform(profile))
    oracle = shapley_permutation_oracle(profile)
    return _relative(fast.values - oracle.values, oracle.values)


def check_shapley_efficiency(profile: ValueProfile) -> float:
    phi = shapley_from_dividends(harsanyi_transform(profile))
    gain = profile.full_value - profile.empty_value
    return abs(phi.total() - gain) / max(1.0, abs(gain))


def check_taylor_efficiency(profile: ValueProfile, k: int) -> float:
    """Σ_{1≤|T|≤k} ST_k(T) = v(x_N) - v(x_∅)"""
    table = harsanyi_transform(profile)
    orders = table.order_of()
    total = math.fsum(
        shapley_taylor_index(table, int(mask), k)
        for mask in np.flatnonzero((orders >= 1) & (orders <= k))
    )
    gain = profile.full_value - profile.empty_value
    return abs(total - gain) / max(1.0, abs(gain))


def check_lambda_monotonicity(profile: ValueProfile, low: float, high: float) -> float:
    """λ가 커지면 Ω는 줄어든다: Ω(high) ⊆ Ω(low). 위반 개수 반환"""
    table = harsanyi_transform(profile)
    loose = set(salient_set(table, low).masks)
    strict = set(salient_set(table, high).masks)
    return float(len(strict - loose))


def _sizes(max_n: int, trials: int, floor: int = 1) -> Iterator[int]:
    span = max_n - floor + 1
    if span < 1:
        return
    for t in range(trials):
        yield floor + t % span


def run_axiom_suite(max_n: int = 10, trials: int = 20, seed: int = 0) -> list[AxiomCheck]:
    """
    무작위/구성 게임으로 전체 공리 점검

    Args:
        max_n: 최대 변수 개수
        trials: 공리별 시행 횟수
        seed: 게임 생성 시드

    Returns:
        AxiomCheck 목록 (이름 순서 고정)
    """
    rng = np.random.default_rng(seed)

    def seeds() -> int:
        return int(rng.integers(0, 2**31 - 1))

    def run(name: str, cases: Callable[[], Iterator[float]]) -> AxiomCheck:
        errors = list(cases())
        check = AxiomCheck(name=name, cases=len(errors), max_error=max(errors, default=0.0))
        level = logging.DEBUG if check.passed else logging.WARNING
        logger.log(level, f"공리 {name}: {check.cases}건, 최대 오차 {check.max_error:.3e}")
        return check

    shapley_n = min(max_n, SHAPLEY_CHECK_MAX_VARIABLES)
    taylor_n = min(max_n, TAYLOR_CHECK_MAX_VARIABLES)

    checks = [
        run("efficiency", lambda: (
            check_efficiency(_random_profile(seeds(), n)) for n in _sizes(max_n, trials)
        )),
        run("inversion", lambda: (
            check_inversion(_random_profile(seeds(), n)) for n in _sizes(max_n, trials)
        )),
        run("linearity", lambda: (
            check_linearity(
                _random_profile(seeds(), n), _random_profile(seeds(), n),
                float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)),
            )
            for n in _sizes(max_n, trials)
        )),
        run("dummy", lambda: (
            check_dummy(
                _random_profile(seeds(), n - 1), int(rng.integers(0, n)), float(rng.uniform(-2, 2))
            )
            for n in _sizes(max_n, trials, floor=2)
        )),
        run("dummy_additive", lambda: (
            check_additive_dividends(rng.uniform(-2, 2, size=n)) for n in _sizes(max_n, trials)
        )),
        run("symmetry", lambda: (
            check_symmetry(
                _random_profile(seeds(), n), *rng.choice(n, size=2, replace=False).tolist()
            )
            for n in _sizes(max_n, trials, floor=2)
        )),
        run("anonymity", lambda: (
            check_anonymity(_random_profile(seeds(), n), rng.permutation(n).tolist())
            for n in _sizes(max_n, trials)
        )),
        run("recursive", lambda: (
            check_recursive(_random_profile(seeds(), n), int(rng.integers(0, n)))
            for n in _sizes(max_n, trials, floor=2)
        )),
        run("interaction_distribution", lambda: (
            check_interaction_distribution(
                VariableSet(int(rng.integers(1, 1 << n)), n), float(rng.uniform(-5, 5))
            )
            for n in _sizes(max_n, trials)
        )),
        run("shapley_consistency", lambda: (
            check_shapley_consistency(_random_profile(seeds(), n))
            for n in _sizes(shapley_n, trials)
        )),
        run("shapley_efficiency", lambda: (
            check_shapley_efficiency(_random_profile(seeds(), n)) for n in _sizes(max_n, trials)
        )),
        run("shapley_taylor_efficiency", lambda: (
            check_taylor_efficiency(_random_profile(seeds(), n), int(rng.integers(1, n + 1)))
            for n in _sizes(taylor_n, trials)
        )),
        run("lambda_monotonicity", lambda: (
            check_lambda_monotonicity(
                _random_profile(seeds(), n), *sorted(rng.uniform(0.01, 0.99, 2))
            )
            for n in _sizes(max_n, trials)
        )),
    ]

    failed = [c.name for c in checks if not c.passed]
    if failed:
        logger.warning(f"공리 검증 실패: {', '.join(failed)}")
    else:
        logger.info(f"공리 {len(checks)}종 통과")
    return checks
