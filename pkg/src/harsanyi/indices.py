"""배당 기반 게임 이론 지표

Shapley 값, Shapley 상호작용 지표, Shapley-Taylor 지표와
순열 전수 열거 Shapley 오라클
"""

import itertools
import logging
import math

import numpy as np
from scipy.special import binom, factorial

from .constants import ORACLE_MAX_VARIABLES, PERMUTATION_CHUNK
from .lattice import as_mask, supermask_selector
from .models import AttributionVector, InteractionTable, LatticeError, ValueProfile

logger = logging.getLogger(__name__)


def shapley_from_dividends(table: InteractionTable) -> AttributionVector:
    """φ(i) = Σ_{S ∋ i} I(S) / |S|  (각 배당을 구성 변수에 균등 분배)"""
    orders = table.order_of()
    shares = np.zeros(len(table))
    nonempty = orders > 0
    shares[nonempty] = table.effects[nonempty] / orders[nonempty]
    # 비트 i가 켜진 마스크 = reshape(-1, 2, 2^i)의 [:, 1, :] 뷰
    values = np.array([
        shares.reshape(-1, 2, 1 << i)[:, 1, :].sum() for i in range(table.n)
    ])
    return AttributionVector(values=values, empty_effect=table[0])


def shapley_permutation_oracle(profile: ValueProfile) -> AttributionVector:
    """
    n! 개 순서 전체에 대한 한계 기여 평균

    φ(i) = E_π[v(Pre_π(i) ∪ {i}) - v(Pre_π(i))]

    Raises:
        LatticeError: n > 10
    """
    n = profile.n
    if n > ORACLE_MAX_VARIABLES:
        raise LatticeError(f"순열 오라클 변수 개수 초과: n={n} (최대 {ORACLE_MAX_VARIABLES})")

    totals = np.zeros(n)
    permutations = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(permutations, PERMUTATION_CHUNK))
        if not chunk:
            break
        order = np.array(chunk, dtype=np.int64)
        after = np.cumsum(np.int64(1) << order, axis=1)
        before = after - (np.int64(1) << order)
        marginal = profile.values[after] - profile.values[before]
        np.add.at(totals, order.ravel(), marginal.ravel())

    count = float(factorial(n, exact=True))
    return AttributionVector(values=totals / count, empty_effect=profile.empty_value)


def shapley_interaction_index(table: InteractionTable, T) -> float:
    """
    I^Shapley(T) = Σ_{S ⊆ N∖T} I(S ∪ T) / (|S| + 1)

    T를 하나의 변수로 묶었을 때의 Shapley 값
    """
    mask = as_mask(T, table.n)
    if mask == 0:
        raise LatticeError("Shapley 상호작용 지표: T가 비어 있음")
    selected = supermask_selector(mask, table.n)
    extra = table.order_of()[selected] - bin(mask).count("1")
    return math.fsum(table.effects[selected] / (extra + 1))


def shapley_taylor_index(table: InteractionTable, T, k: int) -> float:
    """
    k차 Shapley-Taylor 지표

    - |T| < k: I(T)
    - |T| = k: Σ_{S ⊆ N∖T} I(S ∪ T) / C(|S| + k, k)
    - |T| > k: 0
    """
    if not 1 <= k <= table.n:
        raise LatticeError(f"Shapley-Taylor 차수 범위 초과: k={k} (1~{table.n})")
    mask = as_mask(T, table.n)
    size = bin(mask).count("1")
    if size < k:
        return table[mask]
    if size > k:
        return 0.0
    selected = supermask_selector(mask, table.n)
    extra = table.order_of()[selected] - size
    return math.fsum(table.effects[selected] / binom(extra + k, k))
