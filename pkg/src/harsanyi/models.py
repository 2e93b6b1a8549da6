"""harsanyi 데이터 모델"""

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .constants import MAX_VARIABLES


class HarsanyiError(Exception):
    """harsanyi 기본 오류"""
    pass


class LatticeError(HarsanyiError):
    """부분집합 격자 오류 (차원 불일치, 비유한 값 등)"""
    pass


def check_n(n: int) -> int:
    """변수 개수 검증 (1 ≤ n ≤ MAX_VARIABLES)"""
    if not 1 <= n <= MAX_VARIABLES:
        raise LatticeError(f"변수 개수 범위 초과: n={n} (1~{MAX_VARIABLES})")
    return n


def popcount(masks: np.ndarray) -> np.ndarray:
    """마스크 배열의 원소별 비트 수"""
    masks = np.asarray(masks, dtype=np.int64)
    counts = np.zeros(masks.shape, dtype=np.int64)
    work = masks.copy()
    while np.any(work):
        counts += work & 1
        work >>= 1
    return counts


@dataclass(frozen=True)
class VariableSet:
    """변수 부분집합 S ⊆ N (비트 i ⇔ 변수 i ∈ S, 0-기반)"""
    bits: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        if not 0 <= self.bits < (1 << self.n):
            raise LatticeError(f"마스크 범위 초과: bits={self.bits}, n={self.n}")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "VariableSet":
        """변수 인덱스 목록에서 생성"""
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise LatticeError(f"변수 인덱스 범위 초과: {i} (n={n})")
            bits |= 1 << i
        return cls(bits=bits, n=n)

    @classmethod
    def full(cls, n: int) -> "VariableSet":
        return cls(bits=(1 << n) - 1, n=n)

    @classmethod
    def empty(cls, n: int) -> "VariableSet":
        return cls(bits=0, n=n)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.bits >> i & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.n and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __or__(self, other: "VariableSet") -> "VariableSet":
        self._check_same_n(other)
        return VariableSet(self.bits | other.bits, self.n)

    def __and__(self, other: "VariableSet") -> "VariableSet":
        self._check_same_n(other)
        return VariableSet(self.bits & other.bits, self.n)

    def complement(self) -> "VariableSet":
        return VariableSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def issubset(self, other: "VariableSet") -> bool:
        self._check_same_n(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "VariableSet") -> bool:
        self._check_same_n(other)
        return self.bits & other.bits == 0

    def to_binary_string(self) -> str:
        """CSV 표기 (왼쪽 끝 문자가 변수 n-1)"""
        return format(self.bits, f"0{self.n}b")

    def _check_same_n(self, other: "VariableSet") -> None:
        if other.n != self.n:
            raise LatticeError(f"변수 개수 불일치: {self.n} != {other.n}")

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.indices) + "}"


def _readonly_array(values, n: int, what: str) -> np.ndarray:
    """길이 2^n 유한 실수 배열로 변환 (쓰기 금지)"""
    check_n(n)
    array = np.array(values, dtype=np.float64)
    if array.shape != (1 << n,):
        raise LatticeError(f"{what} 길이 불일치: {array.shape} (기대값 {1 << n})")
    if not np.all(np.isfinite(array)):
        bad = int(np.flatnonzero(~np.isfinite(array))[0])
        raise LatticeError(f"{what}에 비유한 값: mask={format(bad, f'0{n}b')}")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ValueProfile:
    """모든 마스크 T에 대한 v(x_T) 밀집 테이블"""
    n: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _readonly_array(self.values, self.n, "ValueProfile"))

    @property
    def full_value(self) -> float:
        """v(x_N)"""
        return float(self.values[-1])

    @property
    def empty_value(self) -> float:
        """v(x_∅)"""
        return float(self.values[0])

    def __getitem__(self, key: "VariableSet | int") -> float:
        mask = key.bits if isinstance(key, VariableSet) else int(key)
        return float(self.values[mask])

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class InteractionTable:
    """모든 부분집합 S에 대한 I(S|x) 밀집 테이블 (생성 후 불변)"""
    n: int
    effects: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "effects", _readonly_array(self.effects, self.n, "InteractionTable")
        )

    def __getitem__(self, key: "VariableSet | int") -> float:
        mask = key.bits if isinstance(key, VariableSet) else int(key)
        return float(self.effects[mask])

    def __len__(self) -> int:
        return len(self.effects)

    def total(self) -> float:
        """Σ_S I(S|x)"""
        return float(np.sum(self.effects))

    def order_of(self) -> np.ndarray:
        """각 마스크의 차수 |S|"""
        return popcount(np.arange(1 << self.n))


@dataclass(frozen=True)
class SalientSet:
    """현저 개념 집합 Ω_x"""
    n: int
    effects: dict[int, float]          # mask → I(S|x)
    threshold_ratio: float
    include_empty: bool = False
    threshold: float = 0.0             # τ = λ · max|I|

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.effects))

    @property
    def members(self) -> frozenset[VariableSet]:
        return frozenset(VariableSet(m, self.n) for m in self.effects)

    def __len__(self) -> int:
        return len(self.effects)

    def __contains__(self, key: "VariableSet | int") -> bool:
        mask = key.bits if isinstance(key, VariableSet) else int(key)
        return mask in self.effects


@dataclass
class ConceptStats:
    """개념 S의 현저 부호 통계"""
    mask: int
    m_plus: int
    m_minus: int
    m: int

    @property
    def alpha(self) -> float:
        """빈도 α(S) = (m⁺ + m⁻) / m"""
        return (self.m_plus + self.m_minus) / self.m if self.m else 0.0

    @property
    def beta(self) -> float:
        """판별력 β(S) = max(m⁺, m⁻) / (m⁺ + m⁻)"""
        salient = self.m_plus + self.m_minus
        return max(self.m_plus, self.m_minus) / salient if salient else 0.0


@dataclass
class ConceptDictionary:
    """개념 사전 D_k (빈도 내림차순, 동률은 마스크 오름차순)"""
    n: int
    entries: list[int]
    frequency: dict[int, float]
    k: int
    shortfall: int = 0                 # 요청 k 대비 부족분

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, mask: int) -> bool:
        return mask in self._entry_set

    @property
    def _entry_set(self) -> frozenset[int]:
        return frozenset(self.entries)


@dataclass
class AttributionVector:
    """변수별 귀속값 φ(i|x)"""
    values: np.ndarray
    empty_effect: float = 0.0          # I(∅) = v(x_∅)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return float(self.values[i])

    def total(self) -> float:
        """Σ_i φ(i) (= v(x_N) - v(x_∅))"""
        return float(np.sum(self.values))


@dataclass
class MetricsReport:
    """지표 보고서 (메타데이터 + 이름별 블록)"""
    metadata: dict = field(default_factory=dict)
    blocks: dict[str, dict] = field(default_factory=dict)

    def add_block(self, name: str, parameters: dict, **arrays) -> dict:
        """지표 블록 추가 (파라미터와 배열 기록)"""
        block = {"parameters": parameters, **arrays}
        self.blocks[name] = block
        return block

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "blocks": self.blocks,
        }

    def to_json(self) -> str:
        """결정적 JSON 문자열 (키 정렬)"""
        return json.dumps(
            _jsonable(self.to_dict()), ensure_ascii=False, sort_keys=True, indent=2
        ) + "\n"


def _jsonable(value):
    """numpy 값을 JSON 직렬화 가능 형태로 변환"""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value
