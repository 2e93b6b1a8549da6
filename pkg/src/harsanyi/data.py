"""표 형식 데이터셋 적재, 분할, 정규화, 하위 범주 필터, 오염 생성

지원 스키마:
- wifi: 공백/탭 구분 정수 7열 + 방 번호(1~4)
- tictactoe: 쉼표 구분 9칸 기호(x/o/b) + positive/negative
- generic-csv: 헤더가 있는 수치 열 + 레이블 열
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Literal

import numpy as np
import pandas as pd

from .constants import (
    DEFAULT_TEST_FRACTION,
    TICTACTOE_CLASSES,
    TICTACTOE_N_FEATURES,
    TICTACTOE_SYMBOLS,
    WIFI_N_FEATURES,
)
from .models import HarsanyiError

logger = logging.getLogger(__name__)

Schema = Literal["wifi", "tictactoe", "generic-csv"]
SCHEMAS = ("wifi", "tictactoe", "generic-csv")

# 삼목 패턴 (0-기반 칸 번호)
TICTACTOE_PATTERNS = {
    "row1": (0, 1, 2),
    "row2": (3, 4, 5),
    "row3": (6, 7, 8),
    "col1": (0, 3, 6),
    "col2": (1, 4, 7),
    "col3": (2, 5, 8),
    "diag": (0, 4, 8),
    "anti-diag": (2, 4, 6),
}


class DatasetError(HarsanyiError):
    """데이터셋 오류"""
    pass


@dataclass(frozen=True, eq=False)
class TabularDataset:
    """
    학습/평가 분할된 표 형식 데이터셋

    x_*는 모델 입력 (정규화 후에는 정규화 값), raw_*는 원래 단위의 원본 기록 (입력 오염 후에도 유지)
    """
    schema: str
    x_train: np.ndarray
    y_train: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray
    n_classes: int
    class_names: tuple[str, ...]
    feature_names: tuple[str, ...]
    raw_train: np.ndarray
    raw_test: np.ndarray
    mean: np.ndarray | None = None
    std: np.ndarray | None = None
    split_seed: int = 0
    corruption: dict = field(default_factory=dict)

    def __post_init__(self):
        for labels in (self.y_train, self.y_test):
            if labels.size and (labels.min() < 0 or labels.max() >= self.n_classes):
                raise DatasetError(f"레이블 범위 초과 (클래스 {self.n_classes}개)")

    @property
    def n_features(self) -> int:
        return self.x_train.shape[1]

    @property
    def is_normalized(self) -> bool:
        return self.mean is not None

    def split(self, name: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(입력, 레이블, 원래 단위 입력) 반환"""
        if name == "train":
            return self.x_train, self.y_train, self.raw_train
        if name == "test":
            return self.x_test, self.y_test, self.raw_test
        raise DatasetError(f"알 수 없는 분할: {name}")

    def normalize(self) -> "TabularDataset":
        """학습 분할 통계로 두 분할을 정규화 (평균 0, 단위 분산)"""
        if self.is_normalized:
            return self
        mean = self.raw_train.mean(axis=0)
        std = self.raw_train.std(axis=0)
        std = np.where(std > 0, std, 1.0)
        return replace(
            self,
            x_train=(self.raw_train - mean) / std,
            x_test=(self.raw_test - mean) / std,
            mean=mean,
            std=std,
        )

    def denormalize(self, x: np.ndarray) -> np.ndarray:
        """정규화 값 → 원래 단위"""
        if not self.is_normalized:
            raise DatasetError("정규화되지 않은 데이터셋")
        return np.asarray(x) * self.std + self.mean


@dataclass
class SampleSelection:
    """필터로 선택된 샘플"""
    name: str
    split: str
    indices: np.ndarray
    features: np.ndarray
    labels: np.ndarray
    raw: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)


def _read_frame(path: Path, **kwargs) -> pd.DataFrame:
    if not path.is_file():
        raise DatasetError(f"파일이 존재하지 않음: {path}")
    try:
        frame = pd.read_csv(path, skip_blank_lines=False, dtype=str, **kwargs)
    except pd.errors.EmptyDataError:
        raise DatasetError(f"빈 파일: {path}")
    except pd.errors.ParserError as e:
        raise DatasetError(f"파싱 실패 ({path}): {e}")
    # 빈 줄 제거 (원래 행 번호는 인덱스로 유지)
    frame = frame.dropna(how="all")
    if frame.empty:
        raise DatasetError(f"빈 파일: {path}")
    return frame


def _line_numbers(frame: pd.DataFrame, rows: np.ndarray, offset: int) -> str:
    lines = [str(int(i) + offset) for i in frame.index[rows][:10]]
    more = "" if rows.sum() <= 10 else f" 외 {rows.sum() - 10}개"
    return ", ".join(lines) + more


def _numeric(frame: pd.DataFrame, path: Path, offset: int) -> np.ndarray:
    values = frame.apply(pd.to_numeric, errors="coerce")
    bad = values.isna().any(axis=1).to_numpy()
    if bad.any():
        raise DatasetError(f"잘못된 행 ({path}), 줄 {_line_numbers(frame, bad, offset)}")
    return values.to_numpy(dtype=np.float64)


def _load_wifi(path: Path) -> tuple[np.ndarray, np.ndarray, tuple, tuple]:
    frame = _read_frame(path, sep=r"\s+", header=None, engine="python")
    if frame.shape[1] != WIFI_N_FEATURES + 1:
        raise DatasetError(f"wifi 열 개수 오류: {frame.shape[1]} (기대값 {WIFI_N_FEATURES + 1})")
    values = _numeric(frame, path, offset=1)
    rooms = values[:, -1]
    bad = ~np.isin(rooms, (1, 2, 3, 4))
    if bad.any():
        raise DatasetError(f"알 수 없는 방 번호 ({path}), 줄 {_line_numbers(frame, bad, 1)}")
    features = values[:, :WIFI_N_FEATURES]
    labels = rooms.astype(np.int64) - 1
    feature_names = tuple(f"rssi{i + 1}" for i in range(WIFI_N_FEATURES))
    return features, labels, ("1", "2", "3", "4"), feature_names


def _load_tictactoe(path: Path) -> tuple[np.ndarray, np.ndarray, tuple, tuple]:
    frame = _read_frame(path, sep=",", header=None)
    if frame.shape[1] != TICTACTOE_N_FEATURES + 1:
        raise DatasetError(
            f"tic-tac-toe 열 개수 오류: {frame.shape[1]} (기대값 {TICTACTOE_N_FEATURES + 1})"
        )
    frame = frame.apply(lambda column: column.str.strip().str.lower())
    cells = frame.iloc[:, :TICTACTOE_N_FEATURES]
    classes = frame.iloc[:, -1]

    bad_cells = ~cells.isin(TICTACTOE_SYMBOLS.keys()).all(axis=1).to_numpy()
    bad_class = ~classes.isin(TICTACTOE_CLASSES.keys()).to_numpy()
    bad = bad_cells | bad_class
    if bad.any():
        raise DatasetError(f"알 수 없는 기호 ({path}), 줄 {_line_numbers(frame, bad, 1)}")

    features = cells.apply(lambda column: column.map(TICTACTOE_SYMBOLS)).to_numpy(np.float64)
    labels = classes.map(TICTACTOE_CLASSES).to_numpy(dtype=np.int64)
    feature_names = tuple(f"cell{i + 1}" for i in range(TICTACTOE_N_FEATURES))
    return features, labels, ("negative", "positive"), feature_names


def _load_generic(path: Path, label_column: str) -> tuple[np.ndarray, np.ndarray, tuple, tuple]:
    frame = _read_frame(path)
    if label_column not in frame.columns:
        raise DatasetError(f"레이블 열 없음: {label_column} ({path})")
    label_text = frame[label_column].str.strip()
    feature_frame = frame.drop(columns=[label_column])
    features = _numeric(feature_frame, path, offset=2)
    class_names = tuple(sorted(label_text.unique()))
    labels = label_text.map({name: i for i, name in enumerate(class_names)}).to_numpy(np.int64)
    return features, labels, class_names, tuple(feature_frame.columns)


def load_tabular(
    path: str | Path,
    schema: Schema,
    seed: int = 0,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    label_column: str = "label",
) -> TabularDataset:
    """
    표 형식 데이터셋 적재 및 시드 고정 학습/평가 분할

    Args:
        path: 데이터 파일 경로
        schema: wifi / tictactoe / generic-csv
        seed: 분할 셔플 시드
        test_fraction: 평가 분할 비율 (기본 0.2)
        label_column: generic-csv 레이블 열 이름

    Returns:
        정규화되지 않은 TabularDataset (normalize()로 정규화)

    Raises:
        DatasetError: 파일 없음, 빈 파일, 잘못된 행 (줄 번호 포함), 알 수 없는 기호
    """
    path = Path(path)
    if schema == "wifi":
        features, labels, class_names, feature_names = _load_wifi(path)
    elif schema == "tictactoe":
        features, labels, class_names, feature_names = _load_tictactoe(path)
    elif schema == "generic-csv":
        features, labels, class_names, feature_names = _load_generic(path, label_column)
    else:
        raise DatasetError(f"알 수 없는 스키마: {schema} (지원: {', '.join(SCHEMAS)})")

    if not 0.0 < test_fraction < 1.0:
        raise DatasetError(f"평가 분할 비율 오류: {test_fraction}")

    order = np.random.default_rng(seed).permutation(len(labels))
    n_test = int(round(test_fraction * len(labels)))
    test_idx, train_idx = order[:n_test], order[n_test:]

    logger.info(f"{schema} 적재: {len(labels)}개 (학습 {len(train_idx)}, 평가 {len(test_idx)})")

    return TabularDataset(
        schema=schema,
        x_train=features[train_idx],
        y_train=labels[train_idx],
        x_test=features[test_idx],
        y_test=labels[test_idx],
        n_classes=len(class_names),
        class_names=class_names,
        feature_names=feature_names,
        raw_train=features[train_idx],
        raw_test=features[test_idx],
        split_seed=seed,
    )


def _winner(board: tuple[str, ...]) -> str | None:
    for cells in TICTACTOE_PATTERNS.values():
        symbols = {board[i] for i in cells}
        if len(symbols) == 1 and board[cells[0]] != "b":
            return board[cells[0]]
    return None


def generate_tictactoe_endgames() -> list[tuple[tuple[str, ...], str]]:
    """
    tic-tac-toe 종국 보드 전수 생성 (X 선공)

    한쪽이 삼목을 만들거나 판이 가득 찬 모든 합법 종국 배치.
    positive ⇔ X 승리. UCI endgame 데이터셋과 동일한 958개 (positive 626개)

    Returns:
        [(9칸 기호, 클래스), ...] (보드 사전순 정렬)
    """
    endgames: dict[tuple[str, ...], str] = {}

    def play(board: list[str], player: str) -> None:
        state = tuple(board)
        winner = _winner(state)
        if winner or "b" not in board:
            endgames[state] = "positive" if winner == "x" else "negative"
            return
        for i in range(9):
            if board[i] == "b":
                board[i] = player
                play(board, "o" if player == "x" else "x")
                board[i] = "b"

    play(["b"] * 9, "x")
    return sorted(endgames.items())


def write_tictactoe_file(path: str | Path) -> Path:
    """생성한 종국 보드를 UCI 형식(쉼표 구분)으로 저장"""
    path = Path(path)
    rows = [list(board) + [label] for board, label in generate_tictactoe_endgames()]
    pd.DataFrame(rows).to_csv(path, header=False, index=False)
    return path


def subcategory_filter(ds: TabularDataset, name: str, split: str = "test") -> SampleSelection:
    """
    하위 범주 / 클래스 필터

    Args:
        ds: 데이터셋
        name: 삼목 패턴 (row1~3, col1~3, diag, anti-diag),
              category-<원래 클래스명> (예: wifi category-4),
              class-<클래스 인덱스>, all
        split: train / test

    Returns:
        SampleSelection

    Raises:
        DatasetError: 알 수 없는 필터 이름
    """
    features, labels, raw = ds.split(split)

    if name == "all":
        keep = np.ones(len(labels), dtype=bool)
    elif name in TICTACTOE_PATTERNS:
        if ds.schema != "tictactoe":
            raise DatasetError(f"삼목 패턴은 tictactoe 전용: {name}")
        keep = np.all(raw[:, list(TICTACTOE_PATTERNS[name])] == 1.0, axis=1)
    elif name.startswith("category-"):
        class_name = name.removeprefix("category-")
        if class_name not in ds.class_names:
            raise DatasetError(f"알 수 없는 클래스명: {class_name} ({', '.join(ds.class_names)})")
        keep = labels == ds.class_names.index(class_name)
    elif name.startswith("class-"):
        try:
            class_idx = int(name.removeprefix("class-"))
        except ValueError:
            raise DatasetError(f"알 수 없는 필터: {name}")
        if not 0 <= class_idx < ds.n_classes:
            raise DatasetError(f"클래스 인덱스 범위 초과: {class_idx}")
        keep = labels == class_idx
    else:
        raise DatasetError(
            f"알 수 없는 필터: {name} (all, category-<클래스명>, class-<인덱스>, "
            f"{', '.join(pattern_names())})"
        )

    indices = np.flatnonzero(keep)
    return SampleSelection(
        name=name,
        split=split,
        indices=indices,
        features=features[indices],
        labels=labels[indices],
        raw=raw[indices],
    )


def pattern_names() -> tuple[str, ...]:
    """삼목 패턴 필터 이름"""
    return tuple(TICTACTOE_PATTERNS)


def corrupt_labels(ds: TabularDataset, r: float, seed: int) -> TabularDataset:
    """
    학습 분할의 ⌊r·|train|⌋개 샘플에 균등 무작위 레이블 부여 (원래 레이블 재추출 가능)

    평가 분할은 변경하지 않음
    """
    if not 0.0 <= r <= 1.0:
        raise DatasetError(f"레이블 잡음 비율 오류: {r}")
    rng = np.random.default_rng(seed)
    n_touched = int(np.floor(r * len(ds.y_train)))
    touched = rng.choice(len(ds.y_train), size=n_touched, replace=False)
    labels = ds.y_train.copy()
    labels[touched] = rng.integers(0, ds.n_classes, size=n_touched)
    logger.info(f"레이블 오염: r={r}, {n_touched}개 재추출")
    return replace(
        ds,
        y_train=labels,
        corruption={**ds.corruption, "label_noise_ratio": r, "label_seed": seed},
    )


def corrupt_inputs(ds: TabularDataset, delta: float, seed: int) -> TabularDataset:
    """
    학습 입력을 (1-δ)·x + δ·ε, ε ~ N(0, I) 로 대체

    raw_train은 깨끗한 원본 기록으로 남아 삼목 패턴 필터가 그대로 동작

    Raises:
        DatasetError: 정규화 전 호출, δ 범위 오류
    """
    if not ds.is_normalized:
        raise DatasetError("입력 오염은 단위 분산 정규화 이후에만 가능")
    if not 0.0 <= delta <= 1.0:
        raise DatasetError(f"입력 잡음 강도 오류: {delta}")
    noise = np.random.default_rng(seed).standard_normal(ds.x_train.shape)
    x_train = (1.0 - delta) * ds.x_train + delta * noise
    logger.info(f"입력 오염: δ={delta}")
    return replace(
        ds,
        x_train=x_train,
        corruption={**ds.corruption, "input_noise_strength": delta, "input_seed": seed},
    )


def iter_grid(label_ratios, input_strengths):
    """잡음 격자 (r 스윕은 δ=0, δ 스윕은 r=0)"""
    return itertools.chain(
        (("label", r) for r in label_ratios),
        (("input", delta) for delta in input_strengths),
    )
