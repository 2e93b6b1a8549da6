"""공용 테스트 픽스처"""

import os
from functools import partial
from pathlib import Path

import numpy as np
import pytest

from harsanyi.batch import BatchExtraction, BatchExtractor
from harsanyi.data import TabularDataset, load_tabular, subcategory_filter, write_tictactoe_file
from harsanyi.mlp import Hyperparameters, MlpModel, model_value_function, train_mlp
from harsanyi.values import BaselinePolicy

# 실제 UCI wifi 파일 경로 (없으면 해당 테스트 건너뜀)
WIFI_PATH_ENV = "HARSANYI_WIFI_PATH"

# 방별 신호 세기 중심 (합성 wifi 유사 데이터)
ROOM_CENTERS = np.array([
    [-64, -56, -61, -66, -71, -82, -81],
    [-39, -55, -50, -40, -65, -84, -84],
    [-50, -55, -53, -48, -57, -80, -81],
    [-61, -56, -57, -65, -48, -87, -88],
])


def naive_dividends(values: np.ndarray, n: int) -> np.ndarray:
    """정의식 I(S) = Σ_{T⊆S} (-1)^{|S|-|T|} v(T) 직접 계산"""
    effects = np.zeros(1 << n)
    for S in range(1 << n):
        total = 0.0
        T = S
        while True:
            sign = -1.0 if bin(S ^ T).count("1") % 2 else 1.0
            total += sign * values[T]
            if T == 0:
                break
            T = (T - 1) & S
        effects[S] = total
    return effects


def write_wifi_like(path: Path, per_room: int = 100, seed: int = 0) -> Path:
    """방 4개, 정수 신호 세기 7열 탭 구분 파일"""
    rng = np.random.default_rng(seed)
    lines = []
    for room, center in enumerate(ROOM_CENTERS, start=1):
        signals = np.rint(center + rng.normal(0.0, 3.0, size=(per_room, 7))).astype(int)
        lines.extend("\t".join(map(str, row)) + f"\t{room}" for row in signals)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def tictactoe_path(tmp_path_factory) -> Path:
    return write_tictactoe_file(tmp_path_factory.mktemp("data") / "tic-tac-toe.data")


@pytest.fixture(scope="session")
def wifi_path(tmp_path_factory) -> Path:
    return write_wifi_like(tmp_path_factory.mktemp("data") / "wifi_localization.txt")


@pytest.fixture(scope="session")
def real_wifi_path() -> Path:
    path = os.environ.get(WIFI_PATH_ENV)
    if not path or not Path(path).is_file():
        pytest.skip(f"{WIFI_PATH_ENV} 미설정: 실제 wifi 데이터 필요")
    return Path(path)


@pytest.fixture(scope="session")
def wifi_dataset(wifi_path):
    return load_tabular(wifi_path, "wifi", seed=0).normalize()


@pytest.fixture(scope="session")
def tictactoe_dataset(tictactoe_path):
    return load_tabular(tictactoe_path, "tictactoe", seed=0).normalize()


@pytest.fixture(scope="session")
def small_hp() -> Hyperparameters:
    return Hyperparameters(epochs=30, hidden_width=16)


@pytest.fixture(scope="session")
def wifi_model(wifi_dataset, small_hp):
    return train_mlp(wifi_dataset, "mlp5", small_hp, seed=0).model


def extract_category(model: MlpModel, dataset: TabularDataset, name: str) -> BatchExtraction:
    """테스트 분할의 한 범주를 학습 평균 기준값으로 추출"""
    selection = subcategory_filter(dataset, name)
    baseline = BaselinePolicy.per_variable_mean(dataset.x_train).resolve(dataset.n_features)
    extractor = BatchExtractor(partial(model_value_function, model), baseline, workers=1)
    return extractor.extract(selection.features, selection.labels, progress=False)


@pytest.fixture(scope="session")
def default_hp() -> Hyperparameters:
    return Hyperparameters()


@pytest.fixture(scope="session")
def wifi_room4(wifi_dataset, default_hp) -> tuple[BatchExtraction, BatchExtraction]:
    """기본 설정 MLP-5 두 시드의 room 4 추출 결과"""
    return tuple(
        extract_category(
            train_mlp(wifi_dataset, "mlp5", default_hp, seed=seed).model,
            wifi_dataset,
            "category-4",
        )
        for seed in (0, 1)
    )
