"""버전 지정 이진 형식

테이블 (HARS1):
- magic "HARS1" (5바이트)
- n (1바이트)
- 항목 수 2^n (8바이트 리틀 엔디안)
- 2^n 개 float64 (리틀 엔디안)

모델 (MLPW1):
- magic "MLPW1" (5바이트)
- 형식 버전 (1바이트), 아키텍처 ID (1바이트)
- 학습 시드 (8바이트), 층 수 (1바이트)
- 층별 (입력 폭, 출력 폭) uint32 쌍
- 층별 가중치 행렬, 편향 벡터 float64 (리틀 엔디안, 행 우선)
"""

from pathlib import Path

import numpy as np
import pandas as pd

from .constants import (
    ARCHITECTURE_IDS,
    MODEL_FORMAT_VERSION,
    MODEL_MAGIC,
    TABLE_MAGIC,
)
from .models import HarsanyiError, InteractionTable, ValueProfile, check_n

FLOAT_DTYPE = np.dtype("<f8")


class FormatError(HarsanyiError):
    """이진 형식 오류"""
    pass


class TableFormatError(FormatError):
    """HARS1 형식 오류 (시그니처, 길이)"""
    pass


class ModelFormatError(FormatError):
    """MLPW1 형식 오류 (시그니처, 버전, 잘린 파일)"""
    pass


class _Cursor:
    """바이트 순차 읽기 (부족하면 지정한 오류 발생)"""

    def __init__(self, data: bytes, error: type[FormatError]):
        self.data = data
        self.offset = 0
        self.error = error

    def take(self, size: int, what: str) -> bytes:
        if len(self.data) < self.offset + size:
            raise self.error(f"데이터 부족: {what} 파싱 불가 (offset={self.offset})")
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def uint(self, size: int, what: str) -> int:
        return int.from_bytes(self.take(size, what), "little")

    def floats(self, count: int, what: str) -> np.ndarray:
        raw = self.take(count * FLOAT_DTYPE.itemsize, what)
        return np.frombuffer(raw, dtype=FLOAT_DTYPE).astype(np.float64)

    def expect_end(self) -> None:
        if self.offset != len(self.data):
            raise self.error(f"잉여 데이터: {len(self.data) - self.offset}바이트")


# ---------------------------------------------------------------------------
# 테이블 / 프로파일
# ---------------------------------------------------------------------------

def encode_values(n: int, values: np.ndarray) -> bytes:
    """밀집 테이블 인코딩"""
    check_n(n)
    values = np.asarray(values, dtype=FLOAT_DTYPE)
    if values.shape != (1 << n,):
        raise TableFormatError(f"항목 수 불일치: {values.shape[0]} != {1 << n}")
    header = TABLE_MAGIC + n.to_bytes(1, "little") + (1 << n).to_bytes(8, "little")
    return header + values.tobytes()


def decode_values(data: bytes) -> tuple[int, np.ndarray]:
    """
    밀집 테이블 디코딩

    Returns:
        (n, 길이 2^n 배열)

    Raises:
        TableFormatError: 시그니처 불일치, 항목 수 불일치, 잘린 데이터
    """
    cursor = _Cursor(data, TableFormatError)
    magic = cursor.take(len(TABLE_MAGIC), "시그니처")
    if magic != TABLE_MAGIC:
        raise TableFormatError(f"테이블 시그니처 불일치: {magic!r}")
    n = cursor.uint(1, "변수 개수")
    count = cursor.uint(8, "항목 수")
    if count != 1 << n:
        raise TableFormatError(f"항목 수 불일치: {count} != 2^{n}")
    values = cursor.floats(count, "테이블 값")
    cursor.expect_end()
    return n, values


def write_table(table: "InteractionTable | ValueProfile", path: str | Path) -> Path:
    """테이블 또는 프로파일을 HARS1 파일로 저장"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    array = table.effects if isinstance(table, InteractionTable) else table.values
    path.write_bytes(encode_values(table.n, array))
    return path


def read_table(path: str | Path) -> InteractionTable:
    n, values = decode_values(Path(path).read_bytes())
    return InteractionTable(n=n, effects=values)


def read_profile(path: str | Path) -> ValueProfile:
    n, values = decode_values(Path(path).read_bytes())
    return ValueProfile(n=n, values=values)


def table_frame(table: "InteractionTable | ValueProfile") -> pd.DataFrame:
    """(마스크 이진 문자열, 값) 데이터프레임"""
    array = table.effects if isinstance(table, InteractionTable) else table.values
    return pd.DataFrame({
        "mask": [format(m, f"0{table.n}b") for m in range(1 << table.n)],
        "value": array,
    })


def write_table_csv(table: "InteractionTable | ValueProfile", path: str | Path) -> Path:
    """CSV 내보내기 (mask는 문자열 유지, 값은 17자리 유효숫자)"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table_frame(table).to_csv(path, index=False, float_format="%.17g")
    return path


def read_table_csv(path: str | Path) -> InteractionTable:
    """
    CSV 테이블 읽기 (17자리 값을 손실 없이 복원)

    Raises:
        TableFormatError: 열 누락, 행 수가 2^n이 아님
    """
    frame = pd.read_csv(path, dtype={"mask": str}, float_precision="round_trip")
    if list(frame.columns) != ["mask", "value"]:
        raise TableFormatError(f"CSV 열 오류: {list(frame.columns)} ({path})")
    if frame.empty:
        raise TableFormatError(f"빈 CSV 테이블: {path}")
    # n = 0 테이블은 마스크 "0" 한 행
    n = 0 if len(frame) == 1 else len(frame["mask"].iloc[0])
    if len(frame) != 1 << n:
        raise TableFormatError(f"CSV 행 수 불일치: {len(frame)} != 2^{n} ({path})")
    order = frame["mask"].map(lambda s: int(s, 2)).to_numpy()
    values = np.empty(1 << n, dtype=np.float64)
    values[order] = frame["value"].to_numpy(dtype=np.float64)
    return InteractionTable(n, values)


# ---------------------------------------------------------------------------
# 모델 가중치
# ---------------------------------------------------------------------------

def encode_model(
    architecture: str,
    seed: int,
    weights: list[np.ndarray],
    biases: list[np.ndarray],
) -> bytes:
    """MLP 가중치 인코딩"""
    if architecture not in ARCHITECTURE_IDS:
        raise ModelFormatError(f"알 수 없는 아키텍처: {architecture}")
    parts = [
        MODEL_MAGIC,
        MODEL_FORMAT_VERSION.to_bytes(1, "little"),
        ARCHITECTURE_IDS[architecture].to_bytes(1, "little"),
        int(seed).to_bytes(8, "little", signed=True),
        len(weights).to_bytes(1, "little"),
    ]
    for W in weights:
        rows, cols = W.shape
        parts.append(rows.to_bytes(4, "little") + cols.to_bytes(4, "little"))
    for W, b in zip(weights, biases):
        parts.append(np.ascontiguousarray(W, dtype=FLOAT_DTYPE).tobytes())
        parts.append(np.ascontiguousarray(b, dtype=FLOAT_DTYPE).tobytes())
    return b"".join(parts)


def decode_model(data: bytes) -> tuple[str, int, list[np.ndarray], list[np.ndarray]]:
    """
    MLP 가중치 디코딩

    Returns:
        (아키텍처, 시드, 가중치 목록, 편향 목록)

    Raises:
        ModelFormatError: 시그니처/버전/아키텍처 불일치, 잘린 데이터
    """
    cursor = _Cursor(data, ModelFormatError)
    magic = cursor.take(len(MODEL_MAGIC), "시그니처")
    if magic != MODEL_MAGIC:
        raise ModelFormatError(f"모델 시그니처 불일치: {magic!r}")

    version = cursor.uint(1, "형식 버전")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"지원하지 않는 모델 형식 버전: {version}")

    arch_id = cursor.uint(1, "아키텍처 ID")
    names = {v: k for k, v in ARCHITECTURE_IDS.items()}
    if arch_id not in names:
        raise ModelFormatError(f"알 수 없는 아키텍처 ID: {arch_id}")

    seed = int.from_bytes(cursor.take(8, "시드"), "little", signed=True)
    n_layers = cursor.uint(1, "층 수")
    if n_layers == 0:
        raise ModelFormatError("층 수가 0")

    shapes = [(cursor.uint(4, "층 입력 폭"), cursor.uint(4, "층 출력 폭")) for _ in range(n_layers)]
    for (_, cols), (rows, _) in zip(shapes[:-1], shapes[1:]):
        if cols != rows:
            raise ModelFormatError(f"층 폭 불일치: {cols} != {rows}")

    weights, biases = [], []
    for layer, (rows, cols) in enumerate(shapes):
        weights.append(cursor.floats(rows * cols, f"{layer}층 가중치").reshape(rows, cols))
        biases.append(cursor.floats(cols, f"{layer}층 편향"))
    cursor.expect_end()
    return names[arch_id], seed, weights, biases
