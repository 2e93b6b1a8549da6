"""MLP-5 / ResMLP-5 학습기 (numpy 구현)

- MLP-5: 완전연결 5층 (은닉 폭 100, ReLU), 출력은 클래스 logit
- ResMLP-5: 입출력 폭이 같은 은닉층마다 항등 skip 추가
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from tqdm import tqdm

from .codec import decode_model, encode_model
from .constants import (
    ADAM_BETA1,
    ADAM_BETA2,
    ADAM_EPSILON,
    ARCH_MLP5,
    ARCH_RESMLP5,
    DEFAULT_BATCH_SIZE,
    DEFAULT_EPOCHS,
    DEFAULT_LEARNING_RATE,
    HIDDEN_WIDTH,
    N_LAYERS,
)
from .data import TabularDataset
from .models import HarsanyiError
from .values import ValueFunctionSpec, classification_value_function

logger = logging.getLogger(__name__)

ARCHITECTURES = (ARCH_MLP5, ARCH_RESMLP5)


class MlpError(HarsanyiError):
    """MLP 오류 (구조, 차원 불일치)"""
    pass


class TrainingError(MlpError):
    """학습 발산 (비유한 손실)"""

    def __init__(self, message: str, epoch: int | None = None):
        super().__init__(message)
        self.epoch = epoch


@dataclass
class Hyperparameters:
    """학습 하이퍼파라미터 (Adam, 교차 엔트로피)"""
    learning_rate: float = DEFAULT_LEARNING_RATE
    batch_size: int = DEFAULT_BATCH_SIZE
    epochs: int = DEFAULT_EPOCHS
    hidden_width: int = HIDDEN_WIDTH


@dataclass(eq=False)
class MlpModel:
    """학습된 MLP 가중치 (W: 입력 × 출력)"""
    architecture: str
    weights: list[np.ndarray]
    biases: list[np.ndarray]
    seed: int = 0

    def __post_init__(self):
        if self.architecture not in ARCHITECTURES:
            raise MlpError(f"알 수 없는 아키텍처: {self.architecture}")
        if len(self.weights) != len(self.biases):
            raise MlpError("가중치와 편향 층 수 불일치")

    @property
    def input_dim(self) -> int:
        return self.weights[0].shape[0]

    @property
    def n_classes(self) -> int:
        return self.weights[-1].shape[1]

    @property
    def layer_shapes(self) -> list[tuple[int, int]]:
        return [w.shape for w in self.weights]

    @property
    def skips(self) -> list[bool]:
        """은닉층별 항등 skip 여부 (첫 층은 폭이 바뀌므로 제외)"""
        hidden = len(self.weights) - 1
        if self.architecture != ARCH_RESMLP5:
            return [False] * hidden
        return [False] + [w.shape[0] == w.shape[1] for w in self.weights[1:hidden]]

    def forward(self, x: np.ndarray) -> tuple[np.ndarray, list]:
        """logit과 역전파용 캐시 [(층 입력, 사전 활성값), ...]"""
        h = np.asarray(x, dtype=np.float64)
        cache = []
        for W, b, skip in zip(self.weights[:-1], self.biases[:-1], self.skips):
            z = h @ W + b
            out = np.maximum(z, 0.0)
            if skip:
                out = out + h
            cache.append((h, z))
            h = out
        cache.append((h, None))
        return h @ self.weights[-1] + self.biases[-1], cache

    def loss_and_gradients(
        self, x: np.ndarray, y: np.ndarray
    ) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
        """
        평균 교차 엔트로피 손실과 해석적 기울기

        Returns:
            (손실, dW 목록, db 목록)
        """
        logits, cache = self.forward(x)
        log_probs = _log_softmax(logits)
        batch = len(y)
        loss = -float(np.mean(log_probs[np.arange(batch), y]))

        delta = np.exp(log_probs)
        delta[np.arange(batch), y] -= 1.0
        delta /= batch

        grads_w = [np.empty(0)] * len(self.weights)
        grads_b = [np.empty(0)] * len(self.biases)

        h_last = cache[-1][0]
        grads_w[-1] = h_last.T @ delta
        grads_b[-1] = delta.sum(axis=0)
        dh = delta @ self.weights[-1].T

        for layer in reversed(range(len(self.weights) - 1)):
            h_in, z = cache[layer]
            dz = dh * (z > 0)
            grads_w[layer] = h_in.T @ dz
            grads_b[layer] = dz.sum(axis=0)
            dh_in = dz @ self.weights[layer].T
            if self.skips[layer]:
                dh_in = dh_in + dh
            dh = dh_in

        return loss, grads_w, grads_b

    def parameters(self) -> list[np.ndarray]:
        return [*self.weights, *self.biases]


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def init_model(
    architecture: str,
    input_dim: int,
    n_classes: int,
    seed: int = 0,
    hidden_width: int = HIDDEN_WIDTH,
    rng: np.random.Generator | None = None,
) -> MlpModel:
    """He 정규 초기화 (편향 0)"""
    rng = rng or np.random.default_rng(seed)
    dims = [input_dim] + [hidden_width] * (N_LAYERS - 1) + [n_classes]
    weights = [
        rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in)
        for fan_in, fan_out in zip(dims[:-1], dims[1:])
    ]
    biases = [np.zeros(fan_out) for fan_out in dims[1:]]
    return MlpModel(architecture=architecture, weights=weights, biases=biases, seed=seed)


@dataclass
class TrainResult:
    """학습 결과"""
    model: MlpModel
    train_accuracy: float
    test_accuracy: float
    epochs: int
    final_loss: float
    history: list[float] = field(default_factory=list)

    def to_summary(self) -> dict:
        return {
            "architecture": self.model.architecture,
            "seed": self.model.seed,
            "epochs": self.epochs,
            "final_loss": self.final_loss,
            "train_accuracy": self.train_accuracy,
            "test_accuracy": self.test_accuracy,
        }


def train_mlp(
    ds: TabularDataset,
    architecture: str = ARCH_MLP5,
    hp: Hyperparameters | None = None,
    seed: int = 0,
    progress: bool = False,
) -> TrainResult:
    """
    미니배치 Adam 학습 (교차 엔트로피, 시드 고정 결정적)

    Args:
        ds: 정규화된 데이터셋
        architecture: mlp5 / resmlp5
        hp: 하이퍼파라미터
        seed: 초기화 및 셔플 시드
        progress: 에폭 진행률 표시

    Raises:
        MlpError: 정규화되지 않은 데이터셋
        TrainingError: 비유한 손실 (에폭 포함)
    """
    hp = hp or Hyperparameters()
    if not ds.is_normalized:
        raise MlpError("학습 전 데이터셋 정규화 필요")

    rng = np.random.default_rng(seed)
    model = init_model(architecture, ds.n_features, ds.n_classes, seed, hp.hidden_width, rng)
    params = model.parameters()
    first = [np.zeros_like(p) for p in params]
    second = [np.zeros_like(p) for p in params]
    step = 0
    history: list[float] = []

    x, y = ds.x_train, ds.y_train
    epochs = range(1, hp.epochs + 1)
    if progress:
        epochs = tqdm(epochs, desc=f"{architecture} 학습")

    for epoch in epochs:
        order = rng.permutation(len(y))
        total = 0.0
        for start in range(0, len(y), hp.batch_size):
            batch = order[start:start + hp.batch_size]
            loss, grads_w, grads_b = model.loss_and_gradients(x[batch], y[batch])
            if not np.isfinite(loss):
                raise TrainingError(f"학습 발산: 에폭 {epoch}에서 손실 {loss}", epoch=epoch)
            total += loss * len(batch)

            step += 1
            for param, grad, m, v in zip(params, [*grads_w, *grads_b], first, second):
                m *= ADAM_BETA1
                m += (1.0 - ADAM_BETA1) * grad
                v *= ADAM_BETA2
                v += (1.0 - ADAM_BETA2) * grad * grad
                m_hat = m / (1.0 - ADAM_BETA1 ** step)
                v_hat = v / (1.0 - ADAM_BETA2 ** step)
                param -= hp.learning_rate * m_hat / (np.sqrt(v_hat) + ADAM_EPSILON)

        history.append(total / len(y))

    result = TrainResult(
        model=model,
        train_accuracy=accuracy(model, ds.x_train, ds.y_train),
        test_accuracy=accuracy(model, ds.x_test, ds.y_test),
        epochs=hp.epochs,
        final_loss=history[-1] if history else float("nan"),
        history=history,
    )
    logger.info(
        f"{architecture} 학습 완료: 학습 정확도 {result.train_accuracy:.4f}, "
        f"평가 정확도 {result.test_accuracy:.4f}"
    )
    return result


def predict_probabilities(model: MlpModel, sample: np.ndarray) -> np.ndarray:
    """softmax 클래스 확률 (1차원 입력 → 1차원, 2차원 입력 → 행별)"""
    sample = np.asarray(sample, dtype=np.float64)
    single = sample.ndim == 1
    batch = np.atleast_2d(sample)
    if batch.shape[1] != model.input_dim:
        raise MlpError(f"입력 차원 불일치: {batch.shape[1]} != {model.input_dim}")
    logits, _ = model.forward(batch)
    probabilities = np.exp(_log_softmax(logits))
    return probabilities[0] if single else probabilities


def accuracy(model: MlpModel, x: np.ndarray, y: np.ndarray) -> float:
    if len(y) == 0:
        return float("nan")
    return float(np.mean(predict_probabilities(model, x).argmax(axis=1) == y))


def model_value_function(model: MlpModel, truth_label: int) -> ValueFunctionSpec:
    """정답 클래스 log-odds 값 함수 (재진입 가능, 배치 평가)"""
    return classification_value_function(
        lambda batch: predict_probabilities(model, batch),
        truth_label,
        description=f"{model.architecture}(seed={model.seed}) logit class={truth_label}",
    )


def save_model(model: MlpModel, path: str | Path) -> Path:
    """버전 지정 이진 형식(MLPW1)으로 저장"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_model(model.architecture, model.seed, model.weights, model.biases))
    return path


def load_model(path: str | Path) -> MlpModel:
    """
    MLPW1 파일 로드

    Raises:
        ModelFormatError: 시그니처/버전 불일치, 잘린 파일
    """
    architecture, seed, weights, biases = decode_model(Path(path).read_bytes())
    return MlpModel(architecture=architecture, weights=weights, biases=biases, seed=seed)
