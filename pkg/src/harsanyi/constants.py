"""harsanyi 상수 정의"""

# 변수 개수 제한 (2^n 밀집 테이블)
MAX_VARIABLES = 25
ORACLE_MAX_VARIABLES = 10   # 순열 오라클 (n! 전수)
SHAPLEY_CHECK_MAX_VARIABLES = 8    # 공리 점검: Shapley 지표 전수 비교
TAYLOR_CHECK_MAX_VARIABLES = 6     # 공리 점검: Shapley-Taylor 지표
ADDITIVE_CHECK_MAX_VARIABLES = 7   # synth-check 가산 게임 점검

# 평가 구간 크기
PROFILE_CHUNK = 1 << 16      # 값 프로파일 입력 배치 행 수
PERMUTATION_CHUNK = 50_000   # 순열 오라클 순열 개수

# 정확도 허용치 (상대 오차)
TOLERANCE = 1e-9

# 확률 클램프 (log-odds 발산 방지)
PROBABILITY_CLAMP = 1e-12
PROBABILITY_SUM_TOLERANCE = 1e-6

# 이진 파일 시그니처
TABLE_MAGIC = b"HARS1"
MODEL_MAGIC = b"MLPW1"
MODEL_FORMAT_VERSION = 1

# 아키텍처 ID (모델 파일 내 1바이트)
ARCH_MLP5 = "mlp5"
ARCH_RESMLP5 = "resmlp5"
ARCHITECTURE_IDS = {
    ARCH_MLP5: 1,
    ARCH_RESMLP5: 2,
}

# MLP 구조
HIDDEN_WIDTH = 100
N_LAYERS = 5                # 완전연결 층 수 (은닉 4 + 출력 1)

# 학습 기본값
DEFAULT_LEARNING_RATE = 1e-3
DEFAULT_BATCH_SIZE = 64
DEFAULT_EPOCHS = 200
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8

# 데이터 분할
DEFAULT_TEST_FRACTION = 0.2
WIFI_N_FEATURES = 7
TICTACTOE_N_FEATURES = 9
TICTACTOE_SYMBOLS = {"x": 1.0, "o": -1.0, "b": 0.0}
TICTACTOE_CLASSES = {"negative": 0, "positive": 1}

# 개념 추출 임계값 (λ)
DEFAULT_SALIENT_LAMBDA = 0.05
DICTIONARY_LAMBDA = 0.1
GAMMA_LAMBDAS = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)
DEFAULT_DICTIONARY_KS = (1, 2, 5, 10, 20, 30, 50, 100)
SPARSITY_LEVEL = 0.05           # 정규화 강도 곡선 희소성 판정 기준

# 배경 강도 적분
DEFAULT_QUADRATURE_POINTS = 21

# 무작위 전이 기준선
DEFAULT_TRANSFER_TRIALS = 10_000

# 판별력 α 구간
ALPHA_BUCKETS = ((0.0, 0.2), (0.2, 0.4), (0.4, 0.6), (0.6, 0.8), (0.8, 1.0))

# 종료 코드
EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_EMPTY_SELECTION = 3
EXIT_INVARIANT_VIOLATION = 4

# 환경 변수
ENV_OUTPUT_ROOT = "HARSANYI_OUTPUT_ROOT"

# 출력 파일명
MODEL_FILENAME = "model.mlpw"
TABLES_DIRNAME = "tables"
REPORT_FILENAME = "report.json"
MANIFEST_FILENAME = "manifest.yaml"
TABLE_SUFFIX = ".hars"
TABLE_INDEX_FILENAME = "index.csv"
FAILED_LOG_FILENAME = "failed.jsonl"
