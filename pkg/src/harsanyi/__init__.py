"""
harsanyi - Harsanyi 배당 기반 상호작용 개념 추출 및 품질 지표
라이선스: MIT
"""

__version__ = "0.1.0"

from .models import (  # noqa: E402
    HarsanyiError,
    LatticeError,
    VariableSet,
    ValueProfile,
    InteractionTable,
    SalientSet,
    ConceptStats,
    ConceptDictionary,
    AttributionVector,
    MetricsReport,
)
from .lattice import (  # noqa: E402
    build_value_profile,
    harsanyi_transform,
    zeta_transform,
    reconstruct_value,
    efficiency_residual,
    salient_set,
    normalized_strength_curve,
    permute_profile,
)
from .values import (  # noqa: E402
    ValueModelError,
    BaselinePolicy,
    ValueFunctionSpec,
    ContextSpec,
    mask_sample,
    logit_value,
    classification_value_function,
    make_interaction_game,
    make_additive_game,
    make_random_game,
    game_profile,
    present_masks,
    context_averaged_profile,
)
from .data import (  # noqa: E402
    DatasetError,
    TabularDataset,
    load_tabular,
    subcategory_filter,
    corrupt_labels,
    corrupt_inputs,
    generate_tictactoe_endgames,
)
from .mlp import (  # noqa: E402
    MlpModel,
    TrainingError,
    train_mlp,
    predict_probabilities,
    save_model,
    load_model,
)
from .codec import (  # noqa: E402
    FormatError,
    ModelFormatError,
    TableFormatError,
    read_table_csv,
)
from .analytics import (  # noqa: E402
    AnalyticsError,
    build_dictionary,
    explanation_ratio,
    cross_model_transfer,
    random_transfer_baseline,
    discrimination_stats,
    multi_variable_strength,
    effect_histogram,
    order_sensitivity,
)
from .indices import (  # noqa: E402
    shapley_from_dividends,
    shapley_permutation_oracle,
    shapley_interaction_index,
    shapley_taylor_index,
)
from .axioms import AxiomCheck, run_axiom_suite  # noqa: E402
from .batch import BatchExtractor, BatchExtraction, ExtractionOutcome  # noqa: E402
from .config import RunConfig, ConfigError, load_config  # noqa: E402
from .exporter import ReportExporter  # noqa: E402

__all__ = [
    # Models
    "HarsanyiError",
    "LatticeError",
    "VariableSet",
    "ValueProfile",
    "InteractionTable",
    "SalientSet",
    "ConceptStats",
    "ConceptDictionary",
    "AttributionVector",
    "MetricsReport",
    # Lattice
    "build_value_profile",
    "harsanyi_transform",
    "zeta_transform",
    "reconstruct_value",
    "efficiency_residual",
    "salient_set",
    "normalized_strength_curve",
    "permute_profile",
    # Value functions
    "ValueModelError",
    "BaselinePolicy",
    "ValueFunctionSpec",
    "ContextSpec",
    "mask_sample",
    "logit_value",
    "classification_value_function",
    "make_interaction_game",
    "make_additive_game",
    "make_random_game",
    "game_profile",
    "present_masks",
    "context_averaged_profile",
    # Data / training
    "DatasetError",
    "TabularDataset",
    "load_tabular",
    "subcategory_filter",
    "corrupt_labels",
    "corrupt_inputs",
    "generate_tictactoe_endgames",
    "MlpModel",
    "TrainingError",
    "train_mlp",
    "predict_probabilities",
    "save_model",
    "load_model",
    "FormatError",
    "ModelFormatError",
    "TableFormatError",
    "read_table_csv",
    # Analytics
    "AnalyticsError",
    "build_dictionary",
    "explanation_ratio",
    "cross_model_transfer",
    "random_transfer_baseline",
    "discrimination_stats",
    "multi_variable_strength",
    "effect_histogram",
    "order_sensitivity",
    # Indices
    "shapley_from_dividends",
    "shapley_permutation_oracle",
    "shapley_interaction_index",
    "shapley_taylor_index",
    # Pipeline
    "AxiomCheck",
    "run_axiom_suite",
    "BatchExtractor",
    "BatchExtraction",
    "ExtractionOutcome",
    "RunConfig",
    "ConfigError",
    "load_config",
    "ReportExporter",
]
