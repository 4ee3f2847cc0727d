"""Hierarchy-aware weak-supervision label engine.

Expands coarse image labels through a hypernym/hyponym graph, merges them
with thresholded pseudo labels under per-class reliability weights, computes
the weighted losses that train against them, bridges arbitrary test
vocabularies onto the hierarchy via embeddings, and ships a deterministic
simulator that demonstrates the co-regularization effect end to end.
"""

from .bridge import (
    DEFAULT_TEMPLATE,
    BridgeMatch,
    EmbeddingTable,
    VocabularyBridge,
    bridge_vocabulary,
    cosine_similarity,
    emit_prompt,
    load_embeddings,
    mock_embedding,
)
from .errors import (
    BadTemplateError,
    CycleError,
    DanglingEdgeError,
    DimensionMismatchError,
    HierLabelError,
    InvalidConfigError,
    InvalidThresholdError,
    InvariantError,
    MissingEmbeddingError,
    NonFiniteLossError,
    ParseError,
    UnknownSynsetError,
    ZeroVectorError,
)
from .hierarchy import (
    HierarchyGraph,
    LabelExpander,
    Vocabulary,
    closure,
    expand_labels,
    expanded_mask,
    load_hierarchy,
    load_vocabulary,
    make_graph,
    normalize_lemma,
)
from .loss import (
    PROB_EPS,
    LossBreakdown,
    box_loss,
    grad_wrt_probs,
    image_loss,
    total_objective,
    weighted_bce,
)
from .pseudo import (
    DEFAULT_THRESHOLD,
    PredictionMatrix,
    PseudoLabelGenerator,
    WeightedBoxLabels,
    WeightedImageLabel,
    argmax_pseudo,
    filter_predictions,
    generate_weighted_labels,
    image_score_from_proposals,
    image_weights,
    merge_labels,
    reliability_weights,
)
from .sim import (
    LinearScorer,
    SelfTrainingSimulator,
    SimConfig,
    SimResult,
    SynthWorld,
    compare_methods,
    fine_accuracy,
    generate_world,
    parse_sim_config,
    threshold_sweep,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "BadTemplateError",
    "BridgeMatch",
    "CycleError",
    "DanglingEdgeError",
    "DEFAULT_TEMPLATE",
    "DEFAULT_THRESHOLD",
    "DimensionMismatchError",
    "EmbeddingTable",
    "HierarchyGraph",
    "HierLabelError",
    "InvalidConfigError",
    "InvalidThresholdError",
    "InvariantError",
    "LabelExpander",
    "LinearScorer",
    "LossBreakdown",
    "MissingEmbeddingError",
    "NonFiniteLossError",
    "ParseError",
    "PredictionMatrix",
    "PROB_EPS",
    "PseudoLabelGenerator",
    "SelfTrainingSimulator",
    "SimConfig",
    "SimResult",
    "SynthWorld",
    "UnknownSynsetError",
    "Vocabulary",
    "VocabularyBridge",
    "WeightedBoxLabels",
    "WeightedImageLabel",
    "ZeroVectorError",
    "argmax_pseudo",
    "box_loss",
    "bridge_vocabulary",
    "closure",
    "compare_methods",
    "cosine_similarity",
    "emit_prompt",
    "expand_labels",
    "expanded_mask",
    "filter_predictions",
    "fine_accuracy",
    "generate_weighted_labels",
    "generate_world",
    "grad_wrt_probs",
    "image_loss",
    "image_score_from_proposals",
    "image_weights",
    "load_embeddings",
    "load_hierarchy",
    "load_vocabulary",
    "make_graph",
    "merge_labels",
    "mock_embedding",
    "normalize_lemma",
    "parse_sim_config",
    "reliability_weights",
    "threshold_sweep",
    "total_objective",
    "train",
    "weighted_bce",
]
