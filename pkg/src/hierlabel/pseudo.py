"""Per-image pseudo-label generation.

Raw per-proposal probabilities become training targets in four steps:
confidence filtering, per-row argmax, an elementwise OR with the expanded
image label, and reliability weighting. Weights are 1 everywhere except on
classes that were switched on by hierarchy expansion, where the weight is
the model's own predicted probability: the less the model believes an
expanded class, the less that class contributes to the loss.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .errors import DimensionMismatchError, InvalidConfigError, UnknownSynsetError
from .hierarchy import HierarchyGraph, Vocabulary, expand_labels, expanded_mask
from .validation import (
    check_binary_matrix,
    check_binary_vector,
    check_prob_matrix,
    check_prob_vector,
    check_threshold,
)

DEFAULT_THRESHOLD = 0.75

IMAGE_SCORE_MODES = ("max", "mean")


@dataclass(eq=False)
class PredictionMatrix:
    """N x C class probabilities for one image's proposals.

    ``normalized`` marks rows as summing to 1 (softmax-style scores);
    unnormalized per-class sigmoid scores are equally accepted.
    ``kept_indices`` records, on the output of :func:`filter_predictions`,
    which original rows survived.
    """

    probs: np.ndarray
    normalized: bool = False
    kept_indices: np.ndarray | None = None

    def __post_init__(self):
        self.probs = check_prob_matrix(self.probs, normalized=self.normalized, name="probs")
        if self.kept_indices is not None:
            self.kept_indices = np.asarray(self.kept_indices, dtype=int)
            if self.kept_indices.shape != (self.probs.shape[0],):
                raise DimensionMismatchError("kept_indices must have one entry per row")

    @property
    def num_proposals(self) -> int:
        return self.probs.shape[0]

    @property
    def num_classes(self) -> int:
        return self.probs.shape[1]


@dataclass(eq=False)
class WeightedBoxLabels:
    """Merged binary box labels with per-entry reliability weights."""

    labels: np.ndarray           # N x C in {0,1}
    weights: np.ndarray          # N x C in [0,1]; 1 outside the expanded mask
    kept_indices: np.ndarray     # original proposal indices surviving the filter

    def __post_init__(self):
        self.labels = check_binary_matrix(self.labels, name="labels")
        self.weights = check_prob_matrix(self.weights, name="weights")
        self.kept_indices = np.asarray(self.kept_indices, dtype=int)
        if self.labels.shape != self.weights.shape:
            raise DimensionMismatchError("labels and weights must have the same shape")
        if self.kept_indices.shape != (self.labels.shape[0],):
            raise DimensionMismatchError("kept_indices must have one entry per kept row")

    @property
    def num_boxes(self) -> int:
        return self.labels.shape[0]


@dataclass(eq=False)
class WeightedImageLabel:
    """Expanded image-level label with per-class reliability weights."""

    label: np.ndarray    # length C in {0,1}
    weights: np.ndarray  # length C in [0,1]

    def __post_init__(self):
        self.label = check_binary_vector(self.label, name="label")
        self.weights = check_prob_vector(self.weights, name="weights")
        if self.label.shape != self.weights.shape:
            raise DimensionMismatchError("label and weights must have the same length")


def _probs_of(preds) -> tuple[np.ndarray, bool]:
    if isinstance(preds, PredictionMatrix):
        return preds.probs, preds.normalized
    return check_prob_matrix(preds, name="preds"), False


def filter_predictions(preds, t) -> PredictionMatrix:
    """Keep rows whose maximum class probability reaches the threshold.

    Row order is preserved and the surviving original indices are recorded
    on the result. The result may have zero rows.
    """
    probs, normalized = _probs_of(preds)
    threshold = check_threshold(t)
    if probs.shape[0] == 0:
        kept = np.empty(0, dtype=int)
    else:
        kept = np.flatnonzero(probs.max(axis=1) >= threshold)
    return PredictionMatrix(
        probs=probs[kept],
        normalized=normalized,
        kept_indices=kept,
    )


def argmax_pseudo(preds) -> np.ndarray:
    """One-hot each row at its maximum-probability class (ties: lowest index)."""
    probs, _ = _probs_of(preds)
    n, c = probs.shape
    if n < 1:
        raise DimensionMismatchError("argmax_pseudo requires at least one proposal row")
    out = np.zeros((n, c), dtype=int)
    out[np.arange(n), probs.argmax(axis=1)] = 1
    return out


def merge_labels(pseudo, y_hier) -> np.ndarray:
    """Elementwise OR of each pseudo-label row with the expanded image label."""
    rows = check_binary_matrix(pseudo, name="pseudo")
    image = check_binary_vector(y_hier, name="y_hier")
    if rows.shape[1] != image.shape[0]:
        raise DimensionMismatchError(
            f"pseudo has {rows.shape[1]} classes but y_hier has {image.shape[0]}"
        )
    return rows | image[np.newaxis, :]


def reliability_weights(preds, mask) -> np.ndarray:
    """Weight matrix: predicted probability on expanded classes, 1 elsewhere.

    The expansion mask is an image-level property, so a column is either
    down-weighted for every proposal or for none; this holds even where a
    row's argmax pseudo label lands on an expanded class.
    """
    probs, _ = _probs_of(preds)
    m = check_binary_vector(mask, length=probs.shape[1], name="mask")
    return np.where(m[np.newaxis, :] == 1, probs, 1.0)


def image_weights(p_image, mask) -> np.ndarray:
    """Vector analogue of :func:`reliability_weights` for the image-level score."""
    p = check_prob_vector(p_image, name="p_image")
    m = check_binary_vector(mask, length=p.shape[0], name="mask")
    return np.where(m == 1, p, 1.0)


def image_score_from_proposals(preds, mode: str = "max") -> np.ndarray:
    """Reduce unfiltered proposal probabilities to one per-class image score.

    With zero proposals the score is all-zero (no evidence for any class).
    """
    probs, _ = _probs_of(preds)
    if mode not in IMAGE_SCORE_MODES:
        raise InvalidConfigError(f"image score mode must be one of {IMAGE_SCORE_MODES}, got {mode!r}")
    if probs.shape[0] == 0:
        return np.zeros(probs.shape[1])
    return probs.max(axis=0) if mode == "max" else probs.mean(axis=0)


def generate_weighted_labels(
    preds,
    y_cls,
    graph: HierarchyGraph,
    vocab: Vocabulary,
    t: float = DEFAULT_THRESHOLD,
    *,
    p_image=None,
    image_score_mode: str = "max",
    trust_confirmed: bool = False,
    max_depth: int | None = None,
) -> tuple[WeightedBoxLabels, WeightedImageLabel]:
    """Run the full per-image label-generation flow.

    Expands the raw image label, filters and argmaxes the proposal
    probabilities, ORs each surviving row with the expanded label, and
    attaches reliability weights at box and image level. When every proposal
    falls below the threshold the box output is empty (zero rows) and only
    the image-level pair carries supervision.

    Args:
        preds: N x C probabilities (array or PredictionMatrix).
        y_cls: raw binary image label, length C.
        p_image: optional per-class image score; when omitted it is reduced
            from the unfiltered proposals via ``image_score_mode``.
        trust_confirmed: when True, a class that is both expanded and equal
            to a row's argmax pseudo label keeps weight 1 in that row
            instead of being down-weighted.
    """
    probs, normalized = _probs_of(preds)
    if probs.shape[1] != vocab.size:
        raise DimensionMismatchError(
            f"preds has {probs.shape[1]} classes but vocabulary has {vocab.size}"
        )
    y = check_binary_vector(y_cls, length=vocab.size, name="y_cls")

    y_hier = expand_labels(graph, vocab, y, max_depth)
    mask = expanded_mask(y, y_hier)

    filtered = filter_predictions(PredictionMatrix(probs, normalized=normalized), t)
    if filtered.num_proposals > 0:
        pseudo = argmax_pseudo(filtered)
        labels = merge_labels(pseudo, y_hier)
        weights = reliability_weights(filtered, mask)
        if trust_confirmed:
            weights = np.where((pseudo == 1) & (mask[np.newaxis, :] == 1), 1.0, weights)
    else:
        c = vocab.size
        labels = np.zeros((0, c), dtype=int)
        weights = np.ones((0, c))
    box = WeightedBoxLabels(labels=labels, weights=weights, kept_indices=filtered.kept_indices)

    if p_image is None:
        score = image_score_from_proposals(probs, image_score_mode)
    else:
        score = check_prob_vector(p_image, length=vocab.size, name="p_image")
    image = WeightedImageLabel(label=y_hier, weights=image_weights(score, mask))
    return box, image


class PseudoLabelGenerator(BaseEstimator):
    """Configured per-image label generator with a scikit-learn parameter surface.

    Holds the hierarchy, vocabulary, and filtering options so that a single
    object can be handed around (and cloned/grid-searched) instead of a
    six-argument function call per image.
    """

    def __init__(
        self,
        graph: HierarchyGraph,
        vocab: Vocabulary,
        threshold: float = DEFAULT_THRESHOLD,
        image_score: str = "max",
        trust_confirmed: bool = False,
        max_depth: int | None = None,
    ):
        self.graph = graph
        self.vocab = vocab
        self.threshold = threshold
        self.image_score = image_score
        self.trust_confirmed = trust_confirmed
        self.max_depth = max_depth

    def fit(self, X=None, y=None) -> "PseudoLabelGenerator":
        check_threshold(self.threshold)
        if self.image_score not in IMAGE_SCORE_MODES:
            raise InvalidConfigError(
                f"image score mode must be one of {IMAGE_SCORE_MODES}, got {self.image_score!r}"
            )
        for name, synset in self.vocab.classes:
            if synset is not None and synset not in self.graph:
                raise UnknownSynsetError(f"class {name!r} maps to unknown synset {synset!r}")
        self.n_classes_ = self.vocab.size
        return self

    def generate(self, preds, y_cls, p_image=None) -> tuple[WeightedBoxLabels, WeightedImageLabel]:
        return generate_weighted_labels(
            preds,
            y_cls,
            self.graph,
            self.vocab,
            self.threshold,
            p_image=p_image,
            image_score_mode=self.image_score,
            trust_confirmed=self.trust_confirmed,
            max_depth=self.max_depth,
        )
