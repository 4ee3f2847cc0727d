"""Reliability-weighted binary cross-entropy losses and their analytic gradients.

The box loss is a plain double sum of per-entry BCE terms scaled by the
reliability weights; the image loss is the single-row analogue. Weights are
treated as constants (they come out of the label-generation flow, not the
loss flow), so gradients only pass through the probability argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Union

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidConfigError,
    InvariantError,
    NonFiniteLossError,
)
from .pseudo import PredictionMatrix, WeightedBoxLabels, WeightedImageLabel
from .validation import as_float_array, check_prob_matrix, check_prob_vector, check_unit_interval

# Probabilities are clamped to [PROB_EPS, 1 - PROB_EPS] before any log.
PROB_EPS = 1e-7

REDUCTIONS = ("sum", "mean")


@dataclass(frozen=True)
class LossBreakdown:
    """One objective evaluation, split into its three reported components.

    ``total`` is computed as ``det_loss + box_loss + image_loss`` in exactly
    that order, so the identity holds bit-for-bit.
    """

    det_loss: float
    box_loss: float
    image_loss: float
    total: float


def clamp_probs(p) -> np.ndarray:
    return np.clip(np.asarray(p, dtype=float), PROB_EPS, 1.0 - PROB_EPS)


def weighted_bce(p, y, w):
    """Elementwise ``w * BCE(p, y)`` with probability clamping.

    Accepts scalars or broadcastable arrays; returns the same shape.
    """
    y_arr = as_float_array(y, "y")
    w_arr = check_unit_interval(w, "w")
    pc = clamp_probs(check_unit_interval(p, "p"))
    bce = -(y_arr * np.log(pc) + (1.0 - y_arr) * np.log1p(-pc))
    out = w_arr * bce
    return float(out) if np.ndim(out) == 0 else out


def _check_reduction(reduction: str) -> None:
    if reduction not in REDUCTIONS:
        raise InvalidConfigError(f"reduction must be one of {REDUCTIONS}, got {reduction!r}")


def _box_probs(preds, wl: WeightedBoxLabels) -> np.ndarray:
    probs = preds.probs if isinstance(preds, PredictionMatrix) else check_prob_matrix(preds, name="preds")
    if probs.shape != wl.labels.shape:
        raise DimensionMismatchError(
            f"preds has shape {probs.shape} but labels have shape {wl.labels.shape}"
        )
    return probs


def box_loss(preds, wl: WeightedBoxLabels, reduction: str = "sum") -> float:
    """Weighted BCE summed over every (proposal, class) entry; 0 for zero rows."""
    _check_reduction(reduction)
    probs = _box_probs(preds, wl)
    if probs.shape[0] == 0:
        return 0.0
    total = float(np.sum(weighted_bce(probs, wl.labels, wl.weights)))
    if reduction == "mean":
        total /= probs.size
    return total


def image_loss(p_image, wl: WeightedImageLabel, reduction: str = "sum") -> float:
    """Weighted BCE summed over classes for the image-level score vector."""
    _check_reduction(reduction)
    p = check_prob_vector(p_image, length=wl.label.shape[0], name="p_image")
    total = float(np.sum(weighted_bce(p, wl.label, wl.weights)))
    if reduction == "mean":
        total /= p.size
    return total


# A weak-batch item: (preds, box labels, image score, image label).
WeakItem = tuple[
    Union[np.ndarray, PredictionMatrix],
    WeightedBoxLabels,
    np.ndarray,
    WeightedImageLabel,
]


def total_objective(
    det_hook: Union[Callable[[], float], float],
    weak_batch: Iterable[WeakItem],
    *,
    det_scale: float = 1.0,
    weak_scale: float = 1.0,
    reduction: str = "sum",
) -> LossBreakdown:
    """Combine the supervised hook with the weak box and image losses.

    The supervised term is opaque here: ``det_hook`` is either a callable
    returning one finite nonnegative scalar or such a scalar directly. The
    optional scale factors default to 1, which reproduces the plain
    three-term sum.
    """
    det_value = float(det_hook() if callable(det_hook) else det_hook)
    if not np.isfinite(det_value):
        raise NonFiniteLossError(f"supervised loss hook returned {det_value}")
    if det_value < 0:
        raise InvariantError(f"supervised loss hook must be nonnegative, got {det_value}")

    box_total = 0.0
    image_total = 0.0
    for preds, box_wl, p_img, img_wl in weak_batch:
        box_total += box_loss(preds, box_wl, reduction)
        image_total += image_loss(p_img, img_wl, reduction)

    det = det_scale * det_value
    box = weak_scale * box_total
    image = weak_scale * image_total
    for name, value in (("det_loss", det), ("box_loss", box), ("image_loss", image)):
        if not np.isfinite(value):
            raise NonFiniteLossError(f"{name} is non-finite: {value}")
    total = det + box + image
    return LossBreakdown(det_loss=det, box_loss=box, image_loss=image, total=total)


def grad_wrt_probs(preds, wl: WeightedBoxLabels) -> np.ndarray:
    """d(box_loss)/d(p) with weights held constant.

    Per entry: ``w * (p - y) / (p * (1 - p))`` evaluated at the clamped
    probability, matching the clamping used in the forward pass.
    """
    probs = _box_probs(preds, wl)
    pc = clamp_probs(probs)
    return wl.weights * (pc - wl.labels) / (pc * (1.0 - pc))
