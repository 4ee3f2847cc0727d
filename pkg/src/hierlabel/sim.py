"""Deterministic desk-scale self-training simulator on a synthetic class tree.

The world is a balanced hierarchy of classes whose leaves carry Gaussian
feature prototypes. Every image holds a handful of proposal feature vectors
drawn around one or two leaf prototypes, but its observed label is only a
coarse ancestor of the true leaf, reproducing the mismatch between
image-level tags and object-level categories. A small fully-labeled split
plays the role of the supervised detection data.

Three training methods share one linear per-class sigmoid scorer and one
full-batch gradient-descent loop, differing only in how weak images turn
into targets:

* ``raw-assign``  - the coarse label is assigned to the proposal scoring
  highest for it; no expansion, no image-level term.
* ``self-train``  - thresholded argmax pseudo labels; no expansion, no
  image-level term.
* ``lhst``        - the full engine flow: closure-expanded labels merged
  into thresholded pseudo labels, reliability weights, plus the
  image-level loss on the pooled-feature score.

Everything is seeded and single-threaded, so a (config, seed) pair fully
determines the result. Fine-class accuracy (argmax restricted to leaf
classes on held-out proposals) is the comparison metric; it is a proxy for
pseudo-label quality invented for this simulator, not a published metric.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np
from sklearn.base import BaseEstimator

from .errors import InvalidConfigError, InvariantError, NonFiniteLossError, ParseError
from .hierarchy import HierarchyGraph, Vocabulary, expand_labels, make_graph
from .loss import LossBreakdown, weighted_bce
from .validation import check_threshold

METHODS = ("raw-assign", "self-train", "lhst")

DEFAULT_LR = 5e-4

Source = Union[str, Path, IO[str], Iterable[str]]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(eq=False)
class LinearScorer:
    """Per-class sigmoid linear model: p(c | f) = sigmoid(w_c . f + b_c)."""

    weights: np.ndarray  # C x F
    bias: np.ndarray     # C

    def scores(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.weights.T + self.bias

    def predict_proba(self, X) -> np.ndarray:
        return _sigmoid(self.scores(X))


@dataclass(eq=False)
class SynthWorld:
    """Synthetic hierarchical dataset plus the graph/vocabulary it lives in."""

    graph: HierarchyGraph
    vocab: Vocabulary
    branching: int
    depth: int
    feature_dim: int
    sigma: float
    coarseness: int
    seed: int
    leaf_indices: np.ndarray       # vocab indices of leaf classes
    prototypes: np.ndarray         # (n_leaves, F), aligned with leaf_indices
    det_features: np.ndarray       # (n_det_proposals, F)
    det_leaf: np.ndarray           # true leaf class index per det proposal
    det_class_indices: np.ndarray  # vocab indices supervised by the det split (all leaves)
    weak_features: np.ndarray      # (n_weak_proposals, F), grouped by image
    weak_image_of: np.ndarray      # weak proposal -> weak image index
    weak_true_leaf: np.ndarray     # true leaf class index per weak proposal
    weak_image_labels: np.ndarray  # (n_weak_images, C) observed coarse labels
    weak_pooled: np.ndarray        # (n_weak_images, F) mean proposal features
    proposals_per_image: int
    test_features: np.ndarray
    test_leaf: np.ndarray

    @property
    def n_classes(self) -> int:
        return self.vocab.size

    @property
    def n_weak_images(self) -> int:
        return self.weak_image_labels.shape[0]


def _tree_ids(branching: int, depth: int) -> list[list[str]]:
    """Node ids by level; the root is 'c', children append '.<i>' per level."""
    levels = [["c"]]
    for _ in range(depth - 1):
        levels.append([f"{p}.{i}" for p in levels[-1] for i in range(branching)])
    return levels


def _ancestor(node_id: str, levels_up: int) -> str:
    parts = node_id.split(".")
    keep = max(1, len(parts) - levels_up)
    return ".".join(parts[:keep])


def build_tree(branching: int, depth: int) -> tuple[HierarchyGraph, Vocabulary, list[str]]:
    """Balanced class tree; vocabulary indices run level by level from the root."""
    levels = _tree_ids(branching, depth)
    all_ids = [n for level in levels for n in level]
    edges = []
    for level in levels[1:]:
        for node in level:
            edges.append((node, _ancestor(node, 1)))
    graph = make_graph({n: [n] for n in all_ids}, edges)
    vocab = Vocabulary(tuple((n, n) for n in all_ids))
    return graph, vocab, levels[-1]


def generate_world(
    branching: int = 3,
    depth: int = 3,
    feature_dim: int = 16,
    sigma: float = 0.3,
    n_images: int = 200,
    proposals_per_image: int = 5,
    coarseness: int = 1,
    seed: int = 0,
    *,
    det_fraction: float = 0.1,
    det_uncovered_per_family: int = 0,
    second_leaf_prob: float = 0.3,
    test_per_leaf: int = 50,
    prototype_scale: float = 1.25,
) -> SynthWorld:
    """Build the seeded synthetic world.

    Each image draws its proposals around one leaf prototype (or two, with
    probability ``second_leaf_prob``, which makes the observed label
    multi-hot). The observed label is the true leaf's ancestor
    ``coarseness`` levels up. The first ``det_fraction`` of images form the
    fully-labeled split whose proposals keep their true leaf labels.

    The fully-labeled split cycles through its leaf pool so every pooled
    class has supervised coverage. Setting ``det_uncovered_per_family`` > 0
    withholds the last children of every family from that pool: they then
    appear only behind coarse image labels, mirroring a weak-supervision
    vocabulary that is wider than the detection one. Weak and held-out
    images always draw from all leaves. Supervision from this split spans
    every leaf column (an exhaustively annotated detection set asserts
    absence within its object vocabulary) but never the inner nodes.
    """
    if branching < 2:
        raise InvalidConfigError(f"branching must be >= 2, got {branching}")
    if depth < 2:
        raise InvalidConfigError(f"depth must be >= 2, got {depth}")
    if feature_dim < 2:
        raise InvalidConfigError(f"feature_dim must be >= 2, got {feature_dim}")
    if sigma < 0:
        raise InvalidConfigError(f"sigma must be >= 0, got {sigma}")
    if n_images < 1:
        raise InvalidConfigError(f"n_images must be >= 1, got {n_images}")
    if proposals_per_image < 1:
        raise InvalidConfigError(f"proposals_per_image must be >= 1, got {proposals_per_image}")
    if not 0 <= coarseness <= depth - 1:
        raise InvalidConfigError(f"coarseness must lie in [0, {depth - 1}], got {coarseness}")
    if not 0.0 <= det_fraction < 1.0:
        raise InvalidConfigError(f"det_fraction must lie in [0, 1), got {det_fraction}")
    if not 0 <= det_uncovered_per_family <= branching - 1:
        raise InvalidConfigError(
            f"det_uncovered_per_family must lie in [0, {branching - 1}], got {det_uncovered_per_family}"
        )
    if not 0.0 <= second_leaf_prob <= 1.0:
        raise InvalidConfigError(f"second_leaf_prob must lie in [0, 1], got {second_leaf_prob}")
    if test_per_leaf < 1:
        raise InvalidConfigError(f"test_per_leaf must be >= 1, got {test_per_leaf}")
    if prototype_scale <= 0:
        raise InvalidConfigError(f"prototype_scale must be > 0, got {prototype_scale}")

    graph, vocab, leaf_ids = build_tree(branching, depth)
    index_of = vocab.index_of
    leaf_indices = np.array([index_of[l] for l in leaf_ids], dtype=int)
    n_leaves = len(leaf_ids)

    rng = np.random.default_rng(seed)
    prototypes = prototype_scale * rng.standard_normal((n_leaves, feature_dim))
    if len({row.tobytes() for row in prototypes}) != n_leaves:
        raise InvariantError("leaf prototypes are not pairwise distinct; change the seed")

    n_det_images = min(int(round(det_fraction * n_images)), n_images - 1)
    c = vocab.size
    p = proposals_per_image
    # leaves are family-contiguous, so k % branching is k's index among its siblings
    covered = [k for k in range(n_leaves) if k % branching < branching - det_uncovered_per_family]

    det_feats: list[np.ndarray] = []
    det_leaf: list[int] = []
    weak_feats: list[np.ndarray] = []
    weak_image_of: list[int] = []
    weak_true: list[int] = []
    weak_labels: list[np.ndarray] = []

    for i in range(n_images):
        is_det = i < n_det_images
        pool = covered if is_det else list(range(n_leaves))
        first = i % len(pool) if is_det else int(rng.integers(n_leaves))
        local_leaves = [pool[first] if is_det else first]
        if p >= 2 and len(pool) > 1 and rng.random() < second_leaf_prob:
            pos = pool.index(local_leaves[0])
            local_leaves.append(pool[(pos + 1 + int(rng.integers(len(pool) - 1))) % len(pool)])
        assignment = rng.integers(len(local_leaves), size=p)
        for j, _ in enumerate(local_leaves):  # every local leaf owns at least one proposal
            assignment[j] = j
        prop_leaves = np.array(local_leaves, dtype=int)[assignment]
        feats = prototypes[prop_leaves] + sigma * rng.standard_normal((p, feature_dim))

        if is_det:
            det_feats.append(feats)
            det_leaf.extend(int(leaf_indices[k]) for k in prop_leaves)
        else:
            y_cls = np.zeros(c, dtype=int)
            for k in local_leaves:
                y_cls[index_of[_ancestor(leaf_ids[k], coarseness)]] = 1
            weak_feats.append(feats)
            weak_image_of.extend([len(weak_labels)] * p)
            weak_true.extend(int(leaf_indices[k]) for k in prop_leaves)
            weak_labels.append(y_cls)

    test_feats = []
    test_leaf = []
    for k in range(n_leaves):
        test_feats.append(prototypes[k] + sigma * rng.standard_normal((test_per_leaf, feature_dim)))
        test_leaf.extend([int(leaf_indices[k])] * test_per_leaf)

    weak_features = (
        np.concatenate(weak_feats) if weak_feats else np.empty((0, feature_dim))
    )
    weak_image_labels = (
        np.stack(weak_labels) if weak_labels else np.empty((0, c), dtype=int)
    )
    weak_pooled = (
        weak_features.reshape(len(weak_labels), p, feature_dim).mean(axis=1)
        if weak_labels
        else np.empty((0, feature_dim))
    )
    return SynthWorld(
        graph=graph,
        vocab=vocab,
        branching=branching,
        depth=depth,
        feature_dim=feature_dim,
        sigma=sigma,
        coarseness=coarseness,
        seed=seed,
        leaf_indices=leaf_indices,
        prototypes=prototypes,
        det_features=np.concatenate(det_feats) if det_feats else np.empty((0, feature_dim)),
        det_leaf=np.array(det_leaf, dtype=int),
        det_class_indices=leaf_indices.copy(),
        weak_features=weak_features,
        weak_image_of=np.array(weak_image_of, dtype=int),
        weak_true_leaf=np.array(weak_true, dtype=int),
        weak_image_labels=weak_image_labels,
        weak_pooled=weak_pooled,
        proposals_per_image=p,
        test_features=np.concatenate(test_feats),
        test_leaf=np.array(test_leaf, dtype=int),
    )


@dataclass(eq=False)
class SimResult:
    """Outcome of one training run: loss trace, held-out accuracy, and the scorer."""

    method: str
    iterations: int
    lr: float
    threshold: float
    seed: int
    trace: list[LossBreakdown]
    final_accuracy: float
    scorer: LinearScorer


def fine_accuracy(scorer: LinearScorer, world: SynthWorld) -> float:
    """Held-out accuracy of the argmax restricted to leaf classes."""
    probs = scorer.predict_proba(world.test_features)[:, world.leaf_indices]
    pred = world.leaf_indices[np.argmax(probs, axis=1)]
    return float(np.mean(pred == world.test_leaf))


def expanded_weak_labels(world: SynthWorld) -> tuple[np.ndarray, np.ndarray]:
    """Per weak image: closure-expanded label matrix and expansion mask."""
    if world.n_weak_images == 0:
        c = world.n_classes
        return np.empty((0, c), dtype=int), np.empty((0, c), dtype=bool)
    y_hier = np.stack(
        [expand_labels(world.graph, world.vocab, y) for y in world.weak_image_labels]
    )
    mask = (y_hier == 1) & (world.weak_image_labels == 0)
    return y_hier, mask


def _one_hot(indices: np.ndarray, n_classes: int) -> np.ndarray:
    out = np.zeros((indices.shape[0], n_classes), dtype=int)
    if indices.shape[0]:
        out[np.arange(indices.shape[0]), indices] = 1
    return out


def weak_box_targets(
    probs: np.ndarray,
    y_hier_rows: np.ndarray,
    mask_rows: np.ndarray,
    threshold: float,
    trust_confirmed: bool = False,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched equivalent of the per-image label-generation flow.

    Rows may belong to different images; ``y_hier_rows`` and ``mask_rows``
    carry each row's own expanded label and expansion mask. Returns merged
    labels, reliability weights, and the boolean keep mask; rows below the
    threshold still get labels/weights here but contribute nothing to the
    loss. Per-image slices match :func:`hierlabel.pseudo.generate_weighted_labels`
    exactly (covered by tests).
    """
    keep = probs.max(axis=1) >= threshold
    pseudo = _one_hot(probs.argmax(axis=1), probs.shape[1])
    labels = pseudo | y_hier_rows
    weights = np.where(mask_rows, probs, 1.0)
    if trust_confirmed:
        weights = np.where(mask_rows & (pseudo == 1), 1.0, weights)
    return labels, weights, keep


def train(
    world: SynthWorld,
    method: str,
    iters: int,
    lr: float = DEFAULT_LR,
    t: float = 0.75,
    seed: int = 0,
    *,
    reduction: str = "sum",
    trust_confirmed: bool = False,
    init_scale: float = 0.3,
) -> SimResult:
    """Full-batch gradient descent with per-iteration label regeneration.

    Weak targets are rebuilt from the current predictions at every step (no
    moving-average teacher), the supervised split always contributes its
    plain BCE term, and the loss recorded in the trace is the value before
    that iteration's parameter update. Supervised BCE covers only the
    detection vocabulary's classes: a box-annotated split carries no
    evidence about classes it never annotates, so it neither pushes them up
    nor down.
    """
    if method not in METHODS:
        raise InvalidConfigError(f"method must be one of {METHODS}, got {method!r}")
    if iters < 0:
        raise InvalidConfigError(f"iters must be >= 0, got {iters}")
    if lr <= 0:
        raise InvalidConfigError(f"lr must be > 0, got {lr}")
    if reduction not in ("sum", "mean"):
        raise InvalidConfigError(f"reduction must be 'sum' or 'mean', got {reduction!r}")
    threshold = check_threshold(t)

    c = world.n_classes
    f = world.feature_dim
    rng = np.random.default_rng(seed)
    w = init_scale * rng.standard_normal((c, f))
    bias = np.zeros(c)

    x_det, x_weak, x_pool = world.det_features, world.weak_features, world.weak_pooled
    y_det = _one_hot(world.det_leaf, c)
    det_cols = np.zeros(c, dtype=bool)
    det_cols[world.det_class_indices] = True
    y_hier, mask = expanded_weak_labels(world)
    img_of = world.weak_image_of
    n_det, n_weak, n_img = x_det.shape[0], x_weak.shape[0], world.n_weak_images
    ppi = world.proposals_per_image
    y_cls = world.weak_image_labels
    n_det_entries = n_det * int(det_cols.sum())

    trace: list[LossBreakdown] = []
    for it in range(iters):
        p_det = _sigmoid(x_det @ w.T + bias)
        d_det = np.where(det_cols[None, :], p_det - y_det, 0.0)
        if n_det:
            det_sum = float(np.sum(weighted_bce(p_det[:, det_cols], y_det[:, det_cols], 1.0)))
        else:
            det_sum = 0.0

        box_sum = 0.0
        image_sum = 0.0
        d_box = np.zeros((n_weak, c))
        d_img = np.zeros((n_img, c))
        box_rows = 0

        if n_weak:
            p_weak = _sigmoid(x_weak @ w.T + bias)
            if method == "raw-assign":
                p3 = p_weak.reshape(n_img, ppi, c)
                best_row = p3.argmax(axis=1)  # per image: row maximizing each class
                target = np.zeros((n_img, ppi, c), dtype=int)
                assigned = np.zeros((n_img, ppi), dtype=bool)
                imgs, classes = np.nonzero(y_cls)
                rows = best_row[imgs, classes]
                target[imgs, rows, classes] = 1
                assigned[imgs, rows] = True
                box_rows = int(assigned.sum())
                bce = weighted_bce(p3, target, 1.0)
                box_sum = float(np.sum(bce[assigned]))
                d3 = np.where(assigned[:, :, None], p3 - target, 0.0)
                d_box = d3.reshape(n_weak, c)
            else:
                if method == "self-train":
                    keep = p_weak.max(axis=1) >= threshold
                    labels = _one_hot(p_weak.argmax(axis=1), c)
                    weights = np.ones_like(p_weak)
                else:  # lhst
                    labels, weights, keep = weak_box_targets(
                        p_weak, y_hier[img_of], mask[img_of], threshold, trust_confirmed
                    )
                box_rows = int(keep.sum())
                bce = weighted_bce(p_weak, labels, weights)
                box_sum = float(np.sum(bce[keep]))
                d_box = np.where(keep[:, None], weights * (p_weak - labels), 0.0)

            if method == "lhst":
                p_img = _sigmoid(x_pool @ w.T + bias)
                w_img = np.where(mask, p_img, 1.0)
                image_sum = float(np.sum(weighted_bce(p_img, y_hier, w_img)))
                d_img = w_img * (p_img - y_hier)

        if reduction == "mean":
            det_denom = max(1, n_det_entries)
            box_denom = max(1, box_rows * c)
            img_denom = max(1, n_img * c)
            det_sum /= det_denom
            d_det = d_det / det_denom
            box_sum /= box_denom
            d_box = d_box / box_denom
            image_sum /= img_denom
            d_img = d_img / img_denom

        total = det_sum + box_sum + image_sum
        if not np.isfinite(total):
            raise NonFiniteLossError(f"non-finite loss at iteration {it}")
        trace.append(
            LossBreakdown(det_loss=det_sum, box_loss=box_sum, image_loss=image_sum, total=total)
        )

        grad_w = d_det.T @ x_det if n_det else np.zeros((c, f))
        grad_b = d_det.sum(axis=0) if n_det else np.zeros(c)
        if n_weak:
            grad_w = grad_w + d_box.T @ x_weak
            grad_b = grad_b + d_box.sum(axis=0)
            if method == "lhst":
                grad_w = grad_w + d_img.T @ x_pool
                grad_b = grad_b + d_img.sum(axis=0)
        w = w - lr * grad_w
        bias = bias - lr * grad_b

    scorer = LinearScorer(weights=w, bias=bias)
    return SimResult(
        method=method,
        iterations=iters,
        lr=lr,
        threshold=threshold,
        seed=seed,
        trace=trace,
        final_accuracy=fine_accuracy(scorer, world),
        scorer=scorer,
    )


def threshold_sweep(
    world: SynthWorld,
    t_values: Iterable[float],
    iters: int,
    lr: float = DEFAULT_LR,
    seed: int = 0,
    **train_kwargs,
) -> list[tuple[float, float]]:
    """One seeded lhst run per threshold, everything else held fixed."""
    ts = [check_threshold(t) for t in t_values]
    return [
        (t, train(world, "lhst", iters, lr, t, seed, **train_kwargs).final_accuracy)
        for t in ts
    ]


def compare_methods(
    world: SynthWorld,
    iters: int,
    lr: float = DEFAULT_LR,
    t: float = 0.75,
    seed: int = 0,
    **train_kwargs,
) -> dict[str, SimResult]:
    """Run every method on the same world with identical settings."""
    return {m: train(world, m, iters, lr, t, seed, **train_kwargs) for m in METHODS}


class SelfTrainingSimulator(BaseEstimator):
    """Estimator facade over :func:`train`: fit on a world, predict on features.

    After ``fit(world)`` the trained scorer is available as ``scorer_`` and
    the run record as ``result_``. ``predict`` argmaxes over all classes;
    ``predict_fine`` restricts the argmax to leaf classes, matching the
    reported fine-class accuracy.
    """

    def __init__(
        self,
        method: str = "lhst",
        n_iters: int = 1000,
        lr: float = DEFAULT_LR,
        threshold: float = 0.75,
        seed: int = 0,
        reduction: str = "sum",
        trust_confirmed: bool = False,
        init_scale: float = 0.3,
    ):
        self.method = method
        self.n_iters = n_iters
        self.lr = lr
        self.threshold = threshold
        self.seed = seed
        self.reduction = reduction
        self.trust_confirmed = trust_confirmed
        self.init_scale = init_scale

    def fit(self, world: SynthWorld, y=None) -> "SelfTrainingSimulator":
        self.result_ = train(
            world,
            self.method,
            self.n_iters,
            self.lr,
            self.threshold,
            self.seed,
            reduction=self.reduction,
            trust_confirmed=self.trust_confirmed,
            init_scale=self.init_scale,
        )
        self.scorer_ = self.result_.scorer
        self.leaf_indices_ = world.leaf_indices.copy()
        return self

    def predict_proba(self, X) -> np.ndarray:
        return self.scorer_.predict_proba(X)

    def predict(self, X) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)

    def predict_fine(self, X) -> np.ndarray:
        probs = self.predict_proba(X)[:, self.leaf_indices_]
        return self.leaf_indices_[np.argmax(probs, axis=1)]


# ---------------------------------------------------------------------------
# key=value config files for the CLI
# ---------------------------------------------------------------------------

@dataclass
class SimConfig:
    """Simulator settings; field names double as the config-file keys."""

    B: int = 3
    L: int = 3
    F: int = 16
    sigma: float = 0.3
    n_images: int = 200
    proposals: int = 5
    coarseness: int = 1
    method: str = "lhst"
    iters: int = 1000
    lr: float = DEFAULT_LR
    t: float = 0.75
    seed: int = 0
    det_fraction: float = 0.1
    det_uncovered: int = 0
    second_leaf_prob: float = 0.3
    test_per_leaf: int = 50
    prototype_scale: float = 1.25
    reduction: str = "sum"
    trust_confirmed: bool = False
    init_scale: float = 0.3


def _parse_bool(value: str, key: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise InvalidConfigError(f"config key {key!r} expects a boolean, got {value!r}")


def parse_sim_config(source: Source) -> SimConfig:
    """Parse ``key=value`` lines (# comments allowed) into a :class:`SimConfig`."""
    if isinstance(source, (str, Path)):
        try:
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = [line.rstrip("\n") for line in source]

    types = {f.name: f.type for f in fields(SimConfig)}
    defaults = SimConfig()
    values: dict[str, object] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key=value', got {raw!r}")
        key = key.strip()
        value = value.strip()
        if key not in types:
            raise InvalidConfigError(f"line {lineno}: unknown config key {key!r}")
        current = getattr(defaults, key)
        try:
            if isinstance(current, bool):
                values[key] = _parse_bool(value, key)
            elif isinstance(current, int):
                values[key] = int(value)
            elif isinstance(current, float):
                values[key] = float(value)
            else:
                values[key] = value
        except ValueError:
            raise ParseError(f"line {lineno}: bad value {value!r} for key {key!r}") from None
    return replace(defaults, **values)


def world_from_config(cfg: SimConfig) -> SynthWorld:
    return generate_world(
        branching=cfg.B,
        depth=cfg.L,
        feature_dim=cfg.F,
        sigma=cfg.sigma,
        n_images=cfg.n_images,
        proposals_per_image=cfg.proposals,
        coarseness=cfg.coarseness,
        seed=cfg.seed,
        det_fraction=cfg.det_fraction,
        det_uncovered_per_family=cfg.det_uncovered,
        second_leaf_prob=cfg.second_leaf_prob,
        test_per_leaf=cfg.test_per_leaf,
        prototype_scale=cfg.prototype_scale,
    )


def train_from_config(cfg: SimConfig, world: SynthWorld | None = None) -> SimResult:
    if world is None:
        world = world_from_config(cfg)
    return train(
        world,
        cfg.method,
        cfg.iters,
        cfg.lr,
        cfg.t,
        cfg.seed,
        reduction=cfg.reduction,
        trust_confirmed=cfg.trust_confirmed,
        init_scale=cfg.init_scale,
    )
