"""Brute-force reference implementations, independent of the package.

Everything here works from raw dicts/lists with explicit loops, so the
package's vectorized and multi-source code paths are checked against a
second, separately written derivation of the same definitions.
"""

from __future__ import annotations

import math

import numpy as np

EPS = 1e-7


# ---------------------------------------------------------------------------
# random fixtures
# ---------------------------------------------------------------------------

def random_dag(rng: np.random.Generator, max_nodes: int = 200):
    """Random DAG as (lemmas_by_id, edges).

    Edges always point from a higher-numbered node to a lower-numbered one,
    so the result is acyclic by construction.
    """
    n = int(rng.integers(1, max_nodes + 1))
    names = [f"s{i:03d}" for i in range(n)]
    p = min(1.0, 3.0 / max(1, n - 1))
    upper = np.triu(rng.random((n, n)) < p, k=1)
    edges = [(names[j], names[i]) for i, j in np.argwhere(upper)]
    return {name: [name] for name in names}, edges


def random_label_vector(rng: np.random.Generator, c: int) -> np.ndarray:
    """Mostly sparse labels with an occasional dense vector."""
    y = np.zeros(c, dtype=int)
    if rng.random() < 0.1:
        y[rng.random(c) < 0.3] = 1
    else:
        k = int(rng.integers(0, min(6, c) + 1))
        if k:
            y[rng.choice(c, size=k, replace=False)] = 1
    return y


# ---------------------------------------------------------------------------
# hierarchy closure / expansion
# ---------------------------------------------------------------------------

def closure_bfs(edges, seed, max_depth=None):
    """Two plain breadth-first searches (up via parents, down via children)."""
    parents: dict[str, list[str]] = {}
    children: dict[str, list[str]] = {}
    for child, parent in edges:
        parents.setdefault(child, []).append(parent)
        children.setdefault(parent, []).append(child)
    out = {seed}
    for adj in (parents, children):
        frontier = [seed]
        seen = {seed}
        depth = 0
        while frontier and (max_depth is None or depth < max_depth):
            nxt = []
            for node in frontier:
                for other in adj.get(node, []):
                    if other not in seen:
                        seen.add(other)
                        nxt.append(other)
            out.update(nxt)
            frontier = nxt
            depth += 1
    return out


def expand_bfs(edges, vocab_pairs, y, max_depth=None):
    """Union of per-seed closures, restricted to vocabulary classes."""
    out = [int(b) for b in y]
    synset_to_idx: dict[str, list[int]] = {}
    for idx, (_, synset) in enumerate(vocab_pairs):
        if synset is not None:
            synset_to_idx.setdefault(synset, []).append(idx)
    for idx, bit in enumerate(y):
        if not bit:
            continue
        synset = vocab_pairs[idx][1]
        if synset is None:
            continue
        for member in closure_bfs(edges, synset, max_depth):
            for j in synset_to_idx.get(member, []):
                out[j] = 1
    return out


# ---------------------------------------------------------------------------
# pseudo-label pipeline
# ---------------------------------------------------------------------------

def pipeline_rederivation(edges, vocab_pairs, probs, y_cls, t,
                          image_mode="max", trust_confirmed=False, p_image=None):
    """Re-derive the whole per-image flow with scalar loops."""
    n = len(probs)
    c = len(vocab_pairs)
    y_hier = expand_bfs(edges, vocab_pairs, y_cls)
    mask = [1 if (y_hier[j] == 1 and y_cls[j] == 0) else 0 for j in range(c)]

    kept = [i for i in range(n) if max(probs[i]) >= t]
    labels, weights = [], []
    for i in kept:
        row = probs[i]
        best, best_p = 0, row[0]
        for j in range(1, c):
            if row[j] > best_p:
                best, best_p = j, row[j]
        labels.append([1 if (j == best or y_hier[j] == 1) else 0 for j in range(c)])
        wt = []
        for j in range(c):
            if mask[j] == 1:
                if trust_confirmed and j == best:
                    wt.append(1.0)
                else:
                    wt.append(row[j])
            else:
                wt.append(1.0)
        weights.append(wt)

    if p_image is None:
        if n == 0:
            p_image = [0.0] * c
        elif image_mode == "max":
            p_image = [max(probs[i][j] for i in range(n)) for j in range(c)]
        else:
            p_image = [sum(probs[i][j] for i in range(n)) / n for j in range(c)]
    image_weights = [p_image[j] if mask[j] == 1 else 1.0 for j in range(c)]
    return {
        "y_hier": y_hier,
        "mask": mask,
        "kept": kept,
        "labels": labels,
        "weights": weights,
        "image_label": y_hier,
        "image_weights": image_weights,
        "p_image": p_image,
    }


# ---------------------------------------------------------------------------
# losses and gradients
# ---------------------------------------------------------------------------

def bce_term(p, y, w):
    pc = min(max(float(p), EPS), 1.0 - EPS)
    return w * (-(y * math.log(pc) + (1.0 - y) * math.log(1.0 - pc)))


def sum_bce_terms(probs, labels, weights):
    total = 0.0
    for i in range(len(labels)):
        for j in range(len(labels[i])):
            total += bce_term(probs[i][j], labels[i][j], weights[i][j])
    return total


def sum_bce_vector(probs, labels, weights):
    return sum(bce_term(p, y, w) for p, y, w in zip(probs, labels, weights))


def central_difference(fn, x, h=1e-5):
    grad = np.zeros_like(x, dtype=float)
    for idx in np.ndindex(x.shape):
        xp = x.copy()
        xm = x.copy()
        xp[idx] += h
        xm[idx] -= h
        grad[idx] = (fn(xp) - fn(xm)) / (2.0 * h)
    return grad


# ---------------------------------------------------------------------------
# embedding bridge
# ---------------------------------------------------------------------------

def bridge_scan(test_vec, lemma_entries):
    """Exhaustive scan over (synset, lemma, vector) entries.

    Ties resolve to the lexicographically smallest (synset, lemma) pair.
    """
    best = None
    for synset, lemma, vec in lemma_entries:
        s = float(np.dot(test_vec, vec))
        key = (-s, synset, lemma)
        if best is None or key < best[0]:
            best = (key, synset, lemma, s)
    return best[1], best[2], best[3]
