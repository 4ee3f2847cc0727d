"""Hypernym/hyponym graph parsing, validation, and closure-based label expansion.

The hierarchy is a directed acyclic graph whose edges point child -> parent
(more specific -> more general). Each node is a synset id carrying one or
more lemma strings. Expanding a binary label vector sets the bit of every
vocabulary class whose synset is an ancestor or a descendant of any class
that is already labeled.

File formats
------------
Hierarchy file (UTF-8, line oriented)::

    # comment
    N <synset_id> <lemma1>,<lemma2>,...
    E <child_id> <parent_id>

Nodes must be declared before they are used in edges. Lemmas are
comma-separated in a single whitespace-free token; use underscores for
multi-word lemmas (they are normalized to spaces at load time).

Vocabulary file: one class per line, ``<class_name>[<TAB><synset_id>]``.
Classes without a synset take no part in expansion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import (
    CycleError,
    DanglingEdgeError,
    DimensionMismatchError,
    InvariantError,
    ParseError,
    UnknownSynsetError,
)
from .validation import check_binary_matrix, check_binary_vector

SynsetId = str

Source = Union[str, Path, IO[str], Iterable[str]]


def normalize_lemma(text: str) -> str:
    """Lowercase, map underscores to spaces, collapse runs of whitespace."""
    return " ".join(text.strip().lower().replace("_", " ").split())


def _read_lines(source: Source) -> list[str]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None
        return text.splitlines()
    if hasattr(source, "read"):
        return source.read().splitlines()
    return [line.rstrip("\n") for line in source]


@dataclass(frozen=True, eq=False)
class HierarchyGraph:
    """Immutable hypernym graph. Build through :func:`make_graph` or :func:`load_hierarchy`.

    ``nodes`` is sorted lexicographically and all adjacency tuples are sorted,
    so identical inputs always produce an identical structure.
    """

    nodes: tuple[SynsetId, ...]
    lemmas: Mapping[SynsetId, tuple[str, ...]]
    parents: Mapping[SynsetId, tuple[SynsetId, ...]]
    children: Mapping[SynsetId, tuple[SynsetId, ...]]

    def __contains__(self, synset: object) -> bool:
        return synset in self.lemmas

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(p) for p in self.parents.values())

    def __repr__(self) -> str:
        return f"HierarchyGraph(nodes={self.num_nodes}, edges={self.num_edges})"


def _find_cycle(nodes: Sequence[str], parents: Mapping[str, list[str]]) -> list[str] | None:
    """Return one directed cycle as a node list (first == last), or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in nodes}
    for start in nodes:
        if color[start] != WHITE:
            continue
        path: list[str] = []
        stack: list[tuple[str, int]] = [(start, 0)]
        while stack:
            node, idx = stack[-1]
            if idx == 0:
                color[node] = GRAY
                path.append(node)
            succ = parents[node]
            if idx < len(succ):
                stack[-1] = (node, idx + 1)
                nxt = succ[idx]
                if color[nxt] == GRAY:
                    return path[path.index(nxt):] + [nxt]
                if color[nxt] == WHITE:
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


def make_graph(
    lemmas_by_id: Mapping[str, Sequence[str]],
    edges: Iterable[tuple[str, str]],
) -> HierarchyGraph:
    """Validate and assemble a :class:`HierarchyGraph`.

    Args:
        lemmas_by_id: synset id -> lemma strings (normalized here).
        edges: (child, parent) pairs; duplicates are dropped.

    Raises:
        ParseError: bad synset id or empty lemma list.
        DanglingEdgeError: an edge endpoint is not a declared node.
        CycleError: the edge set contains a directed cycle.
    """
    lemma_map: dict[str, tuple[str, ...]] = {}
    for synset, raw_lemmas in lemmas_by_id.items():
        if not synset or any(ch.isspace() for ch in synset):
            raise ParseError(f"synset id must be a non-empty whitespace-free token, got {synset!r}")
        cleaned = sorted({normalize_lemma(l) for l in raw_lemmas if normalize_lemma(l)})
        if not cleaned:
            raise ParseError(f"synset {synset!r} declares no usable lemma")
        lemma_map[synset] = tuple(cleaned)

    parent_sets: dict[str, set[str]] = {n: set() for n in lemma_map}
    child_sets: dict[str, set[str]] = {n: set() for n in lemma_map}
    for child, parent in edges:
        if child not in lemma_map:
            raise DanglingEdgeError(f"edge references undeclared child synset {child!r}")
        if parent not in lemma_map:
            raise DanglingEdgeError(f"edge references undeclared parent synset {parent!r}")
        parent_sets[child].add(parent)
        child_sets[parent].add(child)

    nodes = tuple(sorted(lemma_map))
    parents = {n: sorted(parent_sets[n]) for n in nodes}
    cycle = _find_cycle(nodes, parents)
    if cycle is not None:
        raise CycleError("hierarchy contains a cycle: " + " -> ".join(cycle))

    return HierarchyGraph(
        nodes=nodes,
        lemmas=lemma_map,
        parents={n: tuple(parents[n]) for n in nodes},
        children={n: tuple(sorted(child_sets[n])) for n in nodes},
    )


def load_hierarchy(source: Source) -> HierarchyGraph:
    """Parse the line-oriented hierarchy format into a validated graph."""
    lemmas_by_id: dict[str, list[str]] = {}
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(_read_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "N":
            if len(parts) != 3:
                raise ParseError(
                    f"line {lineno}: node lines are 'N <synset_id> <lemma1>,<lemma2>,...' "
                    f"(multi-word lemmas use underscores), got {raw!r}"
                )
            synset, lemma_field = parts[1], parts[2]
            if synset in lemmas_by_id:
                raise ParseError(f"line {lineno}: duplicate node declaration {synset!r}")
            lemmas = [l for l in lemma_field.split(",") if l]
            if not lemmas:
                raise ParseError(f"line {lineno}: node {synset!r} declares no lemma")
            lemmas_by_id[synset] = lemmas
        elif tag == "E":
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: edge lines are 'E <child> <parent>', got {raw!r}")
            child, parent = parts[1], parts[2]
            if child not in lemmas_by_id:
                raise DanglingEdgeError(f"line {lineno}: edge uses undeclared synset {child!r}")
            if parent not in lemmas_by_id:
                raise DanglingEdgeError(f"line {lineno}: edge uses undeclared synset {parent!r}")
            edges.append((child, parent))
        else:
            raise ParseError(f"line {lineno}: unknown record type {tag!r}")
    return make_graph(lemmas_by_id, edges)


@dataclass(frozen=True, eq=False)
class Vocabulary:
    """Ordered class list; index in ``classes`` is the class's label position."""

    classes: tuple[tuple[str, SynsetId | None], ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple((str(n), s) for n, s in self.classes))
        names = [n for n, _ in self.classes]
        if len(set(names)) != len(names):
            raise ParseError("vocabulary class names must be unique")
        for name, synset in self.classes:
            if not name:
                raise ParseError("vocabulary class names must be non-empty")
            if synset is not None and (not synset or any(ch.isspace() for ch in synset)):
                raise ParseError(f"synset id must be whitespace-free, got {synset!r}")

    @property
    def size(self) -> int:
        return len(self.classes)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.classes)

    @cached_property
    def synsets(self) -> tuple[SynsetId | None, ...]:
        return tuple(s for _, s in self.classes)

    @cached_property
    def index_of(self) -> Mapping[str, int]:
        return {n: i for i, (n, _) in enumerate(self.classes)}

    @cached_property
    def classes_for_synset(self) -> Mapping[SynsetId, tuple[int, ...]]:
        """Synset id -> class indices mapped to it (usually a single index)."""
        by_synset: dict[str, list[int]] = {}
        for i, (_, synset) in enumerate(self.classes):
            if synset is not None:
                by_synset.setdefault(synset, []).append(i)
        return {s: tuple(v) for s, v in by_synset.items()}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Vocabulary(C={self.size})"


def load_vocabulary(source: Source, graph: HierarchyGraph | None = None) -> Vocabulary:
    """Parse ``<class_name>[<TAB><synset_id>]`` lines; optionally check synsets against a graph."""
    pairs: list[tuple[str, str | None]] = []
    for lineno, raw in enumerate(_read_lines(source), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        name, _, synset_field = line.partition("\t")
        name = name.strip()
        synset = synset_field.strip() or None
        if not name:
            raise ParseError(f"line {lineno}: empty class name")
        pairs.append((name, synset))
    vocab = Vocabulary(tuple(pairs))
    if graph is not None:
        for name, synset in vocab.classes:
            if synset is not None and synset not in graph:
                raise UnknownSynsetError(f"class {name!r} maps to unknown synset {synset!r}")
    return vocab


def _reach(adjacent: Mapping[str, tuple[str, ...]], seeds: Iterable[str], max_depth: int | None) -> set[str]:
    """Multi-source BFS; returns every node reachable from the seeds (seeds excluded)."""
    seen: set[str] = set(seeds)
    frontier = deque((s, 0) for s in seen)
    out: set[str] = set()
    while frontier:
        node, depth = frontier.popleft()
        if max_depth is not None and depth >= max_depth:
            continue
        for nxt in adjacent[node]:
            if nxt not in seen:
                seen.add(nxt)
                out.add(nxt)
                frontier.append((nxt, depth + 1))
    return out


def closure(graph: HierarchyGraph, seed: SynsetId, max_depth: int | None = None) -> set[SynsetId]:
    """All ancestors and descendants of ``seed``, plus the seed itself.

    Siblings are not included: the walk only ever moves strictly up
    (hypernyms) or strictly down (hyponyms) from the seed.
    """
    if seed not in graph:
        raise UnknownSynsetError(f"unknown synset {seed!r}")
    result = {seed}
    result |= _reach(graph.parents, [seed], max_depth)
    result |= _reach(graph.children, [seed], max_depth)
    return result


def _closure_of_set(graph: HierarchyGraph, seeds: list[str], max_depth: int | None) -> set[str]:
    # Union of per-seed closures == two multi-source walks from all seeds.
    if not seeds:
        return set()
    result = set(seeds)
    result |= _reach(graph.parents, seeds, max_depth)
    result |= _reach(graph.children, seeds, max_depth)
    return result


def expand_labels(
    graph: HierarchyGraph,
    vocab: Vocabulary,
    y_cls,
    max_depth: int | None = None,
) -> np.ndarray:
    """Expand a binary label vector through the hierarchy closure.

    Output bit c is 1 iff it was already 1, or class c's synset lies in the
    closure of any labeled class's synset. Classes without a synset mapping
    are never switched on by expansion (and expand nothing themselves beyond
    their own bit).
    """
    y = check_binary_vector(y_cls, length=vocab.size, name="y_cls")
    for name, synset in vocab.classes:
        if synset is not None and synset not in graph:
            raise UnknownSynsetError(f"class {name!r} maps to unknown synset {synset!r}")
    seeds = [s for i, s in enumerate(vocab.synsets) if y[i] and s is not None]
    expanded = _closure_of_set(graph, seeds, max_depth)
    out = y.copy()
    for synset in expanded:
        for idx in vocab.classes_for_synset.get(synset, ()):
            out[idx] = 1
    return out


def expanded_mask(y_cls, y_hier) -> np.ndarray:
    """Bit c = 1 iff class c was switched on by expansion (absent from y_cls)."""
    a = check_binary_vector(y_cls, name="y_cls")
    b = check_binary_vector(y_hier, name="y_hier")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"y_cls has shape {a.shape} but y_hier has shape {b.shape}")
    if np.any(b < a):
        raise InvariantError("expansion never removes labels: y_hier must be bitwise >= y_cls")
    return ((b == 1) & (a == 0)).astype(int)


class LabelExpander(BaseEstimator, TransformerMixin):
    """Transformer that expands rows of binary label matrices through the hierarchy.

    fit() precomputes a C x C table whose row c is the expansion of the
    one-hot vector for class c; transform() is then a single boolean matrix
    product, so large label matrices expand cheaply.

    Parameters
    ----------
    graph : HierarchyGraph
    vocab : Vocabulary
    max_depth : int or None
        Cap on the number of hierarchy hops per direction (None = unlimited).
    """

    def __init__(self, graph: HierarchyGraph, vocab: Vocabulary, max_depth: int | None = None):
        self.graph = graph
        self.vocab = vocab
        self.max_depth = max_depth

    def fit(self, X=None, y=None) -> "LabelExpander":
        c = self.vocab.size
        table = np.zeros((c, c), dtype=int)
        for i in range(c):
            one_hot = np.zeros(c, dtype=int)
            one_hot[i] = 1
            table[i] = expand_labels(self.graph, self.vocab, one_hot, self.max_depth)
        self.expansion_table_ = table
        return self

    def transform(self, Y) -> np.ndarray:
        if not hasattr(self, "expansion_table_"):
            raise InvariantError("LabelExpander must be fitted before transform()")
        mat = check_binary_matrix(Y, cols=self.vocab.size, name="Y")
        return (mat @ self.expansion_table_ > 0).astype(int)
