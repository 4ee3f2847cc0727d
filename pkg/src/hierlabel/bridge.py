"""Embedding-based bridging from an arbitrary test vocabulary to hierarchy synsets.

Each test class name is matched to the synset owning the most cosine-similar
lemma, and a prompt string is emitted from that lemma. Embeddings come from a
precomputed table (exported offline from any text encoder) or from a
deterministic mock generator, so the whole path is hermetic and reproducible.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import (
    BadTemplateError,
    DimensionMismatchError,
    InvalidConfigError,
    MissingEmbeddingError,
    ParseError,
    ZeroVectorError,
)
from .hierarchy import HierarchyGraph, normalize_lemma

DEFAULT_TEMPLATE = "a photo of a {}"

_NORM_ATOL = 1e-6
_ZERO_NORM = 1e-12

Source = Union[str, Path, IO[str], Iterable[str]]


@dataclass(eq=False)
class EmbeddingTable:
    """Unit-norm vectors keyed by normalized surface strings; fixed dimension."""

    vectors: dict[str, np.ndarray]
    dim: int

    def __contains__(self, key: object) -> bool:
        return key in self.vectors

    def __getitem__(self, key: str) -> np.ndarray:
        return self.vectors[key]

    def __len__(self) -> int:
        return len(self.vectors)


def _unit(vec: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(vec))
    if norm < _ZERO_NORM:
        raise ZeroVectorError(f"{what} has zero norm")
    return vec / norm


def load_embeddings(source: Source) -> EmbeddingTable:
    """Parse ``<surface_string><TAB><v1> <v2> ... <vD>`` lines into a table.

    Keys are normalized like lemmas (lowercase, underscores to spaces) and
    vectors are re-normalized to unit length at load.
    """
    if isinstance(source, (str, Path)):
        try:
            lines = Path(source).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from None
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = [line.rstrip("\n") for line in source]

    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        name_field, tab, value_field = raw.partition("\t")
        if not tab:
            raise ParseError(f"line {lineno}: expected '<string><TAB><values>', got {raw!r}")
        key = normalize_lemma(name_field)
        if not key:
            raise ParseError(f"line {lineno}: empty surface string")
        if key in vectors:
            raise ParseError(f"line {lineno}: duplicate entry for {key!r}")
        try:
            vec = np.array([float(p) for p in value_field.split()], dtype=float)
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric vector component") from None
        if dim is None:
            dim = vec.shape[0]
            if dim < 2:
                raise DimensionMismatchError(f"line {lineno}: embedding dimension must be >= 2, got {dim}")
        elif vec.shape[0] != dim:
            raise DimensionMismatchError(
                f"line {lineno}: dimension {vec.shape[0]} differs from table dimension {dim}"
            )
        vectors[key] = _unit(vec, f"line {lineno}: vector for {key!r}")
    if dim is None:
        raise ParseError("embedding input declares no entries")
    return EmbeddingTable(vectors=vectors, dim=dim)


def mock_embedding(name: str, dim: int, seed: int) -> np.ndarray:
    """Deterministic unit vector for a surface string.

    The string is hashed with SHA-256 (stable across processes, unlike
    ``hash()``) and mixed with the seed into the RNG, so identical strings
    always map to identical vectors while distinct strings collide with
    negligible probability.
    """
    if dim < 2:
        raise DimensionMismatchError(f"embedding dimension must be >= 2, got {dim}")
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    words = [int.from_bytes(digest[i : i + 8], "big") for i in range(0, 32, 8)]
    rng = np.random.default_rng([seed % (2**64), *words])
    return _unit(rng.standard_normal(dim), f"mock embedding for {name!r}")


def cosine_similarity(a, b) -> float:
    """Dot product of two unit vectors (symmetric, in [-1, 1] up to rounding)."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    if va.shape != vb.shape:
        raise DimensionMismatchError(f"vector shapes differ: {va.shape} vs {vb.shape}")
    return float(np.dot(va, vb))


def emit_prompt(lemma: str, template: str = DEFAULT_TEMPLATE) -> str:
    """Substitute the lemma into a template containing exactly one ``{}``."""
    if template.count("{}") != 1:
        raise BadTemplateError(f"template must contain exactly one '{{}}' placeholder: {template!r}")
    return template.replace("{}", lemma)


@dataclass(frozen=True)
class BridgeMatch:
    """One test class resolved to its best synset, lemma, and prompt."""

    test_name: str
    synset: str
    lemma: str
    similarity: float
    prompt: str


def _lemma_index(graph: HierarchyGraph) -> tuple[list[str], list[str]]:
    """Flatten the graph's lemmas in (synset, lemma) sorted order.

    The sorted scan order realizes the tie-break rule for free: on equal
    similarity the earliest candidate wins, which is the lexicographically
    smallest synset id (then lemma).
    """
    lemmas: list[str] = []
    synsets: list[str] = []
    for synset in graph.nodes:
        for lemma in graph.lemmas[synset]:
            lemmas.append(lemma)
            synsets.append(synset)
    return lemmas, synsets


def _embed(key: str, table: EmbeddingTable | None, dim: int, mock_seed: int | None) -> np.ndarray:
    if table is not None and key in table:
        return table[key]
    if mock_seed is not None:
        return mock_embedding(key, dim, mock_seed)
    raise MissingEmbeddingError(f"no embedding for {key!r} and mock fallback is disabled")


class VocabularyBridge(BaseEstimator, TransformerMixin):
    """Transformer from lists of class names to :class:`BridgeMatch` records.

    fit() freezes the lemma embedding matrix so repeated transforms over
    large test vocabularies do not re-embed the hierarchy. A synset's score
    is the maximum similarity over its lemmas; test names and lemmas are
    compared after lemma normalization, so a test name equal to a lemma
    matches it with similarity 1. On ties the lexicographically smallest
    synset id (then lemma) wins.

    Parameters
    ----------
    table : EmbeddingTable or None
        Precomputed embeddings; None for all-mock operation, in which case
        ``mock_dim`` sets the vector dimension.
    mock_seed : int or None
        Enables the deterministic mock fallback for missing strings.
    """

    def __init__(
        self,
        graph: HierarchyGraph,
        table: EmbeddingTable | None = None,
        template: str = DEFAULT_TEMPLATE,
        mock_seed: int | None = None,
        mock_dim: int | None = None,
    ):
        self.graph = graph
        self.table = table
        self.template = template
        self.mock_seed = mock_seed
        self.mock_dim = mock_dim

    def fit(self, X=None, y=None) -> "VocabularyBridge":
        if self.table is None and self.mock_seed is None:
            raise InvalidConfigError("either an embedding table or a mock seed is required")
        dim = self.table.dim if self.table is not None else self.mock_dim
        if dim is None:
            raise InvalidConfigError("mock-only bridging requires an explicit embedding dimension")
        if dim < 2:
            raise DimensionMismatchError(f"embedding dimension must be >= 2, got {dim}")
        lemmas, synsets = _lemma_index(self.graph)
        if not lemmas:
            raise InvalidConfigError("hierarchy graph has no lemmas to match against")
        self.dim_ = dim
        self.lemmas_ = lemmas
        self.synsets_ = synsets
        self.lemma_matrix_ = np.stack([_embed(l, self.table, dim, self.mock_seed) for l in lemmas])
        return self

    def transform(self, test_names: Sequence[str]) -> list[BridgeMatch]:
        if not hasattr(self, "lemma_matrix_"):
            raise InvalidConfigError("VocabularyBridge must be fitted before transform()")
        if self.template.count("{}") != 1:
            raise BadTemplateError(
                f"template must contain exactly one '{{}}' placeholder: {self.template!r}"
            )
        results: list[BridgeMatch] = []
        for raw_name in test_names:
            key = normalize_lemma(raw_name)
            if not key:
                raise ParseError(f"empty test class name: {raw_name!r}")
            vec = _embed(key, self.table, self.dim_, self.mock_seed)
            sims = self.lemma_matrix_ @ vec
            best = int(np.argmax(sims))  # first maximum == smallest (synset, lemma)
            results.append(
                BridgeMatch(
                    test_name=raw_name,
                    synset=self.synsets_[best],
                    lemma=self.lemmas_[best],
                    similarity=float(sims[best]),
                    prompt=emit_prompt(self.lemmas_[best], self.template),
                )
            )
        return results


def bridge_vocabulary(
    test_names: Sequence[str],
    graph: HierarchyGraph,
    table: EmbeddingTable | None = None,
    *,
    template: str = DEFAULT_TEMPLATE,
    mock_seed: int | None = None,
    mock_dim: int | None = None,
) -> list[BridgeMatch]:
    """One-shot convenience wrapper around :class:`VocabularyBridge`."""
    bridge = VocabularyBridge(
        graph, table=table, template=template, mock_seed=mock_seed, mock_dim=mock_dim
    )
    return bridge.fit().transform(test_names)
