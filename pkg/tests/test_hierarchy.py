import io

import numpy as np
import pytest
from sklearn.base import clone

import hierlabel as hl
from hierlabel import (
    CycleError,
    DanglingEdgeError,
    DimensionMismatchError,
    InvariantError,
    ParseError,
    UnknownSynsetError,
)
from oracles import closure_bfs, expand_bfs, random_dag, random_label_vector

CHAIN = """\
N a a
N b b
N c c
E a b
E b c
"""


def load(text):
    return hl.load_hierarchy(io.StringIO(text))


class TestLoadHierarchy:
    def test_minimal_chain(self):
        graph = load(CHAIN)
        assert graph.num_nodes == 3
        assert graph.num_edges == 2
        assert graph.parents["a"] == ("b",)
        assert graph.children["c"] == ("b",)

    def test_two_node_cycle_rejected(self):
        with pytest.raises(CycleError) as exc:
            load("N a a\nN b b\nE a b\nE b a\n")
        # one offending cycle is spelled out
        assert "->" in str(exc.value)

    def test_self_loop_rejected(self):
        with pytest.raises(CycleError):
            load("N a a\nE a a\n")

    def test_longer_cycle_rejected(self):
        with pytest.raises(CycleError):
            load("N a a\nN b b\nN c c\nE a b\nE b c\nE c a\n")

    def test_duplicate_node_declaration(self):
        with pytest.raises(ParseError):
            load("N a a\nN a other\n")

    def test_edge_before_declaration(self):
        with pytest.raises(DanglingEdgeError):
            load("N a a\nE a b\nN b b\n")

    def test_unknown_record_type(self):
        with pytest.raises(ParseError):
            load("X a b\n")

    def test_node_line_arity(self):
        with pytest.raises(ParseError):
            load("N a foo bar\n")
        with pytest.raises(ParseError):
            load("N a\n")

    def test_edge_line_arity(self):
        with pytest.raises(ParseError):
            load("N a a\nN b b\nE a\n")

    def test_comments_and_blank_lines(self):
        graph = load("# heading\n\nN a a\n  # indented comment\nN b b\nE a b\n")
        assert graph.num_nodes == 2

    def test_lemma_normalization(self):
        graph = load("N s Sea_Lion,HARBOR_SEAL,sea_lion\n")
        assert graph.lemmas["s"] == ("harbor seal", "sea lion")

    def test_empty_lemma_list(self):
        with pytest.raises(ParseError):
            load("N a ,\n")

    def test_duplicate_edges_collapse(self):
        graph = load("N a a\nN b b\nE a b\nE a b\n")
        assert graph.num_edges == 1

    def test_large_random_dag_counts_match_generator(self):
        rng = np.random.default_rng(7)
        names = [f"n{i:04d}" for i in range(1000)]
        upper = np.triu(rng.random((1000, 1000)) < 0.004, k=1)
        edges = [(names[j], names[i]) for i, j in np.argwhere(upper)]
        lines = [f"N {n} {n}" for n in names] + [f"E {c} {p}" for c, p in edges]
        graph = hl.load_hierarchy(lines)
        assert graph.num_nodes == 1000
        assert graph.num_edges == len(set(edges))

    def test_declaration_order_does_not_matter(self):
        g1 = load("N b b\nN a a\nE a b\n")
        g2 = load("N a a\nN b b\nE a b\n")
        assert g1.nodes == g2.nodes == ("a", "b")
        assert g1.parents == g2.parents


class TestClosure:
    def test_full_chain_from_middle(self):
        graph = load(CHAIN)
        assert hl.closure(graph, "b") == {"a", "b", "c"}

    def test_isolated_node(self):
        graph = load("N lone lone\n")
        assert hl.closure(graph, "lone") == {"lone"}

    def test_no_siblings(self, mammal_graph):
        assert hl.closure(mammal_graph, "seal.n.09") == {"seal.n.09", "aquatic_mammal.n.01"}

    def test_unknown_seed(self, mammal_graph):
        with pytest.raises(UnknownSynsetError):
            hl.closure(mammal_graph, "ghost.n.01")

    def test_max_depth_limits_hops(self):
        graph = load("N a a\nN b b\nN c c\nE a b\nE b c\n")
        assert hl.closure(graph, "a", max_depth=1) == {"a", "b"}
        assert hl.closure(graph, "a", max_depth=0) == {"a"}

    def test_matches_bfs_oracle_on_random_dags(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            lemmas, edges = random_dag(rng, max_nodes=60)
            graph = hl.make_graph(lemmas, edges)
            for seed in rng.choice(graph.nodes, size=min(5, graph.num_nodes), replace=False):
                assert hl.closure(graph, str(seed)) == closure_bfs(edges, str(seed))


class TestExpandLabels:
    def test_coarse_label_covers_the_family(self, mammal_graph, mammal_vocab):
        y = [1, 0, 0, 0, 0]  # aquatic_mammal only
        out = hl.expand_labels(mammal_graph, mammal_vocab, y)
        assert out.tolist() == [1, 1, 1, 1, 0]

    def test_all_zero_stays_all_zero(self, mammal_graph, mammal_vocab):
        out = hl.expand_labels(mammal_graph, mammal_vocab, [0, 0, 0, 0, 0])
        assert out.tolist() == [0, 0, 0, 0, 0]

    def test_unmapped_class_expands_only_itself(self, mammal_graph):
        vocab = hl.Vocabulary((("seal", "seal.n.09"), ("thing", None)))
        out = hl.expand_labels(mammal_graph, vocab, [0, 1])
        assert out.tolist() == [0, 1]

    def test_wrong_length_rejected(self, mammal_graph, mammal_vocab):
        with pytest.raises(DimensionMismatchError):
            hl.expand_labels(mammal_graph, mammal_vocab, [1, 0])

    def test_nonbinary_rejected(self, mammal_graph, mammal_vocab):
        with pytest.raises(InvariantError):
            hl.expand_labels(mammal_graph, mammal_vocab, [0.5, 0, 0, 0, 0])

    def test_unknown_vocab_synset_rejected(self, mammal_graph):
        vocab = hl.Vocabulary((("ghost", "ghost.n.01"),))
        with pytest.raises(UnknownSynsetError):
            hl.expand_labels(mammal_graph, vocab, [0])

    def test_matches_per_seed_union_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            lemmas, edges = random_dag(rng, max_nodes=50)
            graph = hl.make_graph(lemmas, edges)
            pairs = [(f"cls_{n}", n) for n in graph.nodes]
            if rng.random() < 0.5:
                pairs.append(("unmapped", None))
            vocab = hl.Vocabulary(tuple(pairs))
            for _ in range(5):
                y = random_label_vector(rng, vocab.size)
                out = hl.expand_labels(graph, vocab, y)
                assert out.tolist() == expand_bfs(edges, vocab.classes, y)

    def test_max_depth_matches_depth_capped_oracle(self):
        rng = np.random.default_rng(5)
        lemmas, edges = random_dag(rng, max_nodes=40)
        graph = hl.make_graph(lemmas, edges)
        pairs = tuple((f"c{n}", n) for n in graph.nodes)
        vocab = hl.Vocabulary(pairs)
        for depth in (0, 1, 2):
            y = random_label_vector(rng, vocab.size)
            out = hl.expand_labels(graph, vocab, y, max_depth=depth)
            assert out.tolist() == expand_bfs(edges, pairs, y, max_depth=depth)


class TestExpansionAlgebra:
    """Algebraic behavior of expansion on random instances."""

    def _random_setup(self, rng):
        lemmas, edges = random_dag(rng, max_nodes=40)
        graph = hl.make_graph(lemmas, edges)
        vocab = hl.Vocabulary(tuple((f"c{n}", n) for n in graph.nodes))
        return graph, vocab

    def test_monotone_and_union_compatible(self):
        rng = np.random.default_rng(37)
        for _ in range(25):
            graph, vocab = self._random_setup(rng)
            for _ in range(8):
                y1 = random_label_vector(rng, vocab.size)
                y2 = random_label_vector(rng, vocab.size)
                e1 = hl.expand_labels(graph, vocab, y1)
                assert np.all(e1 >= y1)
                e2 = hl.expand_labels(graph, vocab, y2)
                union = hl.expand_labels(graph, vocab, y1 | y2)
                assert np.array_equal(union, e1 | e2)

    def test_reexpansion_only_grows(self):
        # expansion is NOT idempotent: an ancestor switched on by the first
        # pass contributes its other descendants on a second pass
        rng = np.random.default_rng(41)
        for _ in range(25):
            graph, vocab = self._random_setup(rng)
            y = random_label_vector(rng, vocab.size)
            e1 = hl.expand_labels(graph, vocab, y)
            e2 = hl.expand_labels(graph, vocab, e1)
            assert np.all(e2 >= e1)

    def test_reexpansion_adds_siblings(self, mammal_graph, mammal_vocab):
        # seal -> {seal, aquatic_mammal}; the parent then pulls in the
        # other specific mammals on a second application
        once = hl.expand_labels(mammal_graph, mammal_vocab, [0, 1, 0, 0, 0])
        assert once.tolist() == [1, 1, 0, 0, 0]
        twice = hl.expand_labels(mammal_graph, mammal_vocab, once)
        assert twice.tolist() == [1, 1, 1, 1, 0]

    def test_identical_streams_identical_graphs_and_expansions(self):
        text = CHAIN + "N d d\nE d b\n"
        g1, g2 = load(text), load(text)
        assert g1.nodes == g2.nodes
        assert g1.parents == g2.parents
        assert g1.lemmas == g2.lemmas
        vocab = hl.Vocabulary(tuple((n, n) for n in g1.nodes))
        y = [0, 1, 0, 0]
        assert np.array_equal(
            hl.expand_labels(g1, vocab, y), hl.expand_labels(g2, vocab, y)
        )


class TestExpandedMask:
    def test_no_expansion_gives_zero_mask(self):
        y = [1, 0, 1]
        assert hl.expanded_mask(y, y).tolist() == [0, 0, 0]

    def test_single_expansion(self):
        assert hl.expanded_mask([1, 0], [1, 1]).tolist() == [0, 1]

    def test_xor_oracle_on_expansion_outputs(self, mammal_graph, mammal_vocab):
        rng = np.random.default_rng(3)
        for _ in range(50):
            y = random_label_vector(rng, mammal_vocab.size)
            y_hier = hl.expand_labels(mammal_graph, mammal_vocab, y)
            assert np.array_equal(hl.expanded_mask(y, y_hier), y_hier ^ y)

    def test_removed_label_rejected(self):
        with pytest.raises(InvariantError):
            hl.expanded_mask([1, 0], [0, 1])

    def test_length_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            hl.expanded_mask([1, 0], [1, 0, 0])


class TestVocabulary:
    def test_load_with_and_without_synsets(self):
        vocab = hl.load_vocabulary(io.StringIO("seal\tseal.n.09\nthing\n# comment\n"))
        assert vocab.size == 2
        assert vocab.classes[0] == ("seal", "seal.n.09")
        assert vocab.classes[1] == ("thing", None)

    def test_duplicate_names_rejected(self):
        with pytest.raises(ParseError):
            hl.load_vocabulary(io.StringIO("a\na\n"))

    def test_synsets_checked_against_graph(self, mammal_graph):
        with pytest.raises(UnknownSynsetError):
            hl.load_vocabulary(io.StringIO("x\tnope.n.01\n"), mammal_graph)

    def test_index_and_synset_lookup(self, mammal_vocab):
        assert mammal_vocab.index_of["seal"] == 1
        assert mammal_vocab.classes_for_synset["seal.n.09"] == (1,)

    def test_shared_synset_maps_to_all_classes(self, mammal_graph):
        vocab = hl.Vocabulary((("seal", "seal.n.09"), ("sea_dog", "seal.n.09")))
        assert vocab.classes_for_synset["seal.n.09"] == (0, 1)
        out = hl.expand_labels(mammal_graph, vocab, [1, 0])
        assert out.tolist() == [1, 1]


class TestLabelExpander:
    def test_matches_functional_expansion_rowwise(self, mammal_graph, mammal_vocab):
        expander = hl.LabelExpander(mammal_graph, mammal_vocab).fit()
        rng = np.random.default_rng(9)
        rows = np.stack([random_label_vector(rng, mammal_vocab.size) for _ in range(20)])
        got = expander.transform(rows)
        want = np.stack([hl.expand_labels(mammal_graph, mammal_vocab, r) for r in rows])
        assert np.array_equal(got, want)

    def test_transform_before_fit_raises(self, mammal_graph, mammal_vocab):
        with pytest.raises(InvariantError):
            hl.LabelExpander(mammal_graph, mammal_vocab).transform([[1, 0, 0, 0, 0]])

    def test_fit_transform_shortcut(self, mammal_graph, mammal_vocab):
        out = hl.LabelExpander(mammal_graph, mammal_vocab).fit_transform([[1, 0, 0, 0, 0]])
        assert out.tolist() == [[1, 1, 1, 1, 0]]

    def test_sklearn_params_and_clone(self, mammal_graph, mammal_vocab):
        expander = hl.LabelExpander(mammal_graph, mammal_vocab, max_depth=2)
        params = expander.get_params()
        assert params["max_depth"] == 2
        assert params["graph"] is mammal_graph
        fresh = clone(expander)
        assert fresh is not expander
        assert not hasattr(fresh, "expansion_table_")
        assert fresh.get_params()["vocab"].classes == mammal_vocab.classes
