"""Tests for the graph core: construction, union, isomorphism, keys."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gexpand import (
    Graph,
    GraphError,
    canonical_key,
    canonical_order,
    disjoint_union,
    empty_graph,
    is_isomorphic,
    rename_nodes,
    type_of,
)
from generators import random_graph
from oracles import brute_force_isomorphic

seeds = st.integers(0, 10**9)


def graph_from_seed(seed: int, max_nodes: int = 8) -> Graph:
    return random_graph(random.Random(seed), max_nodes)


def single(label: str, name: str = "v") -> Graph:
    return Graph([name], [], {name: label}, (name,))


class TestConstruction:
    def test_edge_endpoint_must_be_node(self):
        with pytest.raises(GraphError):
            Graph(["a"], [("a", "e", "b")], {"a": "x"})

    def test_every_node_needs_a_label(self):
        with pytest.raises(GraphError):
            Graph(["a", "b"], [], {"a": "x"})

    def test_labels_for_unknown_nodes_rejected(self):
        with pytest.raises(GraphError):
            Graph(["a"], [], {"a": "x", "b": "y"})

    def test_ports_must_be_nodes_without_repetition(self):
        with pytest.raises(GraphError):
            Graph(["a"], [], {"a": "x"}, ("a", "a"))
        with pytest.raises(GraphError):
            Graph(["a"], [], {"a": "x"}, ("b",))

    def test_parallel_edges_with_same_label_coalesce(self):
        g = Graph(
            ["a", "b"],
            [("a", "e", "b"), ("a", "e", "b")],
            {"a": "x", "b": "y"},
        )
        assert len(g.edges) == 1

    def test_graphs_are_immutable(self):
        g = single("x")
        with pytest.raises(AttributeError):
            g.ports = ()


class TestEmptyGraph:
    def test_empty_graph_has_nothing(self):
        g = empty_graph()
        assert not g.nodes and not g.edges and not g.ports

    def test_type_of_empty_is_zero(self):
        assert type_of(empty_graph()) == 0

    def test_union_of_empties_is_empty(self):
        assert is_isomorphic(
            disjoint_union(empty_graph(), empty_graph()), empty_graph()
        )


class TestTypeOf:
    def test_single_port_node(self):
        assert type_of(single("she")) == 1

    def test_union_of_two_one_port_graphs_has_type_two(self):
        assert type_of(disjoint_union(single("she"), single("they"))) == 2


class TestDisjointUnion:
    def test_she_they_union(self):
        g = disjoint_union(single("she"), single("they"))
        assert len(g.nodes) == 2 and not g.edges
        assert [g.labels[p] for p in g.ports] == ["she", "they"]

    def test_empty_left_operand_is_identity(self):
        h = graph_from_seed(7)
        u = disjoint_union(empty_graph(), h)
        assert is_isomorphic(u, h)
        assert [u.labels[p] for p in u.ports] == [h.labels[p] for p in h.ports]

    def test_node_and_port_counts_add(self):
        g = Graph(
            ["a", "b", "c"],
            [("a", "e", "b")],
            {"a": "x", "b": "y", "c": "z"},
            ("a", "b"),
        )
        h = Graph(["a", "b"], [], {"a": "q", "b": "r"}, ("b",))
        u = disjoint_union(g, h)
        assert len(u.nodes) == 5
        assert u.type == 3
        assert [u.labels[p] for p in u.ports] == ["x", "y", "r"]

    def test_name_collisions_are_renamed(self):
        g = single("x", "n")
        h = single("y", "n")
        u = disjoint_union(g, h)
        assert len(u.nodes) == 2
        assert sorted(u.labels.values()) == ["x", "y"]

    @given(seeds, seeds)
    def test_type_and_size_additivity(self, s1, s2):
        g, h = graph_from_seed(s1), graph_from_seed(s2)
        u = disjoint_union(g, h)
        assert u.type == g.type + h.type
        assert len(u.nodes) == len(g.nodes) + len(h.nodes)
        assert len(u.edges) == len(g.edges) + len(h.edges)

    @given(seeds, seeds, seeds)
    @settings(max_examples=30, deadline=None)
    def test_associative_up_to_isomorphism(self, s1, s2, s3):
        g, h, k = (graph_from_seed(s, 5) for s in (s1, s2, s3))
        left = disjoint_union(disjoint_union(g, h), k)
        right = disjoint_union(g, disjoint_union(h, k))
        assert is_isomorphic(left, right)

    def test_not_commutative_with_distinguishable_ports(self):
        g, h = single("x"), single("y")
        assert not is_isomorphic(disjoint_union(g, h), disjoint_union(h, g))


class TestIsomorphism:
    def test_renamed_copy_is_isomorphic(self):
        g = graph_from_seed(11)
        mapping = {v: f"r_{v}" for v in g.nodes}
        assert is_isomorphic(g, rename_nodes(g, mapping))

    def test_port_swap_breaks_isomorphism(self):
        g = Graph(
            ["a", "b"], [("a", "e", "b")], {"a": "x", "b": "y"}, ("a", "b")
        )
        h = Graph(
            ["a", "b"], [("a", "e", "b")], {"a": "x", "b": "y"}, ("b", "a")
        )
        assert not is_isomorphic(g, h)

    def test_extra_isolated_node_breaks_isomorphism(self):
        g = single("x")
        h = Graph(["v", "w"], [], {"v": "x", "w": "x"}, ("v",))
        assert not is_isomorphic(g, h)

    @given(seeds, seeds)
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_brute_force(self, s1, s2):
        g, h = graph_from_seed(s1, 5), graph_from_seed(s2, 5)
        assert is_isomorphic(g, h) == brute_force_isomorphic(g, h)

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_renamed_copy_agrees_with_brute_force(self, s):
        g = graph_from_seed(s, 6)
        h = rename_nodes(g, {v: f"q{i}" for i, v in enumerate(sorted(g.nodes))})
        assert is_isomorphic(g, h)
        assert brute_force_isomorphic(g, h)

    @given(seeds, seeds, seeds)
    @settings(max_examples=40, deadline=None)
    def test_equivalence_relation(self, s1, s2, s3):
        g, h, k = (graph_from_seed(s, 5) for s in (s1, s2, s3))
        assert is_isomorphic(g, g)
        assert is_isomorphic(g, h) == is_isomorphic(h, g)
        if is_isomorphic(g, h) and is_isomorphic(h, k):
            assert is_isomorphic(g, k)


class TestCanonicalKey:
    def test_equal_for_renamed_copies(self):
        g = graph_from_seed(3)
        h = rename_nodes(g, {v: f"z{i}" for i, v in enumerate(sorted(g.nodes))})
        assert canonical_key(g) == canonical_key(h)

    def test_differs_with_extra_node(self):
        g = single("x")
        h = Graph(["v", "w"], [], {"v": "x", "w": "x"}, ("v",))
        assert canonical_key(g) != canonical_key(h)

    @given(seeds, seeds)
    @settings(max_examples=100, deadline=None)
    def test_key_equality_iff_isomorphic(self, s1, s2):
        g, h = graph_from_seed(s1, 5), graph_from_seed(s2, 5)
        assert (canonical_key(g) == canonical_key(h)) == brute_force_isomorphic(g, h)

    @given(seeds)
    def test_canonical_order_starts_with_ports(self, s):
        g = graph_from_seed(s)
        order = canonical_order(g)
        assert order[: g.type] == g.ports
        assert sorted(order) == sorted(g.nodes)


class TestRenameNodes:
    def test_non_bijective_renaming_rejected(self):
        g = Graph(["a", "b"], [], {"a": "x", "b": "y"})
        with pytest.raises(GraphError):
            rename_nodes(g, {"a": "c", "b": "c"})
