import io
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kcgds import (
    InvalidVertexSetError,
    ParameterError,
    ResourceLimitError,
    UndefinedMetricError,
    build_k_clique_graph,
    build_triangle_graph,
    complete_graph,
    d_value,
    exact_oracle,
    greedy_tgds,
    list_triangles,
    load_edge_list,
    project,
    q_value,
    triangle_graph_density,
)
from kcgds.graph import Graph

from oracles import (
    FIG1_LABELS,
    brute_cliques,
    explicit_clique_graph,
    explicit_label_degree,
    f_oracle,
    fig1_graph,
    fig3_graph,
    gnp,
    q_oracle,
)

graphs = st.builds(
    lambda n, p, seed: gnp(n, p, np.random.default_rng(seed)),
    st.integers(0, 14), st.sampled_from([0.3, 0.5, 0.7]), st.integers(0, 2**32 - 1),
)


def labeled_edges(cg):
    """Explicit edges as (clique, clique, label tuple) in base ids."""
    return {(tuple(cg.cliques[u]), tuple(cg.cliques[v]), tuple(cg.label_keys[lab]))
            for u, v, lab in cg.explicit_edges().tolist()}


def oracle_edges(cliques, k):
    return {(cliques[i], cliques[j], shared) for i, j, shared in explicit_clique_graph(cliques, k)}


# -- construction -----------------------------------------------------------------

def test_fig1_triangle_graph():
    cg = build_triangle_graph(fig1_graph())
    assert cg.n == 4
    edges = cg.explicit_edges()
    assert len(edges) == 2
    assert sorted(tuple(cg.label_keys[lab]) for lab in edges[:, 2]) == [FIG1_LABELS[3], FIG1_LABELS[4]]
    touched = set(edges[:, :2].ravel().tolist())
    isolated = [v for v in range(cg.n) if v not in touched]
    assert [tuple(cg.cliques[v]) for v in isolated] == [(4, 5, 6)]


def test_single_triangle():
    cg = build_triangle_graph(complete_graph(3))
    assert (cg.n, cg.edge_count(), len(cg.explicit_edges())) == (1, 0, 0)


def test_k4_triangle_graph():
    cg = build_triangle_graph(complete_graph(4))
    e = cg.explicit_edges()
    assert cg.n == 4 and len(e) == 6 == cg.edge_count()
    for v in range(4):
        mine = e[(e[:, 0] == v) | (e[:, 1] == v)]
        assert len(mine) == 3 and len(set(mine[:, 2].tolist())) == 3


def test_labels_are_the_k_subcliques():
    cg = build_k_clique_graph(complete_graph(5), 4)
    for v in range(cg.n):
        clique = set(cg.cliques[v].tolist())
        keys = [tuple(cg.label_keys[lab]) for lab in cg.labels[v]]
        assert len(keys) == 4 == len(set(keys))
        assert all(set(key) < clique for key in keys)
        assert keys == sorted(keys)


def test_k5_four_clique_graph():
    cg = build_k_clique_graph(complete_graph(5), 4)
    assert (cg.n, len(cg.explicit_edges())) == (5, 10)


def test_two_k4_sharing_a_triangle():
    # {0,1,2,3} and {0,1,2,4}; 3 and 4 are not adjacent
    g = load_edge_list(b"0 1\n0 2\n1 2\n0 3\n1 3\n2 3\n0 4\n1 4\n2 4\n")
    cg = build_k_clique_graph(g, 4)
    e = cg.explicit_edges()
    assert cg.n == 2 and len(e) == 1
    assert tuple(cg.label_keys[e[0, 2]]) == (0, 1, 2)


def test_four_clique_graph_against_pairwise_oracle():
    g = gnp(25, 0.4, np.random.default_rng(11))
    cg = build_k_clique_graph(g, 4)
    cliques = brute_cliques(g, 4)
    assert [tuple(c) for c in cg.cliques.tolist()] == cliques
    assert labeled_edges(cg) == oracle_edges(cliques, 4)


@given(graphs, st.integers(3, 4))
def test_explicit_edges_property(g, k):
    cg = build_k_clique_graph(g, k)
    cliques = brute_cliques(g, k)
    assert cg.n == len(cliques)
    assert labeled_edges(cg) == oracle_edges(cliques, k)
    assert cg.edge_count() == len(cg.explicit_edges())


@given(graphs)
def test_vertex_count_is_triangle_count(g):
    assert build_triangle_graph(g).n == len(list_triangles(g))


@given(graphs)
def test_k3_equals_triangle_graph(g):
    a, b = build_k_clique_graph(g, 3), build_triangle_graph(g)
    assert np.array_equal(a.cliques, b.cliques)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.label_keys, b.label_keys)


def test_k_below_three():
    with pytest.raises(ParameterError):
        build_k_clique_graph(complete_graph(4), 2)


def test_cap_propagates():
    with pytest.raises(ResourceLimitError):
        build_k_clique_graph(complete_graph(9), 4, cap=5)


def test_triangle_free_gives_empty_graph():
    cg = build_triangle_graph(load_edge_list(b"0 1\n1 2\n2 3\n3 0\n"))
    assert cg.n == 0 and cg.edge_count() == 0


# -- implicit form, q and f --------------------------------------------------------

@given(graphs, st.integers(3, 4), st.data())
def test_implicit_matches_explicit_label_degrees(g, k, data):
    cg = build_k_clique_graph(g, k)
    if cg.n == 0:
        return
    s = data.draw(st.sets(st.integers(0, cg.n - 1)))
    edges = [tuple(e) for e in cg.explicit_edges().tolist()]
    live = cg.live_counts(s)
    for v in s:
        for lab in cg.labels[v].tolist():
            d = cg.label_degree(v, lab, s)
            assert d == explicit_label_degree(edges, v, lab, s) == live[lab] - 1
    cliques = [tuple(c) for c in cg.cliques.tolist()]
    for v in s:
        assert q_value(cg, v, s) == q_oracle(cliques, s, v)
    if s:
        assert triangle_graph_density(cg, s) == f_oracle(cliques, s)


def test_label_degree_outside_set_is_zero():
    cg = build_triangle_graph(complete_graph(4))
    assert cg.label_degree(0, cg.labels[0, 0], {1, 2}) == 0
    foreign = next(lab for lab in range(cg.n_labels) if lab not in cg.labels[0])
    assert cg.label_degree(0, foreign) == 0


def test_q_k4():
    cg = build_triangle_graph(complete_graph(4))
    assert [q_value(cg, v, range(4)) for v in range(4)] == [1, 1, 1, 1]


def test_q_fig1():
    g = fig1_graph()
    cg = build_triangle_graph(g)
    # the triangle whose edges carry labels 1, 2 and 3
    v = [tuple(c) for c in cg.cliques.tolist()].index((0, 1, 2))
    assert q_value(cg, v, range(cg.n)) == 0
    lab = {tuple(cg.label_keys[x]): x for x in cg.labels[v]}
    assert cg.label_degree(v, lab[FIG1_LABELS[1]]) == 0
    assert cg.label_degree(v, lab[FIG1_LABELS[2]]) == 0
    assert cg.label_degree(v, lab[FIG1_LABELS[3]]) == 1


def test_q_k6():
    cg = build_triangle_graph(complete_graph(6))
    assert set(cg.q_values().tolist()) == {3}


def test_q_requires_membership():
    cg = build_triangle_graph(complete_graph(4))
    with pytest.raises(InvalidVertexSetError):
        q_value(cg, 0, {1, 2})


def test_isolated_vertex_contributes_zero():
    cg = build_triangle_graph(fig1_graph())
    # every triangle here owns an edge no other triangle uses
    assert cg.q_values().tolist() == [0, 0, 0, 0]
    assert d_value(cg, range(cg.n)) == 0
    lone = [tuple(c) for c in cg.cliques.tolist()].index((4, 5, 6))
    assert [cg.label_degree(lone, lab) for lab in cg.labels[lone]] == [0, 0, 0]


def test_density_k4():
    cg = build_triangle_graph(complete_graph(4))
    assert triangle_graph_density(cg, range(4)) == 1


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_density_complete_graph(n):
    cg = build_triangle_graph(complete_graph(n))
    assert triangle_graph_density(cg, range(cg.n)) == n - 3


def test_density_fig3():
    g = fig3_graph()
    cg = build_triangle_graph(g)
    assert cg.n == 7
    k4 = [v for v in range(cg.n) if set(cg.cliques[v].tolist()) <= {0, 1, 2, 3}]
    assert len(k4) == 4
    assert triangle_graph_density(cg, k4) == 1
    full = triangle_graph_density(cg, range(cg.n))
    assert full < 1
    assert full == Fraction(4, 7)


def test_density_karate_optimum(karate):
    cg = build_triangle_graph(karate)
    best = exact_oracle(karate, "tgds", limit=60)
    assert triangle_graph_density(cg, best.witness) == Fraction(9, 4)


def test_density_empty_set():
    with pytest.raises(UndefinedMetricError):
        triangle_graph_density(build_triangle_graph(complete_graph(4)), [])


def test_mask_rejects_bad_ids():
    with pytest.raises(InvalidVertexSetError):
        build_triangle_graph(complete_graph(4)).q_values({7})


# -- projection ----------------------------------------------------------------------

def test_project_single_triangle():
    cg = build_triangle_graph(complete_graph(3))
    assert project(cg, [0]) == (0, 1, 2)


def test_project_two_triangles():
    cg = build_triangle_graph(load_edge_list(b"0 1\n0 2\n1 2\n1 3\n2 3\n"))
    assert cg.n == 2
    assert project(cg, [0, 1]) == (0, 1, 2, 3)


def test_project_karate_greedy(karate):
    assert len(greedy_tgds(karate).selected) == 6


# -- structural distinction the q-values capture ---------------------------------------

def test_same_triangle_graph_shape_different_q_profiles():
    """K4 and the book graph (four triangles on one spine edge) both have
    triangle-graphs isomorphic to K4, but only K4 has every label shared."""
    k4 = build_triangle_graph(complete_graph(4))
    book = build_triangle_graph(load_edge_list(
        b"0 1\n0 2\n1 2\n0 3\n1 3\n0 4\n1 4\n0 5\n1 5\n"))

    def degree_sequence(cg):
        e = cg.explicit_edges()
        return sorted(np.bincount(e[:, :2].ravel(), minlength=cg.n).tolist())

    assert (k4.n, len(k4.explicit_edges())) == (book.n, len(book.explicit_edges())) == (4, 6)
    assert degree_sequence(k4) == degree_sequence(book) == [3, 3, 3, 3]
    assert sorted(k4.q_values().tolist()) == [1, 1, 1, 1]
    assert sorted(book.q_values().tolist()) == [0, 0, 0, 0]


# -- export -------------------------------------------------------------------------------

def test_text_export_uses_original_ids():
    g = load_edge_list(b"10 11\n10 12\n11 12\n11 13\n12 13\n")
    buf = io.StringIO()
    build_triangle_graph(g).write_edges(buf)
    assert buf.getvalue() == "10,11,12 11,12,13 11,12\n"


def test_json_export():
    buf = io.StringIO()
    build_triangle_graph(complete_graph(4)).write_edges(buf, "json")
    data = json.loads(buf.getvalue())
    assert data["k"] == 3
    assert data["vertices"] == [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
    assert len(data["edges"]) == 6 and len(data["labels"]) == 6


def test_repr():
    assert "vertices=4" in repr(build_triangle_graph(complete_graph(4)))
    assert len(build_triangle_graph(Graph.from_edges(2, [(0, 1)]))) == 0
