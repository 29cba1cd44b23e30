import math

import numpy as np
import pytest

from qwsed.graphs import (
    FamilySpec,
    GraphError,
    WeightedGraph,
    blow_up,
    build_family,
    cartesian_product,
    complement,
    complete_graph,
    cone,
    cycle_graph,
    describe_graph,
    direct_product,
    double_cone,
    double_star_graph,
    empty_graph,
    hamming_graph,
    join,
    parse_family,
    path_graph,
    read_graph_file,
    rook_graph,
    star_graph,
    union,
    write_graph_file,
)


def test_basic_constructors():
    assert complete_graph(5).num_edges == 10
    assert path_graph(4).num_edges == 3
    assert cycle_graph(6).num_edges == 6
    assert empty_graph(3).num_edges == 0


def test_weight_lookup_and_neighbors():
    g = WeightedGraph(3, ((0, 1, 2.0), (1, 2, 0.5)))
    assert g.weight(0, 1) == 2.0
    assert g.weight(1, 0) == 2.0
    assert g.weight(0, 2) == 0.0
    assert g.neighbors(1) == {0: 2.0, 2: 0.5}
    assert g.loop_weight(1) == 0.0


def test_loops_excluded_from_neighbors():
    g = WeightedGraph(2, ((0, 0, 3.0), (0, 1, 1.0)))
    assert g.loop_weight(0) == 3.0
    assert g.neighbors(0) == {1: 1.0}
    assert not g.is_simple


def test_duplicate_edges_rejected():
    with pytest.raises(GraphError):
        WeightedGraph(3, ((0, 1, 1.0), (1, 0, 2.0)))


def test_predicates():
    assert complete_graph(4).is_simple
    assert complete_graph(4).is_unweighted
    weighted = WeightedGraph(2, ((0, 1, 0.5),))
    assert not weighted.is_unweighted
    assert weighted.is_positively_weighted
    signed = WeightedGraph(2, ((0, 1, -1.0),))
    assert not signed.is_positively_weighted


def test_regular_degree():
    assert cycle_graph(5).regular_degree() == 2.0
    assert star_graph(3).regular_degree() is None
    assert complete_graph(4).regular_degree() == 3.0


def test_star_labels():
    g = star_graph(4)
    assert g.labels[0] == "center"
    assert g.labels[1] == "leaf:0"
    assert g.n == 5
    # center adjacent to every leaf
    assert g.neighbors(0) == {1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0}


def test_double_star_layout():
    g = double_star_graph(2, 3)
    assert g.n == 7
    assert g.labels == ("leafu:0", "leafu:1", "internal:u", "internal:v",
                        "leafv:0", "leafv:1", "leafv:2")
    assert g.has_edge(2, 3)
    assert g.neighbors(0) == {2: 1.0}
    assert g.neighbors(4) == {3: 1.0}


def test_join_and_cone():
    g = join(complete_graph(2), empty_graph(3))
    assert g.n == 5
    # every cross pair present
    assert all(g.has_edge(i, j) for i in (0, 1) for j in (2, 3, 4))
    c = cone(cycle_graph(4))
    assert c.labels[0] == "apex"
    assert c.neighbors(0) == {1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0}


def test_double_cone_modes():
    base = cycle_graph(4)
    disc = double_cone(base, "disconnected")
    conn = double_cone(base, "connected")
    assert not disc.has_edge(0, 1)
    assert conn.has_edge(0, 1)
    assert disc.labels[0] == "apex:0" and disc.labels[1] == "apex:1"
    with pytest.raises(GraphError):
        double_cone(base, "weird")


def test_complement_of_star():
    g = complement(star_graph(3))
    # center isolated, leaves mutually adjacent
    assert g.neighbors(0) == {}
    assert g.has_edge(1, 2) and g.has_edge(1, 3) and g.has_edge(2, 3)


def test_union_disjoint():
    g = union(complete_graph(2), complete_graph(3))
    assert g.n == 5
    assert g.has_edge(0, 1) and g.has_edge(2, 3)
    assert not g.has_edge(1, 2)


def test_cartesian_product_k2_k2_is_c4():
    g = cartesian_product(complete_graph(2), complete_graph(2))
    c4 = cycle_graph(4)
    a = g.adjacency_matrix()
    assert np.allclose(sorted(np.linalg.eigvalsh(a)),
                       sorted(np.linalg.eigvalsh(c4.adjacency_matrix())))
    assert g.num_edges == 4
    assert g.provenance[0] == "cartesian"


def test_cartesian_index_order():
    # row-major: vertex (u, v) -> u * ny + v
    x, y = path_graph(2), path_graph(3)
    g = cartesian_product(x, y)
    assert g.n == 6
    assert g.has_edge(0, 3)  # (0,0)-(1,0) from the x edge
    assert g.has_edge(0, 1)  # (0,0)-(0,1) from the y edge
    assert not g.has_edge(0, 4)


def test_direct_product_is_kronecker():
    x, y = complete_graph(2), path_graph(3)
    g = direct_product(x, y)
    assert np.allclose(g.adjacency_matrix(),
                       np.kron(x.adjacency_matrix(), y.adjacency_matrix()))


def test_rook_and_hamming():
    r = rook_graph([3, 4])
    assert r.n == 12
    assert r.regular_degree() == 5.0
    h = hamming_graph(2, 3)
    assert h.n == 9
    assert np.allclose(sorted(np.linalg.eigvalsh(h.adjacency_matrix())),
                       sorted(np.linalg.eigvalsh(rook_graph([3, 3]).adjacency_matrix())))


def test_blow_up_vertex_mode():
    g = blow_up(path_graph(3), "vertex", [(3, "empty"), (1, "empty"), (2, "empty")])
    assert g.n == 6
    # copies of an end vertex stay non-adjacent and share the old neighborhood
    assert not g.has_edge(0, 1)
    assert g.has_edge(0, 3) and g.has_edge(1, 3) and g.has_edge(2, 3)
    assert g.has_edge(4, 3) and g.has_edge(5, 3)


def test_blow_up_complete_fill():
    g = blow_up(path_graph(2), "vertex", [(2, "complete"), (1, "empty")])
    assert g.has_edge(0, 1)
    assert g.has_edge(0, 2) and g.has_edge(1, 2)


def test_parse_family_round_trip():
    for text in ("complete:5", "rook:3,4", "star:7",
                 "doublecone:disconnected:cycle:5", "doublestar:2,3"):
        spec = parse_family(text)
        assert str(spec) == text
        g = build_family(spec)
        assert g.n > 0
        assert describe_graph(g) == text


def test_parse_family_rejects_garbage():
    with pytest.raises(GraphError):
        parse_family("heptagon:9")
    with pytest.raises(GraphError):
        parse_family("complete:")


def test_family_spec_params():
    spec = parse_family("doublecone:connected:empty:6")
    assert spec.kind == "doublecone"
    assert spec.mode == "connected"
    assert spec.base is not None and spec.base.n == 6


def test_graph_file_round_trip(tmp_path):
    g = WeightedGraph(4, ((0, 1, 1.5), (1, 2, 1.0), (2, 3, 0.25), (3, 3, 2.0)))
    path = tmp_path / "g.graph"
    write_graph_file(g, path)
    back = read_graph_file(path)
    assert back.n == g.n
    assert back.edges == g.edges


def test_graph_file_with_base_reference(tmp_path):
    base = cycle_graph(5)
    path = tmp_path / "base.graph"
    write_graph_file(base, path)
    spec = parse_family(f"cone:@{path}")
    g = build_family(spec)
    assert g.n == 6
    assert g.labels[0] == "apex"


def test_describe_anonymous_graph():
    g = WeightedGraph(3, ((0, 1, 1.0),))
    text = describe_graph(g)
    assert text.startswith("graph:3v,1e,")
