import math

import numpy as np
import pytest

from qwsed.graphs import (
    WeightedGraph,
    blow_up,
    build_family,
    complete_graph,
    cycle_graph,
    double_cone,
    join,
    parse_family,
    path_graph,
    star_graph,
)
from qwsed.matrices import ADJACENCY, LAPLACIAN, assemble, twin_theta
from qwsed.spectral import (
    DEFAULT_CLUSTER_TOL,
    SpectralError,
    are_cospectral,
    decompose,
    find_twin_sets,
    integer_coordinates,
    periodicity,
    strong_cospectral,
    support,
    verify_twin_eigenvector,
)


def _decomp(fam, kind=ADJACENCY):
    return decompose(assemble(build_family(parse_family(fam)), kind))


def test_projector_algebra():
    d = _decomp("cycle:5")
    n = d.n
    total = np.zeros((n, n))
    m = assemble(build_family(parse_family("cycle:5")), ADJACENCY).matrix
    recon = np.zeros((n, n))
    for j, lam in enumerate(d.eigenvalues):
        p = d.projectors[j]
        assert np.allclose(p @ p, p, atol=1e-9)
        assert np.allclose(p, p.T, atol=1e-12)
        for k in range(j + 1, d.num_distinct):
            assert np.allclose(p @ d.projectors[k], 0.0, atol=1e-9)
        total += p
        recon += lam * p
    assert np.allclose(total, np.eye(n), atol=1e-9)
    assert np.allclose(recon, m, atol=1e-8)


def test_eigenvalues_descending_and_multiplicities():
    d = _decomp("complete:6")
    assert list(d.eigenvalues) == sorted(d.eigenvalues, reverse=True)
    assert d.eigenvalues[0] == pytest.approx(5.0)
    assert d.multiplicities == (1, 5)
    assert sum(d.multiplicities) == d.n


def test_cluster_tolerance_merges_near_duplicates():
    h = np.diag([1.0, 1.0 + 5e-9, 3.0])
    d = decompose(h)
    assert d.num_distinct == 2
    tight = decompose(h, cluster_tol=1e-12)
    assert tight.num_distinct == 3


def test_decompose_rejects_asymmetric():
    with pytest.raises(SpectralError):
        decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_support_star_laplacian_leaf():
    d = _decomp("star:4", LAPLACIAN)
    sup = support(d, 1)
    assert [round(e, 9) for e in sup.eigenvalues] == [5.0, 1.0, 0.0]
    assert np.allclose(sup.weights, [0.05, 0.75, 0.2])
    assert abs(sum(sup.weights) - 1.0) < 1e-12


def test_support_drops_zero_weight():
    # apex of a double cone has no weight on the base eigenvalues
    g = double_cone(build_family(parse_family("cycle:4")), "disconnected")
    d = decompose(assemble(g, ADJACENCY))
    sup = support(d, 0)
    assert len(sup.indices) == 3
    assert [round(e, 9) for e in sup.eigenvalues] == [4.0, 0.0, -2.0]


def test_cospectral_path_ends():
    d = _decomp("path:3")
    assert are_cospectral(d, 0, 2)
    assert not are_cospectral(d, 0, 1)


def test_strong_cospectral_apexes():
    g = double_cone(build_family(parse_family("cycle:4")), "disconnected")
    d = decompose(assemble(g, ADJACENCY))
    sc = strong_cospectral(d, 0, 1)
    assert bool(sc)
    assert sc.plus and sc.minus
    # half weight on each side of the partition
    sup = support(d, 0)
    plus_weight = sum(w for j, w in zip(sup.indices, sup.weights) if j in sc.plus)
    assert plus_weight == pytest.approx(0.5, abs=1e-9)


def test_star_leaves_not_strongly_cospectral():
    d = _decomp("star:3")
    assert are_cospectral(d, 1, 2)
    assert not strong_cospectral(d, 1, 2)


def test_find_twin_sets_join():
    g = join(complete_graph(3), cycle_graph(4))
    twins_a = find_twin_sets(g, ADJACENCY)
    triple = next(t for t in twins_a if t.size == 3)
    assert triple.vertices == (0, 1, 2)
    assert triple.theta == -1.0
    twins_l = find_twin_sets(g, LAPLACIAN)
    triple_l = next(t for t in twins_l if t.size == 3)
    assert triple_l.theta == 7.0
    # the cycle contributes two opposite twin pairs
    assert sorted(t.vertices for t in twins_a if t.size == 2) == [(3, 5), (4, 6)]


def test_twin_sets_exclude_near_misses():
    # weights differ, so no twins even though the shape matches
    g = WeightedGraph(3, ((0, 2, 1.0), (1, 2, 1.0 + 1e-13)))
    assert list(find_twin_sets(g, ADJACENCY)) == []


def test_verify_twin_eigenvector():
    g = join(complete_graph(3), cycle_graph(4))
    d = decompose(assemble(g, ADJACENCY))
    for twins in find_twin_sets(g, ADJACENCY):
        assert verify_twin_eigenvector(d, twins)


def test_twin_theta_matches_found_sets():
    g = double_cone(build_family(parse_family("cycle:4")), "disconnected")
    twins = find_twin_sets(g, LAPLACIAN)
    pair = next(t for t in twins if t.vertices == (0, 1))
    assert pair.theta == twin_theta(LAPLACIAN, 4.0, 0.0, 0.0)


def test_periodicity_integer_spectrum():
    d = _decomp("star:4")
    per = periodicity(d, 1)
    assert per.periodic
    assert per.period == pytest.approx(math.pi)
    assert per.method == "integer-spectrum"


def test_periodicity_rescaled():
    d = _decomp("star:3")
    per = periodicity(d, 1)
    assert per.periodic
    assert per.period == pytest.approx(2.0 * math.pi / math.sqrt(3.0))
    assert per.method == "rational-rescaled"


def test_periodicity_undetected():
    d = _decomp("path:4")
    per = periodicity(d, 0)
    assert not per.periodic
    assert per.period is None
    assert per.method == "undetected"


def test_periodicity_single_eigenvalue():
    d = decompose(np.zeros((1, 1)))
    per = periodicity(d, 0)
    assert per.periodic and per.period == pytest.approx(2.0 * math.pi)


def test_integer_coordinates():
    d = _decomp("complete:5")
    ints = integer_coordinates(d, 0)
    assert ints == [1, 0]
    d3 = _decomp("star:3")
    # support (sqrt 3, 0, -sqrt 3) rescales to consecutive integers
    assert integer_coordinates(d3, 1) == [2, 1, 0]


def test_integer_coordinates_none_for_incommensurable():
    d = _decomp("path:4")
    assert integer_coordinates(d, 0) is None


def test_blow_up_twin_union():
    # all copies of both path ends merge into one twin class
    g = blow_up(path_graph(3), "vertex", [(3, "empty"), (1, "empty"), (2, "empty")])
    twins = find_twin_sets(g, ADJACENCY)
    assert len(twins) == 1
    assert twins[0].vertices == (0, 1, 2, 4, 5)
    assert twins[0].theta == 0.0
