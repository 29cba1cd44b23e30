import math

import numpy as np
import pytest

from qwsed.graphs import (
    build_family,
    cartesian_product,
    complete_graph,
    double_cone,
    parse_family,
)
from qwsed.matrices import ADJACENCY, LAPLACIAN, assemble, generalized_adjacency
from qwsed.spectral import decompose
from qwsed.walk import (
    DEFAULT_WINDOW,
    WalkError,
    WalkEvaluator,
    check_fractional_revival,
    check_uniform_mixing,
    closed_form,
)


def _walk(fam, kind=ADJACENCY):
    return WalkEvaluator.for_graph(build_family(parse_family(fam)), kind)


def test_transition_matrix_unitary():
    w = _walk("cycle:6")
    for t in (0.0, 0.7, 2.5, 31.4):
        u = w.transition_matrix(t)
        assert np.allclose(u @ u.conj().T, np.eye(6), atol=1e-9)
    assert w.unitarity_defect(1.3) < 1e-9


def test_transition_at_zero_is_identity():
    w = _walk("star:5")
    assert np.allclose(w.transition_matrix(0.0), np.eye(6), atol=1e-12)


def test_diagonal_magnitude_even_in_time():
    w = _walk("path:5")
    ts = np.linspace(0.1, 4.0, 17)
    fwd = np.abs(w.diagonal_entry_series(0, ts))
    bwd = np.abs(w.diagonal_entry_series(0, -ts))
    assert np.allclose(fwd, bwd, atol=1e-12)


def test_degree_shifted_kinds_share_diagonal_magnitude_on_regular():
    g = build_family(parse_family("cycle:7"))
    ts = np.linspace(0.0, 5.0, 101)
    mags = []
    for kind in (ADJACENCY, LAPLACIAN, generalized_adjacency(0.7)):
        w = WalkEvaluator.for_graph(g, kind)
        mags.append(np.abs(w.diagonal_entry_series(0, ts)))
    assert np.allclose(mags[0], mags[1], atol=1e-10)
    assert np.allclose(mags[0], mags[2], atol=1e-10)


def test_kronecker_diagonal_factorization():
    x = build_family(parse_family("complete:3"))
    y = build_family(parse_family("path:3"))
    g = cartesian_product(x, y)
    wg = WalkEvaluator.for_graph(g, ADJACENCY)
    wx = WalkEvaluator.for_graph(x, ADJACENCY)
    wy = WalkEvaluator.for_graph(y, ADJACENCY)
    for t in (0.3, 1.1, 2.9):
        for ux in range(3):
            for uy in range(3):
                u = ux * 3 + uy
                prod = wx.transition_entry(t, ux, ux) * wy.transition_entry(t, uy, uy)
                assert wg.transition_entry(t, u, u) == pytest.approx(prod, abs=1e-10)


def test_minimize_requires_window_when_aperiodic():
    w = _walk("path:4")
    with pytest.raises(WalkError):
        w.minimize_diagonal(0)
    res = w.minimize_diagonal(0, (0.0, 40.0))
    assert not res.certified_window
    assert res.window == (0.0, 40.0)


def test_minimize_complete_graph():
    w = _walk("complete:5")
    res = w.minimize_diagonal(0)
    assert res.certified_window
    assert res.minimum == pytest.approx(0.6, abs=1e-9)
    assert res.argmin == pytest.approx(math.pi / 5.0, abs=1e-6)


def test_minimize_k3_box_k5():
    w = _walk("rook:3,5")
    res = w.minimize_diagonal(0)
    assert res.minimum == pytest.approx(0.2, abs=1e-9)
    assert res.argmin == pytest.approx(math.pi, abs=1e-6)


def test_minimize_k3_box_k4():
    w = _walk("rook:3,4")
    res = w.minimize_diagonal(0)
    assert res.minimum == pytest.approx(0.2064691267, abs=1e-8)
    assert res.argmin == pytest.approx(0.9556408052, abs=1e-6)


def test_minimize_p3_laplacian_end():
    w = _walk("path:3", LAPLACIAN)
    res = w.minimize_diagonal(0)
    assert res.certified_window
    assert res.minimum == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert res.argmin == pytest.approx(math.pi, abs=1e-6)


def test_minimum_dict_shape():
    res = _walk("complete:4").minimize_diagonal(0)
    d = res.to_dict()
    assert set(d) == {"minimum", "argmin", "window", "grid", "certified"}


def test_perfect_state_transfer_p3():
    w = _walk("path:3")
    t = math.pi / math.sqrt(2.0)
    assert abs(w.transition_entry(t, 2, 0)) == pytest.approx(1.0, abs=1e-9)
    pst = w.find_perfect_state_transfer(0, (0.0, 3.0))
    assert pst is not None
    assert pst.target == 2
    assert pst.time == pytest.approx(t, abs=1e-8)
    assert pst.magnitude == pytest.approx(1.0, abs=1e-9)


def test_no_pst_on_complete():
    w = _walk("complete:5")
    assert w.find_perfect_state_transfer(0, (0.0, 10.0)) is None


def test_uniform_mixing_k3_true_time():
    w = _walk("complete:3")
    assert check_uniform_mixing(w, 0, 2.0 * math.pi / 9.0)
    assert not check_uniform_mixing(w, 0, math.pi / 9.0)
    # the diagonal at pi/9 sits at sqrt(7)/3, far from 1/sqrt(3)
    assert abs(w.transition_entry(math.pi / 9.0, 0, 0)) == \
        pytest.approx(math.sqrt(7.0) / 3.0, abs=1e-12)


def test_uniform_mixing_star_center_local():
    w = _walk("star:3")
    t = math.pi / (3.0 * math.sqrt(3.0))
    assert check_uniform_mixing(w, 0, t)
    assert not check_uniform_mixing(w, 1, t)
    # doubling the time makes it global
    assert check_uniform_mixing(w, 1, 2.0 * t)


def test_fractional_revival_between_apexes():
    g = double_cone(build_family(parse_family("empty:4")), "disconnected")
    w = WalkEvaluator.for_graph(g, LAPLACIAN)
    t = w.find_fractional_revival(0, 1, (0.0, 2.0 * math.pi))
    assert t == pytest.approx(math.pi / 3.0, abs=1e-8)
    fr = check_fractional_revival(w, 0, 1, t)
    assert fr.proper
    assert fr.alpha == pytest.approx(0.5, abs=1e-9)
    assert fr.beta == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-9)
    assert fr.alpha**2 + fr.beta**2 == pytest.approx(1.0, abs=1e-12)


def test_fractional_revival_rejects_same_vertex():
    w = _walk("complete:3")
    with pytest.raises(WalkError):
        check_fractional_revival(w, 0, 0, 1.0)


@pytest.mark.parametrize("fam,kind,role,vertex", [
    ("complete:7", ADJACENCY, "", 0),
    ("complete:7", LAPLACIAN, "", 0),
    ("star:6", ADJACENCY, "leaf", 1),
    ("star:6", ADJACENCY, "center", 0),
    ("star:6", LAPLACIAN, "center", 0),
    ("star:6", LAPLACIAN, "leaf", 1),
    ("doublecone:disconnected:cycle:4", ADJACENCY, "apex", 0),
    ("doublecone:disconnected:empty:5", LAPLACIAN, "apex", 0),
    ("doublecone:connected:cycle:3", LAPLACIAN, "apex", 0),
    ("doublestar:2,2", ADJACENCY, "leafu", 0),
    ("doublestar:2,2", ADJACENCY, "internal", 2),
    ("cone:cycle:5", LAPLACIAN, "apex", 0),
])
def test_closed_forms_match_spectral(fam, kind, role, vertex):
    spec = parse_family(fam)
    g = build_family(spec)
    fn = closed_form(spec, kind, role)
    w = WalkEvaluator.for_graph(g, kind)
    ts = np.linspace(0.0, 9.0, 400)
    vals = w.diagonal_entry_series(vertex, ts)
    assert np.max(np.abs(np.asarray(fn(ts)) - vals)) < 1e-9


def test_closed_form_outside_catalogue():
    with pytest.raises(WalkError):
        closed_form(parse_family("cycle:5"), ADJACENCY, "")


def test_default_window_constant():
    assert DEFAULT_WINDOW == pytest.approx(200.0 * math.pi)
