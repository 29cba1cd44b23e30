"""Spectral decomposition and the vertex-level spectral structure the
certificates are built from: eigenvalue supports, cospectrality, twin sets,
and periodicity detection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import WeightedGraph
from .matrices import ADJACENCY, Hamiltonian, MatrixKind, twin_theta

__all__ = [
    "SpectralError",
    "DEFAULT_CLUSTER_TOL",
    "DEFAULT_SUPPORT_TOL",
    "SpectralDecomposition",
    "decompose",
    "EigenvalueSupport",
    "support",
    "are_cospectral",
    "StrongCospectralPartition",
    "strong_cospectral",
    "TwinSet",
    "find_twin_sets",
    "verify_twin_eigenvector",
    "PeriodicityInfo",
    "periodicity",
    "integer_coordinates",
]

DEFAULT_CLUSTER_TOL = 1e-8
DEFAULT_SUPPORT_TOL = 1e-10
_MAX_DENOMINATOR = 10**6
_INT_TOL = 1e-9
_UNIT_TOL = 1e-8


class SpectralError(RuntimeError):
    """Eigensolver failure or invalid spectral-layer input."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues (descending) with orthogonal projectors onto the
    corresponding eigenspaces, plus the matrix they reconstruct."""

    eigenvalues: np.ndarray
    projectors: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]
    cluster_tol: float
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_distinct(self) -> int:
        return len(self.eigenvalues)

    def diagonal_weight(self, j: int, u: int) -> float:
        """(E_j)_{u,u}: the squared length of the projection of e_u."""
        return float(self.projectors[j][u, u])

    def projected_unit(self, j: int, u: int) -> np.ndarray:
        """E_j e_u as a vector."""
        return np.asarray(self.projectors[j][:, u])

    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.eigenvalues))) if len(self.eigenvalues) else 1.0)


def decompose(h: Hamiltonian | np.ndarray,
              cluster_tol: float = DEFAULT_CLUSTER_TOL) -> SpectralDecomposition:
    """Eigendecompose a real symmetric matrix into distinct eigenvalues and
    spectral projectors.

    Eigenvalues closer than cluster_tol * max(1, spectral norm) are merged
    into one eigenspace; each reported eigenvalue is the mean of its cluster.
    """
    m = h.matrix if isinstance(h, Hamiltonian) else np.asarray(h, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpectralError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    if m.size and float(np.max(np.abs(m - m.T))) > 1e-12 * scale:
        raise SpectralError("matrix must be symmetric")
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    tol = cluster_tol * max(1.0, float(np.max(np.abs(vals))) if len(vals) else 1.0)
    groups: list[list[int]] = []
    for i in range(len(vals)):
        if groups and vals[i] - vals[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    groups.reverse()  # descending
    eigenvalues = np.array([float(np.mean(vals[g])) for g in groups])
    projectors = []
    for g in groups:
        block = vecs[:, g]
        e = block @ block.T
        e = (e + e.T) / 2.0
        e.setflags(write=False)
        projectors.append(e)
    mm = np.array(m)
    mm.setflags(write=False)
    return SpectralDecomposition(eigenvalues, tuple(projectors),
                                 tuple(len(g) for g in groups), cluster_tol, mm)


@dataclass(frozen=True)
class EigenvalueSupport:
    """The eigenvalues whose projectors see a vertex, with the diagonal
    projector weights (which sum to 1)."""

    vertex: int
    indices: tuple[int, ...]
    eigenvalues: tuple[float, ...]
    weights: tuple[float, ...]


def support(d: SpectralDecomposition, u: int,
            support_tol: float = DEFAULT_SUPPORT_TOL) -> EigenvalueSupport:
    """Eigenvalue support of a vertex: indices j with ||E_j e_u|| > support_tol."""
    if not 0 <= u < d.n:
        raise SpectralError(f"vertex {u} out of range")
    idx, lam, wts = [], [], []
    for j in range(d.num_distinct):
        col = d.projected_unit(j, u)
        if float(np.linalg.norm(col)) > support_tol:
            idx.append(j)
            lam.append(float(d.eigenvalues[j]))
            wts.append(d.diagonal_weight(j, u))
    return EigenvalueSupport(u, tuple(idx), tuple(lam), tuple(wts))


def are_cospectral(d: SpectralDecomposition, u: int, v: int,
                   tol: float = 1e-9) -> bool:
    """True when every projector gives u and v the same diagonal weight."""
    return all(abs(d.diagonal_weight(j, u) - d.diagonal_weight(j, v)) <= tol
               for j in range(d.num_distinct))


@dataclass(frozen=True)
class StrongCospectralPartition:
    """Outcome of the strong cospectrality test for a vertex pair.

    When the test succeeds, ``plus``/``minus`` split the support indices by
    the sign relating E_j e_u and E_j e_v.  On failure ``witness`` holds the
    first eigenvalue violating both signs (or breaking support equality).
    """

    u: int
    v: int
    strongly_cospectral: bool
    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()
    witness: float | None = None

    def __bool__(self) -> bool:
        return self.strongly_cospectral


def strong_cospectral(d: SpectralDecomposition, u: int, v: int,
                      tol: float = 1e-9,
                      support_tol: float = DEFAULT_SUPPORT_TOL) -> StrongCospectralPartition:
    """Check E_j e_u = +/- E_j e_v on every eigenspace touching u or v."""
    if u == v:
        raise SpectralError("strong cospectrality needs two distinct vertices")
    plus, minus = [], []
    for j in range(d.num_distinct):
        x = d.projected_unit(j, u)
        y = d.projected_unit(j, v)
        nx = float(np.linalg.norm(x))
        ny = float(np.linalg.norm(y))
        if nx <= support_tol and ny <= support_tol:
            continue
        if float(np.linalg.norm(x - y)) <= tol:
            plus.append(j)
        elif float(np.linalg.norm(x + y)) <= tol:
            minus.append(j)
        else:
            return StrongCospectralPartition(u, v, False,
                                             witness=float(d.eigenvalues[j]))
    return StrongCospectralPartition(u, v, True, tuple(plus), tuple(minus))


@dataclass(frozen=True)
class TwinSet:
    """A maximal set of pairwise twins: common loop weight omega, common
    pairwise weight eta (0 when the set is independent), and the eigenvalue
    theta of any difference of two of its characteristic vectors."""

    vertices: tuple[int, ...]
    omega: float
    eta: float
    degree: float
    theta: float
    kind: MatrixKind

    @property
    def size(self) -> int:
        return len(self.vertices)


def _twin_pair(g: WeightedGraph, u: int, v: int) -> bool:
    if g.loop_weight(u) != g.loop_weight(v):
        return False
    nu = {j: w for j, w in g.neighbors(u).items() if j != v}
    nv = {j: w for j, w in g.neighbors(v).items() if j != u}
    return nu == nv


def find_twin_sets(g: WeightedGraph,
                   kind: MatrixKind = ADJACENCY) -> list[TwinSet]:
    """Partition the vertices into maximal twin classes (singletons omitted).

    Weight comparisons are exact: twins are a combinatorial notion on the
    given weights.  theta is computed for the requested matrix kind.
    """
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    # group by open-neighborhood signature first to keep the pair scan short
    sig: dict[tuple, list[int]] = {}
    for u in range(g.n):
        items = tuple(sorted(g.neighbors(u).items()))
        sig.setdefault((g.loop_weight(u), items), []).append(u)
    candidates = set()
    for bucket in sig.values():
        for i, u in enumerate(bucket):
            for v in bucket[i + 1:]:
                candidates.add((u, v))
    # adjacent twins have signatures differing in each other's entry only
    for u, v, _ in g.edges:
        if u != v:
            candidates.add((u, v))
    for u, v in sorted(candidates):
        if find(u) != find(v) and _twin_pair(g, u, v):
            parent[find(v)] = find(u)

    classes: dict[int, list[int]] = {}
    for u in range(g.n):
        classes.setdefault(find(u), []).append(u)
    out = []
    for verts in sorted(classes.values()):
        if len(verts) < 2:
            continue
        eta = g.weight(verts[0], verts[1])
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if g.weight(a, b) != eta:  # pragma: no cover - ruled out above
                    raise SpectralError("inconsistent twin class")
        omega = g.loop_weight(verts[0])
        degree = g.degree(verts[0])
        theta = twin_theta(kind, degree, omega, eta)
        out.append(TwinSet(tuple(verts), omega, eta, degree, theta, kind))
    return out


def verify_twin_eigenvector(d: SpectralDecomposition, twins: TwinSet,
                            tol: float = 1e-9) -> bool:
    """Check M(e_u - e_v) = theta (e_u - e_v) for every pair in the twin set,
    against the decomposed matrix."""
    m = d.matrix
    scale = max(1.0, float(np.max(np.abs(m))))
    verts = twins.vertices
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            x = np.zeros(d.n)
            x[u], x[v] = 1.0, -1.0
            if float(np.max(np.abs(m @ x - twins.theta * x))) > tol * scale:
                return False
    return True


# -- periodicity ---------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicityInfo:
    """Certified period of |U(t)_{u,u}| when one is detected.

    method: 'integer-spectrum', 'rational-rescaled', or 'undetected'.
    Detection is sound but incomplete: 'undetected' makes no claim.
    """

    vertex: int
    periodic: bool
    period: float | None
    method: str


def _rescale_to_integers(values: np.ndarray, scale: float):
    """Find integers p_j and a real step s with values = ref + s*p_j.

    Returns (p, s, ref) or None.  The step's rational structure is recovered
    with continued fractions, denominator capped at 10**6.
    """
    vals = np.asarray(values, dtype=float)
    ref = float(vals.min())
    diffs = vals - ref
    pos = diffs[diffs > _INT_TOL * scale]
    if len(pos) == 0:
        return [0] * len(vals), 1.0, ref
    d = float(pos.min())
    ratios = diffs / d
    q = 1
    for r in ratios:
        frac = Fraction(float(r)).limit_denominator(_MAX_DENOMINATOR)
        q = q * frac.denominator // math.gcd(q, frac.denominator)
        if q > _MAX_DENOMINATOR:
            return None
    p = [int(round(float(r) * q)) for r in ratios]
    s = d / q
    for v, pj in zip(vals, p):
        if abs(v - (ref + s * pj)) > _INT_TOL * scale:
            return None
    return p, s, ref


def integer_coordinates(d: SpectralDecomposition, u: int,
                        support_tol: float = DEFAULT_SUPPORT_TOL):
    """Integer coordinates of the support eigenvalues of u under an affine
    rescaling lambda_j = ref + s*p_j, or None when no such rescaling with a
    bounded denominator exists.  Aligned with the support's index order."""
    sup = support(d, u, support_tol)
    res = _rescale_to_integers(np.array(sup.eigenvalues), d.scale())
    if res is None:
        return None
    return list(res[0])


def periodicity(d: SpectralDecomposition, u: int,
                support_tol: float = DEFAULT_SUPPORT_TOL) -> PeriodicityInfo:
    """Detect a period of the diagonal walk entry at u.

    |U(t)_{u,u}| is periodic exactly when the support eigenvalues become
    integers under an affine rescaling; the minimal period is then
    2*pi / (s * gcd of the integer coordinates relative to the smallest).
    The reported period is verified by evaluating |U(rho)_{u,u}| = 1.
    """
    sup = support(d, u, support_tol)
    lam = np.array(sup.eigenvalues)
    wts = np.array(sup.weights)
    scale = d.scale()
    near_int = bool(np.all(np.abs(lam - np.round(lam)) <= _INT_TOL * scale))
    method = "integer-spectrum" if near_int else "rational-rescaled"
    if len(lam) <= 1:
        return PeriodicityInfo(u, True, 2.0 * math.pi, method)
    res = _rescale_to_integers(lam, scale)
    if res is None:
        return PeriodicityInfo(u, False, None, "undetected")
    p, s, _ = res
    g = 0
    for pj in p:
        g = math.gcd(g, pj)
    if g == 0:
        return PeriodicityInfo(u, True, 2.0 * math.pi, method)
    rho = 2.0 * math.pi / (s * g)
    # the claim must survive a direct evaluation
    mag = abs(complex(np.sum(wts * np.exp(1j * rho * lam))))
    if abs(mag - 1.0) > _UNIT_TOL:
        return PeriodicityInfo(u, False, None, "undetected")
    return PeriodicityInfo(u, True, float(rho), method)
