"""Certificates and classification of sedentary vertices.

A vertex u is sedentary when |U(t)_{u,u}| admits a positive lower bound for
all t > 0.  This module derives such bounds from structure (twin classes,
heavy eigenvalue subsets, closed-form families, box products), pairs them
with the independent minimization oracle from walk.py, and reconciles both
sides into one of five labels:

  not-sedentary       the infimum of |U(t)_{u,u}| is 0
  sedentary-at-least  a proven bound C > 0; the infimum itself is unknown
  sharply-sedentary   the infimum equals C but is only approached
  tightly-sedentary   the infimum equals C and is attained at a finite time
  unresolved          no certificate applies; observations only

Certificates never overstate.  Grid-backed bounds are flagged non-analytic,
and a bound whose validity is limited to an uncertified time window never
drives the classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .graphs import FamilySpec, WeightedGraph, describe_graph
from .matrices import ADJACENCY, MatrixKind, assemble
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_SUPPORT_TOL,
    SpectralDecomposition,
    decompose,
    find_twin_sets,
    integer_coordinates,
    periodicity,
    support,
    verify_twin_eigenvector,
)
from .walk import (
    DEFAULT_WINDOW,
    MinimizationResult,
    WalkEvaluator,
    _golden_min,
)

__all__ = [
    "NOT_SEDENTARY",
    "SEDENTARY_AT_LEAST",
    "SHARPLY_SEDENTARY",
    "TIGHTLY_SEDENTARY",
    "UNRESOLVED",
    "TWIN_BOUND",
    "SUBSET_BOUND",
    "PRODUCT_COMPOSITION",
    "CLOSED_FORM_FAMILY",
    "NOT_SEDENTARY_PST",
    "NOT_SEDENTARY_ZERO_CROSSING",
    "SHARPNESS_PARITY",
    "CertificateRefused",
    "UnsupportedSpectrum",
    "SedentaryCertificate",
    "SedentaryReport",
    "ClassifyOptions",
    "FamilyRuling",
    "subset_bound",
    "equality_condition",
    "find_equality_time",
    "twin_bound",
    "integer_kernel_basis",
    "sharpness_parity",
    "find_zero_crossing",
    "family_closed_classification",
    "product_compose",
    "classify",
    "report_to_dict",
]

# classification labels
NOT_SEDENTARY = "not-sedentary"
SEDENTARY_AT_LEAST = "sedentary-at-least"
SHARPLY_SEDENTARY = "sharply-sedentary"
TIGHTLY_SEDENTARY = "tightly-sedentary"
UNRESOLVED = "unresolved"

# certificate kinds
TWIN_BOUND = "twin-bound"
SUBSET_BOUND = "subset-bound"
PRODUCT_COMPOSITION = "product-composition"
CLOSED_FORM_FAMILY = "closed-form-family"
NOT_SEDENTARY_PST = "not-sedentary-pst"
NOT_SEDENTARY_ZERO_CROSSING = "not-sedentary-zero-crossing"
SHARPNESS_PARITY = "sharpness-parity"

RECONCILE_TOL = 1e-6
ZERO_TOL = 1e-8
_HALF_TOL = 1e-9
_PHASE_TOL = 1e-8


class CertificateRefused(ValueError):
    """The hypotheses of a certificate are not met by the given data."""


class UnsupportedSpectrum(RuntimeError):
    """The computation needs an integer-rescalable eigenvalue support."""


@dataclass(frozen=True)
class SedentaryCertificate:
    """One piece of evidence about the diagonal magnitude at a vertex.

    bound is a lower bound on |U(t)_{u,u}| valid for all t when certified
    is True; analytic marks bounds proven in closed form rather than by a
    grid scan.  subset holds distinct-eigenvalue indices into the
    decomposition; weight is the total projector mass of that subset.
    """

    kind: str
    vertex: int
    bound: float
    subset: tuple[int, ...] = ()
    weight: float | None = None
    equality_times: tuple[float, ...] = ()
    analytic: bool = True
    certified: bool = True
    detail: str = ""

    def __post_init__(self):
        if not -1e-12 <= self.bound <= 1.0 + 1e-9:
            raise CertificateRefused(f"bound {self.bound!r} outside [0, 1]")
        if self.kind == SUBSET_BOUND:
            if self.weight is None or not 0.5 - _HALF_TOL <= self.weight < 1.0:
                raise CertificateRefused(
                    f"subset bound needs mass in [1/2, 1), got {self.weight!r}")
        object.__setattr__(self, "subset", tuple(int(j) for j in self.subset))
        object.__setattr__(self, "equality_times",
                           tuple(float(t) for t in self.equality_times))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "S": list(self.subset),
            "a": self.weight,
            "bound": self.bound,
            "equality_times": list(self.equality_times),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class SedentaryReport:
    """Final verdict for one vertex under one matrix kind."""

    graph: str
    matrix: str
    vertex: int
    classification: str
    bound: float | None
    certificates: tuple[SedentaryCertificate, ...]
    oracle: MinimizationResult | None

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "matrix": self.matrix,
            "vertex": self.vertex,
            "classification": self.classification,
            "C": self.bound,
            "certificates": [c.to_dict() for c in self.certificates],
            "oracle": self.oracle.to_dict() if self.oracle else None,
        }


def report_to_dict(report: SedentaryReport) -> dict:
    return report.to_dict()


@dataclass(frozen=True)
class ClassifyOptions:
    """Tuning knobs for classify; defaults match the documented tolerances."""

    window: tuple[float, float] | None = None
    grid: int | None = None
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    support_tol: float = DEFAULT_SUPPORT_TOL
    subset_search: bool = False
    reconcile_tol: float = RECONCILE_TOL
    zero_tol: float = ZERO_TOL


# -- subset bounds --------------------------------------------------------------


def _support_positions(sup, subset) -> tuple[tuple[int, ...], list[int]]:
    s = tuple(sorted(set(int(j) for j in subset)))
    if not s:
        raise CertificateRefused("empty subset")
    missing = [j for j in s if j not in sup.indices]
    if missing:
        raise CertificateRefused(
            f"eigenvalue indices {missing} are not in the support of vertex {sup.vertex}")
    if len(s) == len(sup.indices):
        raise CertificateRefused("subset must be a proper part of the support")
    return s, [sup.indices.index(j) for j in s]


def subset_bound(d: SpectralDecomposition, u: int, subset,
                 window: tuple[float, float] | None = None,
                 grid: int | None = None,
                 support_tol: float = DEFAULT_SUPPORT_TOL) -> SedentaryCertificate:
    """Lower bound on |U(t)_{u,u}| from the projector mass of a subset.

    Let a be the total diagonal weight of a proper nonempty subset S of the
    eigenvalue support of u.  For a >= 1/2 the triangle inequality gives
    |U(t)_{u,u}| >= |partial sum over S| - (1 - a).  A singleton S makes the
    partial sum constant and the bound 2a - 1 analytic; larger subsets
    minimize the partial sum on a grid, which is honest evidence but not a
    proof, so the certificate is flagged accordingly.
    """
    sup = support(d, u, support_tol)
    s, pos = _support_positions(sup, subset)
    a = float(sum(sup.weights[p] for p in pos))
    if a < 0.5 - _HALF_TOL:
        raise CertificateRefused(
            f"subset mass {a:.9f} is below 1/2; the bound would be vacuous")
    if len(s) == 1:
        return SedentaryCertificate(
            SUBSET_BOUND, u, max(2.0 * a - 1.0, 0.0), s, a,
            detail="single-eigenvalue mass bound")

    lam = np.array([sup.eigenvalues[p] for p in pos])
    wts = np.array([sup.weights[p] for p in pos])
    certified = False
    if window is None:
        per = periodicity(d, u)
        if per.periodic:
            window, certified = (0.0, per.period), True
        else:
            window = (0.0, DEFAULT_WINDOW)
    t0, t1 = float(window[0]), float(window[1])
    spread = float(lam.max() - lam.min())
    npts = grid or min(max(4096, math.ceil(64.0 * (t1 - t0) * spread / (2.0 * math.pi))),
                       1 << 20)
    ts = np.linspace(t0, t1, npts)
    vals = np.abs(np.exp(1j * np.outer(ts, lam)) @ wts.astype(complex))

    def f2(t: float) -> float:
        z = complex(np.sum(wts * np.exp(1j * t * lam)))
        return z.real * z.real + z.imag * z.imag

    i = int(np.argmin(vals))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, npts - 1)]
    x, fx, _ = _golden_min(f2, float(lo), float(hi), 1e-10)
    fmin = min(float(vals[i]), math.sqrt(max(fx, 0.0)))
    bound = max(fmin - (1.0 - a), 0.0)
    where = "certified period" if certified else "open window"
    return SedentaryCertificate(
        SUBSET_BOUND, u, bound, s, a, analytic=False, certified=certified,
        detail=f"partial-sum minimum {fmin:.9f} on the {where} [{t0:g}, {t1:g}]")


def equality_condition(d: SpectralDecomposition, u: int, subset, t1: float,
                       tol: float = _PHASE_TOL,
                       support_tol: float = DEFAULT_SUPPORT_TOL) -> bool:
    """Check the phase alignment that makes the subset bound an equality.

    At time t1 all subset phases must coincide at some unit z while every
    remaining support phase sits at -z; the subset's partial sum must also
    dominate the complementary mass.  When this holds with subset mass
    a >= 1/2, |U(t1)_{u,u}| equals 2a - 1, and that is verified too.
    """
    sup = support(d, u, support_tol)
    s, pos = _support_positions(sup, subset)
    lam = np.array(sup.eigenvalues)
    wts = np.array(sup.weights)
    inside = np.zeros(len(lam), dtype=bool)
    inside[pos] = True
    phases = np.exp(1j * t1 * lam)
    zref = phases[pos[0]]
    align = max(float(np.max(np.abs(phases[inside] - zref))),
                float(np.max(np.abs(phases[~inside] + zref))))
    if align > tol:
        return False
    a = float(np.sum(wts[inside]))
    partial = abs(complex(np.sum(wts[inside] * phases[inside])))
    if partial + tol < 1.0 - a:
        return False
    value = abs(complex(np.sum(wts * phases)))
    return abs(value - abs(2.0 * a - 1.0)) <= 100.0 * tol


def find_equality_time(d: SpectralDecomposition, u: int, subset,
                       window: tuple[float, float],
                       grid: int | None = None,
                       tol: float = _PHASE_TOL,
                       support_tol: float = DEFAULT_SUPPORT_TOL) -> float | None:
    """Earliest time in the window where equality_condition holds, or None.

    Searches the smooth alignment defect (sum of squared phase deviations
    from the target pattern) on a grid, refines local minima, and accepts
    only times that pass the exact condition.
    """
    sup = support(d, u, support_tol)
    s, pos = _support_positions(sup, subset)
    lam = np.array(sup.eigenvalues)
    sign = np.full(len(lam), -1.0)
    sign[pos] = 1.0
    ref = lam[pos[0]]
    deltas = lam - ref

    def defect(t: float) -> float:
        z = np.exp(1j * t * deltas) - sign
        return float(np.sum(z.real**2 + z.imag**2))

    t0, t1 = float(window[0]), float(window[1])
    spread = float(lam.max() - lam.min()) if len(lam) > 1 else 0.0
    npts = grid or min(max(4096, math.ceil(64.0 * (t1 - t0) * spread / (2.0 * math.pi))),
                       1 << 20)
    ts = np.linspace(t0, t1, npts)
    ph = np.exp(1j * np.outer(ts, deltas)) - sign
    h = np.sum(ph.real**2 + ph.imag**2, axis=1)
    hits: list[float] = []
    for i in range(1, npts - 1):
        if h[i] <= h[i - 1] and h[i] <= h[i + 1]:
            x, _, _ = _golden_min(defect, float(ts[i - 1]), float(ts[i + 1]), 1e-12)
            hits.append(x)
    for t in sorted(hits):
        if equality_condition(d, u, s, t, tol, support_tol):
            return float(t)
    return None


# -- twin classes ---------------------------------------------------------------


def twin_bound(graph: WeightedGraph, u: int, kind: MatrixKind = ADJACENCY,
               decomposition: SpectralDecomposition | None = None) -> SedentaryCertificate:
    """Membership in a twin class of size c gives |U(t)_{u,u}| >= 1 - 2/c.

    A pair (c = 2) yields the vacuous constant 0; the certificate is still
    emitted so reports can show the twin structure.  When a decomposition is
    supplied, the difference eigenvector is verified against the assembled
    matrix and the projector mass at the twin eigenvalue is recorded.
    """
    twins = None
    for ts in find_twin_sets(graph, kind):
        if u in ts.vertices:
            twins = ts
            break
    if twins is None:
        raise CertificateRefused(f"vertex {u} has no twin")
    c = twins.size
    bound = max(1.0 - 2.0 / c, 0.0)
    subset: tuple[int, ...] = ()
    weight = None
    if decomposition is not None:
        if not verify_twin_eigenvector(decomposition, twins):
            raise CertificateRefused(
                "twin difference vector fails the eigenvector check")
        lam = np.asarray(decomposition.eigenvalues)
        j = int(np.argmin(np.abs(lam - twins.theta)))
        scale = max(decomposition.scale(), 1.0)
        if abs(float(lam[j]) - twins.theta) <= 1e-8 * scale:
            subset = (j,)
            weight = decomposition.diagonal_weight(j, u)
    others = ", ".join(str(v) for v in twins.vertices if v != u)
    return SedentaryCertificate(
        TWIN_BOUND, u, bound, subset, weight,
        detail=f"twin class {{{u}, {others}}} of size {c}, "
               f"difference eigenvalue {twins.theta:g}")


# -- integer relations and sharpness ---------------------------------------------


def integer_kernel_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : R x = 0} of an integer matrix R.

    Column-style elimination with unimodular operations; the transform
    columns that end up annihilated by every row form a lattice basis of the
    kernel.  All arithmetic is exact, and the result is verified.
    """
    mat = [[int(x) for x in row] for row in rows]
    if not mat:
        raise ValueError("need at least one row")
    n = len(mat[0])
    if any(len(row) != n for row in mat):
        raise ValueError("ragged rows")
    work = [[row[j] for row in mat] for j in range(n)]
    trans = [[int(i == j) for i in range(n)] for j in range(n)]
    pivot = 0
    for i in range(len(mat)):
        while True:
            nz = [j for j in range(pivot, n) if work[j][i] != 0]
            if len(nz) <= 1:
                break
            jmin = min(nz, key=lambda j: abs(work[j][i]))
            for j in nz:
                if j == jmin:
                    continue
                q = work[j][i] // work[jmin][i]
                if q:
                    work[j] = [x - q * y for x, y in zip(work[j], work[jmin])]
                    trans[j] = [x - q * y for x, y in zip(trans[j], trans[jmin])]
        nz = [j for j in range(pivot, n) if work[j][i] != 0]
        if nz:
            j = nz[0]
            work[pivot], work[j] = work[j], work[pivot]
            trans[pivot], trans[j] = trans[j], trans[pivot]
            pivot += 1
    basis = [trans[j] for j in range(pivot, n)]
    for vec in basis:
        for row in mat:
            if sum(a * b for a, b in zip(row, vec)) != 0:
                raise RuntimeError("kernel verification failed")
    return basis


def sharpness_parity(d: SpectralDecomposition, u: int, subset,
                     support_tol: float = DEFAULT_SUPPORT_TOL) -> SedentaryCertificate:
    """Certify that the subset bound 2a - 1 is the exact infimum.

    The infimum of |U(t)_{u,u}| reaches 2a - 1 unless an integer relation
    among the support eigenvalues (with zero coefficient sum) forces the
    subset phases and the complementary phases to stay entangled.  The
    obstruction is a parity condition: the bound is the infimum when every
    such relation has an even coefficient sum over the subset.  Relations
    live in the integer kernel of the rescaled eigenvalue row stacked on the
    all-ones row; checking a lattice basis decides all of them.

    Raises UnsupportedSpectrum when the support has no integer rescaling,
    and CertificateRefused when a parity-violating relation exists.
    """
    sup = support(d, u, support_tol)
    s, pos = _support_positions(sup, subset)
    a = float(sum(sup.weights[p] for p in pos))
    if a < 0.5 - _HALF_TOL:
        raise CertificateRefused(f"subset mass {a:.9f} is below 1/2")
    ints = integer_coordinates(d, u, support_tol)
    if ints is None:
        raise UnsupportedSpectrum(
            "support eigenvalues admit no bounded integer rescaling")
    rows = [ints, [1] * len(ints)]
    basis = integer_kernel_basis(rows)
    for vec in basis:
        if sum(vec[p] for p in pos) % 2 != 0:
            raise CertificateRefused(
                f"integer relation {vec} has odd coefficient sum on the subset")
    return SedentaryCertificate(
        SHARPNESS_PARITY, u, max(2.0 * a - 1.0, 0.0), s, a,
        detail="every integer eigenvalue relation keeps even parity on the "
               f"subset ({len(basis)} basis relations checked)")


# -- zero crossings --------------------------------------------------------------


def find_zero_crossing(d: SpectralDecomposition, u: int,
                       window: tuple[float, float] | None = None,
                       grid: int | None = None,
                       support_tol: float = DEFAULT_SUPPORT_TOL) -> SedentaryCertificate:
    """Prove the infimum is 0 for a vertex with a phase-aligned real diagonal.

    When the support eigenvalues are symmetric about their midpoint with
    matching weights, U(t)_{u,u} is a real cosine combination times a global
    phase.  A sign change of that real function brackets an exact zero of
    the magnitude, which no window restriction can take away.
    """
    sup = support(d, u, support_tol)
    lam = np.array(sup.eigenvalues)
    wts = np.array(sup.weights)
    if len(lam) < 2:
        raise CertificateRefused("single-eigenvalue support never vanishes")
    center = (float(lam.max()) + float(lam.min())) / 2.0
    mu = lam - center
    order = np.argsort(mu)
    scale = max(d.scale(), 1.0)
    if (float(np.max(np.abs(mu[order] + mu[order[::-1]]))) > 1e-9 * scale
            or float(np.max(np.abs(wts[order] - wts[order[::-1]]))) > 1e-9):
        raise CertificateRefused("diagonal entry is not phase-aligned real")

    def f(t: float) -> float:
        return float(np.sum(wts * np.cos(mu * t)))

    if window is None:
        per = periodicity(d, u)
        window = (0.0, per.period) if per.periodic else (0.0, DEFAULT_WINDOW)
    t0, t1 = float(window[0]), float(window[1])
    spread = float(mu.max() - mu.min())
    npts = grid or min(max(4096, math.ceil(64.0 * (t1 - t0) * spread / (2.0 * math.pi))),
                       1 << 20)
    ts = np.linspace(t0, t1, npts)
    vals = np.cos(np.outer(ts, mu)) @ wts
    # both bracket values must clear numerical noise before claiming a zero
    for i in range(npts - 1):
        if vals[i] * vals[i + 1] < 0.0 and min(abs(vals[i]), abs(vals[i + 1])) > 1e-9:
            t_zero = float(brentq(f, float(ts[i]), float(ts[i + 1]), xtol=1e-14))
            mag = abs(complex(np.sum(wts * np.exp(1j * t_zero * lam))))
            return SedentaryCertificate(
                NOT_SEDENTARY_ZERO_CROSSING, u, 0.0, (), None, (t_zero,),
                detail=f"real diagonal changes sign on "
                       f"[{ts[i]:.9f}, {ts[i + 1]:.9f}]; |U| there is {mag:.3e}")
    raise CertificateRefused("no sign change found on the window")


# -- closed-form family catalogue -------------------------------------------------


@dataclass(frozen=True)
class FamilyRuling:
    """Exact constants a closed-form result assigns to one vertex role."""

    classification: str
    bound: float
    equality_times: tuple[float, ...] = ()
    detail: str = ""


def _nu2(b: int) -> int:
    if b <= 0:
        raise ValueError("nu2 needs a positive integer")
    return (b & -b).bit_length() - 1


def _is_square(b: int) -> bool:
    if b < 0:
        return False
    r = math.isqrt(b)
    return r * r == b


def _complete_ruling(n: int) -> FamilyRuling:
    if n == 1:
        return FamilyRuling(TIGHTLY_SEDENTARY, 1.0, (),
                            "single vertex; the diagonal stays at modulus 1")
    if n == 2:
        return FamilyRuling(NOT_SEDENTARY, 0.0, (math.pi / 2.0,),
                            "an edge swaps its endpoints at odd quarter periods")
    return FamilyRuling(
        TIGHTLY_SEDENTARY, 1.0 - 2.0 / n, (math.pi / n,),
        f"complete graph on {n} vertices: minimum 1 - 2/{n} at odd multiples "
        f"of pi/{n}")


def _box_of_completes_ruling(sizes: Sequence[int]) -> FamilyRuling | None:
    sizes = [int(s) for s in sizes if int(s) > 1]
    if not sizes:
        return FamilyRuling(TIGHTLY_SEDENTARY, 1.0, (), "trivial product")
    if any(s == 2 for s in sizes):
        return FamilyRuling(NOT_SEDENTARY, 0.0, (math.pi / 2.0,),
                            "a two-vertex factor zeroes the diagonal")
    bound = 1.0
    for s in sizes:
        bound *= 1.0 - 2.0 / s
    detail = "box product of complete graphs " + "x".join(str(s) for s in sizes)
    if len({_nu2(s) for s in sizes}) == 1:
        g = 0
        for s in sizes:
            g = math.gcd(g, s)
        return FamilyRuling(TIGHTLY_SEDENTARY, bound, (math.pi / g,),
                            detail + f"; factors align at odd multiples of pi/{g}")
    return FamilyRuling(SEDENTARY_AT_LEAST, bound, (),
                        detail + "; factor minima never align (mixed dyadic "
                                 "valuations), the true minimum is larger")


def _star_leaf_adjacency_ruling(leaves: int) -> FamilyRuling:
    if leaves <= 2:
        t = math.pi / 2.0 if leaves == 1 else math.pi / math.sqrt(2.0)
        return FamilyRuling(NOT_SEDENTARY, 0.0, (t,),
                            "short star: the leaf diagonal vanishes")
    t = math.pi / math.sqrt(leaves)
    return FamilyRuling(TIGHTLY_SEDENTARY, 1.0 - 2.0 / leaves, (t,),
                        f"star leaf: minimum 1 - 2/{leaves} at odd multiples "
                        f"of pi/sqrt({leaves})")


def _star_leaf_laplacian_ruling(leaves: int) -> FamilyRuling | None:
    if leaves == 1:
        return FamilyRuling(NOT_SEDENTARY, 0.0, (math.pi / 2.0,), "edge")
    if leaves == 2:
        return None
    bound = 1.0 - 2.0 / leaves
    if leaves % 2 == 1:
        return FamilyRuling(TIGHTLY_SEDENTARY, bound, (math.pi,),
                            f"independent block of {leaves} leaves over one "
                            "center; odd side attains at odd multiples of pi")
    return FamilyRuling(SEDENTARY_AT_LEAST, bound, (),
                        "even leaf count: the bound holds but the minimum "
                        "sits higher; the certified window decides")


def _clique_join_laplacian_ruling(total: int) -> FamilyRuling:
    # vertex adjacent to everything with unit weight, graph simple
    if total == 2:
        return FamilyRuling(NOT_SEDENTARY, 0.0, (math.pi / 2.0,), "edge")
    return FamilyRuling(
        TIGHTLY_SEDENTARY, 1.0 - 2.0 / total, (math.pi / total,),
        f"dominating unit vertex among {total}: minimum 1 - 2/{total} at odd "
        f"multiples of pi/{total}")


def _indep_block_laplacian_ruling(m: int, nx: int) -> FamilyRuling:
    # m mutually non-adjacent vertices, each unit-adjacent to all nx others
    if m == 2:
        if nx == 1:
            return FamilyRuling(TIGHTLY_SEDENTARY, 1.0 / 3.0, (math.pi,),
                                "non-adjacent pair over one vertex")
        if nx % 4 == 2:
            return FamilyRuling(NOT_SEDENTARY, 0.0, (math.pi / 2.0,),
                                "non-adjacent pair swaps perfectly at odd "
                                "multiples of pi/2")
        if nx % 4 == 0:
            return FamilyRuling(TIGHTLY_SEDENTARY, 2.0 / (nx + 2), (math.pi / 2.0,),
                                f"non-adjacent pair over {nx} vertices: minimum "
                                f"2/{nx + 2} at odd multiples of pi/2")
        return FamilyRuling(TIGHTLY_SEDENTARY, math.sqrt(2.0) / (nx + 2),
                            (math.pi / 2.0,),
                            f"non-adjacent pair over {nx} vertices: minimum "
                            f"sqrt(2)/{nx + 2} at odd multiples of pi/2")
    bound = 1.0 - 2.0 / m
    if nx > 0 and _nu2(m) == _nu2(nx):
        g = math.gcd(m, nx)
        return FamilyRuling(TIGHTLY_SEDENTARY, bound, (math.pi / g,),
                            f"independent {m}-block over {nx} vertices attains "
                            f"1 - 2/{m} at odd multiples of pi/{g}")
    return FamilyRuling(SEDENTARY_AT_LEAST, bound, (),
                        f"independent {m}-block over {nx} vertices; dyadic "
                        "valuations differ so the minimum sits higher")


def _indep_pair_adjacency_ruling(d: int, nx: int) -> FamilyRuling | None:
    # non-adjacent apex pair over an unweighted d-regular graph on nx vertices
    r2 = d * d + 8 * nx
    if not _is_square(r2):
        return FamilyRuling(NOT_SEDENTARY, 0.0, (),
                            "apex transfer gets arbitrarily close to perfect; "
                            "the diagonal infimum is 0 without attainment")
    if d == 0:
        return FamilyRuling(NOT_SEDENTARY, 0.0,
                            (math.pi / math.sqrt(2.0 * nx),),
                            "apex pair over an empty base swaps perfectly")
    r = math.isqrt(r2)
    s = (r - d) // 2
    if _nu2(d + s) == _nu2(s):
        return FamilyRuling(NOT_SEDENTARY, 0.0, (),
                            "apex pair admits perfect transfer")
    g = math.gcd(d, s)
    d1, s1 = d // g, s // g
    if s1 == 1:
        bound = 1.0 / (d1 + 2)
    else:
        bound = math.sqrt(2.0) / (d1 + 2 * s1)
    return FamilyRuling(TIGHTLY_SEDENTARY, bound, (math.pi / g,),
                        f"apex pair over a {d}-regular base on {nx} vertices: "
                        f"minimum attained at odd multiples of pi/{g}")


def _cone_apex_adjacency_ruling(d: float, nx: int) -> FamilyRuling:
    # apex over a weighted d-regular base on nx vertices; two-point support
    if d == 0.0:
        return FamilyRuling(NOT_SEDENTARY, 0.0,
                            (math.pi / (2.0 * math.sqrt(nx)),),
                            "apex over an empty base oscillates through 0")
    disc = math.sqrt(d * d + 4.0 * nx)
    return FamilyRuling(TIGHTLY_SEDENTARY, d / disc, (math.pi / disc,),
                        f"apex over a {d:g}-regular base on {nx} vertices: "
                        "two-point support with minimum d/sqrt(d^2+4n)")


def _double_star_leaf_ruling(side: int, other: int) -> FamilyRuling | None:
    if side == 1:
        return None
    if side == 2:
        if other == 2:
            return FamilyRuling(TIGHTLY_SEDENTARY, 0.25, (2.0 * math.pi / 3.0,),
                                "balanced double star with two leaves per side: "
                                "leaf minimum 1/4, first attained at 2pi/3")
        return FamilyRuling(NOT_SEDENTARY, 0.0, (),
                            "unbalanced two-leaf side: transfer to the twin "
                            "leaf gets arbitrarily good, infimum 0 unattained")
    bound = 1.0 - 2.0 / side
    disc = (side + other + 1) ** 2 - 4 * side * other
    if not _is_square(disc) or not _is_square(side * other):
        return FamilyRuling(SHARPLY_SEDENTARY, bound, (),
                            f"leaf side of {side}: nonzero eigenvalues are "
                            "rationally independent, so the twin bound is the "
                            "exact infimum, approached but never attained")
    return FamilyRuling(SEDENTARY_AT_LEAST, bound, (),
                        f"leaf side of {side}: commensurable spectrum keeps "
                        "the minimum above the twin bound; the certified "
                        "window decides")


def _vertex_role(graph: WeightedGraph, u: int) -> str:
    if graph.labels is None:
        return ""
    return graph.labels[u].partition(":")[0]


def family_closed_classification(spec: FamilySpec, kind: MatrixKind,
                                 role: str) -> FamilyRuling | None:
    """Exact constants for a family vertex role, or None when nothing applies.

    Regular families (complete, rook, hamming) accept any degree-shifted
    kind since those agree with the adjacency diagonal up to a phase.
    """
    shifted = kind.is_degree_shifted
    name = kind.name
    p = spec.params

    if spec.kind == "complete" and shifted:
        return _complete_ruling(p[0])
    if spec.kind in ("rook", "hamming") and shifted:
        sizes = list(p) if spec.kind == "rook" else [p[1]] * p[0]
        return _box_of_completes_ruling(sizes)
    if spec.kind == "star":
        leaves = p[0]
        if role == "leaf":
            if name == "adjacency":
                return _star_leaf_adjacency_ruling(leaves)
            if name == "laplacian":
                return _star_leaf_laplacian_ruling(leaves)
        if role == "center":
            if name == "adjacency":
                return FamilyRuling(NOT_SEDENTARY, 0.0,
                                    (math.pi / (2.0 * math.sqrt(leaves)),),
                                    "star center oscillates through 0")
            if name == "laplacian":
                return _clique_join_laplacian_ruling(leaves + 1)
        return None
    if spec.kind == "cone" and spec.base is not None:
        base = spec.base
        if role != "apex" or not (base.is_simple and base.is_positively_weighted):
            return None
        if name == "laplacian":
            return _clique_join_laplacian_ruling(base.n + 1)
        if name == "adjacency":
            d = base.regular_degree()
            if d is None:
                return None
            return _cone_apex_adjacency_ruling(d, base.n)
        return None
    if spec.kind == "doublecone" and spec.base is not None:
        base = spec.base
        if role != "apex" or not (base.is_simple and base.is_positively_weighted):
            return None
        if name == "laplacian":
            if spec.mode == "connected":
                return _clique_join_laplacian_ruling(base.n + 2)
            return _indep_block_laplacian_ruling(2, base.n)
        if name == "adjacency" and spec.mode == "disconnected":
            d = base.regular_degree()
            if d is None or not base.is_unweighted:
                return None
            return _indep_pair_adjacency_ruling(int(round(d)), base.n)
        return None
    if spec.kind == "doublestar" and name == "adjacency":
        kk, ll = p
        if role == "leafu":
            return _double_star_leaf_ruling(kk, ll)
        if role == "leafv":
            return _double_star_leaf_ruling(ll, kk)
        if role == "internal" and kk == ll:
            return FamilyRuling(NOT_SEDENTARY, 0.0, (),
                                "balanced internal vertex: the real diagonal "
                                "changes sign")
        return None
    return None


# -- structure detectors for graphs without family provenance ---------------------


def _induced(graph: WeightedGraph, keep: Sequence[int]) -> WeightedGraph:
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple((index[a], index[b], w) for a, b, w in graph.edges
                  if a in index and b in index)
    return WeightedGraph(len(keep), edges)


def _is_dominating_unit(graph: WeightedGraph, u: int) -> bool:
    nb = graph.neighbors(u)
    if len(nb) != graph.n - 1 or graph.loop_weight(u) != 0.0:
        return False
    return all(w == 1.0 for w in nb.values())


def _detect_structures(graph: WeightedGraph, kind: MatrixKind,
                       u: int) -> FamilyRuling | None:
    """Recognize join patterns that carry closed-form constants.

    All patterns need a simple positively weighted graph and exact unit
    weights on the joining edges; the remainder of the graph is arbitrary
    except where a ruling demands regularity.
    """
    if graph.n < 2 or not (graph.is_simple and graph.is_positively_weighted):
        return None
    name = kind.name
    if name == "laplacian":
        if _is_dominating_unit(graph, u):
            return _clique_join_laplacian_ruling(graph.n)
        block = _unit_joined_block(graph, u)
        if block is not None and graph.n - block > 0:
            return _indep_block_laplacian_ruling(block, graph.n - block)
        return None
    if name == "adjacency":
        if _is_dominating_unit(graph, u):
            rest = [v for v in range(graph.n) if v != u]
            d = _induced(graph, rest).regular_degree()
            if d is not None:
                return _cone_apex_adjacency_ruling(d, len(rest))
            return None
        block = _unit_joined_block(graph, u)
        if block == 2:
            # the block check already proved neighbors(u) is the base set
            base = _induced(graph, sorted(graph.neighbors(u)))
            d = base.regular_degree()
            if d is not None and base.is_unweighted and base.n > 0:
                return _indep_pair_adjacency_ruling(int(round(d)), base.n)
        return None
    return None


def _unit_joined_block(graph: WeightedGraph, u: int) -> int | None:
    """Size of the independent twin block through u whose members are
    unit-adjacent to every vertex outside the block, or None."""
    for ts in find_twin_sets(graph, ADJACENCY):
        if u not in ts.vertices:
            continue
        if ts.eta != 0.0 or ts.omega != 0.0:
            return None
        members = set(ts.vertices)
        outside = set(range(graph.n)) - members
        nb = graph.neighbors(u)
        if set(nb) == outside and all(w == 1.0 for w in nb.values()):
            return len(members)
        return None
    return None


# -- box products -----------------------------------------------------------------


def _merge_odd_lattices(t1: float, t2: float) -> float | None:
    """Base of the intersection of {odd multiples of t1} and {odd multiples
    of t2}, or None when the ratio is not a quotient of odd integers."""
    if t1 <= 0.0 or t2 <= 0.0:
        return None
    ratio = t1 / t2
    frac = Fraction(ratio).limit_denominator(10**6)
    if frac.numerator <= 0 or abs(ratio - float(frac)) > 1e-9 * max(ratio, 1.0):
        return None
    if frac.numerator % 2 == 0 or frac.denominator % 2 == 0:
        return None
    return frac.denominator * t1


def _tight_time(report: SedentaryReport) -> float | None:
    if report.classification != TIGHTLY_SEDENTARY or report.bound is None:
        return None
    for c in report.certificates:
        if c.equality_times and abs(c.bound - report.bound) <= 1e-9:
            return c.equality_times[0]
    if report.oracle is not None and report.oracle.certified_window:
        return report.oracle.argmin
    return None


def product_compose(reports: Sequence[SedentaryReport], kind: MatrixKind,
                    evaluators: Sequence[WalkEvaluator] | None = None,
                    tol: float = _PHASE_TOL) -> SedentaryCertificate:
    """Combine factor bounds across a box product.

    For degree-shifted kinds the product diagonal factors entrywise, so
    per-factor lower bounds multiply.  Factors that are not sedentary (a
    two-vertex factor, say) poison the product, and composing them into a
    positive bound is refused.  When every factor is tight and a common
    attainment time exists (their odd equality lattices intersect, verified
    numerically when evaluators are given), the product bound is attained.
    """
    if not kind.is_degree_shifted:
        raise CertificateRefused(
            "the product rule needs a degree-shifted matrix kind")
    if not reports:
        raise CertificateRefused("no factors given")
    for r in reports:
        if r.classification == NOT_SEDENTARY:
            raise CertificateRefused(
                f"factor {r.graph} is not sedentary; the product is not either")
        if r.bound is None or r.bound <= 0.0:
            raise CertificateRefused(
                f"factor {r.graph} contributes no positive bound")
    bound = 1.0
    for r in reports:
        bound *= r.bound
    analytic = all(
        any(c.analytic and abs(c.bound - r.bound) <= 1e-9 for c in r.certificates)
        for r in reports)
    times: tuple[float, ...] = ()
    if all(r.classification == TIGHTLY_SEDENTARY for r in reports):
        base = _tight_time(reports[0])
        for r in reports[1:]:
            t = _tight_time(r)
            base = _merge_odd_lattices(base, t) if (base and t) else None
            if base is None:
                break
        if base is not None and evaluators is not None:
            ok = all(
                abs(abs(ev.transition_entry(base, r.vertex, r.vertex)) - r.bound) <= tol
                for ev, r in zip(evaluators, reports))
            if ok:
                times = (float(base),)
    detail = " * ".join(f"{r.bound:.9f} [{r.graph}]" for r in reports)
    return SedentaryCertificate(
        PRODUCT_COMPOSITION, -1, bound, (), None, times, analytic,
        detail=f"product of factor bounds: {detail}")


# -- classification pipeline ------------------------------------------------------


def _verified_ruling(ruling: FamilyRuling, w: WalkEvaluator, u: int,
                     tol: float) -> FamilyRuling:
    """Cross-check a catalogue claim against the walk before trusting it.

    A stated equality time must reproduce the stated bound; a tight claim
    whose time fails the check is downgraded rather than propagated.
    """
    if not ruling.equality_times:
        return ruling
    t = ruling.equality_times[0]
    value = abs(w.transition_entry(t, u, u))
    target = ruling.bound if ruling.classification != NOT_SEDENTARY else 0.0
    if abs(value - target) <= max(tol, 1e-6):
        return ruling
    if ruling.classification == NOT_SEDENTARY:
        return replace(ruling, equality_times=(),
                       detail=ruling.detail + " (stated time failed verification)")
    return FamilyRuling(SEDENTARY_AT_LEAST, ruling.bound, (),
                        ruling.detail + " (stated attainment failed verification)")


def _singleton_candidates(d: SpectralDecomposition, u: int, sup,
                          twin_cert: SedentaryCertificate | None) -> list[tuple[int, ...]]:
    if not sup.indices:
        return []
    best = max(range(len(sup.indices)), key=lambda p: (sup.weights[p], -p))
    cands = [(sup.indices[best],)]
    if twin_cert is not None and twin_cert.subset:
        tw = (twin_cert.subset[0],)
        if tw not in cands:
            cands.append(tw)
    return cands


def _exhaustive_subsets(sup) -> list[tuple[int, ...]]:
    idx = sup.indices
    out = []
    for size in range(1, len(idx)):
        for combo in combinations(range(len(idx)), size):
            if sum(sup.weights[p] for p in combo) >= 0.5 - _HALF_TOL:
                out.append(tuple(idx[p] for p in combo))
    return out


def classify(graph: WeightedGraph, u: int, kind: MatrixKind = ADJACENCY,
             options: ClassifyOptions | None = None) -> SedentaryReport:
    """Classify one vertex: gather certificates, run the oracle, reconcile.

    The pipeline order is fixed so reports are deterministic: attained zero
    on a certified window, twin bound, subset bounds, closed-form catalogue
    (by family provenance or detected join structure), box-product
    composition, then reconciliation of the best certified bound against
    the oracle minimum.
    """
    opts = options or ClassifyOptions()
    if not 0 <= u < graph.n:
        raise CertificateRefused(f"vertex {u} out of range")
    d = decompose(assemble(graph, kind), opts.cluster_tol)
    w = WalkEvaluator(d)
    per = periodicity(d, u, opts.support_tol)
    if opts.window is not None:
        oracle = w.minimize_diagonal(u, opts.window, opts.grid)
    elif per.periodic:
        oracle = w.minimize_diagonal(u, None, opts.grid)
    else:
        oracle = w.minimize_diagonal(u, (0.0, DEFAULT_WINDOW), opts.grid)
    gdesc, mdesc = describe_graph(graph), str(kind)
    certs: list[SedentaryCertificate] = []

    # attained zero on a certified window settles the question immediately
    if oracle.certified_window and oracle.minimum <= opts.zero_tol:
        pst = w.find_perfect_state_transfer(u, oracle.window, opts.grid)
        if pst is not None:
            certs.append(SedentaryCertificate(
                NOT_SEDENTARY_PST, u, 0.0, (), None, (pst.time,),
                detail=f"perfect transfer to vertex {pst.target}, magnitude "
                       f"{pst.magnitude:.12f}"))
        else:
            certs.append(SedentaryCertificate(
                NOT_SEDENTARY_ZERO_CROSSING, u, 0.0, (), None, (oracle.argmin,),
                detail="certified-window minimum vanishes"))
        return SedentaryReport(gdesc, mdesc, u, NOT_SEDENTARY, 0.0,
                               tuple(certs), oracle)

    twin_cert = None
    try:
        twin_cert = twin_bound(graph, u, kind, d)
        certs.append(twin_cert)
    except CertificateRefused:
        pass

    sup = support(d, u, opts.support_tol)
    tried: set[tuple[int, ...]] = set()
    for s in _singleton_candidates(d, u, sup, twin_cert):
        if s in tried:
            continue
        tried.add(s)
        try:
            certs.append(subset_bound(d, u, s, support_tol=opts.support_tol))
        except CertificateRefused:
            pass
    if opts.subset_search and len(sup.indices) <= 20:
        best_extra = None
        for s in _exhaustive_subsets(sup):
            if s in tried:
                continue
            try:
                cand = subset_bound(d, u, s, support_tol=opts.support_tol)
            except CertificateRefused:
                continue
            if best_extra is None or cand.bound > best_extra.bound + 1e-12:
                best_extra = cand
        if best_extra is not None:
            certs.append(best_extra)

    ruling = None
    if isinstance(graph.provenance, FamilySpec):
        ruling = family_closed_classification(graph.provenance, kind,
                                              _vertex_role(graph, u))
    if ruling is None:
        ruling = _detect_structures(graph, kind, u)
    if ruling is not None:
        ruling = _verified_ruling(ruling, w, u, opts.reconcile_tol)
        certs.append(SedentaryCertificate(
            CLOSED_FORM_FAMILY, u,
            ruling.bound if ruling.classification != NOT_SEDENTARY else 0.0,
            (), None, ruling.equality_times, detail=ruling.detail))
        if ruling.classification == NOT_SEDENTARY:
            if not ruling.equality_times:
                try:
                    certs.append(find_zero_crossing(d, u, oracle.window,
                                                    support_tol=opts.support_tol))
                except CertificateRefused:
                    pass
            return SedentaryReport(gdesc, mdesc, u, NOT_SEDENTARY, 0.0,
                                   tuple(certs), oracle)

    prov = graph.provenance
    if (isinstance(prov, tuple) and prov and prov[0] == "cartesian"
            and kind.is_degree_shifted):
        x, y = prov[1], prov[2]
        ux, uy = divmod(u, y.n)
        sub_opts = ClassifyOptions(cluster_tol=opts.cluster_tol,
                                   support_tol=opts.support_tol)
        rx = classify(x, ux, kind, sub_opts)
        ry = classify(y, uy, kind, sub_opts)
        if NOT_SEDENTARY in (rx.classification, ry.classification):
            bad = rx if rx.classification == NOT_SEDENTARY else ry
            t0 = next(
                (t for c in bad.certificates for t in c.equality_times), None)
            certs.append(SedentaryCertificate(
                PRODUCT_COMPOSITION, u, 0.0, (), None,
                (t0,) if t0 is not None else (),
                detail=f"factor {bad.graph} has vanishing diagonal infimum"))
            return SedentaryReport(gdesc, mdesc, u, NOT_SEDENTARY, 0.0,
                                   tuple(certs), oracle)
        try:
            evx = WalkEvaluator(decompose(assemble(x, kind), opts.cluster_tol))
            evy = WalkEvaluator(decompose(assemble(y, kind), opts.cluster_tol))
            certs.append(replace(
                product_compose([rx, ry], kind, [evx, evy]), vertex=u))
        except CertificateRefused:
            pass

    return _reconcile(gdesc, mdesc, u, d, w, oracle, certs, ruling, opts)


def _reconcile(gdesc: str, mdesc: str, u: int, d: SpectralDecomposition,
               w: WalkEvaluator, oracle: MinimizationResult,
               certs: list[SedentaryCertificate],
               ruling: FamilyRuling | None,
               opts: ClassifyOptions) -> SedentaryReport:
    best = None
    for c in certs:
        # bounds inside zero_tol are numerically zero (half-weight subsets
        # land at 2a-1 = O(ulp)) and must not drive a sedentary label
        if (c.certified and c.bound > opts.zero_tol
                and (best is None or c.bound > best.bound + 1e-12)):
            best = c
    best_bound = best.bound if best is not None else 0.0

    if oracle.certified_window:
        m = oracle.minimum
        # a certified window plus a positive minimum means the infimum is
        # attained inside the window; the only question is its exact value
        if best_bound > m + opts.reconcile_tol:
            best_bound = m
        if best_bound > 0.0 and m - best_bound <= opts.reconcile_tol:
            return SedentaryReport(gdesc, mdesc, u, TIGHTLY_SEDENTARY,
                                   best_bound, tuple(certs), oracle)
        return SedentaryReport(gdesc, mdesc, u, TIGHTLY_SEDENTARY, m,
                               tuple(certs), oracle)

    if ruling is not None and ruling.classification == TIGHTLY_SEDENTARY:
        return SedentaryReport(gdesc, mdesc, u, TIGHTLY_SEDENTARY,
                               ruling.bound, tuple(certs), oracle)
    if ruling is not None and ruling.classification == SHARPLY_SEDENTARY:
        return SedentaryReport(gdesc, mdesc, u, SHARPLY_SEDENTARY,
                               ruling.bound, tuple(certs), oracle)

    if best_bound > 0.0:
        # try to attain the best singleton bound, then to pin it as an infimum
        for i, c in enumerate(certs):
            if (c.kind == SUBSET_BOUND and c.analytic and len(c.subset) == 1
                    and abs(c.bound - best_bound) <= 1e-12 and c.bound > 0.0):
                t1 = find_equality_time(d, u, c.subset, oracle.window,
                                        support_tol=opts.support_tol)
                if t1 is not None:
                    certs[i] = replace(c, equality_times=(t1,))
                    return SedentaryReport(gdesc, mdesc, u, TIGHTLY_SEDENTARY,
                                           c.bound, tuple(certs), oracle)
                try:
                    certs.append(sharpness_parity(d, u, c.subset,
                                                  opts.support_tol))
                    return SedentaryReport(gdesc, mdesc, u, SHARPLY_SEDENTARY,
                                           c.bound, tuple(certs), oracle)
                except (CertificateRefused, UnsupportedSpectrum):
                    pass
                break
        return SedentaryReport(gdesc, mdesc, u, SEDENTARY_AT_LEAST,
                               best_bound, tuple(certs), oracle)

    try:
        certs.append(find_zero_crossing(d, u, oracle.window,
                                        support_tol=opts.support_tol))
        return SedentaryReport(gdesc, mdesc, u, NOT_SEDENTARY, 0.0,
                               tuple(certs), oracle)
    except CertificateRefused:
        pass
    return SedentaryReport(gdesc, mdesc, u, UNRESOLVED, None,
                           tuple(certs), oracle)
