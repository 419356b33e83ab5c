"""Two-type element classification and the anisotropy-aware quality metrics.

Every tetrahedron is assigned a role labelling P1..P4 built from its
shortest edge ``e2`` and the longest edge ``e1`` connected to it:

* ``e1 = P1P2`` always;
* the plane perpendicular to ``e1`` through its midpoint splits space in
  two; the element is **Type 1** when the two remaining vertices lie in
  the same closed half-space and **Type 2** when they straddle the plane
  (a vertex on the plane counts as "same side");
* for Type 1 the shared vertex of ``e1`` and ``e2`` takes the role P1
  (``e2 = P1P3``), for Type 2 it takes the role P2 (``e2 = P2P3``).

The side lengths ``alpha1 = |P1P2|``, ``alpha2 = |e2|``, ``alpha3 = |P1P4|``
feed the quality functional ``h_metric = alpha1*alpha2*alpha3 * h / volume``;
its companion ``r_metric = h1*h2*h^2 / volume`` uses the two shortest edges
directly.  The two are equivalent within a factor of two and both stay
bounded exactly on the elements that satisfy a maximum angle condition.

Ties for shortest/longest edge are broken by the lexicographically
smallest vertex pair in the original labelling, which makes the whole
procedure deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import DegenerateInput
from .geometry import EDGE_PAIRS, Tetrahedron

# A vertex counts as lying on the bisector plane when its signed distance
# is within PLANE_RTOL * diameter.
PLANE_RTOL = 1e-12

# Connectivity of edge slots: _CONN[a, b] is True when edges a and b share
# a vertex; _SHARED_VERTEX[a, b] is that vertex (-1 when disjoint/equal).
_CONN = np.zeros((6, 6), dtype=bool)
_SHARED_VERTEX = np.full((6, 6), -1, dtype=np.int64)
for _a in range(6):
    for _b in range(6):
        if _a == _b:
            continue
        _common = set(EDGE_PAIRS[_a]) & set(EDGE_PAIRS[_b])
        if _common:
            _CONN[_a, _b] = True
            _SHARED_VERTEX[_a, _b] = _common.pop()
_PAIR_SUM = np.array([a + b for a, b in EDGE_PAIRS], dtype=np.int64)


class TetType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2


@dataclass(frozen=True)
class Classification:
    """Outcome of the two-type procedure for one element.

    ``perm[r]`` is the original vertex index playing role ``P(r+1)``, so
    ``t.vertices[list(perm)]`` is the relabelled element.  ``e1_pair`` and
    ``e2_pair`` are the defining edges as sorted original-index pairs.
    """

    kind: TetType
    perm: tuple[int, int, int, int]
    alpha1: float
    alpha2: float
    alpha3: float
    e1_pair: tuple[int, int]
    e2_pair: tuple[int, int]

    @property
    def alphas(self) -> tuple[float, float, float]:
        return (self.alpha1, self.alpha2, self.alpha3)


@dataclass(frozen=True)
class QualityMetrics:
    """Size, volume and the quality functionals of one element.

    ``ratio_r`` and ``ratio_h`` are the dimensionless forms
    ``r_metric / h`` and ``h_metric / h``; ``ratio_h >= 6`` always, and
    boundedness of either ratio is equivalent to a maximum angle
    condition.  ``shape_ratio = h / rho`` is the classical
    inscribed-ball (shape-regularity) measure, included for comparison.
    """

    h: float
    volume: float
    r_metric: float
    h_metric: float
    ratio_r: float
    ratio_h: float
    rho: float
    shape_ratio: float
    max_angle: float


@dataclass(frozen=True)
class ClassificationArrays:
    """Vectorized classification of a batch: arrays indexed per element."""

    kind: np.ndarray    # (n,) int, 1 or 2
    perm: np.ndarray    # (n, 4) original vertex index per role
    alphas: np.ndarray  # (n, 3)
    e1_index: np.ndarray  # (n,) slot into EDGE_PAIRS
    e2_index: np.ndarray


@dataclass(frozen=True)
class QualityArrays:
    """Vectorized quality metrics of a batch (non-degenerate elements)."""

    h: np.ndarray
    volume: np.ndarray
    r_metric: np.ndarray
    h_metric: np.ndarray
    ratio_r: np.ndarray
    ratio_h: np.ndarray
    rho: np.ndarray
    shape_ratio: np.ndarray
    max_angle: np.ndarray
    kind: np.ndarray
    perm: np.ndarray
    alphas: np.ndarray


def classification_arrays(pts: np.ndarray) -> ClassificationArrays:
    """Classify a batch of elements, shape (n, 4, 3).

    Degeneracy is not checked here; filter with
    :func:`tetmac.geometry.degenerate_mask` first.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 3 or pts.shape[1:] != (4, 3):
        raise ValueError(f"expected shape (n, 4, 3), got {pts.shape}")
    n = pts.shape[0]
    rows = np.arange(n)

    lengths = geometry.edge_lengths(pts)
    h = lengths.max(axis=1)
    e2 = lengths.argmin(axis=1)
    connected = np.where(_CONN[e2], lengths, -np.inf)
    e1 = connected.argmax(axis=1)

    shared = _SHARED_VERTEX[e1, e2]
    far = _PAIR_SUM[e1] - shared        # far endpoint of e1
    p3 = _PAIR_SUM[e2] - shared         # far endpoint of e2
    p4 = 6 - shared - far - p3          # vertex indices sum to 6

    axis = pts[rows, shared] - pts[rows, far]
    axis = axis / np.linalg.norm(axis, axis=1, keepdims=True)
    mid = 0.5 * (pts[rows, shared] + pts[rows, far])
    s3 = ((pts[rows, p3] - mid) * axis).sum(axis=1)   # > 0 on the shared side
    s4 = ((pts[rows, p4] - mid) * axis).sum(axis=1)
    tol = PLANE_RTOL * h
    on_plane = (np.abs(s3) <= tol) | (np.abs(s4) <= tol)
    type1 = on_plane | (np.sign(s3) == np.sign(s4))

    p1 = np.where(type1, shared, far)
    p2 = np.where(type1, far, shared)
    # Degenerate tie: Type 1 with P4 strictly on the far side can only
    # happen when P3 sits on the plane (both candidate shortest edges at
    # its endpoint tie); flip the e1 endpoints so that P1 and P4 share a
    # closed half-space, as the labelling convention requires.
    flip = type1 & (s4 < -tol)
    p1 = np.where(flip, far, p1)
    p2 = np.where(flip, shared, p2)

    v1 = pts[rows, p1]
    alphas = np.stack([
        np.linalg.norm(v1 - pts[rows, p2], axis=1),
        np.linalg.norm(v1 - pts[rows, p3], axis=1),
        np.linalg.norm(v1 - pts[rows, p4], axis=1),
    ], axis=1)
    kind = np.where(type1, 1, 2)
    perm = np.stack([p1, p2, p3, p4], axis=1)
    return ClassificationArrays(kind=kind, perm=perm, alphas=alphas,
                                e1_index=e1, e2_index=e2)


def quality_arrays(pts: np.ndarray) -> QualityArrays:
    """Quality metrics for a batch of non-degenerate elements, shape (n, 4, 3)."""
    pts = np.asarray(pts, dtype=float)
    ca = classification_arrays(pts)
    lengths = np.sort(geometry.edge_lengths(pts), axis=1)
    h = lengths[:, -1]
    vol = geometry.tet_volume(pts)
    r_metric = lengths[:, 0] * lengths[:, 1] * h * h / vol
    h_metric = ca.alphas.prod(axis=1) * h / vol
    rho = geometry.inscribed_diameters(pts)
    return QualityArrays(h=h, volume=vol, r_metric=r_metric, h_metric=h_metric,
                         ratio_r=r_metric / h, ratio_h=h_metric / h,
                         rho=rho, shape_ratio=h / rho,
                         max_angle=geometry.max_angles(pts),
                         kind=ca.kind, perm=ca.perm, alphas=ca.alphas)


def classify(t: Tetrahedron) -> Classification:
    """Run the two-type procedure on one element.

    Deterministic, including the tie-breaks; invariant under rigid motion
    and uniform scaling.
    """
    pts = geometry._require_valid(t)
    ca = classification_arrays(pts[None])
    perm = tuple(int(v) for v in ca.perm[0])
    kind = TetType(int(ca.kind[0]))
    # e2 joins P1-P3 for Type 1 and P2-P3 for Type 2, by construction.
    e2_pair = (perm[0], perm[2]) if kind is TetType.TYPE1 else (perm[1], perm[2])
    return Classification(
        kind=kind,
        perm=perm,
        alpha1=float(ca.alphas[0, 0]),
        alpha2=float(ca.alphas[0, 1]),
        alpha3=float(ca.alphas[0, 2]),
        e1_pair=tuple(sorted((perm[0], perm[1]))),
        e2_pair=tuple(sorted(e2_pair)),
    )


def quality_metrics(t: Tetrahedron) -> QualityMetrics:
    """All quality numbers of one element; raises on degenerate input."""
    pts = geometry._require_valid(t)
    qa = quality_arrays(pts[None])
    return QualityMetrics(
        h=float(qa.h[0]),
        volume=float(qa.volume[0]),
        r_metric=float(qa.r_metric[0]),
        h_metric=float(qa.h_metric[0]),
        ratio_r=float(qa.ratio_r[0]),
        ratio_h=float(qa.ratio_h[0]),
        rho=float(qa.rho[0]),
        shape_ratio=float(qa.shape_ratio[0]),
        max_angle=float(qa.max_angle[0]),
    )


def volume_via_angles_arrays(pts: np.ndarray) -> np.ndarray:
    """Vectorized :func:`volume_via_angles` for a batch, shape (n, 4, 3)."""
    pts = np.asarray(pts, dtype=float)
    ca = classification_arrays(pts)
    rows = np.arange(pts.shape[0])[:, None]
    relabelled = pts[rows, ca.perm]
    theta = geometry.face_angles(relabelled)
    phi = geometry.edge_face_angles(relabelled)
    # Base face P1P2P3: its area is alpha1*alpha2*sin(angle at P1 for
    # Type 1, at P2 for Type 2) / 2; the height of P4 is alpha3*sin(phi).
    base_angle = np.where(ca.kind == 1, theta[:, 3, 0], theta[:, 3, 1])
    return ca.alphas.prod(axis=1) / 6.0 * np.sin(base_angle) * np.sin(phi[:, 3, 0])


def volume_via_angles(t: Tetrahedron, c: Classification | None = None) -> float:
    """Volume recomputed from the classification angles.

    Cross-checks the determinant volume: both routes agree to roundoff,
    which is the point of exposing this operation.
    """
    pts = geometry._require_valid(t)
    if c is not None:
        relabelled = pts[list(c.perm)]
        theta = geometry.face_angles(relabelled)
        phi = geometry.edge_face_angles(relabelled)
        j = 0 if c.kind is TetType.TYPE1 else 1
        prod = c.alpha1 * c.alpha2 * c.alpha3
        return float(prod / 6.0 * np.sin(theta[3, j]) * np.sin(phi[3, 0]))
    return float(volume_via_angles_arrays(pts[None])[0])
