"""Floating-point primitives for a single tetrahedron.

Edge lengths, volume, the three angle families (face angles, dihedral
angles, edge-to-face angles), the inscribed-ball diameter, and residuals
of the classical verification identities.

All kernels in this module accept vertex arrays of shape ``(..., 4, 3)``
and broadcast over leading axes, so whole batches of elements can be
processed without Python-level loops.  The dataclass API (:class:`Tetrahedron`,
:func:`angle_set`, ...) wraps the same kernels for one element at a time.

Conventions (0-based, matching input vertex order):

* face ``i`` is the triangle opposite vertex ``i``;
* ``theta[i, j]`` is the internal angle of face ``i`` at vertex ``j``;
* ``psi[i, j]`` is the dihedral angle between faces ``i`` and ``j`` along
  their shared edge (symmetric);
* ``phi[i, j]`` is the angle between face ``i`` and the edge from vertex
  ``i`` to vertex ``j``.

Angles are radians throughout; unused index combinations hold NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput

# Vertex pairs of the six edges, in lexicographic order.  argmin/argmax
# over this ordering realizes the documented tie-break: among equal
# lengths, the lexicographically smallest vertex pair wins.
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# FACE_VERTICES[i] = vertices of the face opposite vertex i, ascending.
FACE_VERTICES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))

# T counts as degenerate iff volume <= DEGENERACY_RTOL * diameter**3
# (dimensionless, scale-invariant cutoff near double-precision limits).
DEGENERACY_RTOL = 1e-14

# Two vertices count as coincident iff their distance <= this times the
# diameter (or the diameter itself is zero).
COINCIDENT_RTOL = 1e-14


def _as_points(pts) -> np.ndarray:
    a = np.asarray(pts, dtype=float)
    if a.shape[-2:] != (4, 3):
        raise ValueError(f"expected vertex array of shape (..., 4, 3), got {a.shape}")
    return a


def edge_lengths(pts) -> np.ndarray:
    """Lengths of the six edges, ordered as :data:`EDGE_PAIRS`."""
    pts = _as_points(pts)
    d = np.stack([pts[..., b, :] - pts[..., a, :] for a, b in EDGE_PAIRS], axis=-2)
    return np.linalg.norm(d, axis=-1)


def diameters(pts) -> np.ndarray:
    """Longest edge of each element (equals the point-set diameter)."""
    return edge_lengths(pts).max(axis=-1)


def tet_volume(pts) -> np.ndarray:
    """Unsigned volume |det(P2-P1, P3-P1, P4-P1)| / 6."""
    pts = _as_points(pts)
    m = pts[..., 1:, :] - pts[..., :1, :]
    return np.abs(np.linalg.det(m)) / 6.0


def degenerate_mask(pts) -> np.ndarray:
    """True where the element falls below the degeneracy threshold."""
    return tet_volume(pts) <= DEGENERACY_RTOL * diameters(pts) ** 3


def _face_normals(pts) -> np.ndarray:
    """Unnormalized face normals, shape (..., 4, 3); |n|/2 is the face area."""
    ns = []
    for a, b, c in FACE_VERTICES:
        ns.append(np.cross(pts[..., b, :] - pts[..., a, :],
                           pts[..., c, :] - pts[..., a, :]))
    return np.stack(ns, axis=-2)


def face_areas(pts) -> np.ndarray:
    """Areas of the four faces, indexed by opposite vertex."""
    return np.linalg.norm(_face_normals(_as_points(pts)), axis=-1) / 2.0


def inscribed_diameters(pts) -> np.ndarray:
    """Diameter of the largest inscribed ball: 6 * volume / total face area."""
    return 6.0 * tet_volume(pts) / face_areas(pts).sum(axis=-1)


def _vec_angle(u, v) -> np.ndarray:
    # atan2(|u x v|, u.v) stays accurate near 0 and pi, where arccos of a
    # normalized dot product loses half the significant digits.
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    dot = (u * v).sum(axis=-1)
    return np.arctan2(cross, dot)


def face_angles(pts) -> np.ndarray:
    """Internal angles of the faces: theta[..., i, j] at vertex j of face i."""
    pts = _as_points(pts)
    theta = np.full(pts.shape[:-2] + (4, 4), np.nan)
    for i, face in enumerate(FACE_VERTICES):
        for j in face:
            a, b = (v for v in face if v != j)
            theta[..., i, j] = _vec_angle(pts[..., a, :] - pts[..., j, :],
                                          pts[..., b, :] - pts[..., j, :])
    return theta


def dihedral_angles(pts) -> np.ndarray:
    """Interior dihedral angles: psi[..., i, j] between faces i and j.

    Computed from the two in-face unit vectors perpendicular to the shared
    edge, combined with a two-argument arctangent.
    """
    pts = _as_points(pts)
    psi = np.full(pts.shape[:-2] + (4, 4), np.nan)
    for i in range(4):
        for j in range(i + 1, 4):
            k, m = (v for v in range(4) if v not in (i, j))
            e = pts[..., m, :] - pts[..., k, :]
            e = e / np.linalg.norm(e, axis=-1, keepdims=True)
            a = pts[..., j, :] - pts[..., k, :]   # toward the apex of face i
            b = pts[..., i, :] - pts[..., k, :]   # toward the apex of face j
            u = a - (a * e).sum(axis=-1, keepdims=True) * e
            v = b - (b * e).sum(axis=-1, keepdims=True) * e
            ang = _vec_angle(u, v)
            psi[..., i, j] = ang
            psi[..., j, i] = ang
    return psi


def edge_face_angles(pts) -> np.ndarray:
    """Elevation angles: phi[..., i, j] between face i and edge i -> j.

    The arcsine argument is clamped to [0, 1]; roundoff can push it
    marginally outside.
    """
    pts = _as_points(pts)
    n = _face_normals(pts)
    n = n / np.linalg.norm(n, axis=-1, keepdims=True)
    phi = np.full(pts.shape[:-2] + (4, 4), np.nan)
    for i in range(4):
        for j in range(4):
            if j == i:
                continue
            d = pts[..., j, :] - pts[..., i, :]
            d = d / np.linalg.norm(d, axis=-1, keepdims=True)
            s = np.abs((d * n[..., i, :]).sum(axis=-1))
            phi[..., i, j] = np.arcsin(np.clip(s, 0.0, 1.0))
    return phi


def max_angles(pts) -> np.ndarray:
    """Largest of the 12 face angles and 6 dihedral angles per element.

    The edge-to-face angles are deliberately excluded; they are bounded by
    pi/2 and do not enter the maximum-angle condition.
    """
    theta = face_angles(pts)
    psi = dihedral_angles(pts)
    return np.maximum(np.nanmax(theta, axis=(-2, -1)),
                      np.nanmax(psi, axis=(-2, -1)))


def cosine_rule_residuals(pts) -> np.ndarray:
    """Max absolute residual of the two tetrahedral cosine rules.

    For each vertex j and each distinguished face k (with {m, n} the other
    two faces through j):

    * ``cos theta[k,j] = cos theta[m,j] cos theta[n,j]
      + sin theta[m,j] sin theta[n,j] cos psi[m,n]``
    * ``cos psi[n,m] = sin psi[m,k] sin psi[n,k] cos theta[k,j]
      - cos psi[m,k] cos psi[n,k]``
    """
    pts = _as_points(pts)
    theta = face_angles(pts)
    psi = dihedral_angles(pts)
    res = np.zeros(pts.shape[:-2])
    for j in range(4):
        comp = [v for v in range(4) if v != j]
        for k in comp:
            m, n = (v for v in comp if v != k)
            r1 = np.cos(theta[..., k, j]) - (
                np.cos(theta[..., m, j]) * np.cos(theta[..., n, j])
                + np.sin(theta[..., m, j]) * np.sin(theta[..., n, j]) * np.cos(psi[..., m, n]))
            r2 = np.cos(psi[..., n, m]) - (
                np.sin(psi[..., m, k]) * np.sin(psi[..., n, k]) * np.cos(theta[..., k, j])
                - np.cos(psi[..., m, k]) * np.cos(psi[..., n, k]))
            res = np.maximum(res, np.maximum(np.abs(r1), np.abs(r2)))
    return res


def sine_identity_residuals(pts) -> np.ndarray:
    """Max absolute residual of ``sin phi[j,n] = sin theta[k,n] sin psi[k,j]``
    over every valid index combination."""
    pts = _as_points(pts)
    theta = face_angles(pts)
    psi = dihedral_angles(pts)
    phi = edge_face_angles(pts)
    res = np.zeros(pts.shape[:-2])
    for j in range(4):
        comp = [v for v in range(4) if v != j]
        for n in comp:
            for k in comp:
                if k == n:
                    continue
                r = np.abs(np.sin(phi[..., j, n])
                           - np.sin(theta[..., k, n]) * np.sin(psi[..., k, j]))
                res = np.maximum(res, r)
    return res


# ---------------------------------------------------------------------------
# Single-element API


@dataclass(frozen=True, eq=False)
class Tetrahedron:
    """Four labelled 3D vertices.  Input order is preserved everywhere."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.shape != (4, 3):
            raise ValueError(f"a tetrahedron needs 4 vertices in 3D, got shape {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("vertex coordinates must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, p1, p2, p3, p4) -> "Tetrahedron":
        return cls(np.array([p1, p2, p3, p4], dtype=float))

    @property
    def h(self) -> float:
        """Diameter (longest edge)."""
        return float(diameters(self.vertices))

    def is_degenerate(self) -> bool:
        return bool(degenerate_mask(self.vertices))


@dataclass(frozen=True)
class EdgeSpectrum:
    """The six edge lengths sorted ascending, with the realizing pairs."""

    lengths: tuple[float, ...]
    edge_of: tuple[tuple[int, int], ...]

    @property
    def h(self) -> float:
        """Diameter: the largest entry."""
        return self.lengths[-1]


@dataclass(frozen=True, eq=False)
class AngleSet:
    """The full set of angles of one tetrahedron (see module docstring)."""

    theta: np.ndarray
    psi: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        for name in ("theta", "psi", "phi"):
            a = np.asarray(getattr(self, name), dtype=float)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def max_face_angle(self) -> float:
        return float(np.nanmax(self.theta))

    @property
    def max_dihedral(self) -> float:
        return float(np.nanmax(self.psi))

    @property
    def max_angle(self) -> float:
        return max(self.max_face_angle, self.max_dihedral)


def _require_valid(t: Tetrahedron) -> np.ndarray:
    if t.is_degenerate():
        raise DegenerateInput("tetrahedron is degenerate (volume below threshold)")
    return t.vertices


def edge_spectrum(t: Tetrahedron) -> EdgeSpectrum:
    """Sorted edge lengths.  Ties keep the lexicographically smallest pair first.

    Raises :class:`DegenerateInput` if two vertices coincide.
    """
    lengths = edge_lengths(t.vertices)
    h = float(lengths.max())
    if h <= 0.0 or lengths.min() <= COINCIDENT_RTOL * h:
        raise DegenerateInput("two vertices coincide")
    order = np.argsort(lengths, kind="stable")
    return EdgeSpectrum(lengths=tuple(float(lengths[k]) for k in order),
                        edge_of=tuple(EDGE_PAIRS[k] for k in order))


def volume(t: Tetrahedron) -> float:
    """Unsigned volume.  Returns 0 for flat input; never raises."""
    return float(tet_volume(t.vertices))


def angle_set(t: Tetrahedron) -> AngleSet:
    """All 12 face angles, 6 dihedral angles and 12 edge-to-face angles."""
    pts = _require_valid(t)
    return AngleSet(theta=face_angles(pts),
                    psi=dihedral_angles(pts),
                    phi=edge_face_angles(pts))


def max_angle(t: Tetrahedron) -> float:
    """Largest face or dihedral angle."""
    return float(max_angles(_require_valid(t)))


def inscribed_ball_diameter(t: Tetrahedron) -> float:
    """Diameter of the largest ball inscribed in the element."""
    return float(inscribed_diameters(_require_valid(t)))


def verify_cosine_rules(t: Tetrahedron) -> float:
    """Max residual of both cosine rules over all index combinations."""
    return float(cosine_rule_residuals(_require_valid(t)))


def verify_sine_identity(t: Tetrahedron) -> float:
    """Max residual of the sine product identity over all index combinations."""
    return float(sine_identity_residuals(_require_valid(t)))
