"""Maximum angle condition (MAC) checks and the explicit constant maps.

The central fact made executable here: a tetrahedron satisfies the MAC
with some bound ``gamma_max`` in ``[pi/3, pi)`` **iff** its quality ratio
``h_metric / h`` stays below a constant.  Both directions are realized as
constructive maps:

* :func:`forward_constants` turns an angle bound into a ratio bound ``D``;
* :func:`backward_constants` turns a ratio bound ``D > 6`` into an angle
  bound ``gamma_uniform``.

:func:`theorem_check` applies both maps to a concrete element; the pair
of booleans it returns must always be true, which the test suite verifies
on large random sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import classify as _classify
from . import geometry
from .errors import InvalidBound, InvalidGamma
from .geometry import Tetrahedron

GAMMA_MIN = math.pi / 3

# Slack for MAC comparisons so elements sitting exactly on the bound
# (e.g. the unit corner element at pi/2) pass.
MAC_SLACK = 1e-12

# ratio_h >= 6 with equality unattainable; clamp just above 6 so the
# backward map stays inside its domain.
RATIO_CLAMP = 1e-9


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (GAMMA_MIN <= gamma < math.pi):
        raise InvalidGamma(f"angle bound must lie in [pi/3, pi), got {gamma!r}")
    return gamma


def triangle_sine_floor(gamma_max: float) -> float:
    """min(sin((pi - gamma)/2), sin(gamma)).

    For any triangle whose largest angle is at most ``gamma_max``, the
    sines of its two largest angles are bounded below by this value.
    """
    gamma_max = _check_gamma(gamma_max)
    return min(math.sin((math.pi - gamma_max) / 2), math.sin(gamma_max))


def min_dihedral_sine_sq(gamma_max: float) -> float:
    """(cos(gamma) + 1) / (sin(gamma/2) + 1), in (0, 1].

    Equals ``2 (1 - sin(gamma/2))``; its square root is the sine of the
    guaranteed dihedral angle ``delta`` used by the forward map.
    """
    gamma_max = _check_gamma(gamma_max)
    return (math.cos(gamma_max) + 1.0) / (math.sin(gamma_max / 2) + 1.0)


@dataclass(frozen=True)
class ForwardConstants:
    """Angle bound -> ratio bound, with the intermediate constants."""

    gamma_max: float
    c1: float      # lower bound on the relevant face-angle sines
    delta: float   # guaranteed dihedral angle, in (0, pi/2]
    c0: float      # min(sin(delta), sin(gamma_max))
    d: float       # the ratio bound: 6 / (c0 * c1**2)


@dataclass(frozen=True)
class BackwardConstants:
    """Ratio bound -> angle bound, per element type and uniform."""

    d: float
    m: float               # 6 / d, in (0, 1)
    gamma_type1: float
    gamma_type2: float
    gamma_uniform: float   # max of the two; valid without classifying


def forward_constants(gamma_max: float) -> ForwardConstants:
    """Map an angle bound to a quality-ratio bound.

    Every element whose angles stay below ``gamma_max`` has
    ``ratio_h <= d``.
    """
    gamma_max = _check_gamma(gamma_max)
    c1 = triangle_sine_floor(gamma_max)
    sin_delta = math.sqrt(min_dihedral_sine_sq(gamma_max))
    delta = math.asin(min(sin_delta, 1.0))
    c0 = min(sin_delta, math.sin(gamma_max))
    return ForwardConstants(gamma_max=gamma_max, c1=c1, delta=delta, c0=c0,
                            d=6.0 / (c0 * c1 * c1))


def _relaxed_angle(m: float) -> float:
    # pi - arcsin(m): the angle bound implied by a sine floor m.
    return math.pi - math.asin(m)


def backward_constants(d: float) -> BackwardConstants:
    """Map a quality-ratio bound ``d > 6`` to an angle bound.

    Every element with ``ratio_h <= d`` has all face and dihedral angles
    at most ``gamma_uniform``.
    """
    d = float(d)
    if not d > 6.0:
        raise InvalidBound(f"ratio bound must exceed 6, got {d!r}")
    m = 6.0 / d
    gamma_type1 = max(_relaxed_angle(m / 2),
                      math.acos(-math.sqrt(1 - m * m) * math.sqrt(1 - m * m / 4)))
    gamma_type2 = max(_relaxed_angle(m), math.acos(m * m - 1))
    return BackwardConstants(d=d, m=m, gamma_type1=gamma_type1,
                             gamma_type2=gamma_type2,
                             gamma_uniform=max(gamma_type1, gamma_type2))


def satisfies_mac(t: Tetrahedron, gamma: float) -> bool:
    """True iff every face and dihedral angle is <= gamma (tiny slack)."""
    gamma = _check_gamma(gamma)
    return geometry.max_angle(t) <= gamma + MAC_SLACK


@dataclass(frozen=True)
class TheoremCheck:
    """Both directions of the equivalence evaluated on one element."""

    ratio_h: float
    max_angle: float
    forward_ok: bool
    backward_ok: bool


def theorem_check(t: Tetrahedron) -> TheoremCheck:
    """Evaluate the equivalence on one element; both flags must be true."""
    fwd, bwd, ratio_h, ang = theorem_check_arrays(
        geometry._require_valid(t)[None])
    return TheoremCheck(ratio_h=float(ratio_h[0]), max_angle=float(ang[0]),
                        forward_ok=bool(fwd[0]), backward_ok=bool(bwd[0]))


def theorem_check_arrays(pts: np.ndarray):
    """Vectorized :func:`theorem_check` over a batch, shape (n, 4, 3).

    Assumes non-degenerate rows.  Returns ``(forward_ok, backward_ok,
    ratio_h, max_angle)`` arrays.
    """
    qa = _classify.quality_arrays(pts)
    # Clamp into the admissible interval: roundoff may leave the measured
    # maximum a hair under pi/3 (its true infimum) or exactly at pi.
    g = np.clip(qa.max_angle, GAMMA_MIN, np.nextafter(np.pi, 0.0))
    c1 = np.minimum(np.sin((np.pi - g) / 2), np.sin(g))
    sin_delta = np.sqrt((np.cos(g) + 1.0) / (np.sin(g / 2) + 1.0))
    c0 = np.minimum(sin_delta, np.sin(g))
    d = 6.0 / (c0 * c1 * c1)
    forward_ok = qa.ratio_h <= d

    m = 6.0 / np.maximum(qa.ratio_h, 6.0 + RATIO_CLAMP)
    gamma_type1 = np.maximum(np.pi - np.arcsin(m / 2),
                             np.arccos(-np.sqrt(1 - m * m) * np.sqrt(1 - m * m / 4)))
    gamma_type2 = np.maximum(np.pi - np.arcsin(m), np.arccos(m * m - 1))
    backward_ok = qa.max_angle <= np.maximum(gamma_type1, gamma_type2)
    return forward_ok, backward_ok, qa.ratio_h, qa.max_angle
