"""Registry of smooth test functions with analytic derivatives.

Each entry carries vectorized evaluators for the value, gradient, Hessian
and third-derivative tensor at arrays of points shaped ``(n, 3)``.  The
registry mixes functions a low-degree interpolant reproduces exactly
(affine, quadratics) with genuinely curved ones (a trigonometric wave, an
exponential, a rational bump).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

Array = np.ndarray


@dataclass(frozen=True)
class TestFunction:
    name: str
    value: Callable[[Array], Array]        # (n, 3) -> (n,)
    gradient: Callable[[Array], Array]     # (n, 3) -> (n, 3)
    hessian: Callable[[Array], Array]      # (n, 3) -> (n, 3, 3)
    third: Callable[[Array], Array]        # (n, 3) -> (n, 3, 3, 3)


def _pts(p) -> Array:
    a = np.asarray(p, dtype=float)
    if a.ndim == 1:
        a = a[None]
    return a


def _directional(name: str, direction, profile) -> TestFunction:
    """Build f(x) = g(a . x) from a 1D profile g and its derivatives.

    ``profile(w)`` must return the tuple ``(g, g', g'', g''')`` evaluated
    elementwise.
    """
    a = np.asarray(direction, dtype=float)
    aa = np.einsum("i,j->ij", a, a)
    aaa = np.einsum("i,j,k->ijk", a, a, a)

    def value(p):
        return profile(_pts(p) @ a)[0]

    def gradient(p):
        return profile(_pts(p) @ a)[1][:, None] * a

    def hessian(p):
        return profile(_pts(p) @ a)[2][:, None, None] * aa

    def third(p):
        return profile(_pts(p) @ a)[3][:, None, None, None] * aaa

    return TestFunction(name, value, gradient, hessian, third)


def _affine() -> TestFunction:
    # f = 2x - y + 3z + 1
    return _directional("affine", (2.0, -1.0, 3.0),
                        lambda w: (w + 1.0, np.ones_like(w),
                                   np.zeros_like(w), np.zeros_like(w)))


def _xsq() -> TestFunction:
    # f = x**2
    return _directional("xsq", (1.0, 0.0, 0.0),
                        lambda w: (w * w, 2.0 * w,
                                   np.full_like(w, 2.0), np.zeros_like(w)))


def _quadratic() -> TestFunction:
    # Generic full quadratic x.Ax + b.x + c with every cross term present.
    A = np.array([[1.0, 0.5, 0.5],
                  [0.5, 2.0, 0.5],
                  [0.5, 0.5, 3.0]])
    b = np.array([1.0, -2.0, 0.5])
    c = 1.0

    def value(p):
        p = _pts(p)
        return np.einsum("ni,ij,nj->n", p, A, p) + p @ b + c

    def gradient(p):
        return 2.0 * (_pts(p) @ A) + b

    def hessian(p):
        return np.broadcast_to(2.0 * A, (_pts(p).shape[0], 3, 3)).copy()

    def third(p):
        return np.zeros((_pts(p).shape[0], 3, 3, 3))

    return TestFunction("quad", value, gradient, hessian, third)


def _sin123() -> TestFunction:
    # f = sin(x + 2y + 3z)
    return _directional("sin123", (1.0, 2.0, 3.0),
                        lambda w: (np.sin(w), np.cos(w), -np.sin(w), -np.cos(w)))


def _expmix() -> TestFunction:
    # f = exp(x - y + z/2)
    def profile(w):
        e = np.exp(w)
        return e, e, e, e

    return _directional("expmix", (1.0, -1.0, 0.5), profile)


def _runge() -> TestFunction:
    # f = 1 / (1 + w**2) with w = x + y + z
    def profile(w):
        q = 1.0 + w * w
        g0 = 1.0 / q
        g1 = -2.0 * w / q ** 2
        g2 = (6.0 * w * w - 2.0) / q ** 3
        g3 = 24.0 * w * (1.0 - w * w) / q ** 4
        return g0, g1, g2, g3

    return _directional("runge", (1.0, 1.0, 1.0), profile)


REGISTRY: dict[str, TestFunction] = {
    f.name: f for f in (_affine(), _xsq(), _quadratic(),
                        _sin123(), _expmix(), _runge())
}


def get_function(name: str) -> TestFunction:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown test function {name!r}; available: {', '.join(sorted(REGISTRY))}"
        ) from None


def function_names() -> tuple[str, ...]:
    return tuple(sorted(REGISTRY))
